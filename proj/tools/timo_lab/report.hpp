#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace lab {

std::string sha256_hex(const std::string& data);

/// Writes through a temporary file in the same directory, then renames.
void atomic_write(const std::filesystem::path& path, const std::string& content);

/// Collects rows and renders them as CSV: a comment line naming the config
/// digest and units, a header row, then values at 17 significant digits.
class Csv {
 public:
  Csv(std::vector<std::string> columns, std::string units, std::string digest);
  void row(std::span<const double> values);
  void row(std::initializer_list<double> values) { row(std::span<const double>(values.begin(), values.size())); }
  std::string render() const;

 private:
  std::vector<std::string> columns_;
  std::string units_;
  std::string digest_;
  std::string body_;
};

/// Output directory plus the list of files written so far.
class OutputSet {
 public:
  explicit OutputSet(std::filesystem::path dir);
  void write(const std::string& name, const std::string& content);
  void write_json(const std::string& name, const nlohmann::json& j);
  const std::vector<std::string>& files() const { return files_; }
  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
  std::vector<std::string> files_;
};

}  // namespace lab
