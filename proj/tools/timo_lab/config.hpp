#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "timo/decay.hpp"
#include "timo/evolution.hpp"
#include "timo/model.hpp"

namespace lab {

using nlohmann::json;

/// Resolved configuration: command defaults, then the config file, then flags.
class LabConfig {
 public:
  explicit LabConfig(const std::string& command);

  void merge_file(const std::string& path);
  /// Sets a dotted key such as "law.a"; the key must exist in the defaults.
  void set(const std::string& dotted, const json& value);

  const json& tree() const { return tree_; }
  std::string digest() const;

  double number(const std::string& dotted) const;
  long integer(const std::string& dotted) const;
  std::string text(const std::string& dotted) const;

  timo::MaterialLaw law() const;
  timo::SimConfig sim() const;

 private:
  const json& at(const std::string& dotted) const;
  std::string command_;
  json tree_;
};

/// Parses "400pi", "1.5e3" or "2*pi" style lengths.
double parse_length(const std::string& text);

}  // namespace lab
