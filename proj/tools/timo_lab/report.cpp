#include "report.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <stdexcept>

#include "timo/errors.hpp"

namespace lab {

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 0xF];
  }
  return out;
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
  static std::mutex mutex;
  const std::lock_guard lock(mutex);
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw timo::ConfigError("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw timo::ConfigError("write to '" + tmp.string() + "' failed");
  }
  std::filesystem::rename(tmp, path);
}

Csv::Csv(std::vector<std::string> columns, std::string units, std::string digest)
    : columns_(std::move(columns)), units_(std::move(units)), digest_(std::move(digest)) {}

void Csv::row(std::span<const double> values) {
  if (values.size() != columns_.size()) throw std::logic_error("CSV row width mismatch");
  char buf[40];
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", values[i]);
    if (i) body_ += ',';
    body_ += buf;
  }
  body_ += '\n';
}

std::string Csv::render() const {
  std::string out = "# config_digest=" + digest_ + "; units: " + units_ + "\n";
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (i) out += ',';
    out += columns_[i];
  }
  return out + "\n" + body_;
}

OutputSet::OutputSet(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw timo::ConfigError("cannot create output directory '" + dir_.string() + "': " + ec.message());
}

void OutputSet::write(const std::string& name, const std::string& content) {
  atomic_write(dir_ / name, content);
  files_.push_back((dir_ / name).string());
}

void OutputSet::write_json(const std::string& name, const nlohmann::json& j) { write(name, j.dump(2) + "\n"); }

}  // namespace lab
