#include "config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "report.hpp"
#include "timo/errors.hpp"

namespace lab {
namespace {

json defaults(const std::string& command) {
  json t;
  t["command"] = command;
  t["law"] = {{"a", 2.0}, {"gamma", 1.0}, {"sigma_form", "cubic"}, {"beta", 1.0}, {"alpha", 0.0}};
  t["grid"] = {{"n", 8192}, {"length", 400.0 * std::numbers::pi}};
  t["run"] = {{"dt", 0.0},        {"t_end", 100.0}, {"amplitude", 0.01}, {"width", 4.0},
              {"mode", "linear"}, {"cadence", 10},  {"seed", 1}};
  if (command == "symbol") {
    t["symbol"] = {{"xi_max", 512.0}, {"samples", 512}};
  } else if (command == "decay") {
    t["decay"] = {{"kind", "linear"}, {"k", 0}, {"t_lo", 20.0}, {"t_hi", 500.0}};
    t["grid"]["n"] = 32768;
    t["run"]["width"] = 1.0;
    t["run"]["t_end"] = 500.0;
  } else if (command == "prop31") {
    t["prop31"] = {{"sigma", 0.0}, {"s", 0.5},      {"ell", 1.0},          {"p", 2.0},
                   {"r", 2.0},     {"t_max", 1e3},  {"function", "gaussian"}};
    t["grid"]["n"] = 32768;
  } else if (command == "check") {
    t["check"] = {{"suite", "all"}, {"tolerance_scale", 1.0}};
  }
  return t;
}

void check_known(const json& patch, const json& reference, const std::string& prefix) {
  for (auto it = patch.begin(); it != patch.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (!reference.contains(it.key())) throw timo::ConfigError("unknown configuration key '" + key + "'");
    if (it->is_object()) check_known(*it, reference.at(it.key()), key);
  }
}

}  // namespace

LabConfig::LabConfig(const std::string& command) : command_(command), tree_(defaults(command)) {}

void LabConfig::merge_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw timo::ConfigError("cannot read config file '" + path + "'");
  json patch;
  try {
    patch = json::parse(in, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw timo::ConfigError("config file '" + path + "': " + e.what());
  }
  if (!patch.is_object()) throw timo::ConfigError("config file must hold an object");
  patch.erase("command");
  check_known(patch, tree_, "");
  if (patch.contains("grid") && patch["grid"].contains("length") && patch["grid"]["length"].is_string()) {
    patch["grid"]["length"] = parse_length(patch["grid"]["length"].get<std::string>());
  }
  tree_.merge_patch(patch);
}

void LabConfig::set(const std::string& dotted, const json& value) {
  const auto dot = dotted.find('.');
  const std::string section = dotted.substr(0, dot);
  const std::string key = dotted.substr(dot + 1);
  if (!tree_.contains(section) || !tree_[section].contains(key)) {
    throw timo::ConfigError("option '" + dotted + "' does not apply to '" + command_ + "'");
  }
  tree_[section][key] = value;
}

std::string LabConfig::digest() const { return sha256_hex(tree_.dump()); }

const json& LabConfig::at(const std::string& dotted) const {
  const auto dot = dotted.find('.');
  try {
    return tree_.at(dotted.substr(0, dot)).at(dotted.substr(dot + 1));
  } catch (const json::exception&) {
    throw timo::ConfigError("missing configuration key '" + dotted + "'");
  }
}

double LabConfig::number(const std::string& dotted) const {
  const json& v = at(dotted);
  if (!v.is_number()) throw timo::ConfigError("'" + dotted + "' must be a number");
  return v.get<double>();
}

long LabConfig::integer(const std::string& dotted) const {
  const json& v = at(dotted);
  if (!v.is_number_integer()) throw timo::ConfigError("'" + dotted + "' must be an integer");
  return v.get<long>();
}

std::string LabConfig::text(const std::string& dotted) const {
  const json& v = at(dotted);
  if (!v.is_string()) throw timo::ConfigError("'" + dotted + "' must be a string");
  return v.get<std::string>();
}

timo::MaterialLaw LabConfig::law() const {
  timo::MaterialLaw law;
  law.a = number("law.a");
  law.gamma = number("law.gamma");
  law.form = timo::parse_sigma_form(text("law.sigma_form"));
  law.beta = number("law.beta");
  law.alpha = number("law.alpha");
  if (law.form == timo::SigmaForm::quadratic) law.beta = 0.0;
  if (law.form == timo::SigmaForm::cubic) law.alpha = 0.0;
  law.validate();
  return law;
}

timo::SimConfig LabConfig::sim() const {
  timo::SimConfig cfg;
  const long n = integer("grid.n");
  if (n <= 0) throw timo::ConfigError("grid.n must be positive");
  cfg.n_points = static_cast<std::size_t>(n);
  cfg.length = number("grid.length");
  cfg.law = law();
  cfg.t_end = number("run.t_end");
  cfg.snapshot_cadence = static_cast<int>(integer("run.cadence"));
  const std::string mode = text("run.mode");
  if (mode == "linear") {
    cfg.mode = timo::EvolutionMode::linear;
  } else if (mode == "nonlinear") {
    cfg.mode = timo::EvolutionMode::nonlinear;
  } else {
    throw timo::ConfigError("run.mode must be 'linear' or 'nonlinear'");
  }
  const double dt = number("run.dt");
  cfg.dt = dt > 0.0 ? dt : cfg.cfl_limit();
  cfg.validate();
  return cfg;
}

double parse_length(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (c != ' ' && c != '*') s += c;
  }
  double factor = 1.0;
  if (s.size() >= 2 && s.compare(s.size() - 2, 2, "pi") == 0) {
    factor = std::numbers::pi;
    s.resize(s.size() - 2);
    if (s.empty()) s = "1";
  }
  std::istringstream in(s);
  double v = 0.0;
  in >> v;
  if (!in || !in.eof()) throw timo::ConfigError("cannot parse length '" + text + "'");
  return v * factor;
}

}  // namespace lab
