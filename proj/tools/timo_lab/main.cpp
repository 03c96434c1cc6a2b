#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"
#include "report.hpp"
#include "timo/errors.hpp"

namespace {

struct SharedFlags {
  std::optional<double> a, gamma, beta, alpha, dt, t_end, amplitude;
  std::optional<std::string> sigma_form, length, mode;
  std::optional<long> n, seed, cadence;
  std::string out = "out";
  std::string config;
};

struct CommandFlags {
  std::optional<double> xi_max, t_lo, t_hi, sigma, s, ell, p, r, t_max, tolerance_scale, width;
  std::optional<long> samples, k;
  std::optional<std::string> kind, function;
  std::string suite = "all";
};

void add_shared(CLI::App* app, SharedFlags& f) {
  app->add_option("--a", f.a, "second wave speed a = sqrt(sigma'(0))");
  app->add_option("--gamma", f.gamma, "damping coefficient");
  app->add_option("--sigma-form", f.sigma_form, "stress law")->check(CLI::IsMember({"cubic", "quadratic"}));
  app->add_option("--beta", f.beta, "cubic coefficient");
  app->add_option("--alpha", f.alpha, "quadratic coefficient");
  app->add_option("--n", f.n, "grid points (power of two)");
  app->add_option("--length", f.length, "domain length, e.g. 400pi");
  app->add_option("--dt", f.dt, "time step (0 selects the CFL limit)");
  app->add_option("--t-end", f.t_end, "final time");
  app->add_option("--amplitude", f.amplitude, "initial Gaussian amplitude");
  app->add_option("--mode", f.mode, "linear or nonlinear")->check(CLI::IsMember({"linear", "nonlinear"}));
  app->add_option("--cadence", f.cadence, "steps between snapshots");
  app->add_option("--seed", f.seed, "seed for randomized corpora");
  app->add_option("--out", f.out, "output directory");
  app->add_option("--config", f.config, "JSON config file (flags win)");
}

void apply(lab::LabConfig& cfg, const SharedFlags& f) {
  if (!f.config.empty()) cfg.merge_file(f.config);
  if (f.a) cfg.set("law.a", *f.a);
  if (f.gamma) cfg.set("law.gamma", *f.gamma);
  if (f.sigma_form) cfg.set("law.sigma_form", *f.sigma_form);
  if (f.beta) cfg.set("law.beta", *f.beta);
  if (f.alpha) cfg.set("law.alpha", *f.alpha);
  if (f.n) cfg.set("grid.n", *f.n);
  if (f.length) cfg.set("grid.length", lab::parse_length(*f.length));
  if (f.dt) cfg.set("run.dt", *f.dt);
  if (f.t_end) cfg.set("run.t_end", *f.t_end);
  if (f.amplitude) cfg.set("run.amplitude", *f.amplitude);
  if (f.mode) cfg.set("run.mode", *f.mode);
  if (f.cadence) cfg.set("run.cadence", *f.cadence);
  if (f.seed) cfg.set("run.seed", *f.seed);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Timoshenko spectral lab"};
  app.require_subcommand(1);
  SharedFlags shared;
  CommandFlags cmd;

  auto* symbol = app.add_subcommand("symbol", "dissipative envelope of the linear symbol");
  symbol->add_option("--xi-max", cmd.xi_max, "largest sampled frequency");
  symbol->add_option("--samples", cmd.samples, "number of frequency samples");

  auto* simulate = app.add_subcommand("simulate", "evolve Gaussian data and record energy functionals");
  simulate->add_option("--width", cmd.width, "Gaussian width");

  auto* decay = app.add_subcommand("decay", "fit L^2 decay exponents");
  decay->add_option("--kind", cmd.kind, "linear or nonlinear")->check(CLI::IsMember({"linear", "nonlinear"}));
  decay->add_option("--k", cmd.k, "derivative order (linear)");
  decay->add_option("--t-lo", cmd.t_lo, "start of fit window");
  decay->add_option("--t-hi", cmd.t_hi, "end of fit window (linear)");
  decay->add_option("--width", cmd.width, "Gaussian width");

  auto* prop31 = app.add_subcommand("prop31", "heat-type estimate with regularity loss");
  prop31->add_option("--sigma", cmd.sigma);
  prop31->add_option("--s", cmd.s);
  prop31->add_option("--ell", cmd.ell);
  prop31->add_option("--p", cmd.p);
  prop31->add_option("--r", cmd.r);
  prop31->add_option("--t-max", cmd.t_max, "largest sampled time");
  prop31->add_option("--function", cmd.function, "corpus function");

  auto* check = app.add_subcommand("check", "run invariant suites");
  check->add_option("suite", cmd.suite, "spectral, besov, model, evolution or all")
      ->check(CLI::IsMember({"spectral", "besov", "model", "evolution", "all"}));
  check->add_option("--tolerance-scale", cmd.tolerance_scale, "multiply every tolerance");

  for (auto* sub : {symbol, simulate, decay, prop31, check}) add_shared(sub, shared);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  const auto start = std::chrono::steady_clock::now();
  CLI::App* active = app.get_subcommands().front();
  const std::string name = active->get_name();
  try {
    lab::LabConfig cfg(name);
    apply(cfg, shared);
    if (cmd.xi_max) cfg.set("symbol.xi_max", *cmd.xi_max);
    if (cmd.samples) cfg.set("symbol.samples", *cmd.samples);
    if (cmd.width) cfg.set("run.width", *cmd.width);
    if (cmd.kind) cfg.set("decay.kind", *cmd.kind);
    if (cmd.k) cfg.set("decay.k", *cmd.k);
    if (cmd.t_lo) cfg.set("decay.t_lo", *cmd.t_lo);
    if (cmd.t_hi) cfg.set("decay.t_hi", *cmd.t_hi);
    if (cmd.sigma) cfg.set("prop31.sigma", *cmd.sigma);
    if (cmd.s) cfg.set("prop31.s", *cmd.s);
    if (cmd.ell) cfg.set("prop31.ell", *cmd.ell);
    if (cmd.p) cfg.set("prop31.p", *cmd.p);
    if (cmd.r) cfg.set("prop31.r", *cmd.r);
    if (cmd.t_max) cfg.set("prop31.t_max", *cmd.t_max);
    if (cmd.function) cfg.set("prop31.function", *cmd.function);
    if (name == "check") {
      cfg.set("check.suite", cmd.suite);
      if (cmd.tolerance_scale) cfg.set("check.tolerance_scale", *cmd.tolerance_scale);
    }

    lab::OutputSet out(shared.out);
    int rc = 0;
    if (name == "symbol") rc = lab::cmd_symbol(cfg, out);
    if (name == "simulate") rc = lab::cmd_simulate(cfg, out);
    if (name == "decay") rc = lab::cmd_decay(cfg, out);
    if (name == "prop31") rc = lab::cmd_prop31(cfg, out);
    if (name == "check") rc = lab::cmd_check(cfg, out);

    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    nlohmann::json manifest{{"command", name},
                            {"config_digest", cfg.digest()},
                            {"seed", cfg.integer("run.seed")},
                            {"outputs", out.files()},
                            {"wall_time", wall},
                            {"units", "wall_time [s]"}};
    out.write_json("manifest.json", manifest);
    return rc;
  } catch (const timo::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const timo::DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 2;
  } catch (const timo::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const timo::StabilityError& e) {
    std::cerr << "stability error: " << e.what() << "\n";
    return 3;
  }
}
