#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <iostream>
#include <random>

#include "timo/besov.hpp"
#include "timo/corpus.hpp"
#include "timo/errors.hpp"

namespace lab {
namespace {

json header(const LabConfig& cfg, const std::string& units) {
  return {{"config_digest", cfg.digest()}, {"units", units}, {"config", cfg.tree()}};
}

json decay_json(const timo::DecayReport& r) {
  return {{"fitted_exponent", r.fitted_exponent},
          {"fit_window", {r.fit_window.first, r.fit_window.second}},
          {"r_squared", r.r_squared},
          {"reference_exponent", r.reference_exponent},
          {"tolerance", r.tolerance},
          {"boundary_mass", r.boundary_mass},
          {"pass", r.pass}};
}

// ---------------------------------------------------------------- check suites

struct Invariant {
  std::string name;
  double value;
  double tolerance;
  bool pass;
};

struct SuiteContext {
  std::uint64_t seed;
  double scale;
};

using Suite = std::function<std::vector<Invariant>(const SuiteContext&)>;

Invariant at_most(std::string name, double value, double tol) { return {std::move(name), value, tol, value <= tol}; }

std::vector<Invariant> spectral_suite(const SuiteContext& ctx) {
  std::vector<Invariant> out;
  const timo::Grid1D g = timo::make_grid(4096, 128.0 * std::numbers::pi);
  const timo::LPFilterBank bank = timo::build_filter_bank(g);
  const auto [lo, hi] = bank.homogeneous_range();
  double worst = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double w = std::abs(g.xi(k));
    double h = 0.0, i = 0.0;
    for (int q = bank.q_min(); q <= bank.q_max(); ++q) h += bank.multiplier(q, k, true);
    for (int q = -1; q <= bank.q_max(); ++q) i += bank.multiplier(q, k, false);
    if (w >= lo && w <= hi) worst = std::max(worst, std::abs(h - 1.0));
    if (w <= bank.inhomogeneous_limit()) worst = std::max(worst, std::abs(i - 1.0));
  }
  out.push_back(at_most("partition_of_unity", worst, 1e-12 * ctx.scale));

  std::mt19937_64 rng(ctx.seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double parseval = 0.0, round_trip = 0.0;
  for (std::size_t n : {64u, 1024u, 16384u}) {
    const timo::Grid1D gr = timo::make_grid(n, 10.0);
    timo::RealField f(gr);
    double direct = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      f[j] = u(rng);
      direct += f[j] * f[j] * gr.spacing();
    }
    const timo::SpectralField F = timo::forward_transform(f);
    parseval = std::max(parseval, std::abs(timo::spectral_l2_squared(F) / direct - 1.0));
    const timo::RealField back = timo::inverse_transform(F);
    for (std::size_t j = 0; j < n; ++j) round_trip = std::max(round_trip, std::abs(back[j] - f[j]));
  }
  out.push_back(at_most("parseval_relative", parseval, 1e-10 * ctx.scale));
  out.push_back(at_most("round_trip", round_trip, 1e-12 * ctx.scale));
  return out;
}

timo::SpectralField random_modes(const timo::Grid1D& g, long hi, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  timo::SpectralField F(g);
  for (long m = 1; m <= hi; ++m) {
    const timo::Complex c{n(rng), n(rng)};
    F[g.index_of(m)] = c;
    F[g.index_of(-m)] = std::conj(c);
  }
  return F;
}

std::vector<Invariant> besov_suite(const SuiteContext& ctx) {
  std::vector<Invariant> out;
  const timo::Grid1D g = timo::make_grid(512, 32.0 * std::numbers::pi);
  const timo::LPFilterBank bank = timo::build_filter_bank(g);
  std::mt19937_64 rng(ctx.seed);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  double r_excess = 0.0, cl_excess = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    timo::FieldTrajectory tr;
    double t = 0.0;
    for (int i = 0; i < 6; ++i) {
      tr.times.push_back(t);
      t += u(rng);
      tr.states.push_back(random_modes(g, 120, rng));
    }
    double prev = timo::kInfinity;
    for (double r : {1.0, 2.0, 4.0, timo::kInfinity}) {
      const double n = timo::besov_norm(tr.states.back(), timo::BesovSpec{0.5, 2.0, r, false}, bank);
      r_excess = std::max(r_excess, n / prev - 1.0);
      prev = n;
    }
    const timo::CheminLernerSpec r1{2.0, {0.5, 2.0, 1.0, false}};
    const timo::CheminLernerSpec rinf{2.0, {0.5, 2.0, timo::kInfinity, false}};
    cl_excess = std::max(cl_excess, timo::time_mixed_norm(tr, r1, bank) / timo::chemin_lerner_norm(tr, r1, bank) - 1.0);
    cl_excess = std::max(cl_excess, timo::chemin_lerner_norm(tr, rinf, bank) / timo::time_mixed_norm(tr, rinf, bank) - 1.0);
  }
  out.push_back(at_most("r_monotonicity_excess", r_excess, 1e-12 * ctx.scale));
  out.push_back(at_most("chemin_lerner_ordering_excess", cl_excess, 1e-12 * ctx.scale));

  const timo::Grid1D big = timo::make_grid(32768, 400.0 * std::numbers::pi);
  const timo::LPFilterBank bb = timo::build_filter_bank(big);
  double lo = timo::kInfinity, hi = 0.0;
  for (int q = 0; q <= bb.q_max(); ++q) {
    const timo::RatioStatistics s = timo::check_bernstein(q, 1.0, 2.0, 2.0, bb, 20, ctx.seed);
    lo = std::min(lo, s.min);
    hi = std::max(hi, s.max);
  }
  out.push_back(at_most("bernstein_below_lower_bound", std::max(0.0, 0.75 - lo), 0.0));
  out.push_back(at_most("bernstein_above_upper_bound", std::max(0.0, hi - 8.0 / 3.0), 0.0));
  return out;
}

std::vector<Invariant> model_suite(const SuiteContext& ctx) {
  std::vector<Invariant> out;
  double cross = 0.0, trace = 0.0, mirror = 0.0;
  std::mt19937_64 rng(ctx.seed);
  std::uniform_real_distribution<double> u(-64.0, 64.0);
  for (double a : {0.5, 1.0, 2.0}) {
    const timo::MaterialLaw law = timo::MaterialLaw::cubic(a, 1.0, 1.0);
    cross = std::max(cross, timo::eigenvalue_cross_check(law, 32, 512.0, ctx.seed));
    for (int i = 0; i < 32; ++i) {
      const double xi = u(rng);
      const auto ev = timo::symbol_eigenvalues(xi, law);
      const auto ew = timo::symbol_eigenvalues(-xi, law);
      timo::Complex s{0.0};
      for (int k = 0; k < 4; ++k) {
        s += ev[k];
        double best = timo::kInfinity;
        for (int j = 0; j < 4; ++j) best = std::min(best, std::abs(ev[k] - std::conj(ew[j])));
        mirror = std::max(mirror, best);
      }
      trace = std::max(trace, std::abs(s + law.gamma));
    }
  }
  out.push_back(at_most("eigenvalue_cross_check", cross, 1e-8 * ctx.scale));
  out.push_back(at_most("trace_defect", trace, 1e-10 * ctx.scale));
  out.push_back(at_most("conjugate_symmetry", mirror, 1e-10 * ctx.scale));
  return out;
}

double distance(const timo::SpectralState& a, const timo::SpectralState& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < 4; ++i) acc += timo::spectral_l2_squared(a.c[i] - b.c[i]);
  return std::sqrt(acc);
}

std::vector<Invariant> evolution_suite(const SuiteContext& ctx) {
  std::vector<Invariant> out;
  const timo::Grid1D g = timo::make_grid(1024, 32.0 * std::numbers::pi);
  const timo::SpectralState U0 = timo::gaussian_state(g, 1.0);
  const double n0 = timo::state_l2(U0);
  const timo::ModalPropagator damped(g, timo::MaterialLaw::cubic(2.0, 1.0, 1.0));
  const timo::SpectralState once = damped.propagate(U0, 3.5);
  out.push_back(at_most("semigroup", distance(once, damped.propagate(damped.propagate(U0, 1.5), 2.0)) / n0, 1e-10 * ctx.scale));
  out.push_back(at_most("reality_residue", timo::state_reality_residue(once), 1e-12 * ctx.scale));
  const timo::ModalPropagator free(g, timo::MaterialLaw::cubic(2.0, 0.0, 1.0));
  out.push_back(at_most("undamped_isometry", std::abs(timo::state_l2(free.propagate(U0, 20.0)) / n0 - 1.0), 1e-10 * ctx.scale));

  timo::SimConfig cfg;
  cfg.n_points = 512;
  cfg.length = 16.0 * std::numbers::pi;
  cfg.law = timo::MaterialLaw::cubic(2.0, 1.0, 0.0);
  cfg.t_end = 1.0;
  cfg.dt = 0.01;
  cfg.mode = timo::EvolutionMode::nonlinear;
  const timo::SpectralState V0 = timo::gaussian_state(cfg.grid(), 0.5);
  const timo::Trajectory tr = timo::run(cfg, V0);
  const double split = distance(tr.states.back(), timo::linear_propagate(V0, cfg.law, 1.0)) / timo::state_l2(V0);
  out.push_back(at_most("splitting_without_source", split, 1e-10 * ctx.scale));
  return out;
}

}  // namespace

int cmd_symbol(const LabConfig& cfg, OutputSet& out) {
  const timo::MaterialLaw law = cfg.law();
  const timo::EnvelopeReport rep =
      timo::envelope_fit(law, cfg.number("symbol.xi_max"), static_cast<int>(cfg.integer("symbol.samples")));
  Csv csv({"xi", "re_lambda1", "re_lambda2", "re_lambda3", "re_lambda4", "im_lambda1", "im_lambda2", "im_lambda3",
                 "im_lambda4"},
                "xi [1/length], lambda [1/time]", cfg.digest());
  for (double xi : rep.xi_samples) {
    const auto ev = timo::symbol_eigenvalues(xi, law);
    csv.row({xi, ev[0].real(), ev[1].real(), ev[2].real(), ev[3].real(), ev[0].imag(), ev[1].imag(), ev[2].imag(),
             ev[3].imag()});
  }
  out.write("symbol.csv", csv.render());
  json j = header(cfg, "fitted constants dimensionless; gap [1/time]");
  j["fitted_c1"] = rep.fitted_c1;
  j["fitted_c2"] = rep.fitted_c2;
  j["classification"] = timo::to_string(rep.classification);
  j["high_frequency_gap"] = rep.high_frequency_gap;
  out.write_json("symbol.json", j);
  std::cout << "classification " << timo::to_string(rep.classification) << " (c1 = " << rep.fitted_c1
            << ", c2 = " << rep.fitted_c2 << ")\n";
  return 0;
}

int cmd_simulate(const LabConfig& cfg, OutputSet& out) {
  const timo::SimConfig sim = cfg.sim();
  const timo::Grid1D grid = sim.grid();
  const timo::LPFilterBank bank = timo::build_filter_bank(grid);
  const timo::SpectralState U0 = timo::gaussian_state(grid, cfg.number("run.amplitude"), cfg.number("run.width"));
  timo::EnergyAccumulator acc(bank);
  const timo::RunDiagnostics diag = timo::run(sim, U0, [&](double t, const timo::SpectralState& S) { acc.add(t, S); });
  const timo::EnergyLedger L = acc.ledger();

  const bool nonlinear = sim.mode == timo::EvolutionMode::nonlinear;
  std::vector<std::string> cols{"t", "L2", "B_3/2_norm", "N_of_t"};
  if (nonlinear) cols.push_back("D_script");
  Csv csv(cols, "t [time]; norms of U in the state units", cfg.digest());
  for (std::size_t i = 0; i < L.times.size(); ++i) {
    std::vector<double> row{L.times[i], L.l2[i], L.besov_32[i], L.N_of_t[i]};
    if (nonlinear) row.push_back(L.D_script_of_t[i]);
    csv.row(row);
  }
  out.write("trajectory.csv", csv.render());

  json j = header(cfg, "energies in state units; times [time]");
  j["ledger"] = {{"E_T", L.E_T},       {"D_T", L.D_T()},           {"y_norm", L.y_norm},
                 {"v_zx_norm", L.v_zx_norm}, {"ux_norm", L.ux_norm}, {"D_script", L.D_script},
                 {"N_max", L.N_of_t.back()}};
  j["diagnostics"] = {{"steps", diag.steps},
                      {"dt", sim.dt},
                      {"max_l2", diag.max_l2},
                      {"max_reality_residue", diag.max_reality_residue},
                      {"max_boundary_mass", diag.max_boundary_mass}};
  out.write_json("ledger.json", j);
  std::cout << "E(T) = " << L.E_T << ", D(T) = " << L.D_T() << " after " << diag.steps << " steps\n";
  return 0;
}

int cmd_decay(const LabConfig& cfg, OutputSet& out) {
  const std::string kind = cfg.text("decay.kind");
  timo::DecayReport rep;
  json extra;
  if (kind == "linear") {
    timo::LinearDecayConfig lc;
    lc.n_points = static_cast<std::size_t>(cfg.integer("grid.n"));
    lc.length = cfg.number("grid.length");
    lc.t_lo = cfg.number("decay.t_lo");
    lc.t_hi = cfg.number("decay.t_hi");
    lc.width = cfg.number("run.width");
    rep = timo::verify_linear_decay(cfg.law(), static_cast<int>(cfg.integer("decay.k")), lc);
  } else if (kind == "nonlinear") {
    timo::NonlinearDecayConfig nc;
    nc.law = cfg.law();
    nc.n_points = static_cast<std::size_t>(cfg.integer("grid.n"));
    nc.length = cfg.number("grid.length");
    nc.amplitude = cfg.number("run.amplitude");
    nc.width = cfg.number("run.width");
    nc.t_end = cfg.number("run.t_end");
    nc.dt = cfg.number("run.dt");
    nc.snapshot_cadence = static_cast<int>(cfg.integer("run.cadence"));
    nc.t_lo = cfg.number("decay.t_lo");
    const timo::NonlinearDecayResult res = timo::verify_nonlinear_decay(nc);
    rep = res.decay;
    extra = {{"initial_besov_32", res.initial_besov_32}, {"I0", res.I0},
             {"shape_constant", res.shape_constant},   {"n_growth", res.n_growth},
             {"E_T", res.ledger.E_T},                  {"D_T", res.ledger.D_T()}};
  } else {
    throw timo::ConfigError("decay.kind must be 'linear' or 'nonlinear'");
  }
  Csv csv({"t", "norm"}, "t [time]; norm in state units", cfg.digest());
  for (std::size_t i = 0; i < rep.times.size(); ++i) csv.row({rep.times[i], rep.norms[i]});
  out.write("decay.csv", csv.render());
  json j = header(cfg, "exponent dimensionless; times [time]");
  j["report"] = decay_json(rep);
  if (!extra.is_null()) j["nonlinear"] = extra;
  out.write_json("decay.json", j);
  std::cout << "fitted exponent " << rep.fitted_exponent << " (r^2 = " << rep.r_squared << "): "
            << (rep.pass ? "pass" : "FAIL") << "\n";
  return rep.pass ? 0 : 1;
}

int cmd_prop31(const LabConfig& cfg, OutputSet& out) {
  timo::Prop31Params p;
  p.sigma = cfg.number("prop31.sigma");
  p.s = cfg.number("prop31.s");
  p.ell = cfg.number("prop31.ell");
  p.p = cfg.number("prop31.p");
  p.r = cfg.number("prop31.r");
  p.validate();
  const std::string name = cfg.text("prop31.function");
  const auto& corpus = timo::besov_corpus();
  const auto it = std::find_if(corpus.begin(), corpus.end(), [&](const auto& c) { return c.name == name; });
  if (it == corpus.end()) throw timo::ConfigError("unknown corpus function '" + name + "'");

  const timo::Grid1D grid = timo::make_grid(static_cast<std::size_t>(cfg.integer("grid.n")), cfg.number("grid.length"));
  const timo::LPFilterBank bank = timo::build_filter_bank(grid);
  const timo::SpectralField F = timo::without_mean(timo::forward_transform(timo::sample_corpus(*it, grid)));
  std::vector<double> times{0.0};
  for (double t : timo::log_spaced_times(0.1, cfg.number("prop31.t_max"), 10)) times.push_back(t);
  const timo::Prop31Result res = timo::verify_prop31(F, p, times, bank);

  Csv csv({"t", "lhs", "rhs", "ratio"}, "t [time]; norms in field units", cfg.digest());
  for (std::size_t i = 0; i < res.times.size(); ++i) {
    csv.row({res.times[i], res.lhs[i], res.rhs[i], res.rhs[i] > 0.0 ? res.lhs[i] / res.rhs[i] : 0.0});
  }
  out.write("prop31.csv", csv.render());
  json j = header(cfg, "constant dimensionless");
  j["fitted_constant"] = res.constant;
  j["lhs_non_increasing"] = res.lhs_non_increasing;
  j["valid"] = res.valid;
  out.write_json("prop31.json", j);
  const bool ok = res.valid && res.lhs_non_increasing && std::isfinite(res.constant);
  std::cout << "fitted C = " << res.constant << (ok ? "" : " (FAIL)") << "\n";
  return ok ? 0 : 1;
}

int cmd_check(const LabConfig& cfg, OutputSet& out) {
  const std::vector<std::pair<std::string, Suite>> all{
      {"spectral", spectral_suite}, {"besov", besov_suite}, {"model", model_suite}, {"evolution", evolution_suite}};
  const std::string suite = cfg.text("check.suite");
  std::vector<std::pair<std::string, Suite>> selected;
  for (const auto& s : all) {
    if (suite == "all" || suite == s.first) selected.push_back(s);
  }
  if (selected.empty()) throw timo::ConfigError("unknown suite '" + suite + "'");
  const SuiteContext ctx{static_cast<std::uint64_t>(cfg.integer("run.seed")), cfg.number("check.tolerance_scale")};

  std::vector<std::future<std::vector<Invariant>>> jobs;
  for (const auto& s : selected) jobs.push_back(std::async(std::launch::async, s.second, ctx));

  json j = header(cfg, "invariant values dimensionless");
  json suites = json::object();
  std::string first_failure;
  for (std::size_t i = 0; i < selected.size(); ++i) {
    json rows = json::array();
    for (const Invariant& inv : jobs[i].get()) {
      rows.push_back({{"name", inv.name}, {"value", inv.value}, {"tolerance", inv.tolerance}, {"pass", inv.pass}});
      std::cout << selected[i].first << "." << inv.name << ": " << (inv.pass ? "pass" : "FAIL") << " (" << inv.value
                << " <= " << inv.tolerance << ")\n";
      if (!inv.pass && first_failure.empty()) first_failure = selected[i].first + "." + inv.name;
    }
    suites[selected[i].first] = rows;
  }
  j["suites"] = suites;
  j["pass"] = first_failure.empty();
  if (!first_failure.empty()) j["first_violation"] = first_failure;
  out.write_json("check.json", j);
  if (!first_failure.empty()) {
    std::cerr << "violated invariant: " << first_failure << "\n";
    return 1;
  }
  return 0;
}

}  // namespace lab
