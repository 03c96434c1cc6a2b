#include "timo/decay.hpp"

#include <algorithm>
#include <cmath>

#include "timo/errors.hpp"

namespace timo {
namespace {

constexpr double kBoundaryLimit = 1e-8;

}  // namespace

void Prop31Params::validate() const {
  if (n != 1) throw DomainError("only n = 1 is supported");
  if (!(p >= 1.0 && p <= 2.0)) throw DomainError("p must lie in [1, 2]");
  if (!(r >= 1.0)) throw DomainError("r must lie in [1, infinity]");
  if (!(sigma + s > 0.0)) throw DomainError("sigma + s must be positive");
  const double floor = n * (1.0 / p - 0.5);
  if (ell < floor - 1e-12 || ell < 0.0) throw DomainError("ell must be >= n (1/p - 1/2) and >= 0");
}

double prop31_lhs(const SpectralField& F, double t, const Prop31Params& params, const LPFilterBank& bank) {
  params.validate();
  if (!(t >= 0.0)) throw DomainError("t must be non-negative");
  const SpectralField G = apply_multiplier(F, [t](double xi) { return Complex{std::exp(-eta_regularity_loss(xi) * t), 0.0}; });
  BesovSpec spec{params.sigma, 2.0, params.r, true};
  return besov_norm(G, spec, bank);
}

double prop31_rhs(const SpectralField& F, double t, const Prop31Params& params, const LPFilterBank& bank) {
  params.validate();
  if (!(t >= 0.0)) throw DomainError("t must be non-negative");
  const double low = besov_norm(F, BesovSpec{-params.s, 2.0, kInfinity, true}, bank);
  const double high = besov_norm(F, BesovSpec{params.sigma + params.ell, params.p, params.r, true}, bank);
  const double e_low = -(params.sigma + params.s) / 2.0;
  const double e_high = -params.ell / 2.0 + params.n / 2.0 * (1.0 / params.p - 0.5);
  return std::pow(1.0 + t, e_low) * low + std::pow(1.0 + t, e_high) * high;
}

Prop31Result verify_prop31(const SpectralField& F, const Prop31Params& params, std::span<const double> times,
                           const LPFilterBank& bank) {
  params.validate();
  Prop31Result res;
  const double low = besov_norm(F, BesovSpec{-params.s, 2.0, kInfinity, true}, bank);
  const double high = besov_norm(F, BesovSpec{params.sigma + params.ell, params.p, params.r, true}, bank);
  const double e_low = -(params.sigma + params.s) / 2.0;
  const double e_high = -params.ell / 2.0 + params.n / 2.0 * (1.0 / params.p - 0.5);
  for (double t : times) {
    const double l = prop31_lhs(F, t, params, bank);
    const double r = std::pow(1.0 + t, e_low) * low + std::pow(1.0 + t, e_high) * high;
    if (!res.lhs.empty() && l > res.lhs.back() * (1.0 + 1e-12) + 1e-300) res.lhs_non_increasing = false;
    res.times.push_back(t);
    res.lhs.push_back(l);
    res.rhs.push_back(r);
    if (r > 0.0) {
      res.constant = std::max(res.constant, l / r);
    } else if (l > 0.0) {
      res.valid = false;
    }
  }
  return res;
}

DecayReport fit_decay_exponent(std::span<const double> times, std::span<const double> norms,
                               std::pair<double, double> window) {
  if (times.size() != norms.size()) throw DomainError("times and norms differ in length");
  DecayReport rep;
  rep.times.assign(times.begin(), times.end());
  rep.norms.assign(norms.begin(), norms.end());
  rep.fit_window = window;
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < window.first || times[i] > window.second) continue;
    if (!(norms[i] > 0.0)) throw DomainError("non-positive norm inside the fit window at t = " + std::to_string(times[i]));
    xs.push_back(std::log1p(times[i]));
    ys.push_back(std::log(norms[i]));
  }
  if (xs.size() < 2) throw DomainError("fit window holds fewer than two samples");
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0) throw DomainError("fit window spans a single time");
  rep.fitted_exponent = sxy / sxx;
  double sse = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - my - rep.fitted_exponent * (xs[i] - mx);
    sse += e * e;
  }
  rep.r_squared = syy > 1e-300 ? std::clamp(1.0 - sse / syy, 0.0, 1.0) : 1.0;
  return rep;
}

std::vector<double> log_spaced_times(double lo, double hi, int per_decade) {
  if (!(lo > 0.0 && hi > lo) || per_decade < 1) throw DomainError("log spacing needs 0 < lo < hi");
  const int count = std::max(2, static_cast<int>(std::ceil(per_decade * std::log10(hi / lo))) + 1);
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1));
  out.back() = hi;
  return out;
}

SpectralState gaussian_state(const Grid1D& grid, double amplitude, double width) {
  const SpectralField g = forward_transform(RealField::sample(grid, [&](double x) {
    const double r = x / width;
    return amplitude * std::exp(-r * r);
  }));
  return SpectralState(g, g, g, g);
}

SpectralState shell_packet_state(const Grid1D& grid, int q, double amplitude, double width) {
  const double centre = 1.5 * std::ldexp(1.0, q);
  SpectralState S(grid);
  S[Component::v] = forward_transform(RealField::sample(grid, [&](double x) {
    const double r = x / width;
    return amplitude * std::exp(-r * r) * std::cos(centre * x);
  }));
  return S;
}

double derivative_l2(const SpectralState& S, int k) {
  double acc = 0.0;
  for (const auto& F : S.c) acc += spectral_l2_squared(derivative(F, k));
  return std::sqrt(acc);
}

DecayReport verify_linear_decay(const MaterialLaw& law, int k, const LinearDecayConfig& cfg) {
  if (k < 0) throw DomainError("derivative order must be non-negative");
  const Grid1D grid = make_grid(cfg.n_points, cfg.length);
  const ModalPropagator prop(grid, law);
  const SpectralState U0 = gaussian_state(grid, 1.0, cfg.width);
  const auto times = log_spaced_times(cfg.t_lo, cfg.t_hi);
  std::vector<double> norms;
  double boundary = 0.0;
  for (double t : times) {
    const SpectralState S = prop.propagate(U0, t);
    norms.push_back(derivative_l2(S, k));
    if (t == times.back()) boundary = boundary_mass_fraction(S);
  }
  DecayReport rep = fit_decay_exponent(times, norms, {cfg.t_lo, cfg.t_hi});
  rep.reference_exponent = -0.25 - 0.5 * k;
  rep.tolerance = 0.05 + 0.02 * k;
  rep.boundary_mass = boundary;
  rep.pass = std::abs(rep.fitted_exponent - rep.reference_exponent) <= rep.tolerance && boundary <= kBoundaryLimit;
  return rep;
}

ShellDecayReport shell_efolding(const MaterialLaw& law, int q, const Grid1D& grid) {
  ShellDecayReport rep;
  rep.q = q;
  rep.xi_centre = 1.5 * std::ldexp(1.0, q);
  if (rep.xi_centre * 1.5 > grid.nyquist()) throw ConfigError("grid does not resolve the shell packet");
  rep.spectral_rate = symbol_eigenvalues(rep.xi_centre, law)[0].real();
  const ModalPropagator prop(grid, law);
  const SpectralState U0 = shell_packet_state(grid, q);
  const double n0 = state_l2(U0);
  const double target = n0 / std::exp(1.0);
  auto norm_at = [&](double t) { return state_l2(prop.propagate(U0, t)); };

  double hi = 1.0;
  while (norm_at(hi) > target) {
    hi *= 2.0;
    if (hi > 1e9) throw NumericError("shell packet does not decay");
  }
  double lo = 0.0;
  for (int i = 0; i < 60 && hi - lo > 1e-10 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (norm_at(mid) > target ? lo : hi) = mid;
  }
  rep.efold_time = 0.5 * (lo + hi);

  if (rep.spectral_rate < 0.0) {
    const double t_max = 5.0 / -rep.spectral_rate;
    for (int i = 1; i <= 20; ++i) {
      const double t = t_max * i / 20.0;
      const double ratio = norm_at(t) / n0 / std::exp(t * rep.spectral_rate);
      rep.worst_factor = std::max({rep.worst_factor, ratio, 1.0 / ratio});
    }
  }
  return rep;
}

NonlinearDecayResult verify_nonlinear_decay(const NonlinearDecayConfig& cfg) {
  SimConfig sim;
  sim.n_points = cfg.n_points;
  sim.length = cfg.length;
  sim.law = cfg.law;
  sim.t_end = cfg.t_end;
  sim.snapshot_cadence = cfg.snapshot_cadence;
  sim.mode = EvolutionMode::nonlinear;
  sim.dt = cfg.dt > 0.0 ? cfg.dt : sim.cfl_limit();
  sim.validate();

  const Grid1D grid = sim.grid();
  const LPFilterBank bank = build_filter_bank(grid);
  const SpectralState U0 = gaussian_state(grid, cfg.amplitude, cfg.width);

  NonlinearDecayResult res;
  for (const auto& F : U0.c) {
    res.initial_besov_32 += besov_norm(F, BesovSpec{1.5, 2.0, 1.0, false}, bank);
    res.I0 += besov_norm(without_mean(F), BesovSpec{-0.5, 2.0, kInfinity, true}, bank);
  }
  res.I0 += res.initial_besov_32;

  EnergyAccumulator acc(bank);
  res.diagnostics = run(sim, U0, [&](double t, const SpectralState& S) { acc.add(t, S); });
  res.ledger = acc.ledger();

  const EnergyLedger& L = res.ledger;
  if (cfg.amplitude == 0.0) {
    res.decay.times = L.times;
    res.decay.norms = L.l2;
    res.decay.fit_window = {cfg.t_lo, cfg.t_end};
    res.decay.reference_exponent = -0.25;
    res.decay.pass = true;
    return res;
  }
  res.decay = fit_decay_exponent(L.times, L.l2, {cfg.t_lo, cfg.t_end});
  res.decay.reference_exponent = -0.25;
  res.decay.tolerance = 0.05;
  res.decay.boundary_mass = res.diagnostics.max_boundary_mass;
  res.decay.pass = res.decay.fitted_exponent <= -0.20 && res.decay.r_squared >= 0.98;

  double early = 0.0;
  for (std::size_t i = 0; i < L.times.size(); ++i) {
    const double N = L.N_of_t[i];
    const double D = L.D_script_of_t[i];
    res.shape_constant = std::max(res.shape_constant, N / (res.I0 + N * D + N * N));
    if (L.times[i] <= 5.0) early = std::max(early, N);
  }
  res.n_growth = early > 0.0 ? L.N_of_t.back() / early : 0.0;
  return res;
}

}  // namespace timo
