#include <algorithm>
#include <cmath>
#include <limits>

#include "timo/errors.hpp"
#include "timo/evolution.hpp"

namespace timo {
namespace {

CheminLernerSpec cl_spec(double theta, double s, bool homogeneous = false) {
  return {theta, BesovSpec{s, 2.0, 1.0, homogeneous}};
}

double three_point_derivative(double t0, double t1, double t2, double f0, double f1, double f2) {
  const double h1 = t1 - t0;
  const double h2 = t2 - t1;
  return -h2 / (h1 * (h1 + h2)) * f0 + (h2 - h1) / (h1 * h2) * f1 + h1 / (h2 * (h1 + h2)) * f2;
}

}  // namespace

EnergyAccumulator::EnergyAccumulator(const LPFilterBank& bank)
    : bank_(&bank),
      y_(cl_spec(2.0, 1.5), bank),
      v_(cl_spec(2.0, 0.5), bank),
      zx_(cl_spec(2.0, 0.5), bank),
      ux_(cl_spec(2.0, -0.5), bank) {
  for (int i = 0; i < 4; ++i) E_.emplace_back(cl_spec(kInfinity, 1.5), bank);
}

void EnergyAccumulator::add(double t, const SpectralState& S) {
  const SpectralField zx = derivative(S[Component::z]);
  const SpectralField ux = derivative(S[Component::u]);
  const BesovSpec b32{1.5, 2.0, 1.0, false};
  double b = 0.0;
  for (int i = 0; i < 4; ++i) {
    E_[i].add(t, S.c[i]);
    b += besov_norm(S.c[i], b32, *bank_);
  }
  y_.add(t, S[Component::y]);
  v_.add(t, S[Component::v]);
  zx_.add(t, zx);
  ux_.add(t, ux);

  const double l2 = state_l2(S);
  const double weighted = std::pow(1.0 + t, 0.25) * l2;
  const double n_prev = partial_.N_of_t.empty() ? 0.0 : partial_.N_of_t.back();
  const double d = std::pow(besov_norm(zx, BesovSpec{0.5, 2.0, 1.0, true}, *bank_), 2);
  if (!partial_.times.empty()) d_integral_ += 0.5 * (t - last_t_) * (last_d_ + d);
  last_t_ = t;
  last_d_ = d;

  partial_.times.push_back(t);
  partial_.l2.push_back(l2);
  partial_.besov_32.push_back(b);
  partial_.N_of_t.push_back(std::max(n_prev, weighted));
  partial_.D_script_of_t.push_back(std::sqrt(d_integral_));
}

EnergyLedger EnergyAccumulator::ledger() const {
  if (partial_.times.empty()) throw DomainError("empty trajectory");
  EnergyLedger out = partial_;
  out.E_T = 0.0;
  for (const auto& e : E_) out.E_T += e.value();
  out.y_norm = y_.value();
  out.v_zx_norm = v_.value() + zx_.value();
  out.ux_norm = ux_.value();
  out.D_script = out.D_script_of_t.back();
  return out;
}

EnergyLedger energy_functionals(const Trajectory& traj, const LPFilterBank& bank) {
  if (traj.times.empty()) throw DomainError("empty trajectory");
  EnergyAccumulator acc(bank);
  for (std::size_t i = 0; i < traj.times.size(); ++i) acc.add(traj.times[i], traj.states[i]);
  return acc.ledger();
}

double lyapunov_e1(const SpectralState& U, int q, double a, const LPFilterBank& bank) {
  const SpectralField v = bank.apply(q, U[Component::v], false);
  const SpectralField u = bank.apply(q, U[Component::u], false);
  const SpectralField z = bank.apply(q, U[Component::z], false);
  const SpectralField y = bank.apply(q, U[Component::y], false);
  return -(spectral_inner(v, y) + a * spectral_inner(u, z));
}

double lyapunov_identity_residual(const Trajectory& traj, int q, const LPFilterBank& bank) {
  const std::size_t n = traj.times.size();
  if (n < 3) throw DomainError("identity residual needs at least three snapshots");
  if (q < -1) throw DomainError("inhomogeneous block index must be >= -1");
  const double a = traj.law.a;
  const double gamma = traj.law.gamma;
  std::vector<double> e1(n);
  for (std::size_t i = 0; i < n; ++i) e1[i] = lyapunov_e1(traj.states[i], q, a, bank);
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const SpectralState& S = traj.states[i];
    const SpectralField v = bank.apply(q, S[Component::v], false);
    const SpectralField y = bank.apply(q, S[Component::y], false);
    const SpectralField ux = bank.apply(q, derivative(S[Component::u]), false);
    const double rhs = spectral_l2_squared(y) + (a * a - 1.0) * spectral_inner(y, ux) + gamma * spectral_inner(y, v);
    const double de = three_point_derivative(traj.times[i - 1], traj.times[i], traj.times[i + 1], e1[i - 1], e1[i], e1[i + 1]);
    worst = std::max(worst, std::abs(de + spectral_l2_squared(v) - rhs));
  }
  return worst;
}

FourierEnergyReport fourier_energy_residual(const Trajectory& traj, double c3, double xi_lo, double xi_hi) {
  const std::size_t n_t = traj.times.size();
  if (n_t < 3) throw DomainError("Fourier energy check needs at least three snapshots");
  if (!(c3 >= 0.0)) throw DomainError("c3 must be non-negative");
  const Grid1D& grid = traj.states.front().grid();

  std::vector<SpectralField> g;
  if (!traj.law.is_linear()) {
    g.reserve(n_t);
    for (const auto& S : traj.states) g.push_back(forward_transform(g_eval(inverse_transform(S[Component::z]), traj.law)));
  }

  double peak0 = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) peak0 = std::max(peak0, traj.states[0].mode(k).squaredNorm());

  FourierEnergyReport rep;
  rep.c3 = c3;
  rep.instantaneous_c3 = std::numeric_limits<double>::infinity();
  std::vector<std::pair<std::size_t, double>> check;  // (mode, ratio) on odd snapshots
  double fit_max = 0.0;
  for (long m = 1; m < static_cast<long>(grid.size() / 2); ++m) {
    const double xi = grid.dxi() * static_cast<double>(m);
    if (xi < xi_lo || xi > xi_hi) continue;
    const auto k = static_cast<std::size_t>(m);
    const double u0 = traj.states[0].mode(k).squaredNorm();
    if (u0 <= 1e-20 * peak0) continue;
    const double eta = eta_regularity_loss(xi);
    std::vector<double> e(n_t);
    for (std::size_t i = 0; i < n_t; ++i) e[i] = traj.states[i].mode(k).squaredNorm();
    double duhamel = 0.0;
    double f_prev = g.empty() ? 0.0 : xi * xi * std::norm(g[0][k]);
    for (std::size_t i = 0; i < n_t; ++i) {
      const double t = traj.times[i];
      if (i > 0) {
        const double h = t - traj.times[i - 1];
        const double f = g.empty() ? 0.0 : xi * xi * std::norm(g[i][k]);
        const double decay = std::exp(-c3 * eta * h);
        duhamel = decay * duhamel + 0.5 * h * (decay * f_prev + f);
        f_prev = f;
      }
      const double bound = std::exp(-c3 * eta * t) * u0 + duhamel;
      if (!(bound > 0.0)) continue;
      const double ratio = e[i] / bound;
      if (i % 2 == 0) {
        fit_max = std::max(fit_max, ratio);
        ++rep.fit_samples;
      } else {
        check.emplace_back(k, ratio);
      }
      if (i > 0 && i + 1 < n_t && e[i] > 0.0) {
        const double de = three_point_derivative(traj.times[i - 1], t, traj.times[i + 1], e[i - 1], e[i], e[i + 1]);
        rep.instantaneous_c3 = std::min(rep.instantaneous_c3, -de / (eta * e[i]));
      }
    }
  }
  if (rep.fit_samples == 0) throw DomainError("no resolved modes with data in the requested xi range");
  // Safety factor for the sampling gap between fit and check snapshots.
  rep.c_prime = 1.05 * fit_max;
  rep.check_samples = check.size();
  for (const auto& [k, ratio] : check) {
    if (ratio > rep.c_prime) ++rep.violations;
  }
  return rep;
}

}  // namespace timo
