#include "timo/evolution.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <string>

#include "timo/errors.hpp"

namespace timo {
namespace {

constexpr double kConditionLimit = 1e6;
constexpr double kInverseCheck = 1e-8;
constexpr double kBlowUpFactor = 1e6;
constexpr double kBoundaryFraction = 0.45;

Eigen::Vector4cd apply_exp(const Eigen::Matrix4cd& E, const Eigen::Vector4cd& w, bool conjugate) {
  return conjugate ? Eigen::Vector4cd((E * w.conjugate()).conjugate()) : Eigen::Vector4cd(E * w);
}

double inverse_defect(const Eigen::Matrix4cd& forward, const Eigen::Matrix4cd& backward) {
  return (forward * backward - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff();
}

}  // namespace

double SimConfig::cfl_limit() const {
  return 0.5 * (length / static_cast<double>(n_points)) / std::max(1.0, law.a);
}

void SimConfig::validate() const {
  (void)grid();
  law.validate();
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("time step must be positive");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw ConfigError("t_end must be non-negative");
  if (snapshot_cadence < 1) throw ConfigError("snapshot cadence must be a positive integer");
  if (!(dealias_fraction > 0.0 && dealias_fraction <= 1.0)) throw ConfigError("dealias fraction must lie in (0, 1]");
  if (mode == EvolutionMode::nonlinear && dt > cfl_limit() * (1.0 + 1e-12)) {
    throw ConfigError("dt = " + std::to_string(dt) + " exceeds the CFL limit " + std::to_string(cfl_limit()));
  }
}

ModalPropagator::ModalPropagator(const Grid1D& grid, const MaterialLaw& law) : grid_(grid), law_(law) {
  law_.validate();
  const std::size_t half = grid_.size() / 2;
  modes_.resize(half);
  for (std::size_t m = 0; m < half; ++m) {
    Mode& mode = modes_[m];
    mode.M = symbol_matrix(grid_.dxi() * static_cast<double>(m), law_).matrix;
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(mode.M, true);
    if (solver.info() == Eigen::Success) {
      mode.V = solver.eigenvectors();
      mode.V_inv = mode.V.inverse();
      mode.lambda = solver.eigenvalues();
      const double cond = mode.V.norm() * mode.V_inv.norm();
      mode.diagonal = std::isfinite(cond) && cond < kConditionLimit;
    } else {
      mode.diagonal = false;
    }
  }
  check_accuracy(1.0);
}

Eigen::Matrix4cd ModalPropagator::exponential(long m, double t) const {
  const Mode& mode = modes_.at(static_cast<std::size_t>(m));
  if (!mode.diagonal) return (t * mode.M).exp();
  Eigen::Vector4cd e;
  for (int i = 0; i < 4; ++i) e[i] = std::exp(t * mode.lambda[i]);
  return mode.V * e.asDiagonal() * mode.V_inv;
}

std::size_t ModalPropagator::fallback_modes() const {
  return static_cast<std::size_t>(std::count_if(modes_.begin(), modes_.end(), [](const Mode& m) { return !m.diagonal; }));
}

void ModalPropagator::check_accuracy(double t) {
  for (std::size_t m = 0; m < modes_.size(); ++m) {
    const long w = static_cast<long>(m);
    double defect = inverse_defect(exponential(w, t), exponential(w, -t));
    if (defect > kInverseCheck && modes_[m].diagonal) {
      modes_[m].diagonal = false;
      defect = inverse_defect(exponential(w, t), exponential(w, -t));
    }
    if (defect > kInverseCheck) {
      throw NumericError("modal exponential inaccurate at xi = " + std::to_string(grid_.dxi() * static_cast<double>(m)) +
                         " (defect " + std::to_string(defect) + ")");
    }
  }
}

SpectralState ModalPropagator::propagate(const SpectralState& U0, double t) const {
  if (!(U0.grid() == grid_)) throw DomainError("state and propagator live on different grids");
  if (!(t >= 0.0)) throw DomainError("propagation time must be non-negative");
  SpectralState out(grid_);
  const std::size_t n = grid_.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (k == grid_.nyquist_index()) continue;
    const long w = grid_.wavenumber(k);
    const bool negative = w < 0;
    const Mode& mode = modes_[static_cast<std::size_t>(negative ? -w : w)];
    Eigen::Vector4cd v = U0.mode(k);
    if (negative) v = v.conjugate();
    if (mode.diagonal) {
      Eigen::Vector4cd c = mode.V_inv * v;
      for (int i = 0; i < 4; ++i) c[i] *= std::exp(t * mode.lambda[i]);
      v = mode.V * c;
    } else {
      v = (t * mode.M).exp() * v;
    }
    if (negative) v = v.conjugate();
    out.set_mode(k, v);
  }
  return out;
}

Eigen::Matrix4cd symbol_exponential(double xi, const MaterialLaw& law, double t) {
  const Eigen::Matrix4cd M = symbol_matrix(xi, law).matrix;
  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(M, true);
  if (solver.info() == Eigen::Success) {
    const Eigen::Matrix4cd V = solver.eigenvectors();
    const Eigen::Matrix4cd V_inv = V.inverse();
    if (V.norm() * V_inv.norm() < kConditionLimit) {
      Eigen::Vector4cd e;
      for (int i = 0; i < 4; ++i) e[i] = std::exp(t * solver.eigenvalues()[i]);
      return V * e.asDiagonal() * V_inv;
    }
  }
  return (t * M).exp();
}

SpectralState linear_propagate(const SpectralState& U0, const MaterialLaw& law, double t) {
  return ModalPropagator(U0.grid(), law).propagate(U0, t);
}

NonlinearIntegrator::NonlinearIntegrator(const SimConfig& cfg) : cfg_(cfg) {
  cfg_.validate();
  const auto steps = static_cast<std::size_t>(std::ceil(cfg_.t_end / cfg_.dt - 1e-9));
  dt_ = steps == 0 ? cfg_.dt : cfg_.t_end / static_cast<double>(steps);
  const ModalPropagator prop(cfg_.grid(), cfg_.law);
  half_.resize(cfg_.n_points / 2);
  for (std::size_t m = 0; m < half_.size(); ++m) half_[m] = prop.exponential(static_cast<long>(m), 0.5 * dt_);
}

SpectralField NonlinearIntegrator::source(const SpectralState& S) const {
  const RealField g = g_eval(inverse_transform(S[Component::z]), cfg_.law);
  return dealias(derivative(forward_transform(g)), cfg_.dealias_fraction);
}

void NonlinearIntegrator::step(SpectralState& S) const {
  const Grid1D& grid = S.grid();
  const std::size_t n = grid.size();
  auto half_step = [&]() {
    for (std::size_t k = 0; k < n; ++k) {
      if (k == grid.nyquist_index()) {
        S.set_mode(k, Eigen::Vector4cd::Zero());
        continue;
      }
      const long w = grid.wavenumber(k);
      S.set_mode(k, apply_exp(half_[static_cast<std::size_t>(std::labs(w))], S.mode(k), w < 0));
    }
  };
  half_step();
  // z is frozen during the source update, so the source is constant over the
  // substep and the midpoint rule reduces to a single evaluation.
  if (!cfg_.law.is_linear()) {
    const SpectralField G = source(S);
    SpectralField& y = S[Component::y];
    for (std::size_t k = 0; k < n; ++k) y[k] += dt_ * G[k];
  }
  half_step();
}

SpectralState nonlinear_step(const SpectralState& U, const MaterialLaw& law, double dt, const SimConfig& cfg) {
  SimConfig one = cfg;
  one.law = law;
  one.dt = dt;
  one.t_end = dt;
  one.mode = EvolutionMode::nonlinear;
  NonlinearIntegrator integrator(one);
  SpectralState S = U;
  integrator.step(S);
  return S;
}

double boundary_mass_fraction(const SpectralState& S) {
  const Grid1D& grid = S.grid();
  double total = 0.0;
  double edge = 0.0;
  for (const auto& F : S.c) {
    const RealField f = inverse_transform(F);
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const double w = f[j] * f[j];
      total += w;
      if (std::abs(grid.x(j)) >= kBoundaryFraction * grid.length()) edge += w;
    }
  }
  return total > 0.0 ? edge / total : 0.0;
}

RunDiagnostics run(const SimConfig& cfg, const SpectralState& U0, const SnapshotObserver& observer) {
  cfg.validate();
  if (!(U0.grid() == cfg.grid())) throw ConfigError("initial state does not match the configured grid");
  RunDiagnostics diag;
  const double l2_0 = state_l2(U0);
  auto record = [&](double t, const SpectralState& S) {
    const double l2 = state_l2(S);
    if (!std::isfinite(l2)) throw NumericError("non-finite state at t = " + std::to_string(t));
    if (l2_0 > 0.0 && l2 > kBlowUpFactor * l2_0) {
      throw StabilityError("blow-up guard tripped at t = " + std::to_string(t));
    }
    diag.max_l2 = std::max(diag.max_l2, l2);
    diag.max_reality_residue = std::max(diag.max_reality_residue, state_reality_residue(S));
    diag.max_boundary_mass = std::max(diag.max_boundary_mass, boundary_mass_fraction(S));
    observer(t, S);
  };

  const auto steps = static_cast<std::size_t>(std::ceil(cfg.t_end / cfg.dt - 1e-9));
  const double dt = steps == 0 ? cfg.dt : cfg.t_end / static_cast<double>(steps);
  const auto cadence = static_cast<std::size_t>(cfg.snapshot_cadence);
  diag.steps = steps;
  record(0.0, U0);
  if (steps == 0) return diag;

  if (cfg.mode == EvolutionMode::linear) {
    const ModalPropagator prop(cfg.grid(), cfg.law);
    for (std::size_t i = cadence; i < steps + cadence; i += cadence) {
      const std::size_t k = std::min(i, steps);
      record(k == steps ? cfg.t_end : static_cast<double>(k) * dt, prop.propagate(U0, static_cast<double>(k) * dt));
    }
    return diag;
  }

  const NonlinearIntegrator integrator(cfg);
  SpectralState S = U0;
  for (std::size_t i = 1; i <= steps; ++i) {
    integrator.step(S);
    if (i % cadence == 0 || i == steps) {
      record(i == steps ? cfg.t_end : static_cast<double>(i) * dt, S);
    } else if (!std::isfinite(S[Component::z][1].real())) {
      throw NumericError("non-finite state at step " + std::to_string(i));
    }
  }
  return diag;
}

Trajectory run(const SimConfig& cfg, const SpectralState& U0) {
  Trajectory traj;
  traj.law = cfg.law;
  traj.diagnostics = run(cfg, U0, [&](double t, const SpectralState& S) {
    traj.times.push_back(t);
    traj.states.push_back(S);
  });
  return traj;
}

std::vector<ModalRate> modal_decay_rates(const MaterialLaw& law, std::span<const double> xis) {
  law.validate();
  std::vector<ModalRate> out;
  if (law.gamma == 0.0) {
    for (double xi : xis) out.push_back({xi, 0.0});
    return out;
  }
  const Eigen::Vector4cd w = Eigen::Vector4cd::Constant(Complex{0.5, 0.0});
  const double t0 = 60.0 / law.gamma;
  constexpr int kSamples = 256;
  for (double xi : xis) {
    if (xi == 0.0) throw DomainError("modal decay rate undefined at xi = 0");
    const double span = 10.0 / eta_regularity_loss(xi);
    double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
    for (int i = 0; i < kSamples; ++i) {
      const double t = t0 + span * i / (kSamples - 1);
      const double y = std::log((symbol_exponential(xi, law, t) * w).norm());
      st += t;
      sy += y;
      stt += t * t;
      sty += t * y;
    }
    const double slope = (kSamples * sty - st * sy) / (kSamples * stt - st * st);
    out.push_back({xi, -slope});
  }
  return out;
}

}  // namespace timo
