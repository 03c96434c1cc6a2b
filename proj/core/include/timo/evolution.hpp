#pragma once

#include <Eigen/Dense>

#include <functional>
#include <span>
#include <vector>

#include "timo/besov.hpp"
#include "timo/filter_bank.hpp"
#include "timo/model.hpp"

namespace timo {

enum class EvolutionMode { linear, nonlinear };

struct SimConfig {
  std::size_t n_points = 8192;
  double length = 400.0 * 3.14159265358979323846;
  MaterialLaw law;
  double t_end = 1.0;
  double dt = 0.01;
  int snapshot_cadence = 10;
  double dealias_fraction = 2.0 / 3.0;
  EvolutionMode mode = EvolutionMode::linear;

  Grid1D grid() const { return make_grid(n_points, length); }
  /// 0.5 * spacing / max(1, a).
  double cfl_limit() const;
  void validate() const;
};

/// Exact flow of the linearized system, one 4x4 exponential per Fourier mode.
///
/// Modes with a well-conditioned eigenbasis use V exp(t Lambda) V^-1; the rest
/// fall back to a Pade scaling-and-squaring exponential. Negative wavenumbers
/// reuse the conjugate of the matching positive one, so real data stay real.
/// The Nyquist mode is dropped.
class ModalPropagator {
 public:
  ModalPropagator(const Grid1D& grid, const MaterialLaw& law);

  const Grid1D& grid() const { return grid_; }
  const MaterialLaw& law() const { return law_; }

  SpectralState propagate(const SpectralState& U0, double t) const;
  /// exp(t M(xi)) for the mode with non-negative wavenumber m.
  Eigen::Matrix4cd exponential(long m, double t) const;
  /// Number of modes that use the fallback exponential.
  std::size_t fallback_modes() const;

 private:
  struct Mode {
    bool diagonal = true;
    Eigen::Matrix4cd M;
    Eigen::Matrix4cd V;
    Eigen::Matrix4cd V_inv;
    Eigen::Vector4cd lambda;
  };

  void check_accuracy(double t);

  Grid1D grid_;
  MaterialLaw law_;
  std::vector<Mode> modes_;  // indexed by wavenumber 0 .. n/2 - 1
};

/// exp(t M(xi)) for a single frequency (eigen-decomposition or fallback).
Eigen::Matrix4cd symbol_exponential(double xi, const MaterialLaw& law, double t);

/// Exact linear flow of U0 to time t.
SpectralState linear_propagate(const SpectralState& U0, const MaterialLaw& law, double t);

/// Strang splitting for the quasilinear system: exact linear half steps around
/// an explicit update y += dt * d/dx g(z) with the source dealiased.
class NonlinearIntegrator {
 public:
  explicit NonlinearIntegrator(const SimConfig& cfg);

  void step(SpectralState& S) const;
  /// d/dx g(z), dealiased, in modes.
  SpectralField source(const SpectralState& S) const;
  double dt() const { return dt_; }

 private:
  SimConfig cfg_;
  double dt_;
  std::vector<Eigen::Matrix4cd> half_;  // exp(dt/2 M) per wavenumber 0 .. n/2 - 1
};

/// One Strang step from U with the given dt (convenience wrapper).
SpectralState nonlinear_step(const SpectralState& U, const MaterialLaw& law, double dt, const SimConfig& cfg);

struct RunDiagnostics {
  double max_reality_residue = 0.0;
  /// Largest fraction of L^2 mass found in |x| >= 0.45 length.
  double max_boundary_mass = 0.0;
  double max_l2 = 0.0;
  std::size_t steps = 0;
};

struct Trajectory {
  MaterialLaw law;
  std::vector<double> times;
  std::vector<SpectralState> states;
  RunDiagnostics diagnostics;
};

using SnapshotObserver = std::function<void(double t, const SpectralState& S)>;

/// Runs cfg from U0 and hands every snapshot (t = 0, every snapshot_cadence
/// steps, and t_end) to the observer. Throws StabilityError if the L^2 norm
/// exceeds 1e6 times its initial value.
RunDiagnostics run(const SimConfig& cfg, const SpectralState& U0, const SnapshotObserver& observer);
Trajectory run(const SimConfig& cfg, const SpectralState& U0);

/// Fraction of the L^2 mass of S in |x| >= 0.45 length.
double boundary_mass_fraction(const SpectralState& S);

struct EnergyLedger {
  double E_T = 0.0;
  double y_norm = 0.0;
  double v_zx_norm = 0.0;
  double ux_norm = 0.0;
  std::vector<double> times;
  std::vector<double> l2;
  std::vector<double> besov_32;
  std::vector<double> N_of_t;
  std::vector<double> D_script_of_t;
  double D_script = 0.0;

  double D_T() const { return y_norm + v_zx_norm + ux_norm; }
};

/// Streaming evaluation of E(T), D(T), N(t) and the z_x dissipation along a run.
class EnergyAccumulator {
 public:
  explicit EnergyAccumulator(const LPFilterBank& bank);

  void add(double t, const SpectralState& S);
  EnergyLedger ledger() const;

 private:
  const LPFilterBank* bank_;
  std::vector<CheminLernerAccumulator> E_;
  CheminLernerAccumulator y_;
  CheminLernerAccumulator v_;
  CheminLernerAccumulator zx_;
  CheminLernerAccumulator ux_;
  EnergyLedger partial_;
  double last_t_ = 0.0;
  double last_d_ = 0.0;
  double d_integral_ = 0.0;
};

EnergyLedger energy_functionals(const Trajectory& traj, const LPFilterBank& bank);

/// -int (block_q v block_q y + a block_q u block_q z) dx over inhomogeneous block q.
double lyapunov_e1(const SpectralState& U, int q, double a, const LPFilterBank& bank);
/// Largest residual of the block-q energy identity over interior snapshots of a
/// linear run, with d/dt by three-point centered differences.
double lyapunov_identity_residual(const Trajectory& traj, int q, const LPFilterBank& bank);

struct ModalRate {
  double xi = 0.0;
  double rate = 0.0;
};

/// Late-time decay rate of |exp(t M(xi)) w| for w = (1,1,1,1)/2, from a
/// least-squares fit of log|.| over t in [t0, t0 + 10 / eta_regularity_loss(xi)].
std::vector<ModalRate> modal_decay_rates(const MaterialLaw& law, std::span<const double> xis);

struct FourierEnergyReport {
  double c3 = 0.0;
  double c_prime = 0.0;
  std::size_t fit_samples = 0;
  std::size_t check_samples = 0;
  std::size_t violations = 0;
  /// min over samples of -(d/dt |U|^2) / (eta |U|^2); negative when the plain
  /// modulus is not monotone.
  double instantaneous_c3 = 0.0;
};

/// Fits C' in |U(t,xi)|^2 <= C'(exp(-c3 eta t)|U0|^2 + int_0^t exp(-c3 eta (t-s)) xi^2 |g(s)|^2 ds)
/// on even snapshots for modes with |xi| in [xi_lo, xi_hi], then counts
/// violations on odd snapshots. eta = xi^2 / (1 + xi^2)^2.
FourierEnergyReport fourier_energy_residual(const Trajectory& traj, double c3, double xi_lo, double xi_hi);

}  // namespace timo
