#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "timo/besov.hpp"
#include "timo/evolution.hpp"
#include "timo/filter_bank.hpp"
#include "timo/model.hpp"

namespace timo {

/// Exponents of the heat-type estimate
/// ||2^{q sigma} ||block_q f e^{-eta t}||_2||_{l^r} <= C[(1+t)^{-(sigma+s)/2} ||f||_{B^{-s}_{2,inf}}
///   + (1+t)^{-ell/2 + n/2 (1/p - 1/2)} ||f||_{B^{sigma+ell}_{p,r}}],  eta = xi^2/(1+xi^2)^2.
struct Prop31Params {
  double sigma = 0.0;
  double s = 0.5;
  double ell = 1.0;
  double p = 2.0;
  double r = 2.0;
  int n = 1;

  void validate() const;
};

double prop31_lhs(const SpectralField& F, double t, const Prop31Params& params, const LPFilterBank& bank);
double prop31_rhs(const SpectralField& F, double t, const Prop31Params& params, const LPFilterBank& bank);

struct Prop31Result {
  std::vector<double> times;
  std::vector<double> lhs;
  std::vector<double> rhs;
  double constant = 0.0;
  bool lhs_non_increasing = true;
  /// False when the right side vanishes while the left does not.
  bool valid = true;
};

Prop31Result verify_prop31(const SpectralField& F, const Prop31Params& params, std::span<const double> times,
                           const LPFilterBank& bank);

struct DecayReport {
  std::vector<double> times;
  std::vector<double> norms;
  double fitted_exponent = 0.0;
  std::pair<double, double> fit_window{20.0, 500.0};
  double r_squared = 0.0;
  double reference_exponent = 0.0;
  double tolerance = 0.0;
  double boundary_mass = 0.0;
  bool pass = false;
};

/// Least-squares slope of log(norm) against log(1+t) over the window.
DecayReport fit_decay_exponent(std::span<const double> times, std::span<const double> norms,
                               std::pair<double, double> window);

/// Log-spaced times in [lo, hi], per_decade points per decade, endpoints included.
std::vector<double> log_spaced_times(double lo, double hi, int per_decade = 40);

/// amplitude * exp(-x^2 / width^2) in every component.
SpectralState gaussian_state(const Grid1D& grid, double amplitude, double width = 1.0);
/// v = amplitude * exp(-x^2 / width^2) cos(1.5 * 2^q x), other components zero.
SpectralState shell_packet_state(const Grid1D& grid, int q, double amplitude = 1.0, double width = 8.0);

/// ||d^k U||_{L^2} summed in the Euclidean sense over components.
double derivative_l2(const SpectralState& S, int k);

struct LinearDecayConfig {
  std::size_t n_points = 32768;
  double length = 400.0 * 3.14159265358979323846;
  double t_lo = 20.0;
  double t_hi = 500.0;
  double width = 1.0;
};

/// Gaussian data: fits the L^2 exponent of d^k U(t) against -1/4 - k/2,
/// tolerance 0.05 + 0.02 k.
DecayReport verify_linear_decay(const MaterialLaw& law, int k, const LinearDecayConfig& cfg);

struct ShellDecayReport {
  int q = 0;
  double xi_centre = 0.0;
  double efold_time = 0.0;
  /// max Re lambda at the packet centre.
  double spectral_rate = 0.0;
  /// Largest factor between ||U(t)||/||U0|| and exp(t max Re lambda) for t |max Re lambda| <= 5.
  double worst_factor = 0.0;
};

/// Time at which the L^2 norm of the shell packet falls to 1/e of its initial value.
ShellDecayReport shell_efolding(const MaterialLaw& law, int q, const Grid1D& grid);

struct NonlinearDecayConfig {
  MaterialLaw law;
  std::size_t n_points = 8192;
  double length = 400.0 * 3.14159265358979323846;
  double amplitude = 0.01;
  double width = 4.0;
  double t_end = 500.0;
  double dt = 0.0;  // 0 selects the CFL limit
  int snapshot_cadence = 10;
  double t_lo = 20.0;
};

struct NonlinearDecayResult {
  DecayReport decay;
  EnergyLedger ledger;
  RunDiagnostics diagnostics;
  double initial_besov_32 = 0.0;
  double I0 = 0.0;
  /// max_t N(t) / (I0 + N(t) D(t) + N(t)^2).
  double shape_constant = 0.0;
  /// max N over the run divided by max N over t in [0, 5].
  double n_growth = 0.0;
};

NonlinearDecayResult verify_nonlinear_decay(const NonlinearDecayConfig& cfg);

}  // namespace timo
