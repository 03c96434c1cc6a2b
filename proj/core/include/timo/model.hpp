#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "timo/spectral.hpp"

namespace timo {

enum class SigmaForm { cubic, quadratic };

/// Stress law sigma(eta) = a^2 eta + beta eta^3 (cubic) or a^2 eta + alpha eta^2
/// (quadratic), with damping gamma. sigma'(0) = a^2 by construction.
struct MaterialLaw {
  double a = 2.0;
  double gamma = 1.0;
  SigmaForm form = SigmaForm::cubic;
  double beta = 1.0;
  double alpha = 0.0;

  static MaterialLaw cubic(double a, double gamma, double beta);
  static MaterialLaw quadratic(double a, double gamma, double alpha);

  void validate() const;
  double sigma(double eta) const;
  double sigma_prime(double eta) const;
  /// g(z) = sigma(z/a) - a z; vanishes to second order at z = 0.
  double g(double z) const;
  /// True when the nonlinear source vanishes identically.
  bool is_linear() const;
};

std::string to_string(SigmaForm form);
SigmaForm parse_sigma_form(const std::string& name);

enum class Component : std::size_t { v = 0, u = 1, z = 2, y = 3 };

/// U = (v, u, z, y) sampled on a shared grid.
struct StateU {
  RealField v, u, z, y;

  const Grid1D& grid() const { return v.grid(); }
  void validate() const;
};

/// Modes of (v, u, z, y).
struct SpectralState {
  std::array<SpectralField, 4> c;

  SpectralState() = default;
  explicit SpectralState(const Grid1D& grid);
  SpectralState(SpectralField v, SpectralField u, SpectralField z, SpectralField y);

  const Grid1D& grid() const { return c[0].grid(); }
  SpectralField& operator[](Component k) { return c[static_cast<std::size_t>(k)]; }
  const SpectralField& operator[](Component k) const { return c[static_cast<std::size_t>(k)]; }
  Eigen::Vector4cd mode(std::size_t k) const;
  void set_mode(std::size_t k, const Eigen::Vector4cd& w);
};

/// Beam displacement phi, rotation psi and their velocities.
struct PhysicalState {
  RealField phi, phi_t, psi, psi_t;
};

SpectralState to_spectral(const StateU& U);
StateU to_physical(const SpectralState& S);

/// Euclidean L^2 norm over the four components.
double state_l2(const SpectralState& S);
/// Largest reality residue over the four components.
double state_reality_residue(const SpectralState& S);

/// v = phi_x - psi, u = phi_t, z = a psi_x, y = psi_t, derivatives spectral.
StateU to_first_order(const PhysicalState& ps, const MaterialLaw& law);

/// Pointwise g(z). Throws StabilityError where sigma'(z/a) <= 0.
RealField g_eval(const RealField& z, const MaterialLaw& law);

/// Flux matrix A(U) at a point with the given z.
Eigen::Matrix4d assemble_A(double z, const MaterialLaw& law);
/// A(U) at every grid point.
std::vector<Eigen::Matrix4d> assemble_A(const StateU& U, const MaterialLaw& law);
Eigen::Matrix4d assemble_L(const MaterialLaw& law);

struct LinearSymbol {
  double xi = 0.0;
  Eigen::Matrix4cd matrix;
};

/// M(xi) = -(i xi A(0) + L).
LinearSymbol symbol_matrix(double xi, const MaterialLaw& law);
/// Eigenvalues of M(xi) sorted by real part, descending (ties by imaginary part).
std::array<Complex, 4> symbol_eigenvalues(double xi, const MaterialLaw& law);

/// Monic characteristic polynomial det(lambda I - M), lowest degree first,
/// by the Faddeev-LeVerrier recursion.
std::array<Complex, 5> characteristic_polynomial(const Eigen::Matrix4cd& M);
/// Roots of a polynomial given lowest degree first (Aberth iteration).
std::vector<Complex> polynomial_roots(std::span<const Complex> coeffs);
/// Largest distance between the eigen-solver spectrum and the characteristic
/// polynomial roots over `samples` random xi in [-xi_max, xi_max].
double eigenvalue_cross_check(const MaterialLaw& law, int samples, double xi_max, std::uint64_t seed = 1);

double eta_standard(double xi);
double eta_regularity_loss(double xi);

enum class Envelope { standard, regularity_loss, none };
std::string to_string(Envelope e);

struct EnvelopeReport {
  double a = 0.0;
  std::vector<double> xi_samples;
  std::vector<double> max_re_lambda;
  double fitted_c1 = 0.0;
  double fitted_c2 = 0.0;
  Envelope classification = Envelope::none;
  /// min over |xi| >= 1 of -max Re lambda.
  double high_frequency_gap = 0.0;
};

inline constexpr double kEnvelopeTolerance = 1e-6;

EnvelopeReport envelope_fit(const MaterialLaw& law, double xi_max, int n_xi);

/// xi^2 (-max Re lambda(xi)) on log-spaced xi in [lo, hi].
std::vector<double> tail_scaling(const MaterialLaw& law, double lo, double hi, int n);

}  // namespace timo
