#include "timo/model.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "timo/errors.hpp"

namespace timo {
namespace {

constexpr double kHuge = std::numeric_limits<double>::infinity();

void require_same_grid(const Grid1D& a, const Grid1D& b) {
  if (!(a == b)) throw DomainError("state components live on different grids");
}

bool finite_field(const RealField& f) {
  return std::all_of(f.samples().begin(), f.samples().end(), [](double x) { return std::isfinite(x); });
}

Complex horner(std::span<const Complex> coeffs, Complex x) {
  Complex acc{};
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
  return acc;
}

double matched_distance(std::array<Complex, 4> a, std::vector<Complex> b) {
  std::array<int, 4> perm{0, 1, 2, 3};
  double best = kHuge;
  do {
    double worst = 0.0;
    for (int i = 0; i < 4; ++i) worst = std::max(worst, std::abs(a[i] - b[perm[i]]));
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

MaterialLaw MaterialLaw::cubic(double a, double gamma, double beta) {
  MaterialLaw law{a, gamma, SigmaForm::cubic, beta, 0.0};
  law.validate();
  return law;
}

MaterialLaw MaterialLaw::quadratic(double a, double gamma, double alpha) {
  MaterialLaw law{a, gamma, SigmaForm::quadratic, 0.0, alpha};
  law.validate();
  return law;
}

void MaterialLaw::validate() const {
  if (!(a > 0.0) || !std::isfinite(a)) throw ConfigError("sound speed a must be positive");
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw ConfigError("damping gamma must be non-negative");
  if (form == SigmaForm::cubic && (!(beta >= 0.0) || !std::isfinite(beta))) {
    throw ConfigError("cubic law needs beta >= 0");
  }
  if (form == SigmaForm::quadratic && !std::isfinite(alpha)) throw ConfigError("quadratic law needs finite alpha");
}

double MaterialLaw::sigma(double eta) const {
  const double lin = a * a * eta;
  return form == SigmaForm::cubic ? lin + beta * eta * eta * eta : lin + alpha * eta * eta;
}

double MaterialLaw::sigma_prime(double eta) const {
  const double lin = a * a;
  return form == SigmaForm::cubic ? lin + 3.0 * beta * eta * eta : lin + 2.0 * alpha * eta;
}

double MaterialLaw::g(double z) const {
  const double eta = z / a;
  return form == SigmaForm::cubic ? beta * eta * eta * eta : alpha * eta * eta;
}

bool MaterialLaw::is_linear() const { return form == SigmaForm::cubic ? beta == 0.0 : alpha == 0.0; }

std::string to_string(SigmaForm form) { return form == SigmaForm::cubic ? "cubic" : "quadratic"; }

SigmaForm parse_sigma_form(const std::string& name) {
  if (name == "cubic") return SigmaForm::cubic;
  if (name == "quadratic") return SigmaForm::quadratic;
  throw ConfigError("unknown sigma form '" + name + "'");
}

void StateU::validate() const {
  require_same_grid(v.grid(), u.grid());
  require_same_grid(v.grid(), z.grid());
  require_same_grid(v.grid(), y.grid());
  if (!finite_field(v) || !finite_field(u) || !finite_field(z) || !finite_field(y)) {
    throw NumericError("state contains non-finite samples");
  }
}

SpectralState::SpectralState(const Grid1D& grid) : c{SpectralField(grid), SpectralField(grid), SpectralField(grid), SpectralField(grid)} {}

SpectralState::SpectralState(SpectralField v, SpectralField u, SpectralField z, SpectralField y)
    : c{std::move(v), std::move(u), std::move(z), std::move(y)} {
  for (int i = 1; i < 4; ++i) require_same_grid(c[0].grid(), c[i].grid());
}

Eigen::Vector4cd SpectralState::mode(std::size_t k) const {
  return {c[0][k], c[1][k], c[2][k], c[3][k]};
}

void SpectralState::set_mode(std::size_t k, const Eigen::Vector4cd& w) {
  for (int i = 0; i < 4; ++i) c[i][k] = w[i];
}

SpectralState to_spectral(const StateU& U) {
  U.validate();
  return SpectralState(forward_transform(U.v), forward_transform(U.u), forward_transform(U.z), forward_transform(U.y));
}

StateU to_physical(const SpectralState& S) {
  return {inverse_transform(S.c[0]), inverse_transform(S.c[1]), inverse_transform(S.c[2]), inverse_transform(S.c[3])};
}

double state_l2(const SpectralState& S) {
  double acc = 0.0;
  for (const auto& f : S.c) acc += spectral_l2_squared(f);
  return std::sqrt(acc);
}

double state_reality_residue(const SpectralState& S) {
  double worst = 0.0;
  for (const auto& f : S.c) worst = std::max(worst, reality_residue(f));
  return worst;
}

StateU to_first_order(const PhysicalState& ps, const MaterialLaw& law) {
  const Grid1D& grid = ps.phi.grid();
  for (const auto* f : {&ps.phi_t, &ps.psi, &ps.psi_t}) require_same_grid(grid, f->grid());
  const RealField phi_x = inverse_transform(derivative(forward_transform(ps.phi)));
  const RealField psi_x = inverse_transform(derivative(forward_transform(ps.psi)));
  StateU U{RealField(grid), ps.phi_t, RealField(grid), ps.psi_t};
  for (std::size_t j = 0; j < grid.size(); ++j) {
    U.v[j] = phi_x[j] - ps.psi[j];
    U.z[j] = law.a * psi_x[j];
  }
  return U;
}

RealField g_eval(const RealField& z, const MaterialLaw& law) {
  RealField out(z.grid());
  for (std::size_t j = 0; j < z.size(); ++j) {
    const double eta = z[j] / law.a;
    if (!(law.sigma_prime(eta) > 0.0)) {
      throw StabilityError("sigma'(z/a) <= 0 at grid point " + std::to_string(j) + " (z = " + std::to_string(z[j]) +
                           "): hyperbolicity lost");
    }
    out[j] = law.g(z[j]);
  }
  return out;
}

Eigen::Matrix4d assemble_A(double z, const MaterialLaw& law) {
  Eigen::Matrix4d A = Eigen::Matrix4d::Zero();
  A(0, 1) = -1.0;
  A(1, 0) = -1.0;
  A(2, 3) = -law.a;
  A(3, 2) = -law.sigma_prime(z / law.a) / law.a;
  return A;
}

std::vector<Eigen::Matrix4d> assemble_A(const StateU& U, const MaterialLaw& law) {
  U.validate();
  std::vector<Eigen::Matrix4d> out;
  out.reserve(U.z.size());
  for (std::size_t j = 0; j < U.z.size(); ++j) out.push_back(assemble_A(U.z[j], law));
  return out;
}

Eigen::Matrix4d assemble_L(const MaterialLaw& law) {
  Eigen::Matrix4d L = Eigen::Matrix4d::Zero();
  L(0, 3) = 1.0;
  L(3, 0) = -1.0;
  L(3, 3) = law.gamma;
  return L;
}

LinearSymbol symbol_matrix(double xi, const MaterialLaw& law) {
  const Complex ixi{0.0, xi};
  Eigen::Matrix4cd M = -(ixi * assemble_A(0.0, law).cast<Complex>() + assemble_L(law).cast<Complex>());
  return {xi, M};
}

std::array<Complex, 4> symbol_eigenvalues(double xi, const MaterialLaw& law) {
  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(symbol_matrix(xi, law).matrix, false);
  if (solver.info() != Eigen::Success) {
    throw NumericError("eigen-solver did not converge at xi = " + std::to_string(xi));
  }
  std::array<Complex, 4> ev;
  for (int i = 0; i < 4; ++i) ev[i] = solver.eigenvalues()[i];
  std::sort(ev.begin(), ev.end(), [](const Complex& p, const Complex& q) {
    if (std::abs(p.real() - q.real()) > 1e-12) return p.real() > q.real();
    return p.imag() > q.imag();
  });
  return ev;
}

std::array<Complex, 5> characteristic_polynomial(const Eigen::Matrix4cd& M) {
  // c_4 = 1, M_k = M M_{k-1} + c_{4-k+1} I, c_{4-k} = -tr(M M_k) / k.
  std::array<Complex, 5> c{};
  c[4] = 1.0;
  Eigen::Matrix4cd Mk = Eigen::Matrix4cd::Zero();
  for (int k = 1; k <= 4; ++k) {
    Mk = M * Mk + c[5 - k] * Eigen::Matrix4cd::Identity();
    c[4 - k] = -(M * Mk).trace() / static_cast<double>(k);
  }
  return c;
}

std::vector<Complex> polynomial_roots(std::span<const Complex> coeffs) {
  std::size_t deg = coeffs.size();
  while (deg > 0 && coeffs[deg - 1] == Complex{}) --deg;
  if (deg < 2) return {};
  --deg;
  std::vector<Complex> p(coeffs.begin(), coeffs.begin() + static_cast<long>(deg) + 1);
  const Complex lead = p[deg];
  for (auto& x : p) x /= lead;
  std::vector<Complex> dp(deg);
  for (std::size_t i = 1; i <= deg; ++i) dp[i - 1] = static_cast<double>(i) * p[i];

  double bound = 0.0;
  for (std::size_t i = 0; i < deg; ++i) bound = std::max(bound, std::abs(p[i]));
  const double radius = 1.0 + bound;
  std::vector<Complex> z(deg);
  for (std::size_t i = 0; i < deg; ++i) {
    const double angle = 2.0 * std::numbers::pi * (static_cast<double>(i) + 0.25) / static_cast<double>(deg) + 0.4;
    z[i] = std::polar(0.5 * radius, angle);
  }
  for (int iter = 0; iter < 500; ++iter) {
    double shift = 0.0;
    for (std::size_t i = 0; i < deg; ++i) {
      const Complex pv = horner(p, z[i]);
      if (pv == Complex{}) continue;
      const Complex ratio = pv / horner(dp, z[i]);
      Complex repulsion{};
      for (std::size_t j = 0; j < deg; ++j) {
        if (j != i) repulsion += 1.0 / (z[i] - z[j]);
      }
      const Complex step = ratio / (1.0 - ratio * repulsion);
      z[i] -= step;
      shift = std::max(shift, std::abs(step));
    }
    if (shift < 1e-15 * radius) break;
  }
  return z;
}

double eigenvalue_cross_check(const MaterialLaw& law, int samples, double xi_max, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-xi_max, xi_max);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double xi = dist(rng);
    const auto ev = symbol_eigenvalues(xi, law);
    const auto poly = characteristic_polynomial(symbol_matrix(xi, law).matrix);
    const double scale = 1.0 + std::abs(ev[0]) + std::abs(ev[3]);
    worst = std::max(worst, matched_distance(ev, polynomial_roots(poly)) / scale);
  }
  return worst;
}

double eta_standard(double xi) {
  const double x2 = xi * xi;
  return x2 / (1.0 + x2);
}

double eta_regularity_loss(double xi) {
  const double x2 = xi * xi;
  return x2 / ((1.0 + x2) * (1.0 + x2));
}

std::string to_string(Envelope e) {
  switch (e) {
    case Envelope::standard: return "standard";
    case Envelope::regularity_loss: return "regularity_loss";
    case Envelope::none: return "none";
  }
  return "none";
}

EnvelopeReport envelope_fit(const MaterialLaw& law, double xi_max, int n_xi) {
  law.validate();
  if (n_xi < 64) throw DomainError("envelope fit needs at least 64 samples");
  if (!(xi_max > 1.0)) throw DomainError("envelope fit needs xi_max > 1");
  EnvelopeReport rep;
  rep.a = law.a;
  const double lo = 1.0 / xi_max;
  const int n_log = n_xi / 2;
  const int n_lin = n_xi - n_log;
  for (int i = 0; i < n_log; ++i) {
    rep.xi_samples.push_back(lo * std::pow(xi_max / lo, static_cast<double>(i) / (n_log - 1)));
  }
  for (int i = 0; i < n_lin; ++i) rep.xi_samples.push_back(lo + (xi_max - lo) * i / (n_lin - 1));
  std::sort(rep.xi_samples.begin(), rep.xi_samples.end());
  rep.xi_samples.erase(std::unique(rep.xi_samples.begin(), rep.xi_samples.end()), rep.xi_samples.end());

  rep.fitted_c1 = kHuge;
  rep.fitted_c2 = kHuge;
  rep.high_frequency_gap = kHuge;
  for (double xi : rep.xi_samples) {
    const double m = symbol_eigenvalues(xi, law)[0].real();
    rep.max_re_lambda.push_back(m);
    rep.fitted_c1 = std::min(rep.fitted_c1, -m / eta_standard(xi));
    rep.fitted_c2 = std::min(rep.fitted_c2, -m / eta_regularity_loss(xi));
    if (xi >= 1.0) rep.high_frequency_gap = std::min(rep.high_frequency_gap, -m);
  }
  rep.fitted_c1 = std::max(rep.fitted_c1, 0.0);
  rep.fitted_c2 = std::max(rep.fitted_c2, 0.0);
  rep.high_frequency_gap = std::max(rep.high_frequency_gap, 0.0);
  if (rep.fitted_c1 > kEnvelopeTolerance) {
    rep.classification = Envelope::standard;
  } else if (rep.fitted_c2 > kEnvelopeTolerance) {
    rep.classification = Envelope::regularity_loss;
  } else {
    rep.classification = Envelope::none;
  }
  return rep;
}

std::vector<double> tail_scaling(const MaterialLaw& law, double lo, double hi, int n) {
  if (!(lo > 0.0 && hi > lo) || n < 2) throw DomainError("tail scaling needs 0 < lo < hi and n >= 2");
  std::vector<double> out;
  for (int i = 0; i < n; ++i) {
    const double xi = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
    out.push_back(-xi * xi * symbol_eigenvalues(xi, law)[0].real());
  }
  return out;
}

}  // namespace timo
