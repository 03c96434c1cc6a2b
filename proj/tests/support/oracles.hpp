#pragma once

// Reference implementations used only by the tests. They are written from the
// definitions, without calling into the library kernels they check.

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/numeric/odeint.hpp>

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "timo/spectral.hpp"

namespace oracle {

inline double glue(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

inline double step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return glue(t) / (glue(t) + glue(1.0 - t));
}

// 1 on [1, 2], rising on [3/4, 1], falling on [2, 8/3].
inline double bump(double w) {
  w = std::abs(w);
  return step((w - 0.75) / 0.25) * step((8.0 / 3.0 - w) / (2.0 / 3.0));
}

inline double phi(double xi) {
  const double top = bump(xi);
  if (top == 0.0) return 0.0;
  double sum = 0.0;
  for (int j = -3; j <= 3; ++j) sum += bump(std::ldexp(xi, -j));
  return top / sum;
}

inline double chi(double xi) {
  double sum = 0.0;
  for (int q = 0; q < 4; ++q) sum += phi(std::ldexp(xi, -q));
  return std::abs(xi) >= 4.0 / 3.0 ? 0.0 : 1.0 - sum;
}

// ||block_q f||_2^2 = (1/pi) int_0^inf m_q(xi)^2 |fhat(xi)|^2 dxi for |fhat| even.
inline double block_l2_quadrature(const std::function<double(double)>& fhat_abs2, int q, bool homogeneous) {
  using boost::math::quadrature::gauss_kronrod;
  double lo, hi;
  std::function<double(double)> m;
  if (!homogeneous && q == -1) {
    lo = 0.0;
    hi = 4.0 / 3.0;
    m = chi;
  } else {
    lo = std::ldexp(0.75, q);
    hi = std::ldexp(8.0 / 3.0, q);
    m = [q](double xi) { return phi(std::ldexp(xi, -q)); };
  }
  auto integrand = [&](double xi) {
    const double w = m(xi);
    return w * w * fhat_abs2(xi);
  };
  double acc = 0.0;
  const int pieces = 16;
  for (int i = 0; i < pieces; ++i) {
    const double a = lo + (hi - lo) * i / pieces;
    const double b = lo + (hi - lo) * (i + 1) / pieces;
    acc += gauss_kronrod<double, 61>::integrate(integrand, a, b, 8, 1e-14);
  }
  return std::sqrt(acc / std::numbers::pi);
}

// Inhomogeneous B^s_{2,1} norm from the continuous transform.
inline double besov_b21_quadrature(const std::function<double(double)>& fhat_abs2, double s, double xi_support) {
  double acc = 0.0;
  for (int q = -1; std::ldexp(0.75, q) <= xi_support; ++q) {
    acc += std::exp2(s * q) * block_l2_quadrature(fhat_abs2, q, false);
  }
  return acc;
}

// Random real field with modes in the given |wavenumber| band, zero mean.
inline timo::SpectralField random_field(const timo::Grid1D& grid, long m_lo, long m_hi, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  timo::SpectralField F(grid);
  const long half = static_cast<long>(grid.size() / 2);
  for (long m = std::max(1L, m_lo); m <= std::min(m_hi, half - 1); ++m) {
    const timo::Complex c{gauss(rng), gauss(rng)};
    F[grid.index_of(m)] = c;
    F[grid.index_of(-m)] = std::conj(c);
  }
  return F;
}

// exp(t M) w for M = -(i xi A0 + L), integrated as a real 8-dimensional ODE with
// an adaptive Dormand-Prince scheme.
inline std::array<std::complex<double>, 4> mode_ode(double xi, double a, double gamma, double t,
                                                    std::array<std::complex<double>, 4> w) {
  using State = std::array<double, 8>;
  using C = std::complex<double>;
  const C I{0.0, 1.0};
  auto rhs = [&](const State& s, State& ds, double) {
    const C v{s[0], s[1]}, u{s[2], s[3]}, z{s[4], s[5]}, y{s[6], s[7]};
    const C dv = I * xi * u - y;
    const C du = I * xi * v;
    const C dz = I * a * xi * y;
    const C dy = v + I * a * xi * z - gamma * y;
    ds = {dv.real(), dv.imag(), du.real(), du.imag(), dz.real(), dz.imag(), dy.real(), dy.imag()};
  };
  State s{w[0].real(), w[0].imag(), w[1].real(), w[1].imag(), w[2].real(), w[2].imag(), w[3].real(), w[3].imag()};
  namespace ode = boost::numeric::odeint;
  ode::integrate_adaptive(ode::make_controlled(1e-13, 1e-13, ode::runge_kutta_dopri5<State>()), rhs, s, 0.0, t, 1e-3);
  return {C{s[0], s[1]}, C{s[2], s[3]}, C{s[4], s[5]}, C{s[6], s[7]}};
}

}  // namespace oracle
