#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace timo {

using Complex = std::complex<double>;

/// Uniform periodic grid on the torus [-length/2, length/2).
///
/// Modes are stored in FFT order: index k < n/2 carries wavenumber k,
/// index k >= n/2 carries wavenumber k - n. The physical frequency of
/// wavenumber m is 2*pi*m/length.
class Grid1D {
 public:
  Grid1D() = default;

  std::size_t size() const { return n_points_; }
  double length() const { return length_; }
  double spacing() const { return length_ / static_cast<double>(n_points_); }
  double nyquist() const;
  /// Spacing of the frequency lattice, 2*pi/length.
  double dxi() const;

  double x(std::size_t j) const { return -0.5 * length_ + static_cast<double>(j) * spacing(); }
  long wavenumber(std::size_t k) const {
    return k < n_points_ / 2 ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(n_points_);
  }
  double xi(std::size_t k) const { return dxi() * static_cast<double>(wavenumber(k)); }
  /// Storage index of wavenumber m, |m| <= n/2.
  std::size_t index_of(long m) const;
  /// Index of the unpaired -n/2 mode.
  std::size_t nyquist_index() const { return n_points_ / 2; }

  friend bool operator==(const Grid1D&, const Grid1D&) = default;

 private:
  friend Grid1D make_grid(std::size_t n_points, double length);
  Grid1D(std::size_t n, double length) : n_points_(n), length_(length) {}

  std::size_t n_points_ = 0;
  double length_ = 0.0;
};

/// n_points must be a power of two >= 8 and length > 0; throws ConfigError otherwise.
Grid1D make_grid(std::size_t n_points, double length);

class RealField {
 public:
  RealField() = default;
  explicit RealField(const Grid1D& grid);
  RealField(const Grid1D& grid, std::vector<double> samples);

  const Grid1D& grid() const { return grid_; }
  std::span<const double> samples() const { return samples_; }
  std::span<double> samples() { return samples_; }
  std::size_t size() const { return samples_.size(); }
  double operator[](std::size_t j) const { return samples_[j]; }
  double& operator[](std::size_t j) { return samples_[j]; }

  static RealField sample(const Grid1D& grid, const std::function<double(double)>& f);

 private:
  Grid1D grid_;
  std::vector<double> samples_;
};

/// Discrete approximation of the continuous transform
/// F(xi_k) = spacing * sum_j f(x_j) exp(-i xi_k x_j), so that for rapidly
/// decaying data the modes approximate the Fourier transform on R and
/// ||f||_{L^2}^2 = (1/length) * sum_k |F_k|^2.
class SpectralField {
 public:
  SpectralField() = default;
  explicit SpectralField(const Grid1D& grid);
  SpectralField(const Grid1D& grid, std::vector<Complex> modes);

  const Grid1D& grid() const { return grid_; }
  std::span<const Complex> modes() const { return modes_; }
  std::span<Complex> modes() { return modes_; }
  std::size_t size() const { return modes_.size(); }
  const Complex& operator[](std::size_t k) const { return modes_[k]; }
  Complex& operator[](std::size_t k) { return modes_[k]; }

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double c);

 private:
  Grid1D grid_;
  std::vector<Complex> modes_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double c, SpectralField a);

SpectralField forward_transform(const RealField& f);
RealField inverse_transform(const SpectralField& F);

/// Multiplies every mode by m(xi_k).
SpectralField apply_multiplier(const SpectralField& F, const std::function<Complex(double)>& m);
/// Lambda^alpha: multiplier |xi|^alpha. Negative alpha requires a zero-mean
/// field; its xi = 0 multiplier is then 0.
SpectralField fractional_derivative(const SpectralField& F, double alpha);
/// d/dx: multiplier i*xi. The unpaired Nyquist mode is zeroed so real
/// fields stay real.
SpectralField derivative(const SpectralField& F, int order = 1);
/// Zeroes every mode with |xi| > fraction * nyquist.
SpectralField dealias(const SpectralField& F, double fraction = 2.0 / 3.0);
SpectralField without_mean(SpectralField F);

/// ||f||_{L^2}^2 from the modes (Parseval).
double spectral_l2_squared(const SpectralField& F);
double spectral_l2(const SpectralField& F);
/// int f g dx for real f, g given by their modes.
double spectral_inner(const SpectralField& F, const SpectralField& G);
/// max_k |F(xi_k) - conj(F(-xi_k))| relative to max_k |F(xi_k)|; zero for
/// the transform of a real field.
double reality_residue(const SpectralField& F);
/// Spatial mean recovered from the xi = 0 mode.
double mean_value(const SpectralField& F);

}  // namespace timo
