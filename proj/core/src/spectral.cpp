#include "timo/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <utility>

#include "timo/errors.hpp"

namespace timo {
namespace {

// FFTW planning is not thread safe; execution of an existing plan on new
// arrays is. Plans live for the lifetime of the process.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(std::size_t n, int sign) {
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(n, sign);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    std::vector<Complex> scratch(n);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (plan == nullptr) throw NumericError("FFTW failed to create a plan of size " + std::to_string(n));
    plans_.emplace(key, plan);
    return plan;
  }

  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

void execute(std::vector<Complex>& data, int sign) {
  fftw_plan plan = PlanCache::instance().get(data.size(), sign);
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, buf, buf);
}

void require_same_grid(const Grid1D& a, const Grid1D& b) {
  if (!(a == b)) throw DomainError("fields live on different grids");
}

}  // namespace

double Grid1D::nyquist() const { return std::numbers::pi * static_cast<double>(n_points_) / length_; }

double Grid1D::dxi() const { return 2.0 * std::numbers::pi / length_; }

std::size_t Grid1D::index_of(long m) const {
  const long half = static_cast<long>(n_points_ / 2);
  if (m < -half || m > half) throw DomainError("wavenumber " + std::to_string(m) + " is not resolved");
  if (m == half) m = -half;
  return m >= 0 ? static_cast<std::size_t>(m) : static_cast<std::size_t>(m + static_cast<long>(n_points_));
}

Grid1D make_grid(std::size_t n_points, double length) {
  if (n_points < 8 || !std::has_single_bit(n_points)) {
    throw ConfigError("grid size must be a power of two >= 8, got " + std::to_string(n_points));
  }
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw ConfigError("grid length must be positive and finite");
  }
  return Grid1D(n_points, length);
}

RealField::RealField(const Grid1D& grid) : grid_(grid), samples_(grid.size(), 0.0) {}

RealField::RealField(const Grid1D& grid, std::vector<double> samples) : grid_(grid), samples_(std::move(samples)) {
  if (samples_.size() != grid_.size()) throw DomainError("sample count does not match the grid");
}

RealField RealField::sample(const Grid1D& grid, const std::function<double(double)>& f) {
  RealField out(grid);
  for (std::size_t j = 0; j < grid.size(); ++j) out[j] = f(grid.x(j));
  return out;
}

SpectralField::SpectralField(const Grid1D& grid) : grid_(grid), modes_(grid.size(), Complex{}) {}

SpectralField::SpectralField(const Grid1D& grid, std::vector<Complex> modes) : grid_(grid), modes_(std::move(modes)) {
  if (modes_.size() != grid_.size()) throw DomainError("mode count does not match the grid");
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t k = 0; k < modes_.size(); ++k) modes_[k] += other.modes_[k];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t k = 0; k < modes_.size(); ++k) modes_[k] -= other.modes_[k];
  return *this;
}

SpectralField& SpectralField::operator*=(double c) {
  for (auto& m : modes_) m *= c;
  return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double c, SpectralField a) { return a *= c; }

SpectralField forward_transform(const RealField& f) {
  const Grid1D& grid = f.grid();
  const std::size_t n = grid.size();
  std::vector<Complex> data(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (!std::isfinite(f[j])) throw NumericError("non-finite sample at index " + std::to_string(j));
    data[j] = f[j];
  }
  execute(data, FFTW_FORWARD);
  // Shift of origin to -length/2 contributes (-1)^k.
  const double h = grid.spacing();
  for (std::size_t k = 0; k < n; ++k) data[k] *= (k % 2 == 0 ? h : -h);
  return SpectralField(grid, std::move(data));
}

RealField inverse_transform(const SpectralField& F) {
  const Grid1D& grid = F.grid();
  const std::size_t n = grid.size();
  std::vector<Complex> data(F.modes().begin(), F.modes().end());
  const double scale = 1.0 / grid.length();
  for (std::size_t k = 0; k < n; ++k) {
    if (!std::isfinite(data[k].real()) || !std::isfinite(data[k].imag())) {
      throw NumericError("non-finite mode at index " + std::to_string(k));
    }
    data[k] *= (k % 2 == 0 ? scale : -scale);
  }
  execute(data, FFTW_BACKWARD);
  std::vector<double> samples(n);
  for (std::size_t j = 0; j < n; ++j) samples[j] = data[j].real();
  return RealField(grid, std::move(samples));
}

SpectralField apply_multiplier(const SpectralField& F, const std::function<Complex(double)>& m) {
  SpectralField out(F.grid());
  for (std::size_t k = 0; k < F.size(); ++k) out[k] = m(F.grid().xi(k)) * F[k];
  return out;
}

SpectralField fractional_derivative(const SpectralField& F, double alpha) {
  if (alpha < 0.0) {
    double peak = 0.0;
    for (const auto& m : F.modes()) peak = std::max(peak, std::abs(m));
    if (std::abs(F[0]) > 1e-12 * peak) {
      throw DomainError("negative-order derivative of a field with nonzero mean");
    }
  }
  SpectralField out(F.grid());
  for (std::size_t k = 0; k < F.size(); ++k) {
    const double w = std::abs(F.grid().xi(k));
    if (w == 0.0) {
      out[k] = alpha == 0.0 ? F[k] : Complex{};
    } else {
      out[k] = std::pow(w, alpha) * F[k];
    }
  }
  return out;
}

SpectralField derivative(const SpectralField& F, int order) {
  if (order < 0) throw DomainError("derivative order must be non-negative");
  SpectralField out = F;
  if (order == 0) return out;
  const Complex unit{0.0, 1.0};
  for (std::size_t k = 0; k < F.size(); ++k) out[k] *= std::pow(unit * F.grid().xi(k), order);
  if (order % 2 == 1) out[F.grid().nyquist_index()] = Complex{};
  return out;
}

SpectralField dealias(const SpectralField& F, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) throw DomainError("dealias fraction must lie in (0, 1]");
  SpectralField out = F;
  const double cutoff = fraction * F.grid().nyquist();
  for (std::size_t k = 0; k < F.size(); ++k) {
    if (std::abs(F.grid().xi(k)) > cutoff * (1.0 + 1e-14)) out[k] = Complex{};
  }
  return out;
}

SpectralField without_mean(SpectralField F) {
  F[0] = Complex{};
  return F;
}

double spectral_l2_squared(const SpectralField& F) {
  double acc = 0.0;
  for (const auto& m : F.modes()) acc += std::norm(m);
  return acc / F.grid().length();
}

double spectral_l2(const SpectralField& F) { return std::sqrt(spectral_l2_squared(F)); }

double spectral_inner(const SpectralField& F, const SpectralField& G) {
  require_same_grid(F.grid(), G.grid());
  double acc = 0.0;
  for (std::size_t k = 0; k < F.size(); ++k) acc += (F[k] * std::conj(G[k])).real();
  return acc / F.grid().length();
}

double reality_residue(const SpectralField& F) {
  const std::size_t n = F.size();
  double peak = 0.0;
  double worst = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    peak = std::max(peak, std::abs(F[k]));
    const std::size_t mirror = (n - k) % n;
    worst = std::max(worst, std::abs(F[k] - std::conj(F[mirror])));
  }
  return peak > 0.0 ? worst / peak : 0.0;
}

double mean_value(const SpectralField& F) { return F[0].real() / F.grid().length(); }

}  // namespace timo
