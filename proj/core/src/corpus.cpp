#include "timo/corpus.hpp"

#include <cmath>
#include <numbers>

namespace timo {
namespace {

constexpr double kBumpRadius = 4.0;

double bump_spectrum(double xi) {
  const double r = xi / kBumpRadius;
  if (std::abs(r) >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - r * r));
}

}  // namespace

const std::vector<CorpusFunction>& besov_corpus() {
  using std::numbers::pi;
  static const std::vector<CorpusFunction> corpus{
      {"gaussian", [](double x) { return std::exp(-x * x); },
       [](double xi) { return Complex{std::sqrt(pi) * std::exp(-0.25 * xi * xi), 0.0}; }, 12.2, false},
      {"shifted_gaussian", [](double x) { return std::exp(-(x - 1.0) * (x - 1.0)); },
       [](double xi) { return std::sqrt(pi) * std::exp(-0.25 * xi * xi) * std::polar(1.0, -xi); }, 12.2, false},
      {"gaussian_derivative", [](double x) { return -2.0 * x * std::exp(-x * x); },
       [](double xi) { return Complex{0.0, xi * std::sqrt(pi) * std::exp(-0.25 * xi * xi)}; }, 12.8, false},
      {"sech", [](double x) { return 1.0 / std::cosh(x); },
       [](double xi) { return Complex{pi / std::cosh(0.5 * pi * xi), 0.0}; }, 24.0, false},
      {"bump", {}, [](double xi) { return Complex{bump_spectrum(xi), 0.0}; }, kBumpRadius, true},
  };
  return corpus;
}

RealField sample_corpus(const CorpusFunction& c, const Grid1D& grid) {
  if (!c.from_spectrum) return RealField::sample(grid, c.f);
  SpectralField F(grid);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (k != grid.nyquist_index()) F[k] = c.fhat(grid.xi(k));
  }
  return inverse_transform(F);
}

}  // namespace timo
