#pragma once

#include <functional>
#include <string>
#include <vector>

#include "timo/spectral.hpp"

namespace timo {

/// Test function with a closed-form transform, fhat(xi) = int f(x) exp(-i x xi) dx.
struct CorpusFunction {
  std::string name;
  std::function<double(double)> f;
  std::function<Complex(double)> fhat;
  /// Beyond this |xi| the transform is below 1e-16 of its peak.
  double xi_support = 0.0;
  /// Sampled from the transform rather than from f (f may be left empty).
  bool from_spectrum = false;
};

/// Gaussian, shifted Gaussian, Gaussian derivative, sech, band-limited bump.
const std::vector<CorpusFunction>& besov_corpus();

/// Samples on the grid, centred at x = 0.
RealField sample_corpus(const CorpusFunction& c, const Grid1D& grid);

}  // namespace timo
