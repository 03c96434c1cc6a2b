#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "timo/spectral.hpp"

namespace timo {

/// C-infinity step: 0 for t <= 0, 1 for t >= 1, built from exp(-1/t).
double smooth_step(double t);
/// Unnormalized shell bump: 1 on [1, 2], smooth transitions on [3/4, 1]
/// and [2, 8/3], zero elsewhere. Even in xi.
double lp_bump(double xi);
/// Dyadic shell function phi, normalized so that sum_{j in Z} phi(2^-j xi) = 1
/// for xi != 0. Supported in 3/4 <= |xi| <= 8/3.
double lp_phi(double xi);
/// Low-pass function chi = 1 - sum_{q >= 0} phi(2^-q xi), supported in |xi| <= 4/3.
double lp_chi(double xi);

/// Discrete Littlewood-Paley multipliers on a fixed grid.
///
/// Homogeneous blocks Δ̇_q use phi(2^-q xi) for q in [q_min, q_max].
/// Inhomogeneous blocks Δ_q use chi for q = -1, phi(2^-q xi) for
/// 0 <= q <= q_max, and vanish for q <= -2. Multipliers are even in xi, so
/// each block is stored once per |wavenumber| over its (short) support.
class LPFilterBank {
 public:
  LPFilterBank(const Grid1D& grid, int q_min, int q_max);

  const Grid1D& grid() const { return grid_; }
  int q_min() const { return q_min_; }
  int q_max() const { return q_max_; }

  /// First block index of the given decomposition (q_min or -1).
  int first_block(bool homogeneous) const { return homogeneous ? q_min_ : -1; }
  /// Number of blocks in the given decomposition.
  int block_count(bool homogeneous) const { return q_max_ - first_block(homogeneous) + 1; }

  /// Multiplier of block q at storage index k.
  double multiplier(int q, std::size_t k, bool homogeneous) const;
  /// Multiplier of block q at a grid frequency given by its wavenumber.
  double multiplier_at(int q, long wavenumber, bool homogeneous) const;

  /// |xi| interval on which the homogeneous blocks sum to one.
  std::pair<double, double> homogeneous_range() const;
  /// Upper |xi| limit below which chi + sum of inhomogeneous blocks is one.
  double inhomogeneous_limit() const;

  /// Apply block q. Throws DomainError for a homogeneous q outside the bank
  /// or an inhomogeneous q > q_max.
  SpectralField apply(int q, const SpectralField& F, bool homogeneous) const;
  /// ||block_q f||_{L^2} computed from the modes without materializing the block.
  double block_l2(int q, const SpectralField& F, bool homogeneous) const;
  /// L^2 mass (squared) of the modes no homogeneous block reaches
  /// (|xi| below the homogeneous range, including xi = 0).
  double sub_range_mass(const SpectralField& F) const;

 private:
  struct Shell {
    long m_begin = 0;
    std::vector<double> weights;  // weights[m - m_begin] for |wavenumber| m
  };

  const Shell* shell(int q, bool homogeneous) const;

  Grid1D grid_;
  int q_min_;
  int q_max_;
  int shell_first_;  // min(q_min, 0)
  std::vector<Shell> shells_;
  Shell chi_;
};

/// Validates 2^{q_max} * 8/3 <= nyquist (ConfigError otherwise) and q_min <= q_max.
LPFilterBank build_filter_bank(const Grid1D& grid, int q_min, int q_max);
/// Default range: the largest resolved q_max and the largest q_min whose
/// homogeneous partition covers the lowest nonzero grid frequency.
LPFilterBank build_filter_bank(const Grid1D& grid);

int default_q_max(const Grid1D& grid);
int default_q_min(const Grid1D& grid);

}  // namespace timo
