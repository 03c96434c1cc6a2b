#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "timo/filter_bank.hpp"
#include "timo/spectral.hpp"

namespace timo {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct BesovSpec {
  double s = 0.0;
  double p = 2.0;
  double r = 1.0;
  bool homogeneous = false;

  void validate() const;
};

struct CheminLernerSpec {
  double theta = kInfinity;
  BesovSpec besov;

  void validate() const;
};

/// Snapshots of one scalar field on [0, T].
struct FieldTrajectory {
  std::vector<double> times;
  std::vector<SpectralField> states;

  void validate() const;
};

/// (sum |f_i|^p * spacing)^{1/p}; grid max for p = infinity.
double lp_norm(const RealField& f, double p);
double lp_norm(std::span<const double> samples, double spacing, double p);
/// l^r norm of a finite sequence, r in [1, infinity].
double lr_norm(std::span<const double> values, double r);

/// ||block_q f||_{L^p} for every block of the decomposition, in block order
/// starting at bank.first_block(homogeneous).
std::vector<double> block_norms(const SpectralField& F, double p, bool homogeneous, const LPFilterBank& bank);

/// Besov norm aggregated over the resolved blocks. A homogeneous norm of a
/// field with nonzero mean is a DomainError; callers drop the xi = 0 mode
/// explicitly with without_mean().
double besov_norm(const SpectralField& F, const BesovSpec& spec, const LPFilterBank& bank);
double besov_norm(const RealField& f, const BesovSpec& spec, const LPFilterBank& bank);

/// Chemin-Lerner norm: time norm per block first, then weighted l^r over blocks.
double chemin_lerner_norm(const FieldTrajectory& traj, const CheminLernerSpec& spec, const LPFilterBank& bank);
/// Plain mixed norm ||f||_{L^theta_T(B)}: Besov norm per snapshot first, then time.
double time_mixed_norm(const FieldTrajectory& traj, const CheminLernerSpec& spec, const LPFilterBank& bank);

/// L^theta time norm of samples on the given times (trapezoid for finite
/// theta, max for theta = infinity).
double time_norm(std::span<const double> times, std::span<const double> values, double theta);

/// Streaming Chemin-Lerner evaluation over snapshots fed in time order.
class CheminLernerAccumulator {
 public:
  CheminLernerAccumulator(const CheminLernerSpec& spec, const LPFilterBank& bank);

  void add(double t, const SpectralField& F);
  double value() const;
  std::size_t snapshots() const { return count_; }

 private:
  CheminLernerSpec spec_;
  const LPFilterBank* bank_;
  std::size_t count_ = 0;
  double last_t_ = 0.0;
  std::vector<double> last_;
  std::vector<double> accum_;  // running sup or running integral of |b|^theta
};

struct RatioStatistics {
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  int trials = 0;
};

/// Empirical Bernstein constant: ratio
/// ||Lambda^alpha block_q f||_{L^b} / (2^{q(alpha + 1/a - 1/b)} ||block_q f||_{L^a})
/// over random fields localized by homogeneous block q.
RatioStatistics check_bernstein(int q, double alpha, double a, double b, const LPFilterBank& bank, int trials,
                                std::uint64_t seed = 1);

/// ||f||_{Ḃ^{-1/2}_{2,inf}} / ||f||_{L^1} for a zero-mean field.
double check_embedding_l1(const RealField& f, const LPFilterBank& bank);

/// ||fg||_{Ḃ^s_{2,1}} / (||f||_inf ||g||_{Ḃ^s_{2,1}} + ||g||_inf ||f||_{Ḃ^s_{2,1}}).
double check_product_estimate(const RealField& f, const RealField& g, double s, const LPFilterBank& bank);

}  // namespace timo
