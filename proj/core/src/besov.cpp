#include "timo/besov.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "timo/errors.hpp"

namespace timo {
namespace {

void require_exponent(double v, const char* name) {
  if (!(v >= 1.0)) throw DomainError(std::string(name) + " must lie in [1, infinity]");
}

void require_zero_mean(const SpectralField& F) {
  double peak = 0.0;
  for (const auto& m : F.modes()) peak = std::max(peak, std::abs(m));
  if (std::abs(F[0]) > 1e-12 * peak) {
    throw DomainError("homogeneous norm requested on a field with nonzero mean");
  }
}

double weighted_lr(std::span<const double> blocks, int first_block, double s, double r) {
  std::vector<double> weighted(blocks.size());
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    weighted[i] = std::exp2(s * (first_block + static_cast<int>(i))) * blocks[i];
  }
  return lr_norm(weighted, r);
}

}  // namespace

void BesovSpec::validate() const {
  require_exponent(p, "Besov p");
  require_exponent(r, "Besov r");
  if (!std::isfinite(s)) throw DomainError("Besov regularity must be finite");
}

void CheminLernerSpec::validate() const {
  require_exponent(theta, "time exponent theta");
  besov.validate();
}

void FieldTrajectory::validate() const {
  if (times.empty()) throw DomainError("empty trajectory");
  if (times.size() != states.size()) throw DomainError("trajectory times and states differ in length");
  if (times.front() != 0.0) throw DomainError("trajectory must start at t = 0");
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) throw DomainError("trajectory times must be strictly increasing");
    if (!(states[i].grid() == states[0].grid())) throw DomainError("trajectory snapshots use different grids");
  }
}

double lp_norm(std::span<const double> samples, double spacing, double p) {
  require_exponent(p, "L^p exponent");
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : samples) m = std::max(m, std::abs(v));
    return m;
  }
  double acc = 0.0;
  if (p == 1.0) {
    for (double v : samples) acc += std::abs(v);
    return acc * spacing;
  }
  if (p == 2.0) {
    for (double v : samples) acc += v * v;
    return std::sqrt(acc * spacing);
  }
  for (double v : samples) acc += std::pow(std::abs(v), p);
  return std::pow(acc * spacing, 1.0 / p);
}

double lp_norm(const RealField& f, double p) { return lp_norm(f.samples(), f.grid().spacing(), p); }

double lr_norm(std::span<const double> values, double r) {
  require_exponent(r, "l^r exponent");
  if (std::isinf(r)) {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
  }
  double acc = 0.0;
  if (r == 1.0) {
    for (double v : values) acc += std::abs(v);
    return acc;
  }
  for (double v : values) acc += std::pow(std::abs(v), r);
  return std::pow(acc, 1.0 / r);
}

std::vector<double> block_norms(const SpectralField& F, double p, bool homogeneous, const LPFilterBank& bank) {
  require_exponent(p, "L^p exponent");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(bank.block_count(homogeneous)));
  for (int q = bank.first_block(homogeneous); q <= bank.q_max(); ++q) {
    if (p == 2.0) {
      out.push_back(bank.block_l2(q, F, homogeneous));
    } else {
      out.push_back(lp_norm(inverse_transform(bank.apply(q, F, homogeneous)), p));
    }
  }
  return out;
}

double besov_norm(const SpectralField& F, const BesovSpec& spec, const LPFilterBank& bank) {
  spec.validate();
  if (spec.homogeneous) require_zero_mean(F);
  const auto blocks = block_norms(F, spec.p, spec.homogeneous, bank);
  return weighted_lr(blocks, bank.first_block(spec.homogeneous), spec.s, spec.r);
}

double besov_norm(const RealField& f, const BesovSpec& spec, const LPFilterBank& bank) {
  return besov_norm(forward_transform(f), spec, bank);
}

double time_norm(std::span<const double> times, std::span<const double> values, double theta) {
  require_exponent(theta, "time exponent theta");
  if (times.size() != values.size()) throw DomainError("time samples and values differ in length");
  if (times.empty()) throw DomainError("empty time series");
  if (std::isinf(theta)) {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
  }
  double acc = 0.0;
  for (std::size_t i = 1; i < times.size(); ++i) {
    acc += 0.5 * (times[i] - times[i - 1]) * (std::pow(std::abs(values[i - 1]), theta) + std::pow(std::abs(values[i]), theta));
  }
  return std::pow(acc, 1.0 / theta);
}

double chemin_lerner_norm(const FieldTrajectory& traj, const CheminLernerSpec& spec, const LPFilterBank& bank) {
  traj.validate();
  CheminLernerAccumulator acc(spec, bank);
  for (std::size_t i = 0; i < traj.times.size(); ++i) acc.add(traj.times[i], traj.states[i]);
  return acc.value();
}

double time_mixed_norm(const FieldTrajectory& traj, const CheminLernerSpec& spec, const LPFilterBank& bank) {
  traj.validate();
  spec.validate();
  std::vector<double> per_snapshot;
  per_snapshot.reserve(traj.states.size());
  for (const auto& F : traj.states) per_snapshot.push_back(besov_norm(F, spec.besov, bank));
  return time_norm(traj.times, per_snapshot, spec.theta);
}

CheminLernerAccumulator::CheminLernerAccumulator(const CheminLernerSpec& spec, const LPFilterBank& bank)
    : spec_(spec), bank_(&bank) {
  spec_.validate();
  accum_.assign(static_cast<std::size_t>(bank.block_count(spec.besov.homogeneous)), 0.0);
}

void CheminLernerAccumulator::add(double t, const SpectralField& F) {
  if (count_ > 0 && !(t > last_t_)) throw DomainError("snapshots must arrive in increasing time order");
  if (count_ == 0 && t != 0.0) throw DomainError("trajectory must start at t = 0");
  if (spec_.besov.homogeneous) require_zero_mean(F);
  auto current = block_norms(F, spec_.besov.p, spec_.besov.homogeneous, *bank_);
  const double theta = spec_.theta;
  if (std::isinf(theta)) {
    for (std::size_t i = 0; i < accum_.size(); ++i) accum_[i] = std::max(accum_[i], current[i]);
  } else if (count_ > 0) {
    const double dt = t - last_t_;
    for (std::size_t i = 0; i < accum_.size(); ++i) {
      accum_[i] += 0.5 * dt * (std::pow(last_[i], theta) + std::pow(current[i], theta));
    }
  }
  last_ = std::move(current);
  last_t_ = t;
  ++count_;
}

double CheminLernerAccumulator::value() const {
  if (count_ == 0) throw DomainError("empty trajectory");
  std::vector<double> per_block = accum_;
  if (!std::isinf(spec_.theta)) {
    for (auto& v : per_block) v = std::pow(v, 1.0 / spec_.theta);
  }
  return weighted_lr(per_block, bank_->first_block(spec_.besov.homogeneous), spec_.besov.s, spec_.besov.r);
}

RatioStatistics check_bernstein(int q, double alpha, double a, double b, const LPFilterBank& bank, int trials,
                                std::uint64_t seed) {
  require_exponent(a, "Bernstein a");
  if (!(b >= a)) throw DomainError("Bernstein check needs 1 <= a <= b <= infinity");
  if (trials < 1) throw DomainError("Bernstein check needs at least one trial");
  const Grid1D& grid = bank.grid();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  // Spatially localized wave packets centred in the plateau [2^q, 2^{q+1}]
  // of the block, then cut out exactly by the block multiplier.
  const double scale = std::ldexp(1.0, q);
  const double width = 4.0 / scale;
  const double exponent = alpha + 1.0 / a - (std::isinf(b) ? 0.0 : 1.0 / b);
  RatioStatistics stats;
  stats.min = kInfinity;
  double sum = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    std::vector<double> centre(3), freq(3), phase(3), amp(3);
    for (int i = 0; i < 3; ++i) {
      centre[i] = (unit(rng) - 0.5) * 10.0 * width;
      freq[i] = scale * (1.0 + unit(rng));
      phase[i] = 2.0 * std::numbers::pi * unit(rng);
      amp[i] = gauss(rng);
    }
    const auto raw = RealField::sample(grid, [&](double x) {
      double v = 0.0;
      for (int i = 0; i < 3; ++i) {
        const double d = (x - centre[i]) / width;
        v += amp[i] * std::exp(-0.5 * d * d) * std::cos(freq[i] * x + phase[i]);
      }
      return v;
    });
    const SpectralField block = bank.apply(q, forward_transform(raw), true);
    const double denom = std::exp2(q * exponent) * lp_norm(inverse_transform(block), a);
    if (denom == 0.0) continue;
    const double numer = lp_norm(inverse_transform(fractional_derivative(block, alpha)), b);
    const double ratio = numer / denom;
    stats.min = std::min(stats.min, ratio);
    stats.max = std::max(stats.max, ratio);
    sum += ratio;
    ++stats.trials;
  }
  if (stats.trials == 0) throw NumericError("Bernstein check produced only empty blocks");
  stats.mean = sum / stats.trials;
  return stats;
}

double check_embedding_l1(const RealField& f, const LPFilterBank& bank) {
  const double l1 = lp_norm(f, 1.0);
  if (l1 == 0.0) throw DomainError("embedding ratio undefined for the zero field");
  const BesovSpec spec{-0.5, 2.0, kInfinity, true};
  return besov_norm(forward_transform(f), spec, bank) / l1;
}

double check_product_estimate(const RealField& f, const RealField& g, double s, const LPFilterBank& bank) {
  if (!(s > 0.0)) throw DomainError("product estimate needs s > 0");
  if (!(f.grid() == g.grid())) throw DomainError("product factors live on different grids");
  RealField fg(f.grid());
  for (std::size_t j = 0; j < fg.size(); ++j) fg[j] = f[j] * g[j];
  // Homogeneous blocks never see xi = 0, so the means are dropped explicitly.
  const BesovSpec spec{s, 2.0, 1.0, true};
  const double lhs = besov_norm(without_mean(forward_transform(fg)), spec, bank);
  const double denom = lp_norm(f, kInfinity) * besov_norm(without_mean(forward_transform(g)), spec, bank) +
                       lp_norm(g, kInfinity) * besov_norm(without_mean(forward_transform(f)), spec, bank);
  if (denom == 0.0) throw DomainError("product estimate denominator vanishes");
  return lhs / denom;
}

}  // namespace timo
