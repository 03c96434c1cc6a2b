#include "timo/filter_bank.hpp"

#include <cmath>
#include <string>

#include "timo/errors.hpp"

namespace timo {
namespace {

constexpr double kShellInner = 3.0 / 4.0;
constexpr double kShellOuter = 8.0 / 3.0;
constexpr double kBallRadius = 4.0 / 3.0;

double exp_glue(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

}  // namespace

double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = exp_glue(t);
  const double b = exp_glue(1.0 - t);
  return a / (a + b);
}

double lp_bump(double xi) {
  const double w = std::abs(xi);
  if (w <= kShellInner || w >= kShellOuter) return 0.0;
  return smooth_step((kShellOuter - w) / (kShellOuter - 2.0)) * smooth_step((w - kShellInner) / (1.0 - kShellInner));
}

double lp_phi(double xi) {
  const double w = std::abs(xi);
  const double top = lp_bump(w);
  if (top == 0.0) return 0.0;
  // Only j in {-1, 0, 1} can hit the support when |xi| is in the shell.
  double denom = 0.0;
  for (int j = -2; j <= 2; ++j) denom += lp_bump(std::ldexp(w, -j));
  return top / denom;
}

double lp_chi(double xi) {
  const double w = std::abs(xi);
  if (w <= kShellInner) return 1.0;
  if (w >= kBallRadius) return 0.0;
  // For 3/4 < |xi| < 4/3 the only negative-index shell touching xi is j = -1.
  return lp_phi(2.0 * w);
}

LPFilterBank::LPFilterBank(const Grid1D& grid, int q_min, int q_max)
    : grid_(grid), q_min_(q_min), q_max_(q_max), shell_first_(std::min(q_min, 0)) {
  const double dxi = grid_.dxi();
  const long m_cap = static_cast<long>(grid_.size() / 2);
  for (int q = shell_first_; q <= q_max_; ++q) {
    Shell s;
    const double lo = std::ldexp(kShellInner, q);
    const double hi = std::ldexp(kShellOuter, q);
    s.m_begin = std::max(1L, static_cast<long>(std::ceil(lo / dxi)));
    const long m_end = std::min(m_cap, static_cast<long>(std::floor(hi / dxi)));
    for (long m = s.m_begin; m <= m_end; ++m) s.weights.push_back(lp_phi(std::ldexp(static_cast<double>(m) * dxi, -q)));
    shells_.push_back(std::move(s));
  }
  chi_.m_begin = 0;
  const long chi_end = std::min(m_cap, static_cast<long>(std::floor(kBallRadius / dxi)));
  for (long m = 0; m <= chi_end; ++m) chi_.weights.push_back(lp_chi(static_cast<double>(m) * dxi));
}

const LPFilterBank::Shell* LPFilterBank::shell(int q, bool homogeneous) const {
  if (homogeneous) {
    if (q < q_min_ || q > q_max_) {
      throw DomainError("homogeneous block " + std::to_string(q) + " outside bank range [" + std::to_string(q_min_) +
                        ", " + std::to_string(q_max_) + "]");
    }
    return &shells_[static_cast<std::size_t>(q - shell_first_)];
  }
  if (q > q_max_) throw DomainError("inhomogeneous block " + std::to_string(q) + " above q_max");
  if (q <= -2) return nullptr;
  if (q == -1) return &chi_;
  return &shells_[static_cast<std::size_t>(q - shell_first_)];
}

double LPFilterBank::multiplier_at(int q, long wavenumber, bool homogeneous) const {
  const Shell* s = shell(q, homogeneous);
  if (s == nullptr) return 0.0;
  const long m = std::labs(wavenumber);
  const long offset = m - s->m_begin;
  if (offset < 0 || offset >= static_cast<long>(s->weights.size())) return 0.0;
  return s->weights[static_cast<std::size_t>(offset)];
}

double LPFilterBank::multiplier(int q, std::size_t k, bool homogeneous) const {
  return multiplier_at(q, grid_.wavenumber(k), homogeneous);
}

std::pair<double, double> LPFilterBank::homogeneous_range() const {
  return {std::ldexp(kBallRadius, q_min_), std::ldexp(kShellInner, q_max_)};
}

double LPFilterBank::inhomogeneous_limit() const { return std::ldexp(kShellInner, q_max_); }

SpectralField LPFilterBank::apply(int q, const SpectralField& F, bool homogeneous) const {
  if (!(F.grid() == grid_)) throw DomainError("field and filter bank live on different grids");
  SpectralField out(grid_);
  const Shell* s = shell(q, homogeneous);
  if (s == nullptr) return out;
  const std::size_t n = grid_.size();
  for (std::size_t i = 0; i < s->weights.size(); ++i) {
    const double w = s->weights[i];
    if (w == 0.0) continue;
    const auto m = static_cast<std::size_t>(s->m_begin) + i;
    out[m % n] = w * F[m % n];
    if (m != 0 && m != n / 2) out[n - m] = w * F[n - m];
  }
  return out;
}

double LPFilterBank::block_l2(int q, const SpectralField& F, bool homogeneous) const {
  if (!(F.grid() == grid_)) throw DomainError("field and filter bank live on different grids");
  const Shell* s = shell(q, homogeneous);
  if (s == nullptr) return 0.0;
  const std::size_t n = grid_.size();
  double acc = 0.0;
  for (std::size_t i = 0; i < s->weights.size(); ++i) {
    const double w2 = s->weights[i] * s->weights[i];
    if (w2 == 0.0) continue;
    const auto m = static_cast<std::size_t>(s->m_begin) + i;
    double local = std::norm(F[m % n]);
    if (m != 0 && m != n / 2) local += std::norm(F[n - m]);
    acc += w2 * local;
  }
  return std::sqrt(acc / grid_.length());
}

double LPFilterBank::sub_range_mass(const SpectralField& F) const {
  if (!(F.grid() == grid_)) throw DomainError("field and filter bank live on different grids");
  double acc = 0.0;
  for (std::size_t k = 0; k < F.size(); ++k) {
    double covered = 0.0;
    for (int q = q_min_; q <= q_max_; ++q) covered += multiplier(q, k, true);
    acc += std::norm((1.0 - covered) * F[k]);
  }
  return acc / grid_.length();
}

int default_q_max(const Grid1D& grid) {
  return static_cast<int>(std::floor(std::log2(grid.nyquist() * 3.0 / 8.0)));
}

int default_q_min(const Grid1D& grid) { return static_cast<int>(std::floor(std::log2(0.75 * grid.dxi()))); }

LPFilterBank build_filter_bank(const Grid1D& grid, int q_min, int q_max) {
  if (q_min > q_max) throw ConfigError("filter bank needs q_min <= q_max");
  if (std::ldexp(kShellOuter, q_max) > grid.nyquist() * (1.0 + 1e-12)) {
    throw ConfigError("shell q_max = " + std::to_string(q_max) + " extends past the grid Nyquist frequency");
  }
  return LPFilterBank(grid, q_min, q_max);
}

LPFilterBank build_filter_bank(const Grid1D& grid) {
  return build_filter_bank(grid, default_q_min(grid), default_q_max(grid));
}

}  // namespace timo
