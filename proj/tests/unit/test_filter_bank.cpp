#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "timo/errors.hpp"
#include "timo/filter_bank.hpp"

using namespace timo;
using Catch::Matchers::WithinAbs;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("bump functions agree with the reference construction") {
  for (double xi = -3.0; xi <= 3.0; xi += 0.01) {
    CHECK_THAT(lp_phi(xi), WithinAbs(oracle::phi(xi), 1e-15));
    CHECK_THAT(lp_chi(xi), WithinAbs(oracle::chi(xi), 1e-15));
  }
  CHECK(lp_phi(0.75) == 0.0);
  CHECK(lp_phi(8.0 / 3.0) == 0.0);
  CHECK(lp_chi(0.5) == 1.0);
  CHECK(lp_chi(4.0 / 3.0) == 0.0);
  CHECK(smooth_step(-1.0) == 0.0);
  CHECK(smooth_step(2.0) == 1.0);
  CHECK_THAT(smooth_step(0.5), WithinAbs(0.5, 1e-15));
}

TEST_CASE("dyadic partition of unity on the real line") {
  for (double xi = 0.01; xi < 100.0; xi *= 1.013) {
    double homog = 0.0;
    for (int q = -10; q <= 10; ++q) homog += lp_phi(std::ldexp(xi, -q));
    CHECK_THAT(homog, WithinAbs(1.0, 1e-14));
    double inhom = lp_chi(xi);
    for (int q = 0; q <= 10; ++q) inhom += lp_phi(std::ldexp(xi, -q));
    CHECK_THAT(inhom, WithinAbs(1.0, 1e-14));
  }
}

TEST_CASE("discrete partition of unity over the resolved range") {
  const Grid1D g = make_grid(4096, 128.0 * kPi);
  const LPFilterBank bank = build_filter_bank(g);
  const auto [lo, hi] = bank.homogeneous_range();
  double worst_h = 0.0, worst_i = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double w = std::abs(g.xi(k));
    double h = 0.0, i = 0.0;
    for (int q = bank.q_min(); q <= bank.q_max(); ++q) h += bank.multiplier(q, k, true);
    for (int q = -1; q <= bank.q_max(); ++q) i += bank.multiplier(q, k, false);
    if (w >= lo && w <= hi) worst_h = std::max(worst_h, std::abs(h - 1.0));
    if (w <= bank.inhomogeneous_limit()) worst_i = std::max(worst_i, std::abs(i - 1.0));
  }
  CHECK(worst_h < 1e-12);
  CHECK(worst_i < 1e-12);
}

TEST_CASE("default range and Nyquist precondition") {
  const Grid1D g = make_grid(4096, 128.0 * kPi);
  // nyquist = 32, so the largest admissible shell has 2^q * 8/3 <= 32.
  CHECK(default_q_max(g) == 3);
  CHECK_THROWS_AS(build_filter_bank(g, -5, 4), ConfigError);
  CHECK_NOTHROW(build_filter_bank(g, -5, 3));
  CHECK_THROWS_AS(build_filter_bank(g, 2, 1), ConfigError);
  const LPFilterBank bank = build_filter_bank(g);
  CHECK(std::ldexp(4.0 / 3.0, bank.q_min()) <= g.dxi());
}

TEST_CASE("block access outside the bank") {
  const Grid1D g = make_grid(256, 16.0 * kPi);
  const LPFilterBank bank = build_filter_bank(g, -2, 2);
  SpectralField F(g);
  F[1] = 1.0;
  CHECK_THROWS_AS(bank.apply(3, F, true), DomainError);
  CHECK_THROWS_AS(bank.apply(-3, F, true), DomainError);
  CHECK_THROWS_AS(bank.apply(3, F, false), DomainError);
  CHECK(spectral_l2(bank.apply(-2, F, false)) == 0.0);
  CHECK(bank.first_block(true) == -2);
  CHECK(bank.first_block(false) == -1);
  CHECK(bank.block_count(false) == 4);
}

TEST_CASE("block l2 agrees with the materialized block") {
  std::mt19937_64 rng(5);
  const Grid1D g = make_grid(1024, 32.0 * kPi);
  const LPFilterBank bank = build_filter_bank(g);
  const SpectralField F = oracle::random_field(g, 1, 400, rng);
  for (int q = bank.q_min(); q <= bank.q_max(); ++q) {
    CHECK_THAT(bank.block_l2(q, F, true), WithinAbs(spectral_l2(bank.apply(q, F, true)), 1e-12));
  }
}

TEST_CASE("sub-range mass sees only the mean when the bank covers the grid") {
  const Grid1D g = make_grid(512, 32.0 * kPi);
  const LPFilterBank bank = build_filter_bank(g);
  SpectralField F(g);
  F[0] = 2.0;
  F[g.index_of(5)] = 1.0;
  F[g.index_of(-5)] = 1.0;
  CHECK_THAT(bank.sub_range_mass(F), WithinAbs(4.0 / g.length(), 1e-14));
}
