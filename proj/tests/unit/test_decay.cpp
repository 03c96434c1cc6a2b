#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "timo/decay.hpp"
#include "timo/errors.hpp"

using namespace timo;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("decay exponent fits") {
  const auto t = log_spaced_times(20.0, 500.0);
  CHECK(t.front() == 20.0);
  CHECK(t.back() == 500.0);
  CHECK(t.size() == 57);

  std::vector<double> clean, noisy;
  std::mt19937_64 rng(4);
  std::normal_distribution<double> n(0.0, 0.005);
  for (double s : t) {
    clean.push_back(3.0 * std::pow(1.0 + s, -0.25));
    noisy.push_back(clean.back() * (1.0 + n(rng)));
  }
  const DecayReport exact = fit_decay_exponent(t, clean, {20.0, 500.0});
  CHECK_THAT(exact.fitted_exponent, WithinAbs(-0.25, 1e-12));
  CHECK_THAT(exact.r_squared, WithinAbs(1.0, 1e-12));
  CHECK_THAT(fit_decay_exponent(t, noisy, {20.0, 500.0}).fitted_exponent, WithinAbs(-0.25, 0.01));

  CHECK_THROWS_AS(fit_decay_exponent(t, clean, {600.0, 700.0}), DomainError);
  clean[3] = 0.0;
  CHECK_THROWS_AS(fit_decay_exponent(t, clean, {20.0, 500.0}), DomainError);
  CHECK_THROWS_AS(log_spaced_times(0.0, 1.0), DomainError);
}

TEST_CASE("heat-type estimate parameters") {
  CHECK_NOTHROW(Prop31Params{0.0, 0.5, 1.0, 2.0, 2.0, 1}.validate());
  CHECK_NOTHROW(Prop31Params{1.0, 0.5, 0.5, 1.0, 2.0, 1}.validate());
  CHECK_THROWS_AS((Prop31Params{1.0, 0.5, 0.4, 1.0, 2.0, 1}.validate()), DomainError);
  CHECK_THROWS_AS((Prop31Params{0.0, 0.0, 1.0, 2.0, 2.0, 1}.validate()), DomainError);
  CHECK_THROWS_AS((Prop31Params{0.0, 0.5, 1.0, 3.0, 2.0, 1}.validate()), DomainError);
  CHECK_THROWS_AS((Prop31Params{0.0, 0.5, 1.0, 2.0, 2.0, 2}.validate()), DomainError);
}

TEST_CASE("heat-type estimate on a Gaussian") {
  const Grid1D g = make_grid(8192, 200.0 * kPi);
  const LPFilterBank bank = build_filter_bank(g);
  const SpectralField F = without_mean(forward_transform(RealField::sample(g, [](double x) { return std::exp(-x * x); })));
  const Prop31Params params{0.0, 0.5, 1.0, 2.0, 2.0, 1};
  CHECK_THAT(prop31_lhs(F, 0.0, params, bank), WithinRel(besov_norm(F, BesovSpec{0.0, 2.0, 2.0, true}, bank), 1e-14));
  const std::vector<double> times{0.0, 1.0, 10.0, 100.0};
  const Prop31Result res = verify_prop31(F, params, times, bank);
  CHECK(res.valid);
  CHECK(res.lhs_non_increasing);
  CHECK(res.constant > 0.0);
  CHECK(res.constant < 10.0);
  CHECK_THAT(res.rhs[2], WithinRel(prop31_rhs(F, 10.0, params, bank), 1e-14));
  CHECK_THROWS_AS(prop31_lhs(F, -1.0, params, bank), DomainError);
}

TEST_CASE("shell packet e-folding tracks the leading eigenvalue") {
  const Grid1D g = make_grid(8192, 64.0 * kPi);
  const ShellDecayReport rep = shell_efolding(MaterialLaw::cubic(1.0, 1.0, 1.0), 2, g);
  CHECK(rep.spectral_rate < 0.0);
  CHECK(rep.efold_time > 0.0);
  CHECK(rep.worst_factor < 2.0);
  CHECK(1.0 / rep.efold_time >= -rep.spectral_rate * 0.5);
  CHECK_THROWS_AS(shell_efolding(MaterialLaw{}, 12, g), ConfigError);
}

TEST_CASE("linear decay with equal wave speeds") {
  const DecayReport rep = verify_linear_decay(MaterialLaw::cubic(1.0, 1.0, 1.0), 0, LinearDecayConfig{});
  CHECK(rep.pass);
  CHECK_THAT(rep.fitted_exponent, WithinAbs(-0.25, 0.05));
  CHECK(rep.boundary_mass <= 1e-8);
  CHECK_THROWS_AS(verify_linear_decay(MaterialLaw{}, -1, LinearDecayConfig{}), DomainError);
}
