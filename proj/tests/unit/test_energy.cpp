#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "timo/decay.hpp"
#include "timo/errors.hpp"
#include "timo/evolution.hpp"

using namespace timo;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
constexpr double kPi = std::numbers::pi;

Trajectory linear_run(double a, double spacing, double t_end, std::size_t n = 1024, double length = 32.0 * kPi) {
  SimConfig cfg;
  cfg.n_points = n;
  cfg.length = length;
  cfg.law = MaterialLaw::cubic(a, 1.0, 0.0);
  cfg.dt = spacing;
  cfg.t_end = t_end;
  cfg.snapshot_cadence = 1;
  cfg.mode = EvolutionMode::linear;
  return run(cfg, gaussian_state(cfg.grid(), 1.0, 0.5));
}
}  // namespace

TEST_CASE("energy functionals of the zero trajectory vanish") {
  const Grid1D g = make_grid(256, 16.0 * kPi);
  const LPFilterBank bank = build_filter_bank(g);
  Trajectory tr;
  for (int i = 0; i < 3; ++i) {
    tr.times.push_back(0.1 * i);
    tr.states.emplace_back(g);
  }
  const EnergyLedger L = energy_functionals(tr, bank);
  CHECK(L.E_T == 0.0);
  CHECK(L.D_T() == 0.0);
  CHECK(L.N_of_t.back() == 0.0);
  CHECK(L.D_script == 0.0);
  CHECK_THROWS_AS(energy_functionals(Trajectory{}, bank), DomainError);
}

TEST_CASE("energy functionals of a single snapshot") {
  const Grid1D g = make_grid(1024, 32.0 * kPi);
  const LPFilterBank bank = build_filter_bank(g);
  const SpectralState S = gaussian_state(g, 0.3);
  Trajectory tr;
  tr.times = {0.0};
  tr.states = {S};
  const EnergyLedger L = energy_functionals(tr, bank);
  double e = 0.0;
  for (const auto& F : S.c) e += besov_norm(F, BesovSpec{1.5, 2.0, 1.0, false}, bank);
  CHECK_THAT(L.E_T, WithinRel(e, 1e-14));
  CHECK_THAT(L.N_of_t[0], WithinRel(state_l2(S), 1e-14));
  CHECK(L.D_T() == 0.0);
}

TEST_CASE("N(t) is a running supremum") {
  const Trajectory tr = linear_run(2.0, 0.5, 20.0);
  const EnergyLedger L = energy_functionals(tr, build_filter_bank(tr.states[0].grid()));
  for (std::size_t i = 1; i < L.N_of_t.size(); ++i) {
    CHECK(L.N_of_t[i] >= L.N_of_t[i - 1]);
    CHECK(L.D_script_of_t[i] >= L.D_script_of_t[i - 1]);
  }
  CHECK(L.D_T() > 0.0);
}

TEST_CASE("block Lyapunov functional on a pure mode") {
  const Grid1D g = make_grid(64, 4.0 * kPi);
  const LPFilterBank bank = build_filter_bank(g);
  const SpectralField f = forward_transform(RealField::sample(g, [](double x) { return std::cos(1.5 * x); }));
  const SpectralState S(f, f, f, f);
  CHECK_THAT(lyapunov_e1(S, 0, 2.0, bank), WithinRel(-3.0 * 2.0 * kPi, 1e-12));
  CHECK_THAT(lyapunov_e1(S, 2, 2.0, bank), WithinAbs(0.0, 1e-14));
}

TEST_CASE("Lyapunov identity residual shrinks at second order") {
  for (double a : {1.0, 2.0}) {
    const Trajectory coarse = linear_run(a, 0.02, 0.4);
    const Trajectory fine = linear_run(a, 0.01, 0.4);
    const LPFilterBank bank = build_filter_bank(coarse.states[0].grid());
    for (int q : {0, 2}) {
      const double r1 = lyapunov_identity_residual(coarse, q, bank);
      const double r2 = lyapunov_identity_residual(fine, q, bank);
      CHECK_THAT(std::log2(r1 / r2), WithinAbs(2.0, 0.3));
    }
    Trajectory two = coarse;
    two.times.resize(2);
    two.states.resize(2);
    CHECK_THROWS_AS(lyapunov_identity_residual(two, 0, bank), DomainError);
    CHECK_THROWS_AS(lyapunov_identity_residual(coarse, -2, bank), DomainError);
  }
}

TEST_CASE("Fourier energy bound on a linear run") {
  const Trajectory tr = linear_run(2.0, 0.5, 40.0, 2048, 64.0 * kPi);
  const FourierEnergyReport rep = fourier_energy_residual(tr, 0.1, 1.0, 8.0);
  CHECK(rep.c_prime >= 1.0);
  CHECK(rep.fit_samples > 0);
  CHECK(rep.check_samples > 0);
  CHECK(rep.violations == 0);
  CHECK_THROWS_AS(fourier_energy_residual(tr, -1.0, 1.0, 8.0), DomainError);
  CHECK_THROWS_AS(fourier_energy_residual(tr, 0.1, 1000.0, 2000.0), DomainError);
}
