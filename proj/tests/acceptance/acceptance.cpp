// Acceptance driver: `timo_acceptance` runs every criterion, `timo_acceptance N`
// runs criterion N. One PASS/FAIL line per criterion; exit status 1 on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "timo/besov.hpp"
#include "timo/corpus.hpp"
#include "timo/decay.hpp"
#include "timo/errors.hpp"
#include "timo/evolution.hpp"
#include "timo/filter_bank.hpp"
#include "timo/model.hpp"

using namespace timo;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  Outcome() { detail.precision(9); }

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[violated: " << what << "] ";
    }
  }
};

MaterialLaw law(double a, double beta = 1.0) { return MaterialLaw::cubic(a, 1.0, beta); }

double spread(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi / *lo;
}

// ---------------------------------------------------------------------------

void dissipative_dichotomy(Outcome& o) {
  const EnvelopeReport one = envelope_fit(law(1.0), 512.0, 512);
  const EnvelopeReport two = envelope_fit(law(2.0), 512.0, 512);
  const auto tail = tail_scaling(law(2.0), 16.0, 512.0, 64);
  const double variation = spread(tail) - 1.0;
  o.detail << "a=1: " << to_string(one.classification) << " c1=" << one.fitted_c1 << "; a=2: "
           << to_string(two.classification) << " c1=" << two.fitted_c1 << " c2=" << two.fitted_c2
           << "; tail variation=" << variation << " ";
  o.require(one.classification == Envelope::standard && one.fitted_c1 > 1e-3, "a=1 standard with c1 > 1e-3");
  o.require(two.classification == Envelope::regularity_loss && two.fitted_c1 < 1e-3 && two.fitted_c2 > 1e-3,
            "a=2 regularity_loss with c1 < 1e-3 < c2");
  o.require(variation < 0.10, "xi^2 |max Re lambda| varies < 10% on [16, 512]");
}

void linear_decay(Outcome& o) {
  const LinearDecayConfig base{};
  LinearDecayConfig refined = base;
  refined.n_points *= 2;
  refined.length *= 2.0;
  struct Case {
    double a;
    int k;
  };
  for (const Case c : {Case{2.0, 0}, Case{2.0, 1}, Case{1.0, 0}}) {
    const DecayReport r0 = verify_linear_decay(law(c.a), c.k, base);
    const DecayReport r1 = verify_linear_decay(law(c.a), c.k, refined);
    const double gap0 = std::abs(r0.fitted_exponent - r0.reference_exponent);
    const double gap1 = std::abs(r1.fitted_exponent - r1.reference_exponent);
    o.detail << "a=" << c.a << " k=" << c.k << ": exponent " << r0.fitted_exponent << " -> " << r1.fitted_exponent
             << " (target " << r0.reference_exponent << " +- " << r0.tolerance << "); ";
    const std::string tag = "a=" + std::to_string(static_cast<int>(c.a)) + " k=" + std::to_string(c.k);
    o.require(r0.pass, tag + " exponent within tolerance");
    o.require(gap1 <= gap0 + 1e-3, tag + " gap shrinks or holds under refinement");
  }
  const EnvelopeReport env = envelope_fit(law(1.0), 512.0, 512);
  const Grid1D shell_grid = make_grid(8192, 64.0 * kPi);
  for (int q : {3, 4}) {
    const ShellDecayReport s = shell_efolding(law(1.0), q, shell_grid);
    o.detail << "a=1 shell q=" << q << ": rate " << 1.0 / s.efold_time << " vs gap " << env.high_frequency_gap << "; ";
    o.require(1.0 / s.efold_time >= env.high_frequency_gap, "a=1 shell rate >= high-frequency gap");
  }
}

void regularity_loss_signature(Outcome& o) {
  const Grid1D g = make_grid(8192, 64.0 * kPi);
  std::vector<double> scaled, flat;
  for (int q = 2; q <= 5; ++q) {
    const double t2 = shell_efolding(law(2.0), q, g).efold_time;
    const double t1 = shell_efolding(law(1.0), q, g).efold_time;
    scaled.push_back(t2 / std::ldexp(1.0, 2 * q));
    flat.push_back(t1);
    o.detail << "q=" << q << ": a=2 t_e=" << t2 << " a=1 t_e=" << t1 << "; ";
  }
  o.detail << "a=2 spread of t_e/4^q=" << spread(scaled) << ", a=1 spread=" << spread(flat) << " ";
  o.require(spread(scaled) <= 1.25, "a=2 e-folding time proportional to 4^q within 25%");
  o.require(spread(flat) <= 1.25, "a=1 e-folding time q-independent within 25%");
}

void heat_type_estimate(Outcome& o) {
  const std::vector<Prop31Params> sets{{0.0, 0.5, 1.0, 2.0, 2.0, 1}, {1.0, 0.5, 0.5, 1.0, 2.0, 1}};
  const std::vector<double> times{0.0, 1.0, 10.0, 100.0, 1000.0};
  const Grid1D g0 = make_grid(32768, 400.0 * kPi);
  const Grid1D g1 = make_grid(65536, 800.0 * kPi);
  const LPFilterBank b0 = build_filter_bank(g0);
  const LPFilterBank b1 = build_filter_bank(g1);
  for (std::size_t p = 0; p < sets.size(); ++p) {
    for (const auto& c : besov_corpus()) {
      const SpectralField F0 = without_mean(forward_transform(sample_corpus(c, g0)));
      const SpectralField F1 = without_mean(forward_transform(sample_corpus(c, g1)));
      const Prop31Result r0 = verify_prop31(F0, sets[p], times, b0);
      const Prop31Result r1 = verify_prop31(F1, sets[p], times, b1);
      const double change = std::abs(r1.constant / r0.constant - 1.0);
      o.detail << "set " << p + 1 << " " << c.name << ": C=" << r0.constant << " change=" << change << "; ";
      const std::string tag = "set " + std::to_string(p + 1) + " " + c.name;
      o.require(r0.valid && r1.valid && std::isfinite(r0.constant) && r0.constant > 0.0, tag + " constant finite");
      o.require(change < 0.10, tag + " constant changes < 10% under refinement");
      o.require(r0.lhs_non_increasing && r1.lhs_non_increasing, tag + " left side non-increasing");
    }
  }
  const Grid1D big = make_grid(262144, 4000.0 * kPi);
  const LPFilterBank bb = build_filter_bank(big);
  const SpectralField G = without_mean(forward_transform(sample_corpus(besov_corpus().front(), big)));
  const auto ts = log_spaced_times(100.0, 1e4, 10);
  std::vector<double> lhs;
  for (double t : ts) lhs.push_back(prop31_lhs(G, t, sets[0], bb));
  const DecayReport fit = fit_decay_exponent(ts, lhs, {100.0, 1e4});
  o.detail << "gaussian large-t exponent=" << fit.fitted_exponent << " ";
  o.require(std::abs(fit.fitted_exponent + 0.25) <= 0.05, "large-t exponent -0.25 +- 0.05");
}

struct NonlinearRuns {
  std::vector<double> amplitudes{0.005, 0.01, 0.02};
  std::vector<NonlinearDecayResult> results;
};

const NonlinearRuns& nonlinear_runs() {
  static const NonlinearRuns runs = [] {
    NonlinearRuns r;
    for (double amp : r.amplitudes) {
      NonlinearDecayConfig cfg;
      cfg.law = law(2.0);
      cfg.amplitude = amp;
      r.results.push_back(verify_nonlinear_decay(cfg));
    }
    return r;
  }();
  return runs;
}

void energy_inequality(Outcome& o) {
  const NonlinearRuns& runs = nonlinear_runs();
  std::vector<double> ratio;
  for (const auto& r : runs.results) ratio.push_back((r.ledger.E_T + r.ledger.D_T()) / r.initial_besov_32);
  const double c0 = ratio.front();
  o.detail << "C0=" << c0 << " (amplitude " << runs.amplitudes.front() << ")";
  for (std::size_t i = 1; i < ratio.size(); ++i) {
    o.detail << "; amplitude " << runs.amplitudes[i] << ": ratio/C0=" << ratio[i] / c0;
    o.require(ratio[i] <= 1.5 * c0, "E+D <= 1.5 C0 ||U0|| at amplitude " + std::to_string(runs.amplitudes[i]));
  }
  o.detail << " ";
}

void nonlinear_decay(Outcome& o) {
  const NonlinearRuns& runs = nonlinear_runs();
  std::vector<double> exps;
  for (std::size_t i = 0; i < runs.results.size(); ++i) {
    const auto& r = runs.results[i];
    exps.push_back(r.decay.fitted_exponent);
    o.detail << "amplitude " << runs.amplitudes[i] << ": exponent " << r.decay.fitted_exponent << " r2 "
             << r.decay.r_squared << " N growth " << r.n_growth << "; ";
    const std::string tag = "amplitude " + std::to_string(runs.amplitudes[i]);
    o.require(r.decay.pass, tag + " exponent <= -0.20 with r2 >= 0.98");
    o.require(r.n_growth <= 2.0, tag + " max N <= 2 max_{t<=5} N");
  }
  double mean = 0.0;
  for (double e : exps) mean += e / static_cast<double>(exps.size());
  for (double e : exps) o.require(std::abs(e - mean) <= 0.03, "exponent amplitude-independent within 0.03");
}

void lyapunov_identity(Outcome& o) {
  for (double a : {1.0, 2.0}) {
    std::vector<Trajectory> runs;
    for (double dt : {0.002, 0.001}) {
      SimConfig cfg;
      cfg.n_points = 4096;
      cfg.length = 32.0 * kPi;
      cfg.law = law(a, 0.0);
      cfg.dt = dt;
      cfg.t_end = 0.5;
      cfg.snapshot_cadence = 1;
      cfg.mode = EvolutionMode::linear;
      runs.push_back(run(cfg, gaussian_state(cfg.grid(), 1.0, 0.25)));
    }
    const LPFilterBank bank = build_filter_bank(runs[0].states[0].grid());
    for (int q : {0, 2, 4}) {
      const double r0 = lyapunov_identity_residual(runs[0], q, bank);
      const double r1 = lyapunov_identity_residual(runs[1], q, bank);
      const double order = std::log2(r0 / r1);
      o.detail << "a=" << a << " q=" << q << ": order " << order << "; ";
      o.require(std::abs(order - 2.0) <= 0.3, "residual order 2 +- 0.3");
    }
  }
}

void fourier_energy(Outcome& o) {
  const MaterialLaw lw = law(2.0);
  std::vector<double> xis;
  for (int i = 0; i <= 16; ++i) xis.push_back(4.0 * std::pow(16.0, i / 16.0));
  double c3 = std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (const auto& r : modal_decay_rates(lw, xis)) {
    c3 = std::min(c3, 2.0 * r.rate / eta_regularity_loss(r.xi));
    const double spectral = -symbol_eigenvalues(r.xi, lw)[0].real();
    worst = std::max(worst, std::abs(r.rate / spectral - 1.0));
  }
  SimConfig cfg;
  cfg.n_points = 8192;
  cfg.length = 100.0 * kPi;
  cfg.law = lw;
  cfg.dt = 0.5;
  cfg.t_end = 200.0;
  cfg.snapshot_cadence = 1;
  cfg.mode = EvolutionMode::linear;
  const Trajectory tr = run(cfg, gaussian_state(cfg.grid(), 1.0, 0.1));
  const FourierEnergyReport rep = fourier_energy_residual(tr, c3, 4.0, 64.0);
  o.detail << "c3=" << c3 << " C'=" << rep.c_prime << " violations " << rep.violations << "/" << rep.check_samples
           << " (fit on " << rep.fit_samples << "); modal rate vs spectrum worst deviation " << worst << " ";
  o.require(rep.violations == 0, "per-mode bound holds at every sampled (t, xi)");
  o.require(worst <= 0.15, "fitted modal rate within 15% of the spectrum on [4, 64]");
}

void toolkit_properties(Outcome& o) {
  {
    const Grid1D g = make_grid(4096, 128.0 * kPi);
    const LPFilterBank bank = build_filter_bank(g);
    const auto [lo, hi] = bank.homogeneous_range();
    double worst = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
      const double w = std::abs(g.xi(k));
      double h = 0.0, i = 0.0;
      for (int q = bank.q_min(); q <= bank.q_max(); ++q) h += bank.multiplier(q, k, true);
      for (int q = -1; q <= bank.q_max(); ++q) i += bank.multiplier(q, k, false);
      if (w >= lo && w <= hi) worst = std::max(worst, std::abs(h - 1.0));
      if (w <= bank.inhomogeneous_limit()) worst = std::max(worst, std::abs(i - 1.0));
    }
    o.detail << "partition defect " << worst << "; ";
    o.require(worst < 1e-12, "partition of unity < 1e-12");
  }
  {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    for (std::size_t n : {64u, 1024u, 16384u}) {
      const Grid1D g = make_grid(n, 10.0);
      RealField f(g);
      double direct = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        f[j] = u(rng);
        direct += f[j] * f[j] * g.spacing();
      }
      worst = std::max(worst, std::abs(spectral_l2_squared(forward_transform(f)) / direct - 1.0));
    }
    o.detail << "Parseval defect " << worst << "; ";
    o.require(worst < 1e-10, "Parseval < 1e-10 relative");
  }
  {
    const Grid1D g = make_grid(32768, 400.0 * kPi);
    const LPFilterBank bank = build_filter_bank(g);
    double worst = 0.0;
    for (const auto& c : besov_corpus()) {
      const double discrete = besov_norm(sample_corpus(c, g), BesovSpec{1.5, 2.0, 1.0, false}, bank);
      const double exact =
          oracle::besov_b21_quadrature([&](double xi) { return std::norm(c.fhat(xi)); }, 1.5, c.xi_support);
      worst = std::max(worst, std::abs(discrete / exact - 1.0));
    }
    o.detail << "quadrature disagreement " << worst << "; ";
    o.require(worst < 0.02, "Besov norms within 2% of quadrature");
  }
  {
    const Grid1D g = make_grid(512, 32.0 * kPi);
    const LPFilterBank bank = build_filter_bank(g);
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.1, 2.0);
    int bad_r = 0, bad_cl = 0;
    for (int trial = 0; trial < 100; ++trial) {
      FieldTrajectory tr;
      double t = 0.0;
      for (int i = 0; i < 6; ++i) {
        tr.times.push_back(t);
        t += u(rng);
        tr.states.push_back(oracle::random_field(g, 1, 120, rng));
      }
      double prev = kInfinity;
      for (double r : {1.0, 2.0, 4.0, kInfinity}) {
        const double n = besov_norm(tr.states.back(), BesovSpec{0.5, 2.0, r, false}, bank);
        if (n > prev * (1.0 + 1e-12)) ++bad_r;
        prev = n;
      }
      const CheminLernerSpec r1{2.0, BesovSpec{0.5, 2.0, 1.0, false}};
      const CheminLernerSpec rinf{2.0, BesovSpec{0.5, 2.0, kInfinity, false}};
      if (chemin_lerner_norm(tr, r1, bank) < time_mixed_norm(tr, r1, bank) * (1.0 - 1e-12)) ++bad_cl;
      if (chemin_lerner_norm(tr, rinf, bank) > time_mixed_norm(tr, rinf, bank) * (1.0 + 1e-12)) ++bad_cl;
    }
    o.detail << "r-monotonicity failures " << bad_r << ", mixed-norm ordering failures " << bad_cl << "; ";
    o.require(bad_r == 0, "r-monotonicity on 100 random fields");
    o.require(bad_cl == 0, "Chemin-Lerner orderings on 100 random trajectories");
  }
  {
    const Grid1D g = make_grid(32768, 400.0 * kPi);
    const LPFilterBank bank = build_filter_bank(g);
    double lo = kInfinity, hi = 0.0;
    for (int q = 0; q <= bank.q_max(); ++q) {
      const RatioStatistics s = check_bernstein(q, 1.0, 2.0, 2.0, bank, 50);
      lo = std::min(lo, s.min);
      hi = std::max(hi, s.max);
    }
    o.detail << "Bernstein ratios in [" << lo << ", " << hi << "] ";
    o.require(lo >= 0.75 && hi <= 8.0 / 3.0, "Bernstein ratios within [3/4, 8/3]");
  }
}

struct Criterion {
  int id;
  const char* name;
  std::function<void(Outcome&)> body;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list{
      {1, "dissipative dichotomy", dissipative_dichotomy},
      {2, "linear decay", linear_decay},
      {3, "regularity-loss signature", regularity_loss_signature},
      {4, "heat-type decay estimate", heat_type_estimate},
      {5, "energy inequality", energy_inequality},
      {6, "nonlinear decay", nonlinear_decay},
      {7, "Lyapunov identity", lyapunov_identity},
      {8, "Fourier energy inequality", fourier_energy},
      {9, "toolkit properties", toolkit_properties},
  };
  return list;
}

bool run_criterion(const Criterion& c) {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  try {
    const double cross = eigenvalue_cross_check(law(2.0), 32, 512.0, static_cast<std::uint64_t>(c.id));
    o.require(cross <= 1e-8, "eigenvalue cross-check <= 1e-8");
    c.body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail << "[exception: " << e.what() << "] ";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("criterion %d %-27s %s  (%.1f s) %s\n", c.id, c.name, o.pass ? "PASS" : "FAIL", secs,
              o.detail.str().c_str());
  std::fflush(stdout);
  return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  if (argc > 1) {
    only = std::atoi(argv[1]);
    if (only < 1 || only > 9) {
      std::fprintf(stderr, "usage: %s [criterion 1-9]\n", argv[0]);
      return 2;
    }
  }
  bool all = true;
  for (const auto& c : criteria()) {
    if (only != 0 && c.id != only) continue;
    all = run_criterion(c) && all;
  }
  return all ? 0 : 1;
}
