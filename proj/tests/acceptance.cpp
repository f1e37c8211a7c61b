// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "relaylab/bounds.hpp"
#include "relaylab/cli.hpp"
#include "relaylab/concentration.hpp"
#include "relaylab/corpus.hpp"
#include "relaylab/gap_optimizer.hpp"
#include "relaylab/numerics.hpp"
#include "relaylab/relay_verifier.hpp"
#include "relaylab/rng.hpp"

using namespace relaylab;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buffer[512];
  std::snprintf(buffer, sizeof buffer, format, args...);
  return buffer;
}

int failures = 0;

void criterion(const char* id, const char* title, double budget_seconds,
               const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    outcome = body();
  } catch (const std::exception& e) {
    outcome = {false, std::string("exception: ") + e.what()};
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = elapsed < budget_seconds;
  const bool ok = outcome.ok && in_time;
  if (!ok) ++failures;
  std::printf("%s %-4s %s: %s [%.3f s, budget %g s%s]\n", ok ? "PASS" : "FAIL", id, title,
              outcome.detail.c_str(), elapsed, budget_seconds, in_time ? "" : ", over budget");
  std::fflush(stdout);
}

// Runs the CLI and returns its stdout.
std::string cli(const std::vector<std::string>& args, int& code) {
  std::ostringstream out;
  std::ostringstream err;
  code = run_cli(args, out, err);
  return out.str();
}

}  // namespace

int main() {
  criterion("A1", "crossing point a*(0.5)", 1e-3, [] {
    const double closed = solve_a_star(0.5);
    const double bisected = bisect_monotone(
        [](double a) { return 2.0 * a + relay_penalty(a) - 0.5; }, 0.0, 0.5, 1e-15);
    const double vs_paper = std::abs(closed - 0.0535);
    const double vs_bisection = std::abs(closed - bisected);
    return Outcome{vs_paper <= 1e-3 && vs_bisection <= 1e-9,
                   fmt("a* = %.12f, |a* - 0.0535| = %.2e (tol 1e-3), |closed - bisection| = %.2e (tol 1e-9)",
                       closed, vs_paper, vs_bisection)};
  });

  criterion("A2", "supremum of the gap", 1.0, [] {
    const GapMaximizer best = maximize_gap(SweepSpec{});
    const bool ok = best.gap >= 0.0530 && best.gap <= 0.0536 && best.r0 >= 0.49 && best.r0 <= 0.51;
    return Outcome{ok, fmt("gap* = %.6f at snr = %g, r0* = %.6f (want gap in [0.0530, 0.0536], r0 in [0.49, 0.51])",
                           best.gap, best.snr, best.r0)};
  });

  criterion("A3", "network preconstant", 1e-3, [] {
    int code = 0;
    const std::string out = cli({"preconstant", "--format", "json"}, code);
    const double value = network_gap_preconstant(solve_a_star(0.5), 4);
    const bool printed = out.find("preconstant") != std::string::npos;
    return Outcome{code == 0 && printed && std::abs(value - 0.01338) <= 1e-4,
                   fmt("preconstant = %.6f (want 0.01338 +- 1e-4)", value)};
  });

  criterion("A4", "new bound dominated by cut-set", 1.0, [] {
    SweepSpec spec;
    spec.snr_count = 50;
    spec.r0_count = 50;
    std::size_t above = 0;
    std::size_t weak = 0;
    std::size_t mac_cells = 0;
    for (const double snr : spec.snr_grid()) {
      for (const double r0 : spec.r0_grid()) {
        const BoundReport r = bound_report(ChannelParams::symmetric(snr, r0));
        if (r.new_bound > r.cutset) ++above;
        if (r.cutset_binding == CutsetBinding::multiple_access && r0 > 0.0) {
          ++mac_cells;
          if (r.cutset - r.new_bound < 1e-6) ++weak;
        }
      }
    }
    return Outcome{above == 0 && weak == 0,
                   fmt("2500 cells: %zu above cut-set, %zu of %zu multiple-access cells with gap < 1e-6",
                       above, weak, mac_cells)};
  });

  criterion("A5", "max-min reduction vs dense a-scan", 10.0, [] {
    std::mt19937_64 gen(kDefaultSeed);
    std::uniform_real_distribution<double> log_snr(-1.0, 6.0);
    std::uniform_real_distribution<double> rate(0.0, 4.0);
    double worst = 0.0;
    for (int i = 0; i < 500; ++i) {
      const double snr = std::pow(10.0, log_snr(gen));
      const double r0 = rate(gen);
      const double scanned = oracle::new_bound_dense_scan(snr, r0, 1e-4);
      worst = std::max(worst, std::abs(scanned - new_bound(ChannelParams::symmetric(snr, r0)).value));
    }
    return Outcome{worst <= 2e-4, fmt("500 pairs, max |scan - new_bound| = %.2e (tol 2e-4)", worst)};
  });

  criterion("A6", "blow-up bound on exact shapes", 1.0, [] {
    std::size_t configs = 0;
    std::size_t violations = 0;
    // 5 dimensions x 4 rates x 2 slacks x 3 variances x 2 shapes = 240.
    for (const int n : {1, 2, 5, 10, 100}) {
      for (const double a : {0.05, 0.2, 1.0, 3.0}) {
        for (const double r : {0.1, 1.0}) {
          for (const double noise : {0.25, 1.0, 4.0}) {
            for (const auto& report : {halfspace_blowup_exact(n, a, r, noise),
                                       ball_blowup_semianalytic(n, a, r, noise)}) {
              ++configs;
              if (!report.passed) ++violations;
            }
          }
        }
      }
    }
    return Outcome{violations == 0 && configs == 240,
                   fmt("%zu half-space and ball configurations, %zu violations", configs, violations)};
  });

  criterion("A7", "blow-up bound by Monte Carlo", 30.0, [] {
    constexpr double inf = std::numeric_limits<double>::infinity();
    const RngStream base(kDefaultSeed, 7);
    std::vector<std::pair<SetDescriptor, double>> configs;
    for (const int n : {2, 5}) {
      configs.push_back({make_slab(n, -0.5, 0.5, 1.0), 0.0});
      configs.push_back({make_slab(n, -inf, -0.4, 2.0), 0.0});
      std::vector<double> lo(n, -1.0);
      std::vector<double> hi(n, 1.0);
      configs.push_back({make_rectangle(lo, hi, 1.0), 0.0});
      lo[0] = -inf;
      hi[n - 1] = 0.3;
      configs.push_back({make_rectangle(lo, hi, 0.5), 0.0});
    }
    std::size_t failed = 0;
    double worst_margin = inf;
    std::uint64_t stream = 0;
    for (auto& [set, a] : configs) {
      // Largest a the set admits, slightly reduced so the precondition holds.
      a = -std::log2(gaussian_measure(set).value) / set.dimension * (1.0 + 1e-9);
      for (const double r : {0.1, 0.5}) {
        const auto report = mc_blowup(set, a, r, 100000, base.substream(stream++));
        if (!report.passed) ++failed;
        worst_margin = std::min(worst_margin, report.measured + 4.0 * report.std_error - report.theoretical);
      }
    }
    return Outcome{failed == 0, fmt("%zu slab/rectangle configs at n in {2,5}, 1e5 trials: %zu failures, "
                                    "min(estimate + 4se - bound) = %.4f",
                                    2 * configs.size(), failed, worst_margin)};
  });

  criterion("A8", "scaling reduction on exact shapes", 1.0, [] {
    std::size_t checks = 0;
    std::size_t failed = 0;
    double worst = 0.0;
    for (const double noise : {0.25, 1.0, 4.0, 9.0}) {
      const SetDescriptor sets[] = {make_half_space(3, -0.4, noise), make_ball(4, 2.0, noise),
                                    make_slab(2, -0.3, 1.1, noise)};
      for (const auto& set : sets) {
        const double cap = -std::log2(gaussian_measure(set).value) / set.dimension;
        for (const double r : {0.0, 0.3, 1.0}) {
          const ScalingReport report = scaling_invariance_check(set, 0.9 * cap, r);
          ++checks;
          if (!report.passed || report.method == MeasurementMethod::monte_carlo || report.difference > 1e-10) ++failed;
          worst = std::max(worst, report.difference);
        }
      }
    }
    return Outcome{failed == 0, fmt("%zu checks over N in {0.25,1,4,9}, max difference %.2e (tol 1e-10)",
                                    checks, worst)};
  });

  std::vector<RateChainVerdict> corpus_results;
  criterion("A9", "entropy inequality on the relay corpus", 60.0, [&] {
    double worst = std::numeric_limits<double>::infinity();
    std::size_t failed = 0;
    for (const auto& code : generate_relay_corpus()) {
      corpus_results.push_back(check_rate_chain(code));
      const double slack = corpus_results.back().report.slack;
      worst = std::min(worst, slack);
      if (slack < -kSlackAllowance) ++failed;
    }
    ToyRelayCode constant{uniform_codebook(4, 1.0), {}, 1.0, std::nullopt};
    const double tight = check_entropy_bound(constant).report.slack;
    return Outcome{failed == 0 && std::abs(tight) <= 1e-6,
                   fmt("%zu codes, %zu with slack < -1e-6, min slack %.3e; constant relay |slack| = %.2e",
                       corpus_results.size(), failed, worst, std::abs(tight))};
  });

  criterion("A10", "rate chain and link symmetry", 60.0, [&] {
    std::size_t rate_failed = 0;
    std::size_t symmetry_failed = 0;
    double worst_symmetry = 0.0;
    double worst_margin = std::numeric_limits<double>::infinity();
    for (const auto& v : corpus_results) {
      if (!v.rate_inequality) ++rate_failed;
      if (!v.link_symmetry) ++symmetry_failed;
      worst_symmetry = std::max(worst_symmetry, std::abs(v.report.i_xz - v.report.i_xy));
      worst_margin = std::min(worst_margin, v.rate_margin);
    }
    return Outcome{!corpus_results.empty() && rate_failed == 0 && symmetry_failed == 0,
                   fmt("%zu codes: %zu rate failures (min margin %.3e), %zu symmetry failures "
                       "(max |I(X;Z)-I(X;Y)| = %.2e, tol 1e-8)",
                       corpus_results.size(), rate_failed, worst_margin, symmetry_failed, worst_symmetry)};
  });

  criterion("A11", "noise norm concentration", 10.0, [] {
    const NormConcentration result =
        noise_norm_concentration(10000, 1.0, 0.05, 100000, RngStream(kDefaultSeed, 11));
    const double diff = std::abs(result.probability - result.exact);
    const double se = std::max(result.std_error,
                               std::sqrt(result.exact * (1.0 - result.exact) / result.trials));
    return Outcome{result.probability >= 0.999 && diff <= 4.0 * se + 1e-12,
                   fmt("n = 1e4, eps = 0.05, 1e5 trials: empirical %.6f, exact %.12f, |diff| = %.2e, 4se = %.2e",
                       result.probability, result.exact, diff, 4.0 * se)};
  });

  std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
