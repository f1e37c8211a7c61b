#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "relaylab/bounds.hpp"
#include "relaylab/errors.hpp"

using namespace relaylab;

namespace {

std::vector<double> log_grid(double lo, double hi, int count) {
  std::vector<double> out;
  for (int i = 0; i < count; ++i) {
    out.push_back(std::pow(10.0, std::log10(lo) + (std::log10(hi) - std::log10(lo)) * i / (count - 1)));
  }
  return out;
}

}  // namespace

TEST_CASE("capacity_terms examples") {
  const auto zero = capacity_terms(ChannelParams::symmetric(0.0, 0.0));
  CHECK(zero.broadcast == 0.0);
  CHECK(zero.point_to_point == 0.0);

  const auto one = capacity_terms(ChannelParams::symmetric(1.0, 0.0));
  CHECK(std::abs(one.broadcast - 0.792481) <= 1e-6);
  CHECK(std::abs(one.broadcast - 0.5 * std::log2(3.0)) <= 1e-15);
  CHECK(std::abs(one.point_to_point - 0.5) <= 1e-15);

  // 0.5 log2((1 + 2e6) / (1 + 1e6)), 40-digit evaluation.
  const auto big = capacity_terms(ChannelParams::symmetric(1e6, 0.0));
  CHECK(std::abs((big.broadcast - big.point_to_point) - 0.49999963932651028) <= 1e-12);
}

TEST_CASE("capacity_terms ordering holds across snr") {
  for (const double snr : log_grid(1e-4, 1e9, 200)) {
    const auto c = capacity_terms(ChannelParams::symmetric(snr, 0.0));
    CHECK(c.point_to_point <= c.broadcast);
    CHECK(c.broadcast <= c.point_to_point + 0.5);
  }
}

TEST_CASE("cutset_bound examples") {
  const auto broadcast = cutset_bound(ChannelParams::symmetric(1.0, 10.0));
  CHECK(std::abs(broadcast.value - 0.792481) <= 1e-6);
  CHECK(broadcast.binding == CutsetBinding::broadcast);

  const auto multiple = cutset_bound(ChannelParams::symmetric(1.0, 0.0));
  CHECK(multiple.value == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(multiple.binding == CutsetBinding::multiple_access);

  const auto asym = cutset_bound(ChannelParams::asymmetric(1.0, 1.0, 10.0));
  CHECK(asym.value == broadcast.value);
  CHECK(asym.binding == broadcast.binding);

  // Tie at zero power resolves to broadcast.
  CHECK(cutset_bound(ChannelParams::symmetric(0.0, 0.0)).binding == CutsetBinding::broadcast);
}

TEST_CASE("asymmetric cut-set uses both link snrs") {
  const auto c = cutset_bound(ChannelParams::asymmetric(3.0, 1.0, 0.25));
  CHECK(c.value == doctest::Approx(std::min(0.5 * std::log2(5.0), 0.5 * std::log2(2.0) + 0.25)));
  CHECK(c.binding == CutsetBinding::multiple_access);
}

TEST_CASE("ChannelParams validation") {
  CHECK_THROWS_AS(cutset_bound(ChannelParams::symmetric(-1.0, 0.0)), DomainError);
  CHECK_THROWS_AS(cutset_bound(ChannelParams::symmetric(1.0, -0.1)), DomainError);
  ChannelParams half{1.0, 2.0, {}, 0.5};
  CHECK_THROWS_AS(cutset_bound(half), DomainError);
  CHECK_THROWS_AS(new_bound(ChannelParams::asymmetric(1.0, 1.0, 0.5)), DomainError);
  CHECK_THROWS_AS(gap(ChannelParams::asymmetric(1.0, 1.0, 0.5)), DomainError);
}

TEST_CASE("solve_a_star examples") {
  CHECK(solve_a_star(0.0) == 0.0);
  CHECK(std::abs(solve_a_star(0.5) - oracle::a_star_quadratic(0.5)) <= 1e-12);
  CHECK(std::abs(solve_a_star(0.5) - 0.0535) <= 1e-4);
  CHECK(std::abs(solve_a_star(1.0) - 0.160131) <= 1e-6);
  CHECK_THROWS_AS(solve_a_star(-0.1), DomainError);
  CHECK_THROWS_AS(solve_a_star(std::nan("")), DomainError);
}

TEST_CASE("solve_a_star: closed form satisfies the crossing equation and matches the oracle") {
  std::mt19937_64 gen(101);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (int i = 0; i < 1000; ++i) {
    const double r0 = u(gen);
    const double a = solve_a_star(r0);
    CHECK(std::abs(2.0 * a + relay_penalty(a) - r0) <= 1e-9);
    CHECK(a >= 0.0);
    CHECK(a <= 0.5 * r0);
    CHECK(std::abs(a - oracle::a_star_quadratic(r0)) <= 1e-9);
  }
}

TEST_CASE("new_bound examples") {
  const auto zero_rate = new_bound(ChannelParams::symmetric(1.0, 0.0));
  CHECK(zero_rate.value == doctest::Approx(0.5).epsilon(1e-15));

  const auto big = new_bound(ChannelParams::symmetric(1e6, 0.5));
  const auto c = capacity_terms(ChannelParams::symmetric(1e6, 0.5));
  CHECK(big.binding == NewBoundBinding::crossing);
  CHECK(std::abs(big.value - (c.point_to_point + 0.5 - oracle::a_star_quadratic(0.5))) <= 1e-12);
  CHECK(std::abs((big.value - c.point_to_point) - 0.446483) <= 2e-6);

  const auto one = new_bound(ChannelParams::symmetric(1.0, 1.0));
  CHECK(one.binding == NewBoundBinding::broadcast);
  CHECK(std::abs(one.value - 0.5 * std::log2(3.0)) <= 1e-15);
  CHECK(one.value == cutset_bound(ChannelParams::symmetric(1.0, 1.0)).value);
}

TEST_CASE("gap examples") {
  CHECK(gap(ChannelParams::symmetric(1.0, 1.0)) == 0.0);
  CHECK(std::abs(gap(ChannelParams::symmetric(1e6, 0.5)) - 0.05350) <= 1e-4);
  for (const double snr : {0.0, 0.3, 1.0, 1e3, 1e6}) {
    CHECK(gap(ChannelParams::symmetric(snr, 0.0)) == 0.0);
  }
}

TEST_CASE("network_gap_preconstant examples") {
  CHECK(std::abs(network_gap_preconstant(0.053517, 4) - 0.013379) <= 1e-6);
  CHECK(network_gap_preconstant(0.0, 4) == 0.0);
  CHECK(network_gap_preconstant(0.5, 2) == 0.25);
  CHECK_THROWS_AS(network_gap_preconstant(0.1, 0), DomainError);
  CHECK_THROWS_AS(network_gap_preconstant(-0.1, 4), DomainError);
}

TEST_CASE("dominance: new bound never exceeds the cut-set bound") {
  for (const double snr : log_grid(0.1, 1e6, 60)) {
    for (int j = 0; j <= 80; ++j) {
      const double r0 = 0.05 * j;
      const auto params = ChannelParams::symmetric(snr, r0);
      const BoundReport r = bound_report(params);
      CHECK(r.new_bound <= r.cutset);
      // Strict exactly when the crossing constraint is active and a* > 0; at r0 = 0 the
      // crossing constraint binds with a* = 0 and the two bounds coincide.
      CHECK((r.new_bound < r.cutset) == (r.new_binding == NewBoundBinding::crossing && r0 > 0.0));
      if (r.cutset_binding == CutsetBinding::multiple_access && r0 > 0.0) {
        CHECK(r.cutset - r.new_bound >= 1e-6);
      }
      CHECK(r.gap >= 0.0);
      CHECK(r.gap <= r.a_star + 1e-15);
      CHECK(r.gap == r.cutset - r.new_bound);
    }
  }
}

TEST_CASE("max-min reduction: dense scan over a reproduces new_bound") {
  std::mt19937_64 gen(2015);
  std::uniform_real_distribution<double> log_snr(-1.0, 6.0);
  std::uniform_real_distribution<double> rate(0.0, 4.0);
  for (int i = 0; i < 500; ++i) {
    const double snr = std::pow(10.0, log_snr(gen));
    const double r0 = rate(gen);
    const double scanned = oracle::new_bound_dense_scan(snr, r0, 1e-4);
    CHECK(std::abs(scanned - new_bound(ChannelParams::symmetric(snr, r0)).value) <= 2e-4);
  }
}

TEST_CASE("gap is nondecreasing in snr for fixed r0") {
  for (int j = 0; j <= 40; ++j) {
    const double r0 = 0.1 * j;
    double previous = 0.0;
    for (const double snr : log_grid(0.01, 1e7, 120)) {
      const double g = gap(ChannelParams::symmetric(snr, r0));
      CHECK(g >= previous - 1e-15);
      previous = g;
    }
  }
}

TEST_CASE("gap follows the piecewise law in r0") {
  for (const double snr : {0.1, 1.0, 10.0, 1e3, 1e6}) {
    const auto c = capacity_terms(ChannelParams::symmetric(snr, 0.0));
    const double kink = c.broadcast - c.point_to_point;
    for (int j = 0; j <= 400; ++j) {
      const double r0 = 0.005 * j;
      const double a = oracle::a_star_quadratic(r0);
      const double expected = r0 <= kink ? a : std::max(0.0, kink - r0 + a);
      CHECK(std::abs(gap(ChannelParams::symmetric(snr, r0)) - expected) <= 1e-9);
    }
  }
}
