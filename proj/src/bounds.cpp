#include "relaylab/bounds.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "relaylab/errors.hpp"
#include "relaylab/numerics.hpp"

namespace relaylab {

namespace {

void require_nonnegative(double v, const char* name) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string("ChannelParams: ") + name + " must be finite and >= 0");
  }
}

double half_log2_1p(double x) { return 0.5 * std::log1p(x) * kLog2e; }

}  // namespace

void ChannelParams::validate() const {
  require_nonnegative(r0, "r0");
  if (snr1.has_value() != snr2.has_value()) {
    throw DomainError("ChannelParams: snr1 and snr2 must be given together");
  }
  if (is_symmetric()) {
    require_nonnegative(snr, "snr");
  } else {
    require_nonnegative(*snr1, "snr1");
    require_nonnegative(*snr2, "snr2");
  }
}

std::string_view to_string(CutsetBinding b) {
  return b == CutsetBinding::broadcast ? "broadcast" : "multiple-access";
}

std::string_view to_string(NewBoundBinding b) {
  return b == NewBoundBinding::broadcast ? "broadcast" : "crossing";
}

CapacityTerms capacity_terms(const ChannelParams& params) {
  params.validate();
  if (!params.is_symmetric()) {
    return {half_log2_1p(*params.snr1 + *params.snr2), half_log2_1p(*params.snr2)};
  }
  return {half_log2_1p(2.0 * params.snr), half_log2_1p(params.snr)};
}

CutsetValue cutset_bound(const ChannelParams& params) {
  const CapacityTerms c = capacity_terms(params);
  const double multiple_access = c.point_to_point + params.r0;
  if (c.broadcast <= multiple_access) return {c.broadcast, CutsetBinding::broadcast};
  return {multiple_access, CutsetBinding::multiple_access};
}

double relay_penalty(double a) { return std::sqrt(2.0 * a / kLn2); }

double solve_a_star(double r0) {
  if (!(r0 >= 0.0) || !std::isfinite(r0)) {
    throw DomainError("solve_a_star: r0 must be finite and >= 0");
  }
  if (r0 == 0.0) return 0.0;
  // With u = sqrt(a): 2u^2 + b u - r0 = 0, b = sqrt(2/ln2). Rationalized positive root.
  const double b = std::sqrt(2.0 / kLn2);
  const double u = 2.0 * r0 / (b + std::sqrt(b * b + 8.0 * r0));
  const double closed = u * u;

  const double bisected = bisect_monotone(
      [r0](double a) { return 2.0 * a + relay_penalty(a) - r0; }, 0.0, 0.5 * r0,
      1e-12 * std::max(1.0, r0));
  if (std::abs(closed - bisected) > 1e-9) {
    throw std::logic_error("solve_a_star: closed form " + std::to_string(closed) +
                           " disagrees with bisection " + std::to_string(bisected));
  }
  return closed;
}

NewBoundValue new_bound(const ChannelParams& params) {
  params.validate();
  if (!params.is_symmetric()) {
    throw DomainError("new_bound: only the symmetric channel is supported");
  }
  const CapacityTerms c = capacity_terms(params);
  const double crossing = c.point_to_point + params.r0 - solve_a_star(params.r0);
  if (c.broadcast <= crossing) return {c.broadcast, NewBoundBinding::broadcast};
  return {crossing, NewBoundBinding::crossing};
}

double gap(const ChannelParams& params) { return bound_report(params).gap; }

BoundReport bound_report(const ChannelParams& params) {
  const NewBoundValue fresh = new_bound(params);
  const CutsetValue cut = cutset_bound(params);
  BoundReport report;
  report.cutset = cut.value;
  report.cutset_binding = cut.binding;
  report.new_bound = fresh.value;
  report.new_binding = fresh.binding;
  report.a_star = solve_a_star(params.r0);
  report.gap = cut.value - fresh.value;
  return report;
}

double network_gap_preconstant(double delta, int antennas) {
  if (antennas < 1) throw DomainError("network_gap_preconstant: antennas must be >= 1");
  if (!(delta >= 0.0) || !std::isfinite(delta)) {
    throw DomainError("network_gap_preconstant: delta must be finite and >= 0");
  }
  return delta / antennas;
}

}  // namespace relaylab
