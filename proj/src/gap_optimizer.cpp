#include "relaylab/gap_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>

#include "relaylab/bounds.hpp"
#include "relaylab/errors.hpp"
#include "relaylab/numerics.hpp"

namespace relaylab {

namespace {

void check_axis(double lo, double hi, std::size_t count, const char* name) {
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw DomainError(std::string("SweepSpec: ") + name + " bounds must be finite");
  }
  if (count == 0) throw DomainError(std::string("SweepSpec: ") + name + " grid is empty");
  if (count == 1 && lo != hi) {
    throw DomainError(std::string("SweepSpec: single-point ") + name + " grid needs min == max");
  }
  if (count >= 2 && !(lo < hi)) {
    throw DomainError(std::string("SweepSpec: ") + name + " grid needs min < max");
  }
}

std::string format_sci(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.16e", v);
  return buffer;
}

double gap_at(double snr, double r0) { return gap(ChannelParams::symmetric(snr, r0)); }

}  // namespace

void SweepSpec::validate() const {
  check_axis(snr_min, snr_max, snr_count, "snr");
  check_axis(r0_min, r0_max, r0_count, "r0");
  if (snr_min < 0.0) throw DomainError("SweepSpec: snr must be >= 0");
  if (snr_count >= 2 && !(snr_min > 0.0)) {
    throw DomainError("SweepSpec: log-spaced snr grid needs snr_min > 0");
  }
  if (r0_min < 0.0) throw DomainError("SweepSpec: r0 must be >= 0");
  if (!(tolerance > 0.0)) throw DomainError("SweepSpec: tolerance must be > 0");
}

std::vector<double> SweepSpec::snr_grid() const {
  if (snr_count == 1) return {snr_min};
  std::vector<double> grid(snr_count);
  const double lo = std::log10(snr_min);
  const double step = (std::log10(snr_max) - lo) / static_cast<double>(snr_count - 1);
  for (std::size_t i = 0; i < snr_count; ++i) {
    grid[i] = std::pow(10.0, lo + step * static_cast<double>(i));
  }
  grid.front() = snr_min;
  grid.back() = snr_max;
  return grid;
}

std::vector<double> SweepSpec::r0_grid() const {
  if (r0_count == 1) return {r0_min};
  std::vector<double> grid(r0_count);
  const double step = (r0_max - r0_min) / static_cast<double>(r0_count - 1);
  for (std::size_t i = 0; i < r0_count; ++i) grid[i] = r0_min + step * static_cast<double>(i);
  grid.back() = r0_max;
  return grid;
}

GapSurface sweep(const SweepSpec& spec) {
  spec.validate();
  GapSurface surface;
  const auto snrs = spec.snr_grid();
  const auto r0s = spec.r0_grid();
  surface.rows.reserve(snrs.size() * r0s.size());
  bool first = true;
  for (const double snr : snrs) {
    for (const double r0 : r0s) {
      const BoundReport report = bound_report(ChannelParams::symmetric(snr, r0));
      surface.rows.push_back({snr, r0, report.cutset, report.new_bound, report.gap});
      if (first || report.gap > surface.maximizer.gap) {
        surface.maximizer = {snr, r0, report.gap};
        first = false;
      }
    }
  }
  return surface;
}

GapMaximizer maximize_gap(const SweepSpec& spec) {
  GapMaximizer best = sweep(spec).maximizer;
  if (spec.r0_count < 2) return best;
  const double snr = best.snr;
  const ScalarOptimum refined = golden_section_max(
      [snr](double r0) { return gap_at(snr, r0); }, spec.r0_min, spec.r0_max, spec.tolerance);
  if (refined.value > best.gap) best = {snr, refined.argument, refined.value};
  return best;
}

FixedSnrMaximizer fixed_snr_maximizer(double snr) {
  if (!(snr >= 0.0) || !std::isfinite(snr)) {
    throw DomainError("fixed_snr_maximizer: snr must be finite and >= 0");
  }
  const CapacityTerms c = capacity_terms(ChannelParams::symmetric(snr, 0.0));
  const double kink = std::max(0.0, c.broadcast - c.point_to_point);
  const FixedSnrMaximizer closed{kink, solve_a_star(kink)};

  const double hi = std::max(1.0, 2.0 * kink);
  const ScalarOptimum searched =
      golden_section_max([snr](double r0) { return gap_at(snr, r0); }, 0.0, hi, 1e-12);
  if (std::abs(searched.value - closed.gap) > 1e-7) {
    throw std::logic_error("fixed_snr_maximizer: closed form gap " + std::to_string(closed.gap) +
                           " disagrees with search " + std::to_string(searched.value));
  }
  return closed;
}

void write_csv(std::ostream& out, const GapSurface& surface) {
  out << "snr,r0,cutset,new_bound,gap\n";
  for (const GapRow& row : surface.rows) {
    out << format_sci(row.snr) << ',' << format_sci(row.r0) << ',' << format_sci(row.cutset) << ','
        << format_sci(row.new_bound) << ',' << format_sci(row.gap) << '\n';
  }
}

}  // namespace relaylab
