#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

namespace relaylab {

/// Parameter plane to scan: snr is log-spaced, r0 linear. A single-point axis
/// (count 1, min == max) is allowed and pins that parameter; snr may then be 0.
struct SweepSpec {
  double snr_min = 0.1;
  double snr_max = 1e6;
  std::size_t snr_count = 50;
  double r0_min = 0.0;
  double r0_max = 4.0;
  std::size_t r0_count = 81;
  double tolerance = 1e-10;

  void validate() const;
  std::vector<double> snr_grid() const;
  std::vector<double> r0_grid() const;
};

struct GapRow {
  double snr;
  double r0;
  double cutset;
  double new_bound;
  double gap;
};

struct GapMaximizer {
  double snr = 0.0;
  double r0 = 0.0;
  double gap = 0.0;
};

struct GapSurface {
  std::vector<GapRow> rows;  ///< snr-major
  GapMaximizer maximizer;
};

GapSurface sweep(const SweepSpec& spec);

/// Grid scan, then golden-section refinement over r0 at the best grid snr.
GapMaximizer maximize_gap(const SweepSpec& spec);

struct FixedSnrMaximizer {
  double r0 = 0.0;
  double gap = 0.0;
};

/// Largest gap at fixed snr. The gap rises as a*(r0) until r0 reaches
/// 0.5 log2((1+2snr)/(1+snr)) and falls afterwards, so the kink is the maximizer.
/// The closed form is checked against a golden-section search (1e-7).
FixedSnrMaximizer fixed_snr_maximizer(double snr);

/// CSV with header `snr,r0,cutset,new_bound,gap`; values as %.16e.
void write_csv(std::ostream& out, const GapSurface& surface);

}  // namespace relaylab
