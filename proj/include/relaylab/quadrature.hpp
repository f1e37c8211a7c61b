#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace relaylab {

enum class QuadratureMethod { adaptive_interval, gauss_hermite };

/// How a one-dimensional integral is evaluated.
///
/// adaptive_interval: global adaptive Gauss-Kronrod (7/15) on a finite support, stopping
///   when the summed error estimate is below `tolerance`; `max_subdivisions` caps the
///   number of panels. Exceeding it raises QuadratureError.
/// gauss_hermite: fixed `nodes`-point Gauss-Hermite rule per mixture component; no error
///   estimate, `tolerance` is ignored.
struct QuadratureSpec {
  QuadratureMethod method = QuadratureMethod::adaptive_interval;
  double tolerance = 1e-10;
  std::size_t max_subdivisions = 4000;
  std::size_t nodes = 64;
  /// Integration support; when unset the caller's truncation rule applies.
  std::optional<std::pair<double, double>> support;

  /// Throws DomainError when an invariant is violated.
  void validate() const;
};

struct IntegrationResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t panels = 0;
};

/// Adaptive Gauss-Kronrod integration of f over [lo, hi]. `breakpoints` seeds the initial
/// partition (points outside (lo, hi) are ignored).
IntegrationResult integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                                     double abs_tolerance, std::size_t max_subdivisions,
                                     std::span<const double> breakpoints = {});

struct HermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Beyond this the unweighted recurrence overflows double range.
inline constexpr std::size_t kMaxHermiteNodes = 512;

/// Physicists' Gauss-Hermite rule: sum w_i g(t_i) ~ int e^{-t^2} g(t) dt.
HermiteRule gauss_hermite_rule(std::size_t count);

/// Differential entropy, in bits, of sum_i w_i N(mean_i, variance).
/// Default support is +-(max |mean| + 10 sqrt(variance)).
double entropy_of_gaussian_mixture(std::span<const double> weights, std::span<const double> means,
                                   double variance, const QuadratureSpec& quad = {});

/// Entropy of N(0, variance) in bits: 0.5 log2(2 pi e variance).
double gaussian_entropy_bits(double variance);

}  // namespace relaylab
