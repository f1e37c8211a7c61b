#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "relaylab/rng.hpp"

namespace relaylab {

/// {w : <direction, w> <= offset}. An infinite offset is the whole space.
struct HalfSpace {
  std::vector<double> direction;  ///< unit norm
  double offset = 0.0;
};

/// Closed ball of `radius` centered at the origin.
struct Ball {
  double radius = 0.0;
};

/// {w : lower <= <direction, w> <= upper}; either side may be infinite.
struct Slab {
  std::vector<double> direction;  ///< unit norm
  double lower = 0.0;
  double upper = 0.0;
};

/// Axis-aligned box, per-axis [lower_i, upper_i]; bounds may be infinite.
struct Rectangle {
  std::vector<double> lower;
  std::vector<double> upper;
};

using Shape = std::variant<HalfSpace, Ball, Slab, Rectangle>;

/// A set A in R^n together with the per-coordinate variance of the Gaussian measure.
struct SetDescriptor {
  Shape shape;
  int dimension = 1;
  double noise_variance = 1.0;

  void validate() const;
  std::string_view shape_name() const;

  /// Image of the set under w -> factor * w, measured with variance factor^2 * N.
  SetDescriptor scaled(double factor) const;
};

SetDescriptor make_half_space(int n, double offset, double noise_variance, std::size_t axis = 0);
SetDescriptor make_ball(int n, double radius, double noise_variance);
SetDescriptor make_slab(int n, double lower, double upper, double noise_variance,
                        std::size_t axis = 0);
SetDescriptor make_rectangle(std::vector<double> lower, std::vector<double> upper,
                             double noise_variance);

/// Euclidean distance from w to the set (0 inside).
double distance_to_set(const SetDescriptor& set, std::span<const double> w);

/// A probability carried together with its complement, so values near 1 keep precision.
struct Probability {
  double value = 0.0;
  double complement = 1.0;
};

/// Pr(U in A) for U ~ N(0, N I_n).
Probability gaussian_measure(const SetDescriptor& set);

/// Pr(U within distance rho of A), when a closed form exists (half-space, ball, slab,
/// and one-dimensional rectangles).
std::optional<Probability> enlarged_measure_exact(const SetDescriptor& set, double rho);

/// sqrt(n) (sqrt(2 N a ln 2) + r).
double blowup_radius(int n, double a, double r, double noise_variance);

/// 1 - 2^(-n r^2 / (2N)), clamped to [0,1].
double theoretical_bound(int n, double r, double noise_variance);

/// 2^(-n r^2 / (2N)): the complement of theoretical_bound, without cancellation.
double theoretical_bound_complement(int n, double r, double noise_variance);

enum class MeasurementMethod { exact, semi_analytic, monte_carlo };

std::string_view to_string(MeasurementMethod m);

struct ConcentrationReport {
  SetDescriptor set;
  double a = 0.0;
  double r = 0.0;
  double radius = 0.0;
  double base_measure = 0.0;
  double theoretical = 0.0;
  double measured = 0.0;
  /// 1 - measured, when the method computes it directly (exact paths).
  std::optional<double> measured_complement;
  double std_error = 0.0;
  std::size_t trials = 0;
  MeasurementMethod method = MeasurementMethod::exact;
  bool passed = false;
};

/// Half-space {w_1 <= c} with measure exactly 2^(-n a); a = 0 is the whole space.
ConcentrationReport halfspace_blowup_exact(int n, double a, double r, double noise_variance);

/// Centered ball with measure 2^(-n a) (radius found by bisection on the chi CDF).
ConcentrationReport ball_blowup_semianalytic(int n, double a, double r, double noise_variance);

inline constexpr std::size_t kMinMonteCarloTrials = 10000;

/// Monte Carlo estimate of the enlarged measure of `set`. Throws
/// MeasurePreconditionError when Pr(A) < 2^(-n a). Work is split into fixed blocks with
/// one stream each, so the estimate does not depend on `workers` (0 = hardware threads).
ConcentrationReport mc_blowup(const SetDescriptor& set, double a, double r, std::size_t trials,
                              const RngStream& rng, unsigned workers = 0);

struct ScalingReport {
  double original = 0.0;  ///< enlarged measure of A under N(0, N I)
  double rescaled = 0.0;  ///< enlarged measure of A / sqrt(N) under N(0, I), slack r / sqrt(N)
  double difference = 0.0;
  double tolerance = 0.0;
  MeasurementMethod method = MeasurementMethod::exact;
  bool passed = false;
};

/// Compares the blow-up measure of `set` (variance set.noise_variance) with that of the
/// rescaled standard-normal problem. Exact shapes use a 1e-10 tolerance; Monte Carlo
/// shapes reuse one stream for both sides and allow 4 standard errors.
ScalingReport scaling_invariance_check(const SetDescriptor& set, double a, double r,
                                       std::size_t mc_trials = 100000,
                                       const RngStream& rng = RngStream(kDefaultSeed, 0));

struct NormConcentration {
  double probability = 0.0;
  double std_error = 0.0;
  double exact = 0.0;  ///< chi CDF difference
  std::size_t trials = 0;
};

/// Fraction of W ~ N(0, N I_n) with |W| / sqrt(n) in [sqrt(N) - eps, sqrt(N) + eps].
NormConcentration noise_norm_concentration(int n, double noise_variance, double eps,
                                           std::size_t trials, const RngStream& rng,
                                           unsigned workers = 0);

}  // namespace relaylab
