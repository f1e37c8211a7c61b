#pragma once

#include <functional>
#include <numbers>

namespace relaylab {

inline constexpr double kLn2 = std::numbers::ln2;
inline constexpr double kLog2e = std::numbers::log2e;

/// Standard normal CDF. Absolute error below 1e-15 on |x| <= 8; exact 0/1 saturation
/// only where the true value rounds there.
double std_normal_cdf(double x);

/// Standard normal density.
double std_normal_pdf(double x);

/// Inverse of std_normal_cdf. Throws DomainError unless 0 < p < 1.
double std_normal_quantile(double p);

/// Pr(|V| <= x) for V standard normal in R^n, i.e. P(n/2, x^2/2).
double chi_cdf(double x, int n);

/// Complement 1 - chi_cdf(x, n), evaluated without cancellation.
double chi_sf(double x, int n);

/// Bisection on a monotone function. Requires f(lo), f(hi) of opposite sign (or a zero
/// endpoint); returns the midpoint of the final bracket, whose width is <= tol.
double bisect_monotone(const std::function<double(double)>& f, double lo, double hi, double tol);

struct ScalarOptimum {
  double argument = 0.0;
  double value = 0.0;
};

/// Golden-section search for the maximum of a unimodal function on [lo, hi].
ScalarOptimum golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                                 double tol);

/// Binary entropy-style helper: -p log2 p, with 0 log 0 = 0.
double neg_plog2p(double p);

}  // namespace relaylab
