#pragma once

// Brute-force reference computations used to freeze expected values in tests and goldens.
// Nothing here may call into the relaylab library: each routine takes a different
// numerical route than the implementation it checks.

#include <cstddef>
#include <vector>

namespace oracle {

/// Phi(x) = 1/2 + phi(x) * sum_k x^(2k+1) / (2k+1)!!, summed in long double.
double normal_cdf_series(double x);

/// Regularized lower incomplete gamma P(s, x), term-by-term series to 1e-18 relative.
double lower_gamma_series(double s, double x);

/// Pr(|V| <= x), V standard normal in R^n, via lower_gamma_series.
double chi_cdf_series(double x, int n);

/// Root of 2a + sqrt(2a/ln2) = r0 via the textbook quadratic formula in sqrt(a).
double a_star_quadratic(double r0);

/// max over a in {0, step, 2 step, ...} ∩ [0, r0] of the minimum of the three constraints
/// 0.5 log2(1+2s), 0.5 log2(1+s) + r0 - a, 0.5 log2(1+s) + a + sqrt(2a/ln2).
double new_bound_dense_scan(double snr, double r0, double step);

/// Differential entropy in bits of a Gaussian mixture, midpoint rule.
double mixture_entropy_riemann(const std::vector<double>& weights, const std::vector<double>& means,
                               double variance, double step, double lo, double hi);

struct RelayQuantities {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double h_y_given_i = 0.0;
  double i_xy = 0.0;
  double i_x_yi = 0.0;
};

/// All single-letter quantities of a toy relay code by dense Riemann sums.
/// H(X|Z) is integrated directly from the posterior, not through h(Z).
RelayQuantities relay_quantities_riemann(const std::vector<double>& codebook,
                                         const std::vector<double>& thresholds, double noise,
                                         double step, double half_width);

}  // namespace oracle
