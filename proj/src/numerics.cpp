#include "relaylab/numerics.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "relaylab/errors.hpp"

namespace relaylab {

namespace {

// Acklam's rational approximation to the normal quantile, relative error ~1.2e-9.
// Only used as the starting point for Newton refinement.
double quantile_initial(double p) {
  static constexpr std::array<double, 6> a = {-3.969683028665376e+01, 2.209460984245205e+02,
                                              -2.759285104469687e+02, 1.383577518672690e+02,
                                              -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr std::array<double, 5> b = {-5.447609879822406e+01, 1.615858368580409e+02,
                                              -1.556989798598866e+02, 6.680131188771972e+01,
                                              -1.328068155288572e+01};
  static constexpr std::array<double, 6> c = {-7.784894002430293e-03, -3.223964580411365e-01,
                                              -2.400758277161838e+00, -2.549732539343734e+00,
                                              4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr std::array<double, 4> d = {7.784695709041462e-03, 3.224671290700398e-01,
                                              2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

// Quantile for p <= 0.5, where the lower tail keeps full relative precision.
double lower_quantile(double p) {
  double x = quantile_initial(p);
  for (int step = 0; step < 2; ++step) {
    const double pdf = std_normal_pdf(x);
    if (pdf == 0.0) break;
    // Newton in log space is better conditioned deep in the tail.
    const double cdf = std_normal_cdf(x);
    x -= (p < 1e-8) ? (std::log(cdf) - std::log(p)) * cdf / pdf : (cdf - p) / pdf;
  }
  return x;
}

}  // namespace

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double std_normal_pdf(double x) {
  return std::exp(-0.5 * x * x) * (0.5 * std::numbers::inv_sqrtpi * std::numbers::sqrt2);
}

double std_normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("std_normal_quantile: p must lie in (0,1), got " + std::to_string(p));
  }
  if (p == 0.5) return 0.0;
  if (p < 0.5) return lower_quantile(p);
  return -lower_quantile(1.0 - p);
}

double chi_cdf(double x, int n) {
  if (n < 1) throw DomainError("chi_cdf: dimension must be >= 1");
  if (!(x >= 0.0)) throw DomainError("chi_cdf: radius must be >= 0");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  return boost::math::gamma_p(0.5 * n, 0.5 * x * x);
}

double chi_sf(double x, int n) {
  if (n < 1) throw DomainError("chi_sf: dimension must be >= 1");
  if (!(x >= 0.0)) throw DomainError("chi_sf: radius must be >= 0");
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  return boost::math::gamma_q(0.5 * n, 0.5 * x * x);
}

double bisect_monotone(const std::function<double(double)>& f, double lo, double hi, double tol) {
  if (!(tol > 0.0)) throw DomainError("bisect_monotone: tol must be > 0");
  if (!(lo <= hi)) throw DomainError("bisect_monotone: lo must not exceed hi");
  double f_lo = f(lo);
  const double f_hi = f(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if (std::signbit(f_lo) == std::signbit(f_hi)) {
    throw BracketError("bisect_monotone: f(lo) and f(hi) have the same sign");
  }
  while (hi - lo > tol) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;  // bracket at machine resolution
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if (std::signbit(f_mid) == std::signbit(f_lo)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return lo + 0.5 * (hi - lo);
}

ScalarOptimum golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                                 double tol) {
  if (!(tol > 0.0)) throw DomainError("golden_section_max: tol must be > 0");
  if (!(lo <= hi)) throw DomainError("golden_section_max: lo must not exceed hi");
  constexpr double inv_phi = 0.6180339887498949;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > tol) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    }
  }
  const double mid = 0.5 * (lo + hi);
  return {mid, f(mid)};
}

double neg_plog2p(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

}  // namespace relaylab
