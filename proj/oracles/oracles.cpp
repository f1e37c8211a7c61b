#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace oracle {

namespace {

constexpr long double kPi = 3.141592653589793238462643383279502884L;
constexpr long double kLn2 = 0.693147180559945309417232121458176568L;

long double normal_pdf(long double x) { return std::exp(-0.5L * x * x) / std::sqrt(2.0L * kPi); }

long double plogp_bits(long double p) { return p > 0.0L ? -p * std::log2(p) : 0.0L; }

}  // namespace

double normal_cdf_series(double x) {
  const long double xl = x;
  long double term = xl;
  long double sum = xl;
  for (int k = 1; k < 2000; ++k) {
    term *= xl * xl / (2.0L * k + 1.0L);
    sum += term;
    if (std::abs(term) < 1e-21L * std::abs(sum)) break;
  }
  const long double value = 0.5L + normal_pdf(xl) * sum;
  return static_cast<double>(std::clamp(value, 0.0L, 1.0L));
}

double lower_gamma_series(double s, double x) {
  if (x <= 0.0) return 0.0;
  const long double sl = s;
  const long double xl = x;
  long double term = 1.0L / sl;
  long double sum = term;
  for (int k = 1; k < 1000000; ++k) {
    term *= xl / (sl + k);
    sum += term;
    if (term < 1e-18L * sum) break;
  }
  const long double log_prefix = sl * std::log(xl) - xl - std::lgamma(sl);
  return static_cast<double>(std::min(1.0L, std::exp(log_prefix) * sum));
}

double chi_cdf_series(double x, int n) { return lower_gamma_series(0.5 * n, 0.5 * x * x); }

double a_star_quadratic(double r0) {
  const long double b = std::sqrt(2.0L / kLn2);
  const long double u = (-b + std::sqrt(b * b + 8.0L * r0)) / 4.0L;
  return static_cast<double>(u * u);
}

double new_bound_dense_scan(double snr, double r0, double step) {
  const double broadcast = 0.5 * std::log2(1.0 + 2.0 * snr);
  const double direct = 0.5 * std::log2(1.0 + snr);
  double best = -std::numeric_limits<double>::infinity();
  const auto steps = static_cast<long>(std::floor(r0 / step));
  for (long i = 0; i <= steps + 1; ++i) {
    const double a = std::min(r0, static_cast<double>(i) * step);
    const double relay = direct + r0 - a;
    const double penalty = direct + a + std::sqrt(2.0 * a * static_cast<double>(kLn2)) /
                                            static_cast<double>(kLn2);
    best = std::max(best, std::min({broadcast, relay, penalty}));
  }
  return best;
}

double mixture_entropy_riemann(const std::vector<double>& weights, const std::vector<double>& means,
                               double variance, double step, double lo, double hi) {
  const long double sigma = std::sqrt(static_cast<long double>(variance));
  const auto count = static_cast<long>(std::ceil((hi - lo) / step));
  const long double h = (static_cast<long double>(hi) - lo) / count;
  long double total = 0.0L;
  for (long i = 0; i < count; ++i) {
    const long double y = lo + (i + 0.5L) * h;
    long double p = 0.0L;
    for (std::size_t m = 0; m < means.size(); ++m) {
      p += weights[m] * normal_pdf((y - means[m]) / sigma) / sigma;
    }
    total += plogp_bits(p);
  }
  return static_cast<double>(total * h);
}

RelayQuantities relay_quantities_riemann(const std::vector<double>& codebook,
                                         const std::vector<double>& thresholds, double noise,
                                         double step, double half_width) {
  const std::size_t count = codebook.size();
  const std::size_t cells = thresholds.size() + 1;
  const long double inv_count = 1.0L / count;
  const long double sigma = std::sqrt(static_cast<long double>(noise));

  // p(k | m) from the series CDF.
  std::vector<std::vector<long double>> cell(count, std::vector<long double>(cells));
  for (std::size_t m = 0; m < count; ++m) {
    long double previous = 0.0L;
    for (std::size_t k = 0; k < cells; ++k) {
      const long double upper =
          k + 1 == cells ? 1.0L
                         : normal_cdf_series(static_cast<double>((thresholds[k] - codebook[m]) / sigma));
      cell[m][k] = std::max(0.0L, upper - previous);
      previous = upper;
    }
  }

  RelayQuantities out;
  std::vector<long double> marginal(cells, 0.0L);
  long double a = 0.0L;
  for (std::size_t m = 0; m < count; ++m) {
    for (std::size_t k = 0; k < cells; ++k) {
      a += inv_count * plogp_bits(cell[m][k]);
      marginal[k] += inv_count * cell[m][k];
    }
  }
  long double h_xi = 0.0L;  // H(X, I)
  for (std::size_t m = 0; m < count; ++m) {
    for (std::size_t k = 0; k < cells; ++k) h_xi += plogp_bits(inv_count * cell[m][k]);
  }
  long double h_i = 0.0L;
  for (const long double p : marginal) h_i += plogp_bits(p);
  out.a = static_cast<double>(a);
  out.b = static_cast<double>(h_xi - h_i);

  long double reach = 0.0L;
  for (const double x : codebook) reach = std::max<long double>(reach, std::abs(x));
  const long double lo = -(reach + half_width);
  const long double hi = reach + half_width;
  const auto points = static_cast<long>(std::ceil((hi - lo) / step));
  const long double h = (hi - lo) / points;

  long double cond_x_given_y = 0.0L;  // H(X|Y) = H(X|Z)
  long double h_y_given_i = 0.0L;
  std::vector<long double> joint(count);
  for (long i = 0; i < points; ++i) {
    const long double y = lo + (i + 0.5L) * h;
    long double py = 0.0L;
    for (std::size_t m = 0; m < count; ++m) {
      joint[m] = inv_count * normal_pdf((y - codebook[m]) / sigma) / sigma;
      py += joint[m];
    }
    if (py > 0.0L) {
      for (std::size_t m = 0; m < count; ++m) {
        if (joint[m] > 0.0L) cond_x_given_y -= joint[m] * std::log2(joint[m] / py);
      }
    }
    // f(y | k) = sum_m p(m, k) f(y | m) / p(k)
    for (std::size_t k = 0; k < cells; ++k) {
      if (marginal[k] <= 0.0L) continue;
      long double f = 0.0L;
      for (std::size_t m = 0; m < count; ++m) f += joint[m] * cell[m][k];
      f /= marginal[k];
      h_y_given_i += marginal[k] * plogp_bits(f);
    }
  }
  cond_x_given_y *= h;
  h_y_given_i *= h;
  const long double log_count = std::log2(static_cast<long double>(count));
  const long double noise_entropy = 0.5L * std::log2(2.0L * kPi * std::exp(1.0L) * noise);
  out.c = static_cast<double>(cond_x_given_y);
  out.h_y_given_i = static_cast<double>(h_y_given_i);
  out.i_xy = static_cast<double>(log_count - cond_x_given_y);
  // I(X; Y, I) = I(X; I) + h(Y | I) - h(Y | X)
  out.i_x_yi = static_cast<double>((h_i - a) + h_y_given_i - noise_entropy);
  return out;
}

}  // namespace oracle
