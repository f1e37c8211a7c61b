#include "relaylab/relay_verifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <tuple>

#include "relaylab/bounds.hpp"
#include "relaylab/errors.hpp"
#include "relaylab/numerics.hpp"

namespace relaylab {

namespace {

double entropy_bits(const std::vector<double>& distribution) {
  double h = 0.0;
  for (const double p : distribution) h += neg_plog2p(p);
  return h;
}

// Pr(lo < x + W <= hi) for W ~ N(0, noise), with the subtraction done on the
// side of the mean where both CDF values stay away from 1.
double cell_mass(double lo, double hi, double x, double sigma) {
  const double zl = (lo - x) / sigma;
  const double zh = (hi - x) / sigma;
  if (zl >= 0.0) return std_normal_cdf(-zl) - std_normal_cdf(-zh);
  return std_normal_cdf(zh) - std_normal_cdf(zl);
}

// H(X | Y) for X uniform over `codebook`, Y = X + N(0, noise), integrated directly over
// the posterior entropy. Independent of the mixture-entropy route used for h(Z).
double posterior_entropy_bits(const std::vector<double>& codebook, double noise,
                              const QuadratureSpec& quad) {
  const double sigma = std::sqrt(noise);
  const double inv_two_var = 0.5 / noise;
  const double log_norm = -0.5 * std::log(2.0 * std::numbers::pi * noise) -
                          std::log(static_cast<double>(codebook.size()));
  std::vector<double> exponents(codebook.size());
  const auto integrand = [&](double y) {
    double peak = -std::numeric_limits<double>::infinity();
    for (std::size_t m = 0; m < codebook.size(); ++m) {
      const double d = y - codebook[m];
      exponents[m] = -d * d * inv_two_var;
      peak = std::max(peak, exponents[m]);
    }
    double total = 0.0;
    for (const double e : exponents) total += std::exp(e - peak);
    const double log_total = std::log(total);
    // sum_m p(y, m) * (-log p(m | y)), p(m | y) = exp(e_m - peak) / total.
    double acc = 0.0;
    for (const double e : exponents) {
      const double log_post = e - peak - log_total;
      acc -= std::exp(e + log_norm) * log_post;
    }
    return acc;
  };
  double reach = 0.0;
  for (const double x : codebook) reach = std::max(reach, std::abs(x));
  double lo = -(reach + 10.0 * sigma);
  double hi = reach + 10.0 * sigma;
  if (quad.support) std::tie(lo, hi) = *quad.support;
  const IntegrationResult result = integrate_adaptive(integrand, lo, hi, quad.tolerance * kLn2,
                                                      quad.max_subdivisions, codebook);
  return result.value * kLog2e;
}

}  // namespace

double ToyRelayCode::mean_square() const {
  double s = 0.0;
  for (const double x : codebook) s += x * x;
  return codebook.empty() ? 0.0 : s / static_cast<double>(codebook.size());
}

void ToyRelayCode::validate() const {
  if (codebook.empty()) throw DomainError("ToyRelayCode: codebook must be nonempty");
  for (const double x : codebook) {
    if (!std::isfinite(x)) throw DomainError("ToyRelayCode: codewords must be finite");
  }
  for (std::size_t k = 0; k < thresholds.size(); ++k) {
    if (!std::isfinite(thresholds[k])) throw DomainError("ToyRelayCode: thresholds must be finite");
    if (k > 0 && !(thresholds[k] > thresholds[k - 1])) {
      throw DomainError("ToyRelayCode: thresholds must be strictly increasing");
    }
  }
  if (!(noise > 0.0) || !std::isfinite(noise)) {
    throw DomainError("ToyRelayCode: noise variance must be finite and > 0");
  }
  if (power) {
    if (!(*power >= 0.0)) throw DomainError("ToyRelayCode: power must be >= 0");
    if (mean_square() > *power * (1.0 + 1e-12)) {
      throw DomainError("ToyRelayCode: codebook mean square " + std::to_string(mean_square()) +
                        " exceeds declared power " + std::to_string(*power));
    }
  }
}

CellMatrix cell_probabilities(const ToyRelayCode& code) {
  code.validate();
  constexpr double inf = std::numeric_limits<double>::infinity();
  const double sigma = std::sqrt(code.noise);
  const std::size_t cells = code.cells();
  CellMatrix matrix(code.codebook.size(), std::vector<double>(cells, 0.0));
  for (std::size_t m = 0; m < code.codebook.size(); ++m) {
    for (std::size_t k = 0; k < cells; ++k) {
      const double lo = k == 0 ? -inf : code.thresholds[k - 1];
      const double hi = k + 1 == cells ? inf : code.thresholds[k];
      matrix[m][k] = std::max(0.0, cell_mass(lo, hi, code.codebook[m], sigma));
    }
  }
  return matrix;
}

EntropyReport entropy_quantities(const ToyRelayCode& code, const QuadratureSpec& quad) {
  quad.validate();
  const CellMatrix cells = cell_probabilities(code);
  const std::size_t count = code.codebook.size();
  const double inv_count = 1.0 / static_cast<double>(count);
  const double log_count = std::log2(static_cast<double>(count));
  const double noise_entropy = gaussian_entropy_bits(code.noise);

  EntropyReport report;
  std::vector<double> marginal(code.cells(), 0.0);
  for (const auto& row : cells) {
    report.a += inv_count * entropy_bits(row);
    for (std::size_t k = 0; k < row.size(); ++k) marginal[k] += inv_count * row[k];
  }
  const double h_i = entropy_bits(marginal);
  // H(X|I) = H(X) + H(I|X) - H(I).
  report.b = std::max(0.0, log_count + report.a - h_i);

  const std::vector<double> uniform(count, inv_count);
  const double h_z = entropy_of_gaussian_mixture(uniform, code.codebook, code.noise, quad);
  report.i_xz = h_z - noise_entropy;
  report.c = log_count - report.i_xz;
  report.i_xy = log_count - posterior_entropy_bits(code.codebook, code.noise, quad);

  std::vector<double> posterior(count);
  for (std::size_t k = 0; k < marginal.size(); ++k) {
    double mass = 0.0;
    for (std::size_t m = 0; m < count; ++m) mass += cells[m][k];
    if (mass <= 0.0) continue;
    for (std::size_t m = 0; m < count; ++m) posterior[m] = cells[m][k] / mass;
    report.h_y_given_i +=
        marginal[k] * entropy_of_gaussian_mixture(posterior, code.codebook, code.noise, quad);
  }

  report.rhs = report.b - report.c + noise_entropy + report.a + relay_penalty(report.a);
  report.slack = report.rhs - report.h_y_given_i;
  report.i_xi = h_i - report.a;
  // Y and I are conditionally independent given X, so h(Y | X, I) = h(Y | X).
  report.i_x_yi = report.i_xi + report.h_y_given_i - noise_entropy;
  // (Y + Z) / 2 is sufficient for X given (Y, Z) when both links share the noise level.
  report.i_x_yz =
      entropy_of_gaussian_mixture(uniform, code.codebook, 0.5 * code.noise, quad) -
      gaussian_entropy_bits(0.5 * code.noise);
  return report;
}

EntropyBoundVerdict check_entropy_bound(const ToyRelayCode& code, const QuadratureSpec& quad) {
  EntropyBoundVerdict verdict;
  verdict.report = entropy_quantities(code, quad);
  verdict.passed = verdict.report.slack >= -kSlackAllowance;
  return verdict;
}

RateChainVerdict check_rate_chain(const ToyRelayCode& code, const QuadratureSpec& quad) {
  RateChainVerdict verdict;
  verdict.report = entropy_quantities(code, quad);
  const EntropyReport& r = verdict.report;
  verdict.rate_margin = r.i_xy + r.a + relay_penalty(r.a) - r.i_x_yi;
  verdict.rate_inequality = verdict.rate_margin >= -kSlackAllowance;
  verdict.data_processing =
      r.i_xi <= r.i_xz + kSlackAllowance && r.i_x_yi <= r.i_x_yz + kSlackAllowance;
  verdict.link_symmetry = std::abs(r.i_xz - r.i_xy) <= 1e-8;
  verdict.passed = verdict.rate_inequality && verdict.data_processing && verdict.link_symmetry;
  return verdict;
}

}  // namespace relaylab
