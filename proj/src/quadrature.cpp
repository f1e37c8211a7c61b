#include "relaylab/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "relaylab/errors.hpp"
#include "relaylab/numerics.hpp"
#include "relaylab/numerics.hpp"

namespace relaylab {

namespace {

// Kronrod 15-point abscissae (positive half) and weights, with the embedded
// 7-point Gauss weights on the odd-indexed abscissae.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double lo;
  double hi;
  double value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel kronrod_panel(const std::function<double(double)>& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double f_center = f(center);
  double kronrod = f_center * kWgk[7];
  double gauss = f_center * kWg[3];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double sum = f(center - dx) + f(center + dx);
    kronrod += kWgk[j] * sum;
    if (j % 2 == 1) gauss += kWg[j / 2] * sum;
  }
  kronrod *= half;
  gauss *= half;
  return {lo, hi, kronrod, std::abs(kronrod - gauss)};
}

void check_mixture(std::span<const double> weights, std::span<const double> means,
                   double variance) {
  if (weights.empty() || weights.size() != means.size()) {
    throw DomainError("mixture: weights and means must be nonempty and of equal length");
  }
  if (!(variance > 0.0) || !std::isfinite(variance)) {
    throw DomainError("mixture: variance must be positive and finite");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] >= 0.0)) throw DomainError("mixture: weights must be nonnegative");
    if (!std::isfinite(means[i])) throw DomainError("mixture: means must be finite");
    total += weights[i];
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw DomainError("mixture: weights must sum to 1 (sum = " + std::to_string(total) + ")");
  }
}

// log of the mixture density, evaluated with a log-sum-exp so tails never underflow.
class MixtureLogDensity {
 public:
  MixtureLogDensity(std::span<const double> weights, std::span<const double> means,
                    double variance)
      : inv_two_var_(0.5 / variance),
        log_norm_(-0.5 * std::log(2.0 * std::numbers::pi * variance)) {
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (weights[i] > 0.0) {
        log_weights_.push_back(std::log(weights[i]));
        means_.push_back(means[i]);
      }
    }
    exponents_.resize(means_.size());
  }

  double operator()(double y) const {
    double peak = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < means_.size(); ++i) {
      const double d = y - means_[i];
      exponents_[i] = log_weights_[i] - d * d * inv_two_var_;
      peak = std::max(peak, exponents_[i]);
    }
    double sum = 0.0;
    for (const double e : exponents_) sum += std::exp(e - peak);
    return peak + std::log(sum) + log_norm_;
  }

  const std::vector<double>& means() const { return means_; }
  const std::vector<double>& log_weights() const { return log_weights_; }

 private:
  double inv_two_var_;
  double log_norm_;
  std::vector<double> log_weights_;
  std::vector<double> means_;
  mutable std::vector<double> exponents_;
};

}  // namespace

void QuadratureSpec::validate() const {
  if (!(tolerance > 0.0)) throw DomainError("QuadratureSpec: tolerance must be > 0");
  if (method == QuadratureMethod::gauss_hermite && (nodes < 2 || nodes > kMaxHermiteNodes)) {
    throw DomainError("QuadratureSpec: node count must be in [2, " +
                      std::to_string(kMaxHermiteNodes) + "]");
  }
  if (method == QuadratureMethod::adaptive_interval && max_subdivisions < 1) {
    throw DomainError("QuadratureSpec: max_subdivisions must be >= 1");
  }
  if (support) {
    const auto [lo, hi] = *support;
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
      throw DomainError("QuadratureSpec: support must be a finite interval lo < hi");
    }
  }
}

IntegrationResult integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                                     double abs_tolerance, std::size_t max_subdivisions,
                                     std::span<const double> breakpoints) {
  if (!(lo < hi)) throw DomainError("integrate_adaptive: require lo < hi");
  std::vector<double> cuts{lo};
  for (const double b : breakpoints) {
    if (b > lo && b < hi) cuts.push_back(b);
  }
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::priority_queue<Panel> panels;
  double total = 0.0;
  double error = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const Panel p = kronrod_panel(f, cuts[i], cuts[i + 1]);
    total += p.value;
    error += p.error;
    panels.push(p);
  }

  while (error > abs_tolerance) {
    if (panels.size() >= max_subdivisions) {
      throw QuadratureError("integrate_adaptive: tolerance " + std::to_string(abs_tolerance) +
                            " not reached within " + std::to_string(max_subdivisions) +
                            " panels (error estimate " + std::to_string(error) + ")");
    }
    const Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (mid <= worst.lo || mid >= worst.hi) {
      throw QuadratureError("integrate_adaptive: panel collapsed to machine resolution");
    }
    const Panel left = kronrod_panel(f, worst.lo, mid);
    const Panel right = kronrod_panel(f, mid, worst.hi);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
  }

  // Re-sum to shed the drift of the incremental updates.
  double value = 0.0;
  double err = 0.0;
  const std::size_t count = panels.size();
  while (!panels.empty()) {
    value += panels.top().value;
    err += panels.top().error;
    panels.pop();
  }
  return {value, err, count};
}

HermiteRule gauss_hermite_rule(std::size_t count) {
  if (count < 2) throw DomainError("gauss_hermite_rule: need at least 2 nodes");
  if (count > kMaxHermiteNodes) {
    throw DomainError("gauss_hermite_rule: at most " + std::to_string(kMaxHermiteNodes) + " nodes");
  }
  const std::size_t n = count;
  const double nd = static_cast<double>(n);
  const double pim4 = std::pow(std::numbers::pi, -0.25);
  // Orthonormal Hermite recurrence; returns (h_n(z), h_{n-1}(z)).
  const auto evaluate = [&](double z) {
    double p1 = pim4;
    double p2 = 0.0;
    for (std::size_t j = 1; j <= n; ++j) {
      const double p3 = p2;
      p2 = p1;
      const double jd = static_cast<double>(j);
      p1 = z * std::sqrt(2.0 / jd) * p2 - std::sqrt((jd - 1.0) / jd) * p3;
    }
    return std::pair{p1, p2};
  };

  HermiteRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  const auto place = [&](std::size_t i, double z) {
    // h_n' = sqrt(2n) h_{n-1}, so w = 2 / (2n h_{n-1}(z)^2).
    const double derivative = std::sqrt(2.0 * nd) * evaluate(z).second;
    rule.nodes[i] = z;
    rule.nodes[n - 1 - i] = -z;
    rule.weights[i] = 2.0 / (derivative * derivative);
    rule.weights[n - 1 - i] = rule.weights[i];
  };

  // Roots are at least pi / sqrt(2n + 1) apart and all lie below sqrt(2n + 1), so a scan
  // at a fifth of the minimum spacing brackets each positive root once.
  const double reach = std::sqrt(2.0 * nd + 1.0);
  const double step = 0.2 * std::numbers::pi / reach;
  const std::size_t positive = n / 2;
  std::size_t found = 0;
  double lo = 0.5 * step;
  double f_lo = evaluate(lo).first;
  while (found < positive && lo < reach + 1.0) {
    const double hi = lo + step;
    const double f_hi = evaluate(hi).first;
    if (f_hi == 0.0 || std::signbit(f_hi) != std::signbit(f_lo)) {
      const double root = bisect_monotone([&](double z) { return evaluate(z).first; }, lo, hi, 1e-15);
      place(positive - 1 - found, root);
      ++found;
    }
    lo = hi;
    f_lo = f_hi;
  }
  if (found != positive) throw std::logic_error("gauss_hermite_rule: root scan missed a node");
  if (n % 2 == 1) place(positive, 0.0);
  return rule;
}

double gaussian_entropy_bits(double variance) {
  if (!(variance > 0.0)) throw DomainError("gaussian_entropy_bits: variance must be > 0");
  return 0.5 * std::log2(2.0 * std::numbers::pi * std::numbers::e * variance);
}

double entropy_of_gaussian_mixture(std::span<const double> weights, std::span<const double> means,
                                   double variance, const QuadratureSpec& quad) {
  check_mixture(weights, means, variance);
  quad.validate();
  const MixtureLogDensity log_density(weights, means, variance);
  const double sigma = std::sqrt(variance);

  if (quad.method == QuadratureMethod::gauss_hermite) {
    const HermiteRule rule = gauss_hermite_rule(quad.nodes);
    const double scale = std::numbers::sqrt2 * sigma;
    double nats = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (weights[i] == 0.0) continue;
      double expectation = 0.0;
      for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
        expectation += rule.weights[j] * log_density(means[i] + scale * rule.nodes[j]);
      }
      nats -= weights[i] * expectation * std::numbers::inv_sqrtpi;
    }
    return nats * kLog2e;
  }

  double lo = 0.0;
  double hi = 0.0;
  if (quad.support) {
    std::tie(lo, hi) = *quad.support;
  } else {
    double reach = 0.0;
    for (const double m : log_density.means()) reach = std::max(reach, std::abs(m));
    lo = -(reach + 10.0 * sigma);
    hi = reach + 10.0 * sigma;
  }
  const auto integrand = [&](double y) {
    const double lp = log_density(y);
    return -std::exp(lp) * lp;
  };
  // Tolerance is requested in bits; integrate in nats.
  const IntegrationResult result =
      integrate_adaptive(integrand, lo, hi, quad.tolerance * kLn2, quad.max_subdivisions,
                         log_density.means());
  return result.value * kLog2e;
}

}  // namespace relaylab
