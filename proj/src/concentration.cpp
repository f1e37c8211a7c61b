#include "relaylab/concentration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <thread>
#include <type_traits>

#include <boost/random/normal_distribution.hpp>

#include "relaylab/errors.hpp"
#include "relaylab/numerics.hpp"

namespace relaylab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kBlockSize = 4096;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void check_unit(const std::vector<double>& direction, int n, const char* what) {
  if (direction.size() != static_cast<std::size_t>(n)) {
    throw DomainError(std::string(what) + ": direction length must equal the dimension");
  }
  const double norm = std::sqrt(dot(direction, direction));
  if (!(std::abs(norm - 1.0) <= 1e-9)) {
    throw DomainError(std::string(what) + ": direction must have unit norm");
  }
}

void check_interval(double lo, double hi, const char* what) {
  if (std::isnan(lo) || std::isnan(hi) || lo > hi || lo == kInf || hi == -kInf) {
    throw DomainError(std::string(what) + ": bounds must satisfy lower <= upper, nonempty");
  }
}

// Pr(lo <= Z <= hi) for Z standard normal, with its complement.
Probability normal_interval(double lo, double hi) {
  const double below = std_normal_cdf(lo);
  const double above = std_normal_cdf(-hi);
  double inside = 0.0;
  if (lo >= 0.0) {
    inside = std_normal_cdf(-lo) - above;
  } else if (hi <= 0.0) {
    inside = std_normal_cdf(hi) - below;
  } else {
    inside = 1.0 - below - above;
  }
  return {std::clamp(inside, 0.0, 1.0), std::clamp(below + above, 0.0, 1.0)};
}

void check_blowup_args(int n, double a, double r, double noise_variance) {
  if (n < 1) throw DomainError("blow-up: dimension must be >= 1");
  if (!(a >= 0.0) || !std::isfinite(a)) throw DomainError("blow-up: a must be finite and >= 0");
  if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("blow-up: r must be finite and >= 0");
  if (!(noise_variance > 0.0) || !std::isfinite(noise_variance)) {
    throw DomainError("blow-up: noise variance must be finite and > 0");
  }
}

// Measure floor 2^(-n a), required to be representable and < 1 unless a == 0.
double measure_floor(int n, double a) {
  const double floor = std::exp2(-static_cast<double>(n) * a);
  if (a > 0.0 && !(floor > 0.0 && floor < 1.0)) {
    throw DomainError("blow-up: 2^(-n a) must lie in (0,1); got underflow for n=" +
                      std::to_string(n) + ", a=" + std::to_string(a));
  }
  return floor;
}

ConcentrationReport exact_report(SetDescriptor set, double a, double r) {
  ConcentrationReport report;
  const int n = set.dimension;
  const double noise = set.noise_variance;
  report.a = a;
  report.r = r;
  report.radius = blowup_radius(n, a, r, noise);
  report.base_measure = gaussian_measure(set).value;
  report.theoretical = theoretical_bound(n, r, noise);
  const auto enlarged = enlarged_measure_exact(set, report.radius);
  report.measured = enlarged->value;
  report.measured_complement = enlarged->complement;
  report.method = MeasurementMethod::exact;
  // Comparing complements avoids rounding both sides to 1 in the saturated regime.
  report.passed = enlarged->complement <= theoretical_bound_complement(n, r, noise);
  report.set = std::move(set);
  return report;
}

// Counts hits over `trials` samples of N(0, noise I_n), block by block. `hit` sees each
// sample as a span and returns true when it should be counted.
template <class Hit>
std::uint64_t count_hits(int n, double noise_variance, std::size_t trials, const RngStream& rng,
                         unsigned workers, const Hit& hit) {
  const std::size_t blocks = (trials + kBlockSize - 1) / kBlockSize;
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(blocks, 1)));
  const double sigma = std::sqrt(noise_variance);

  std::vector<std::uint64_t> counts(workers, 0);
  auto run = [&](unsigned worker) {
    std::vector<double> sample(static_cast<std::size_t>(n));
    std::uint64_t local = 0;
    for (std::size_t b = worker; b < blocks; b += workers) {
      RngStream stream = block_stream(rng, b);
      boost::random::normal_distribution<double> normal(0.0, sigma);
      const std::size_t begin = b * kBlockSize;
      const std::size_t end = std::min(trials, begin + kBlockSize);
      for (std::size_t t = begin; t < end; ++t) {
        for (double& x : sample) x = normal(stream);
        if (hit(std::span<const double>(sample))) ++local;
      }
    }
    counts[worker] = local;
  };

  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
  }
  std::uint64_t total = 0;
  for (const auto c : counts) total += c;
  return total;
}

}  // namespace

void SetDescriptor::validate() const {
  if (dimension < 1) throw DomainError("SetDescriptor: dimension must be >= 1");
  if (!(noise_variance > 0.0) || !std::isfinite(noise_variance)) {
    throw DomainError("SetDescriptor: noise variance must be finite and > 0");
  }
  std::visit(Overloaded{
                 [&](const HalfSpace& h) {
                   check_unit(h.direction, dimension, "half-space");
                   if (std::isnan(h.offset) || h.offset == -kInf) {
                     throw DomainError("half-space: offset must be > -inf");
                   }
                 },
                 [&](const Ball& b) {
                   if (!(b.radius >= 0.0)) throw DomainError("ball: radius must be >= 0");
                 },
                 [&](const Slab& s) {
                   check_unit(s.direction, dimension, "slab");
                   check_interval(s.lower, s.upper, "slab");
                 },
                 [&](const Rectangle& r) {
                   if (r.lower.size() != static_cast<std::size_t>(dimension) ||
                       r.upper.size() != r.lower.size()) {
                     throw DomainError("rectangle: bound vectors must match the dimension");
                   }
                   for (std::size_t i = 0; i < r.lower.size(); ++i) {
                     check_interval(r.lower[i], r.upper[i], "rectangle");
                   }
                 },
             },
             shape);
}

std::string_view SetDescriptor::shape_name() const {
  return std::visit(Overloaded{
                        [](const HalfSpace&) { return std::string_view("half-space"); },
                        [](const Ball&) { return std::string_view("ball"); },
                        [](const Slab&) { return std::string_view("slab"); },
                        [](const Rectangle&) { return std::string_view("rectangle"); },
                    },
                    shape);
}

SetDescriptor SetDescriptor::scaled(double factor) const {
  if (!(factor > 0.0) || !std::isfinite(factor)) {
    throw DomainError("SetDescriptor::scaled: factor must be finite and > 0");
  }
  SetDescriptor out = *this;
  out.noise_variance = noise_variance * factor * factor;
  std::visit(Overloaded{
                 [&](HalfSpace& h) { h.offset *= factor; },
                 [&](Ball& b) { b.radius *= factor; },
                 [&](Slab& s) {
                   s.lower *= factor;
                   s.upper *= factor;
                 },
                 [&](Rectangle& r) {
                   for (double& v : r.lower) v *= factor;
                   for (double& v : r.upper) v *= factor;
                 },
             },
             out.shape);
  return out;
}

SetDescriptor make_half_space(int n, double offset, double noise_variance, std::size_t axis) {
  std::vector<double> direction(static_cast<std::size_t>(std::max(n, 0)), 0.0);
  if (axis >= direction.size()) throw DomainError("make_half_space: axis out of range");
  direction[axis] = 1.0;
  SetDescriptor set{HalfSpace{std::move(direction), offset}, n, noise_variance};
  set.validate();
  return set;
}

SetDescriptor make_ball(int n, double radius, double noise_variance) {
  SetDescriptor set{Ball{radius}, n, noise_variance};
  set.validate();
  return set;
}

SetDescriptor make_slab(int n, double lower, double upper, double noise_variance,
                        std::size_t axis) {
  std::vector<double> direction(static_cast<std::size_t>(std::max(n, 0)), 0.0);
  if (axis >= direction.size()) throw DomainError("make_slab: axis out of range");
  direction[axis] = 1.0;
  SetDescriptor set{Slab{std::move(direction), lower, upper}, n, noise_variance};
  set.validate();
  return set;
}

SetDescriptor make_rectangle(std::vector<double> lower, std::vector<double> upper,
                             double noise_variance) {
  const int n = static_cast<int>(lower.size());
  SetDescriptor set{Rectangle{std::move(lower), std::move(upper)}, n, noise_variance};
  set.validate();
  return set;
}

double distance_to_set(const SetDescriptor& set, std::span<const double> w) {
  return std::visit(Overloaded{
                        [&](const HalfSpace& h) { return std::max(0.0, dot(h.direction, w) - h.offset); },
                        [&](const Ball& b) { return std::max(0.0, std::sqrt(dot(w, w)) - b.radius); },
                        [&](const Slab& s) {
                          const double t = dot(s.direction, w);
                          return std::max({0.0, s.lower - t, t - s.upper});
                        },
                        [&](const Rectangle& r) {
                          double sq = 0.0;
                          for (std::size_t i = 0; i < w.size(); ++i) {
                            const double d = std::max({0.0, r.lower[i] - w[i], w[i] - r.upper[i]});
                            sq += d * d;
                          }
                          return std::sqrt(sq);
                        },
                    },
                    set.shape);
}

Probability gaussian_measure(const SetDescriptor& set) {
  set.validate();
  const double sigma = std::sqrt(set.noise_variance);
  return std::visit(
      Overloaded{
          [&](const HalfSpace& h) {
            return Probability{std_normal_cdf(h.offset / sigma), std_normal_cdf(-h.offset / sigma)};
          },
          [&](const Ball& b) {
            return Probability{chi_cdf(b.radius / sigma, set.dimension),
                               chi_sf(b.radius / sigma, set.dimension)};
          },
          [&](const Slab& s) { return normal_interval(s.lower / sigma, s.upper / sigma); },
          [&](const Rectangle& r) {
            double inside = 1.0;
            for (std::size_t i = 0; i < r.lower.size(); ++i) {
              inside *= normal_interval(r.lower[i] / sigma, r.upper[i] / sigma).value;
            }
            return Probability{inside, 1.0 - inside};
          },
      },
      set.shape);
}

std::optional<Probability> enlarged_measure_exact(const SetDescriptor& set, double rho) {
  if (!(rho >= 0.0)) throw DomainError("enlarged_measure_exact: rho must be >= 0");
  SetDescriptor grown = set;
  const bool closed_form = std::visit(Overloaded{
                                          [&](HalfSpace& h) {
                                            h.offset += rho;
                                            return true;
                                          },
                                          [&](Ball& b) {
                                            b.radius += rho;
                                            return true;
                                          },
                                          [&](Slab& s) {
                                            s.lower -= rho;
                                            s.upper += rho;
                                            return true;
                                          },
                                          [&](Rectangle& r) {
                                            if (r.lower.size() != 1) return false;
                                            r.lower[0] -= rho;
                                            r.upper[0] += rho;
                                            return true;
                                          },
                                      },
                                      grown.shape);
  if (!closed_form) return std::nullopt;
  return gaussian_measure(grown);
}

double blowup_radius(int n, double a, double r, double noise_variance) {
  check_blowup_args(n, a, r, noise_variance);
  return std::sqrt(static_cast<double>(n)) * (std::sqrt(2.0 * noise_variance * a * kLn2) + r);
}

double theoretical_bound_complement(int n, double r, double noise_variance) {
  check_blowup_args(n, 0.0, r, noise_variance);
  return std::exp2(-static_cast<double>(n) * r * r / (2.0 * noise_variance));
}

double theoretical_bound(int n, double r, double noise_variance) {
  check_blowup_args(n, 0.0, r, noise_variance);
  const double exponent = static_cast<double>(n) * r * r / (2.0 * noise_variance);
  return std::clamp(-std::expm1(-exponent * kLn2), 0.0, 1.0);
}

std::string_view to_string(MeasurementMethod m) {
  switch (m) {
    case MeasurementMethod::exact:
      return "exact";
    case MeasurementMethod::semi_analytic:
      return "semi-analytic";
    case MeasurementMethod::monte_carlo:
      return "monte-carlo";
  }
  return "unknown";
}

ConcentrationReport halfspace_blowup_exact(int n, double a, double r, double noise_variance) {
  check_blowup_args(n, a, r, noise_variance);
  const double floor = measure_floor(n, a);
  const double offset =
      a == 0.0 ? kInf : std::sqrt(noise_variance) * std_normal_quantile(floor);
  return exact_report(make_half_space(n, offset, noise_variance), a, r);
}

ConcentrationReport ball_blowup_semianalytic(int n, double a, double r, double noise_variance) {
  check_blowup_args(n, a, r, noise_variance);
  const double floor = measure_floor(n, a);
  const double sigma = std::sqrt(noise_variance);
  double radius = kInf;
  if (a > 0.0) {
    const double log_floor = std::log(floor);
    const auto excess = [&](double rad) { return std::log(chi_cdf(rad / sigma, n)) - log_floor; };
    double hi = sigma * (std::sqrt(static_cast<double>(n)) + 10.0);
    while (excess(hi) < 0.0) {
      hi *= 2.0;
      if (!std::isfinite(hi)) throw BracketError("ball_blowup: no radius reaches the floor");
    }
    radius = bisect_monotone(excess, 0.0, hi, 1e-15 * hi);
    // The lemma needs Pr(A) >= floor; step up to the first radius that certifies it.
    while (chi_cdf(radius / sigma, n) < floor) radius = std::nextafter(radius, kInf);
  }
  ConcentrationReport report = exact_report(make_ball(n, radius, noise_variance), a, r);
  report.method = MeasurementMethod::semi_analytic;
  return report;
}

ConcentrationReport mc_blowup(const SetDescriptor& set, double a, double r, std::size_t trials,
                              const RngStream& rng, unsigned workers) {
  set.validate();
  check_blowup_args(set.dimension, a, r, set.noise_variance);
  if (trials < kMinMonteCarloTrials) {
    throw DomainError("mc_blowup: at least " + std::to_string(kMinMonteCarloTrials) +
                      " trials required");
  }
  const int n = set.dimension;
  const double floor = measure_floor(n, a);
  const Probability base = gaussian_measure(set);
  if (base.value < floor) {
    throw MeasurePreconditionError("mc_blowup: Pr(A) = " + std::to_string(base.value) +
                                   " is below the floor 2^(-n a) = " + std::to_string(floor));
  }

  ConcentrationReport report;
  report.set = set;
  report.a = a;
  report.r = r;
  report.radius = blowup_radius(n, a, r, set.noise_variance);
  report.base_measure = base.value;
  report.theoretical = theoretical_bound(n, r, set.noise_variance);
  report.trials = trials;
  report.method = MeasurementMethod::monte_carlo;

  const double radius = report.radius;
  const std::uint64_t hits = count_hits(n, set.noise_variance, trials, rng, workers,
                                        [&](std::span<const double> w) {
                                          return distance_to_set(set, w) <= radius;
                                        });
  const double count = static_cast<double>(trials);
  report.measured = static_cast<double>(hits) / count;
  report.std_error = std::sqrt(report.measured * (1.0 - report.measured) / count);
  report.passed = !(report.measured + 4.0 * report.std_error < report.theoretical);
  return report;
}

ScalingReport scaling_invariance_check(const SetDescriptor& set, double a, double r,
                                       std::size_t mc_trials, const RngStream& rng) {
  set.validate();
  const int n = set.dimension;
  const double noise = set.noise_variance;
  const double sigma = std::sqrt(noise);
  const SetDescriptor unit = set.scaled(1.0 / sigma);
  const double rho_original = blowup_radius(n, a, r, noise);
  const double rho_unit = blowup_radius(n, a, r / sigma, 1.0);

  ScalingReport report;
  const auto exact_original = enlarged_measure_exact(set, rho_original);
  if (exact_original) {
    report.original = exact_original->value;
    report.rescaled = enlarged_measure_exact(unit, rho_unit)->value;
    report.tolerance = 1e-10;
    report.method = MeasurementMethod::exact;
  } else {
    if (mc_trials < kMinMonteCarloTrials) {
      throw DomainError("scaling_invariance_check: too few Monte Carlo trials");
    }
    const auto estimate = [&](const SetDescriptor& s, double rho) {
      const std::uint64_t hits = count_hits(
          n, s.noise_variance, mc_trials, rng, 0,
          [&](std::span<const double> w) { return distance_to_set(s, w) <= rho; });
      return static_cast<double>(hits) / static_cast<double>(mc_trials);
    };
    report.original = estimate(set, rho_original);
    report.rescaled = estimate(unit, rho_unit);
    const double count = static_cast<double>(mc_trials);
    const double se_original = std::sqrt(report.original * (1.0 - report.original) / count);
    const double se_rescaled = std::sqrt(report.rescaled * (1.0 - report.rescaled) / count);
    report.tolerance = 4.0 * std::hypot(se_original, se_rescaled);
    report.method = MeasurementMethod::monte_carlo;
  }
  report.difference = std::abs(report.original - report.rescaled);
  report.passed = report.difference <= report.tolerance;
  return report;
}

NormConcentration noise_norm_concentration(int n, double noise_variance, double eps,
                                           std::size_t trials, const RngStream& rng,
                                           unsigned workers) {
  if (n < 1) throw DomainError("noise_norm_concentration: n must be >= 1");
  if (!(noise_variance > 0.0) || !std::isfinite(noise_variance)) {
    throw DomainError("noise_norm_concentration: noise variance must be finite and > 0");
  }
  if (!(eps > 0.0)) throw DomainError("noise_norm_concentration: eps must be > 0");
  if (trials < kMinMonteCarloTrials) {
    throw DomainError("noise_norm_concentration: at least " +
                      std::to_string(kMinMonteCarloTrials) + " trials required");
  }
  const double sigma = std::sqrt(noise_variance);
  const double scale = std::sqrt(static_cast<double>(n));
  const double lo = std::max(0.0, sigma - eps) * scale;
  const double hi = (sigma + eps) * scale;
  const double lo_sq = lo * lo;
  const double hi_sq = hi * hi;

  const std::uint64_t hits =
      count_hits(n, noise_variance, trials, rng, workers, [&](std::span<const double> w) {
        double sq = 0.0;
        for (const double x : w) sq += x * x;
        return sq >= lo_sq && sq <= hi_sq;
      });

  NormConcentration out;
  out.trials = trials;
  const double count = static_cast<double>(trials);
  out.probability = static_cast<double>(hits) / count;
  out.std_error = std::sqrt(out.probability * (1.0 - out.probability) / count);
  out.exact = std::isinf(hi) ? chi_sf(lo / sigma, n)
                             : chi_cdf(hi / sigma, n) - chi_cdf(lo / sigma, n);
  return out;
}

}  // namespace relaylab
