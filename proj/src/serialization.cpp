#include "relaylab/serialization.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "relaylab/errors.hpp"

namespace relaylab {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw FormatError("expected a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) throw FormatError(std::string("missing field \"") + key + "\"");
  return *it;
}

double number(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number()) throw FormatError(std::string("field \"") + key + "\" must be a number");
  return v.get<double>();
}

// A bound where null means +-infinity.
double bound(const json& v, double if_null, const char* key) {
  if (v.is_null()) return if_null;
  if (!v.is_number()) throw FormatError(std::string("field \"") + key + "\" must be a number or null");
  return v.get<double>();
}

std::vector<double> numbers(const json& j, const char* key, double if_null = kInf) {
  const json& v = field(j, key);
  if (!v.is_array()) throw FormatError(std::string("field \"") + key + "\" must be an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (const json& e : v) out.push_back(bound(e, if_null, key));
  return out;
}

std::uint64_t unsigned_field(const json& j, const char* key, std::uint64_t fallback) {
  const auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_number_unsigned()) {
    throw FormatError(std::string("field \"") + key + "\" must be a nonnegative integer");
  }
  return it->get<std::uint64_t>();
}

int dimension_field(const json& j) {
  const json& v = field(j, "n");
  if (!v.is_number_integer() || v.get<long long>() < 1 || v.get<long long>() > 100000000) {
    throw FormatError("field \"n\" must be a positive integer");
  }
  return static_cast<int>(v.get<long long>());
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

std::string format_machine(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.16e", v);
  return buffer;
}

std::string format_human(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.6g", v);
  return buffer;
}

json to_json(const ChannelParams& params, const BoundReport& report) {
  json j;
  if (params.is_symmetric()) {
    j["snr"] = params.snr;
  } else {
    j["snr1"] = *params.snr1;
    j["snr2"] = *params.snr2;
  }
  j["r0"] = params.r0;
  j["cutset"] = report.cutset;
  j["new_bound"] = report.new_bound;
  j["a_star"] = report.a_star;
  j["gap"] = report.gap;
  j["cutset_binding"] = std::string(to_string(report.cutset_binding));
  j["new_binding"] = std::string(to_string(report.new_binding));
  return j;
}

json to_json(const GapMaximizer& maximizer) {
  return {{"snr", maximizer.snr}, {"r0", maximizer.r0}, {"gap", maximizer.gap}};
}

json to_json(const GapSurface& surface) {
  json rows = json::array();
  for (const GapRow& row : surface.rows) {
    rows.push_back({{"snr", row.snr},
                    {"r0", row.r0},
                    {"cutset", row.cutset},
                    {"new_bound", row.new_bound},
                    {"gap", row.gap}});
  }
  return {{"rows", std::move(rows)}, {"maximizer", to_json(surface.maximizer)}};
}

json to_json(const SetDescriptor& set) {
  json j{{"shape", std::string(set.shape_name())}, {"n", set.dimension}, {"noise", set.noise_variance}};
  std::visit(Overloaded{
                 [&](const HalfSpace& h) {
                   j["direction"] = h.direction;
                   j["offset"] = finite_or_null(h.offset);
                 },
                 [&](const Ball& b) { j["radius"] = finite_or_null(b.radius); },
                 [&](const Slab& s) {
                   j["direction"] = s.direction;
                   j["lower"] = finite_or_null(s.lower);
                   j["upper"] = finite_or_null(s.upper);
                 },
                 [&](const Rectangle& r) {
                   json lower = json::array();
                   json upper = json::array();
                   for (const double v : r.lower) lower.push_back(finite_or_null(v));
                   for (const double v : r.upper) upper.push_back(finite_or_null(v));
                   j["lower"] = std::move(lower);
                   j["upper"] = std::move(upper);
                 },
             },
             set.shape);
  return j;
}

SetDescriptor descriptor_from_json(const json& j) {
  const json& shape = field(j, "shape");
  if (!shape.is_string()) throw FormatError("field \"shape\" must be a string");
  const std::string name = shape.get<std::string>();
  const double noise = number(j, "noise");
  SetDescriptor set;
  set.noise_variance = noise;
  if (name == "half-space") {
    set.dimension = dimension_field(j);
    std::vector<double> direction;
    if (j.contains("direction")) {
      direction = numbers(j, "direction");
    } else {
      direction.assign(static_cast<std::size_t>(set.dimension), 0.0);
      direction[0] = 1.0;
    }
    set.shape = HalfSpace{std::move(direction), bound(field(j, "offset"), kInf, "offset")};
  } else if (name == "ball") {
    set.dimension = dimension_field(j);
    set.shape = Ball{bound(field(j, "radius"), kInf, "radius")};
  } else if (name == "slab") {
    set.dimension = dimension_field(j);
    std::vector<double> direction;
    if (j.contains("direction")) {
      direction = numbers(j, "direction");
    } else {
      direction.assign(static_cast<std::size_t>(set.dimension), 0.0);
      direction[0] = 1.0;
    }
    set.shape = Slab{std::move(direction), bound(field(j, "lower"), -kInf, "lower"),
                     bound(field(j, "upper"), kInf, "upper")};
  } else if (name == "rectangle") {
    Rectangle r{numbers(j, "lower", -kInf), numbers(j, "upper", kInf)};
    set.dimension = static_cast<int>(r.lower.size());
    if (j.contains("n") && dimension_field(j) != set.dimension) {
      throw FormatError("rectangle: \"n\" disagrees with the bound vectors");
    }
    set.shape = std::move(r);
  } else {
    throw FormatError("unknown shape \"" + name + "\"");
  }
  set.validate();
  return set;
}

json to_json(const ConcentrationReport& report) {
  json j{{"set", to_json(report.set)},
         {"a", report.a},
         {"r", report.r},
         {"radius", finite_or_null(report.radius)},
         {"base_measure", report.base_measure},
         {"theoretical", report.theoretical},
         {"measured", report.measured},
         {"method", std::string(to_string(report.method))},
         {"passed", report.passed}};
  if (report.measured_complement) j["measured_complement"] = *report.measured_complement;
  if (report.method == MeasurementMethod::monte_carlo) {
    j["std_error"] = report.std_error;
    j["trials"] = report.trials;
  }
  return j;
}

json to_json(const ScalingReport& report) {
  return {{"original", report.original},   {"rescaled", report.rescaled},
          {"difference", report.difference}, {"tolerance", report.tolerance},
          {"method", std::string(to_string(report.method))}, {"passed", report.passed}};
}

json to_json(const NormConcentration& result) {
  return {{"probability", result.probability},
          {"std_error", result.std_error},
          {"exact", result.exact},
          {"trials", result.trials}};
}

json to_json(const ToyRelayCode& code) {
  json j{{"codebook", code.codebook}, {"thresholds", code.thresholds}, {"noise", code.noise}};
  if (code.power) j["power"] = *code.power;
  return j;
}

ToyRelayCode relay_code_from_json(const json& j) {
  ToyRelayCode code;
  code.codebook = numbers(j, "codebook");
  code.thresholds = numbers(j, "thresholds");
  code.noise = number(j, "noise");
  if (j.contains("power")) code.power = number(j, "power");
  code.validate();
  return code;
}

json to_json(const EntropyReport& report) {
  return {{"a", report.a},
          {"b", report.b},
          {"c", report.c},
          {"h_y_given_i", report.h_y_given_i},
          {"rhs", report.rhs},
          {"slack", report.slack},
          {"i_xy", report.i_xy},
          {"i_xz", report.i_xz},
          {"i_xi", report.i_xi},
          {"i_x_yi", report.i_x_yi},
          {"i_x_yz", report.i_x_yz}};
}

ExperimentConfig experiment_from_json(const json& j, std::size_t default_trials) {
  const json& kind = field(j, "experiment");
  if (!kind.is_string()) throw FormatError("field \"experiment\" must be a string");
  const std::string name = kind.get<std::string>();
  ExperimentConfig config;
  config.trials = unsigned_field(j, "trials", default_trials);
  config.stream = unsigned_field(j, "stream", 0);
  if (name == "halfspace-exact" || name == "ball-semianalytic") {
    config.kind = name == "halfspace-exact" ? ExperimentKind::halfspace_exact
                                            : ExperimentKind::ball_semianalytic;
    config.n = dimension_field(j);
    config.a = number(j, "a");
    config.r = number(j, "r");
    config.noise = number(j, "noise");
  } else if (name == "monte-carlo" || name == "scaling") {
    config.kind = name == "monte-carlo" ? ExperimentKind::monte_carlo : ExperimentKind::scaling;
    config.set = descriptor_from_json(field(j, "set"));
    config.n = config.set->dimension;
    config.noise = config.set->noise_variance;
    config.a = number(j, "a");
    config.r = number(j, "r");
  } else if (name == "noise-norm") {
    config.kind = ExperimentKind::noise_norm;
    config.n = dimension_field(j);
    config.noise = number(j, "noise");
    config.eps = bound(field(j, "eps"), kInf, "eps");
  } else {
    throw FormatError("unknown experiment \"" + name + "\"");
  }
  return config;
}

json run_experiment(const ExperimentConfig& config, std::uint64_t seed, bool& passed) {
  const RngStream rng(seed, config.stream);
  switch (config.kind) {
    case ExperimentKind::halfspace_exact: {
      const auto report = halfspace_blowup_exact(config.n, config.a, config.r, config.noise);
      passed = report.passed;
      return to_json(report);
    }
    case ExperimentKind::ball_semianalytic: {
      const auto report = ball_blowup_semianalytic(config.n, config.a, config.r, config.noise);
      passed = report.passed;
      return to_json(report);
    }
    case ExperimentKind::monte_carlo: {
      const auto report = mc_blowup(*config.set, config.a, config.r, config.trials, rng);
      passed = report.passed;
      return to_json(report);
    }
    case ExperimentKind::scaling: {
      const auto report = scaling_invariance_check(*config.set, config.a, config.r, config.trials, rng);
      passed = report.passed;
      json j = to_json(report);
      j["set"] = to_json(*config.set);
      return j;
    }
    case ExperimentKind::noise_norm: {
      const auto result =
          noise_norm_concentration(config.n, config.noise, config.eps, config.trials, rng);
      const double count = static_cast<double>(result.trials);
      const double se_exact = std::sqrt(result.exact * (1.0 - result.exact) / count);
      passed = std::abs(result.probability - result.exact) <=
               4.0 * std::max(result.std_error, se_exact) + 1e-12;
      json j = to_json(result);
      j["n"] = config.n;
      j["noise"] = config.noise;
      j["eps"] = finite_or_null(config.eps);
      j["passed"] = passed;
      return j;
    }
  }
  throw std::logic_error("run_experiment: unhandled experiment kind");
}

}  // namespace relaylab
