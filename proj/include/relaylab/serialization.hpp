#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include <json.hpp>

#include "relaylab/bounds.hpp"
#include "relaylab/concentration.hpp"
#include "relaylab/gap_optimizer.hpp"
#include "relaylab/relay_verifier.hpp"

namespace relaylab {

/// Raised for structurally invalid JSON input (missing fields, wrong types).
class FormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

nlohmann::json to_json(const ChannelParams& params, const BoundReport& report);
nlohmann::json to_json(const GapSurface& surface);
nlohmann::json to_json(const GapMaximizer& maximizer);
nlohmann::json to_json(const SetDescriptor& set);
nlohmann::json to_json(const ConcentrationReport& report);
nlohmann::json to_json(const ScalingReport& report);
nlohmann::json to_json(const NormConcentration& result);
nlohmann::json to_json(const ToyRelayCode& code);
nlohmann::json to_json(const EntropyReport& report);

SetDescriptor descriptor_from_json(const nlohmann::json& j);

/// One line of a relay-code batch: {"codebook":[...],"thresholds":[...],"noise":N[,"power":P]}.
ToyRelayCode relay_code_from_json(const nlohmann::json& j);

enum class ExperimentKind { halfspace_exact, ball_semianalytic, monte_carlo, scaling, noise_norm };

/// One entry of a concentration batch config.
///
///   {"experiment": "halfspace-exact" | "ball-semianalytic", "n", "a", "r", "noise"}
///   {"experiment": "monte-carlo", "set": {...}, "a", "r", "trials"?, "stream"?}
///   {"experiment": "scaling", "set": {...}, "a", "r", "trials"?, "stream"?}
///   {"experiment": "noise-norm", "n", "noise", "eps", "trials"?, "stream"?}
///
/// Set objects carry "shape" (half-space | ball | slab | rectangle), "n", "noise" and the
/// shape parameters; null stands for an infinite bound.
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::halfspace_exact;
  int n = 1;
  double a = 0.0;
  double r = 0.0;
  double noise = 1.0;
  double eps = 0.0;
  std::optional<SetDescriptor> set;
  std::size_t trials = 100000;
  std::uint64_t stream = 0;
};

/// `default_trials` applies to Monte Carlo entries without a "trials" field.
ExperimentConfig experiment_from_json(const nlohmann::json& j, std::size_t default_trials = 100000);

/// Runs one experiment and serializes its report. `passed` receives the verdict.
nlohmann::json run_experiment(const ExperimentConfig& config, std::uint64_t seed, bool& passed);

/// 17 significant digits, scientific.
std::string format_machine(double v);
/// 6 significant digits.
std::string format_human(double v);

}  // namespace relaylab
