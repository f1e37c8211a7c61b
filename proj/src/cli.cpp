#include "relaylab/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "relaylab/bounds.hpp"
#include "relaylab/errors.hpp"
#include "relaylab/gap_optimizer.hpp"
#include "relaylab/relay_verifier.hpp"
#include "relaylab/rng.hpp"
#include "relaylab/serialization.hpp"

namespace relaylab {

namespace {

using nlohmann::json;

/// Input problems that map to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommonOptions {
  std::string format = "table";
  std::string out_path;
  std::optional<std::uint64_t> seed;
};

// Writes to --out when given, otherwise to the command's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw UsageError("cannot open output file " + path);
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("RELAYLAB_SEED"); env != nullptr && *env != '\0') {
    try {
      std::size_t used = 0;
      const unsigned long long value = std::stoull(env, &used);
      if (used == std::string(env).size()) return value;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("RELAYLAB_SEED is not an unsigned integer: ") + env);
  }
  return kDefaultSeed;
}

void print_table(std::ostream& out, const std::vector<std::pair<std::string, std::string>>& rows) {
  std::size_t width = 0;
  for (const auto& [key, value] : rows) width = std::max(width, key.size());
  for (const auto& [key, value] : rows) {
    out << std::left << std::setw(static_cast<int>(width) + 2) << key << value << '\n';
  }
}

// "snr=0.1:1e6:50,r0=0:4:81"
void apply_grid(const std::string& text, SweepSpec& spec) {
  std::stringstream parts(text);
  std::string part;
  while (std::getline(parts, part, ',')) {
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw UsageError("--grid: expected axis=min:max:count in " + part);
    const std::string axis = part.substr(0, eq);
    std::stringstream values(part.substr(eq + 1));
    std::string lo;
    std::string hi;
    std::string count;
    if (!std::getline(values, lo, ':') || !std::getline(values, hi, ':') ||
        !std::getline(values, count)) {
      throw UsageError("--grid: expected axis=min:max:count in " + part);
    }
    try {
      if (axis == "snr") {
        spec.snr_min = std::stod(lo);
        spec.snr_max = std::stod(hi);
        spec.snr_count = std::stoul(count);
      } else if (axis == "r0") {
        spec.r0_min = std::stod(lo);
        spec.r0_max = std::stod(hi);
        spec.r0_count = std::stoul(count);
      } else {
        throw UsageError("--grid: unknown axis " + axis);
      }
    } catch (const std::logic_error&) {
      throw UsageError("--grid: malformed number in " + part);
    }
  }
}

std::vector<std::pair<std::string, std::string>> bound_rows(const ChannelParams& params,
                                                            const BoundReport& r) {
  return {{"snr", format_human(params.snr)},
          {"r0", format_human(params.r0)},
          {"cutset", format_human(r.cutset)},
          {"cutset_binding", std::string(to_string(r.cutset_binding))},
          {"new_bound", format_human(r.new_bound)},
          {"new_binding", std::string(to_string(r.new_binding))},
          {"a_star", format_human(r.a_star)},
          {"gap", format_human(r.gap)}};
}

void write_bounds(std::ostream& out, const ChannelParams& params, const std::string& format) {
  if (!params.is_symmetric()) {
    const CutsetValue cut = cutset_bound(params);
    if (format == "json") {
      out << json{{"snr1", *params.snr1}, {"snr2", *params.snr2}, {"r0", params.r0},
                  {"cutset", cut.value}, {"cutset_binding", std::string(to_string(cut.binding))}}
                 .dump()
          << '\n';
    } else {
      print_table(out, {{"snr1", format_human(*params.snr1)},
                        {"snr2", format_human(*params.snr2)},
                        {"r0", format_human(params.r0)},
                        {"cutset", format_human(cut.value)},
                        {"cutset_binding", std::string(to_string(cut.binding))}});
    }
    return;
  }
  const BoundReport report = bound_report(params);
  if (format == "json") {
    out << to_json(params, report).dump() << '\n';
  } else {
    print_table(out, bound_rows(params, report));
  }
}

int run_concentration(const std::string& path, std::uint64_t seed, std::size_t trials,
                      std::ostream& out, std::ostream& err) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file " + path);
  json configs;
  try {
    configs = json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError("malformed config " + path + ": " + e.what());
  }
  if (!configs.is_array()) throw UsageError("config " + path + " must hold a JSON array");

  bool input_error = false;
  bool verdict_failed = false;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    try {
      const ExperimentConfig config = experiment_from_json(configs[i], trials);
      bool passed = false;
      json report = run_experiment(config, seed, passed);
      report["index"] = i;
      out << report.dump() << '\n';
      if (!passed) verdict_failed = true;
    } catch (const std::invalid_argument& e) {
      // FormatError, DomainError and MeasurePreconditionError: the entry itself is bad.
      input_error = true;
      out << json{{"index", i}, {"error", e.what()}}.dump() << '\n';
      err << "error: experiment " << i << ": " << e.what() << '\n';
    } catch (const std::runtime_error& e) {
      input_error = true;
      out << json{{"index", i}, {"error", e.what()}}.dump() << '\n';
      err << "error: experiment " << i << ": " << e.what() << '\n';
    }
  }
  if (input_error) return kExitUsage;
  return verdict_failed ? kExitVerdictFailed : kExitOk;
}

int run_verify_relay(const std::string& path, const std::string& format, std::ostream& out,
                     std::ostream& err) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open codes file " + path);
  std::vector<ToyRelayCode> codes;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      codes.push_back(relay_code_from_json(json::parse(line)));
    } catch (const std::exception& e) {
      throw UsageError(path + ":" + std::to_string(line_number) + ": " + e.what());
    }
  }

  bool failed = false;
  if (format == "table") {
    out << std::left << std::setw(6) << "code" << std::setw(14) << "a" << std::setw(14) << "b"
        << std::setw(14) << "c" << std::setw(14) << "h(Y|I)" << std::setw(14) << "slack"
        << "verdict\n";
  }
  for (std::size_t i = 0; i < codes.size(); ++i) {
    EntropyBoundVerdict verdict;
    try {
      verdict = check_entropy_bound(codes[i]);
    } catch (const QuadratureError& e) {
      err << "error: code " << i << ": " << e.what() << '\n';
      return kExitUsage;
    }
    failed = failed || !verdict.passed;
    const EntropyReport& r = verdict.report;
    if (format == "json") {
      json j = to_json(r);
      j["index"] = i;
      j["passed"] = verdict.passed;
      out << j.dump() << '\n';
    } else {
      out << std::left << std::setw(6) << i << std::setw(14) << format_human(r.a)
          << std::setw(14) << format_human(r.b) << std::setw(14) << format_human(r.c)
          << std::setw(14) << format_human(r.h_y_given_i) << std::setw(14)
          << format_human(r.slack) << (verdict.passed ? "pass" : "FAIL") << '\n';
    }
  }
  if (failed) err << "error: entropy bound violated beyond " << kSlackAllowance << '\n';
  return failed ? kExitVerdictFailed : kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Capacity bounds and concentration checks for the symmetric Gaussian primitive relay channel",
               "relaylab"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  CommonOptions common;
  const auto add_format = [&](CLI::App* cmd, std::initializer_list<const char*> formats) {
    cmd->add_option("--format", common.format, "Output format")
        ->check(CLI::IsMember(std::vector<std::string>(formats.begin(), formats.end())));
    cmd->add_option("--out", common.out_path, "Write output to PATH instead of stdout");
  };

  double snr = 0.0;
  double r0 = 0.0;
  std::optional<double> snr1;
  std::optional<double> snr2;

  auto* bounds = app.add_subcommand("bounds", "Cut-set bound, new bound, a* and gap");
  bounds->add_option("--snr", snr, "P/N")->check(CLI::NonNegativeNumber);
  bounds->add_option("--r0", r0, "Relay link rate, bits/use")->required()->check(CLI::NonNegativeNumber);
  bounds->add_option("--snr1", snr1, "P/N1 (asymmetric cut-set only)")->check(CLI::NonNegativeNumber);
  bounds->add_option("--snr2", snr2, "P/N2 (asymmetric cut-set only)")->check(CLI::NonNegativeNumber);
  add_format(bounds, {"table", "json"});

  auto* gap_cmd = app.add_subcommand("gap", "Cut-set minus new bound");
  gap_cmd->add_option("--snr", snr, "P/N")->required()->check(CLI::NonNegativeNumber);
  gap_cmd->add_option("--r0", r0, "Relay link rate, bits/use")->required()->check(CLI::NonNegativeNumber);
  add_format(gap_cmd, {"table", "json"});

  std::optional<double> astar_positional;
  std::optional<double> astar_flag;
  auto* astar = app.add_subcommand("astar", "Crossing point a* for a relay rate");
  astar->add_option("rate", astar_positional, "Relay link rate r0 (same as --r0)")->check(CLI::NonNegativeNumber);
  astar->add_option("--r0", astar_flag, "Relay link rate")->check(CLI::NonNegativeNumber);
  add_format(astar, {"table", "json"});

  SweepSpec spec;
  std::string grid;
  std::optional<double> pinned_snr;
  const auto add_sweep_flags = [&](CLI::App* cmd) {
    cmd->add_option("--snr-min", spec.snr_min, "Smallest snr (log grid)");
    cmd->add_option("--snr-max", spec.snr_max, "Largest snr");
    cmd->add_option("--snr-count", spec.snr_count, "Number of snr points");
    cmd->add_option("--r0-min", spec.r0_min, "Smallest r0 (linear grid)");
    cmd->add_option("--r0-max", spec.r0_max, "Largest r0");
    cmd->add_option("--r0-count", spec.r0_count, "Number of r0 points");
    cmd->add_option("--tol", spec.tolerance, "Refinement tolerance");
    cmd->add_option("--grid", grid, "Grid as snr=MIN:MAX:COUNT,r0=MIN:MAX:COUNT");
    cmd->add_option("--snr", pinned_snr, "Pin snr to one value")->check(CLI::NonNegativeNumber);
  };
  auto* sweep_cmd = app.add_subcommand("sweep", "Gap surface over an (snr, r0) grid");
  add_sweep_flags(sweep_cmd);
  add_format(sweep_cmd, {"table", "json", "csv"});

  auto* maximize = app.add_subcommand("maximize", "Largest gap over an (snr, r0) grid");
  add_sweep_flags(maximize);
  add_format(maximize, {"table", "json"});

  std::string config_path;
  std::size_t trials = 100000;
  auto* concentration = app.add_subcommand("concentration", "Blow-up lemma experiments (JSON-lines out)");
  concentration->add_option("config", config_path, "JSON array of experiment configs")->required();
  concentration->add_option("--seed", common.seed, "Seed (default: RELAYLAB_SEED or built-in)");
  concentration->add_option("--trials", trials, "Monte Carlo trials for entries without \"trials\"");
  add_format(concentration, {"json"});

  std::string codes_path;
  auto* verify = app.add_subcommand("verify-relay", "Entropy inequality on toy relay codes");
  verify->add_option("codes", codes_path, "JSON-lines file, one code per line")->required();
  add_format(verify, {"table", "json"});

  double delta = 0.0;
  int antennas = 4;
  bool delta_given = false;
  auto* preconstant = app.add_subcommand("preconstant", "Per-node constant implied by a gap");
  preconstant->add_option("--delta", delta, "Gap in bits/use (default: a*(0.5))")
      ->check(CLI::NonNegativeNumber)
      ->each([&](const std::string&) { delta_given = true; });
  preconstant->add_option("--antennas", antennas, "Total antennas")->check(CLI::PositiveNumber);
  add_format(preconstant, {"table", "json"});

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    Sink sink(common.out_path, out);
    std::ostream& os = sink.get();
    const std::string& format = common.format;

    if (*bounds) {
      ChannelParams params = ChannelParams::symmetric(snr, r0);
      if (snr1 || snr2) {
        if (!snr1 || !snr2) throw UsageError("--snr1 and --snr2 must be given together");
        params = ChannelParams::asymmetric(*snr1, *snr2, r0);
      } else if (bounds->count("--snr") == 0) {
        throw UsageError("--snr is required (or --snr1 with --snr2)");
      }
      write_bounds(os, params, format);
    } else if (*gap_cmd) {
      const double value = gap(ChannelParams::symmetric(snr, r0));
      if (format == "json") {
        os << json{{"snr", snr}, {"r0", r0}, {"gap", value}}.dump() << '\n';
      } else {
        print_table(os, {{"snr", format_human(snr)}, {"r0", format_human(r0)}, {"gap", format_human(value)}});
      }
    } else if (*astar) {
      if (astar_positional && astar_flag) throw UsageError("give r0 either positionally or via --r0");
      if (!astar_positional && !astar_flag) throw UsageError("r0 is required");
      const double rate = astar_positional ? *astar_positional : *astar_flag;
      const double value = solve_a_star(rate);
      if (format == "json") {
        os << json{{"r0", rate}, {"a_star", value}}.dump() << '\n';
      } else {
        print_table(os, {{"r0", format_human(rate)}, {"a_star", format_human(value)}});
      }
    } else if (*sweep_cmd || *maximize) {
      if (!grid.empty()) apply_grid(grid, spec);
      if (pinned_snr) {
        spec.snr_min = spec.snr_max = *pinned_snr;
        spec.snr_count = 1;
      }
      if (*sweep_cmd) {
        const GapSurface surface = sweep(spec);
        if (format == "csv") {
          write_csv(os, surface);
        } else if (format == "json") {
          os << to_json(surface).dump() << '\n';
        } else {
          os << std::left << std::setw(14) << "snr" << std::setw(14) << "r0" << std::setw(14)
             << "cutset" << std::setw(14) << "new_bound" << "gap\n";
          for (const GapRow& row : surface.rows) {
            os << std::left << std::setw(14) << format_human(row.snr) << std::setw(14)
               << format_human(row.r0) << std::setw(14) << format_human(row.cutset)
               << std::setw(14) << format_human(row.new_bound) << format_human(row.gap) << '\n';
          }
          os << "maximizer: snr=" << format_human(surface.maximizer.snr)
             << " r0=" << format_human(surface.maximizer.r0)
             << " gap=" << format_human(surface.maximizer.gap) << '\n';
        }
      } else {
        const GapMaximizer best = maximize_gap(spec);
        if (format == "json") {
          os << to_json(best).dump() << '\n';
        } else {
          print_table(os, {{"snr", format_human(best.snr)},
                           {"r0", format_human(best.r0)},
                           {"gap", format_human(best.gap)}});
        }
      }
    } else if (*concentration) {
      return run_concentration(config_path, resolve_seed(common.seed), trials, os, err);
    } else if (*verify) {
      return run_verify_relay(codes_path, format, os, err);
    } else if (*preconstant) {
      const double d = delta_given ? delta : solve_a_star(0.5);
      const double value = network_gap_preconstant(d, antennas);
      if (format == "json") {
        os << json{{"delta", d}, {"antennas", antennas}, {"preconstant", value}}.dump() << '\n';
      } else {
        print_table(os, {{"delta", format_human(d)},
                         {"antennas", std::to_string(antennas)},
                         {"preconstant", format_human(value)}});
      }
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace relaylab
