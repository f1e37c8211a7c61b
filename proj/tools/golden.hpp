#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace golden {

/// One expected value. `check` is what `expected` is held against: an independent oracle
/// value, or a constant quoted at limited precision.
struct GoldenRecord {
  std::string id;
  nlohmann::json input;
  double expected = 0.0;
  double check = 0.0;
  double tol = 0.0;
  std::string provenance;  ///< "oracle", "reference-constant" or "exact"
  std::string method;      ///< how `check` was obtained

  std::string digest() const;
  bool within_tolerance() const;
};

std::uint64_t fnv1a(std::string_view bytes);
std::string hex_digest(std::string_view bytes);

/// Files produced by the generator, relative to the corpus directory.
inline constexpr const char* kRelayCodesFile = "relay_codes.jsonl";
inline constexpr const char* kSweepFile = "golden_sweep.csv";
inline constexpr const char* kGoldensFile = "goldens.json";

/// Hand-written configs that are digested but not generated.
inline const std::vector<std::string> kAuthoredFiles = {"concentration_exact.json",
                                                        "concentration_mc.json"};

std::string relay_codes_text();
std::string golden_sweep_text();
std::vector<GoldenRecord> compute_records();

/// goldens.json contents for the given corpus (authored files are read for their digests).
std::string goldens_text(const std::filesystem::path& corpus,
                         const std::vector<GoldenRecord>& records);

std::string read_file(const std::filesystem::path& path);

}  // namespace golden
