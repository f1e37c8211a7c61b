#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "relaylab/relay_verifier.hpp"

namespace relaylab {

inline constexpr std::uint64_t kCorpusSeed = 22;
inline constexpr std::size_t kCorpusSize = 200;

/// Randomized regression family of toy relay codes: codebook sizes {2,4,8} and cell
/// counts {1,2,4,16,64} cycled in turn, random codewords scaled to a random power in
/// (0,4], random thresholds, noise drawn from {0.5,1,2}. Deterministic in `seed`.
std::vector<ToyRelayCode> generate_relay_corpus(std::uint64_t seed = kCorpusSeed,
                                                std::size_t count = kCorpusSize);

/// Uniform codebook of `size` equally spaced points with mean square `power`.
std::vector<double> uniform_codebook(std::size_t size, double power);

/// Thresholds cutting [lo, hi] into `cells` equal pieces; the outer cells extend to infinity.
std::vector<double> uniform_thresholds(std::size_t cells, double lo, double hi);

}  // namespace relaylab
