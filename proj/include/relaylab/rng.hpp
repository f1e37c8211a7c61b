#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace relaylab {

/// Reproducible random stream identified by (seed, stream index).
///
/// Satisfies UniformRandomBitGenerator (xoshiro256** core). The state is derived from
/// (seed, stream) through SplitMix64, so equal pairs replay identical draws and distinct
/// stream indices behave as independent generators. Not thread-safe; give each worker
/// its own stream.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  /// A sibling stream with the same seed and another index.
  RngStream substream(std::uint64_t stream) const { return {seed_, stream}; }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::array<std::uint64_t, 4> state_{};
};

inline constexpr std::uint64_t kDefaultSeed = 20150601;

/// Stream for fixed-size work block `block` of a sharded Monte Carlo run rooted at `base`.
/// Results assembled block-by-block do not depend on how blocks are spread over workers.
RngStream block_stream(const RngStream& base, std::uint64_t block);

}  // namespace relaylab
