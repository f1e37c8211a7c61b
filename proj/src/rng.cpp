#include "relaylab/rng.hpp"

namespace relaylab {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {
  // Mix the stream index through its own SplitMix pass before combining, so that
  // (seed, stream) and (seed + 1, stream - 1) do not collide.
  std::uint64_t s = stream;
  std::uint64_t x = seed ^ splitmix64(s);
  for (auto& word : state_) word = splitmix64(x);
}

RngStream block_stream(const RngStream& base, std::uint64_t block) {
  std::uint64_t x = base.stream();
  const std::uint64_t mixed = splitmix64(x) ^ (block * 0xd1b54a32d192ed03ULL + 1);
  return base.substream(mixed);
}

}  // namespace relaylab
