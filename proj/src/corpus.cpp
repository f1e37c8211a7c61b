#include "relaylab/corpus.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "relaylab/errors.hpp"
#include "relaylab/rng.hpp"

namespace relaylab {

namespace {

// Portable uniform draw on [0,1): top 53 bits of the generator output.
double uniform01(RngStream& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double uniform(RngStream& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

}  // namespace

std::vector<double> uniform_codebook(std::size_t size, double power) {
  if (size == 0) throw DomainError("uniform_codebook: size must be >= 1");
  if (!(power >= 0.0)) throw DomainError("uniform_codebook: power must be >= 0");
  std::vector<double> points(size);
  double mean_square = 0.0;
  for (std::size_t i = 0; i < size; ++i) {
    points[i] = static_cast<double>(2 * i) - static_cast<double>(size - 1);
    mean_square += points[i] * points[i];
  }
  mean_square /= static_cast<double>(size);
  const double scale = mean_square > 0.0 ? std::sqrt(power / mean_square) : 0.0;
  for (double& x : points) x *= scale;
  return points;
}

std::vector<double> uniform_thresholds(std::size_t cells, double lo, double hi) {
  if (cells == 0) throw DomainError("uniform_thresholds: need at least one cell");
  if (!(lo < hi)) throw DomainError("uniform_thresholds: need lo < hi");
  std::vector<double> t(cells - 1);
  const double width = (hi - lo) / static_cast<double>(cells);
  for (std::size_t k = 1; k < cells; ++k) t[k - 1] = lo + width * static_cast<double>(k);
  return t;
}

std::vector<ToyRelayCode> generate_relay_corpus(std::uint64_t seed, std::size_t count) {
  static constexpr std::array<std::size_t, 3> kSizes = {2, 4, 8};
  static constexpr std::array<std::size_t, 5> kCells = {1, 2, 4, 16, 64};
  static constexpr std::array<double, 3> kNoise = {0.5, 1.0, 2.0};

  RngStream rng(seed, 0);
  std::vector<ToyRelayCode> corpus;
  corpus.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t size = kSizes[i % kSizes.size()];
    const std::size_t cells = kCells[(i / kSizes.size()) % kCells.size()];
    ToyRelayCode code;
    code.noise = kNoise[rng() % kNoise.size()];
    const double power = uniform(rng, 0.05, 4.0);

    std::vector<double> points(size);
    double mean_square = 0.0;
    for (double& x : points) {
      x = uniform(rng, -1.0, 1.0);
      mean_square += x * x;
    }
    mean_square /= static_cast<double>(size);
    const double scale = std::sqrt(power / mean_square);
    for (double& x : points) x *= scale;
    code.codebook = std::move(points);
    code.power = std::max(power, code.mean_square());

    const double reach = 3.0 * std::sqrt(power) + 2.0 * std::sqrt(code.noise);
    while (code.thresholds.size() + 1 < cells) {
      code.thresholds.clear();
      for (std::size_t k = 0; k + 1 < cells; ++k) code.thresholds.push_back(uniform(rng, -reach, reach));
      std::sort(code.thresholds.begin(), code.thresholds.end());
      code.thresholds.erase(std::unique(code.thresholds.begin(), code.thresholds.end()),
                            code.thresholds.end());
    }
    code.validate();
    corpus.push_back(std::move(code));
  }
  return corpus;
}

}  // namespace relaylab
