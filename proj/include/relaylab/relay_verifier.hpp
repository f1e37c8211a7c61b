#pragma once

#include <optional>
#include <vector>

#include "relaylab/quadrature.hpp"

namespace relaylab {

/// Blocklength-one relay code: uniform codebook at the source and an interval quantizer
/// I = q(Z) at the relay. Both source links carry noise of variance `noise`.
struct ToyRelayCode {
  std::vector<double> codebook;
  std::vector<double> thresholds;  ///< strictly increasing; K = size + 1 cells
  double noise = 1.0;
  std::optional<double> power;     ///< declared power; defaults to the codebook mean square

  std::size_t cells() const { return thresholds.size() + 1; }
  double mean_square() const;
  void validate() const;
};

/// Row m holds p(I = k | X = x_m).
using CellMatrix = std::vector<std::vector<double>>;

CellMatrix cell_probabilities(const ToyRelayCode& code);

/// All quantities are in bits.
struct EntropyReport {
  double a = 0.0;     ///< H(I|X)
  double b = 0.0;     ///< H(X|I)
  double c = 0.0;     ///< H(X|Z)
  double h_y_given_i = 0.0;
  double rhs = 0.0;   ///< b - c + 0.5 log2(2 pi e N) + a + sqrt(2a/ln2)
  double slack = 0.0; ///< rhs - h(Y|I)
  double i_xy = 0.0;
  double i_xz = 0.0;
  double i_xi = 0.0;
  double i_x_yi = 0.0;  ///< I(X; Y, I)
  double i_x_yz = 0.0;  ///< I(X; Y, Z)
};

EntropyReport entropy_quantities(const ToyRelayCode& code, const QuadratureSpec& quad = {});

inline constexpr double kSlackAllowance = 1e-6;

struct EntropyBoundVerdict {
  bool passed = false;
  EntropyReport report;
};

/// h(Y|I) <= b - c + 0.5 log2(2 pi e N) + a + sqrt(2a/ln2), up to kSlackAllowance.
EntropyBoundVerdict check_entropy_bound(const ToyRelayCode& code, const QuadratureSpec& quad = {});

struct RateChainVerdict {
  bool passed = false;
  bool rate_inequality = false;  ///< I(X;Y,I) <= I(X;Y) + a + sqrt(2a/ln2)
  bool data_processing = false;  ///< I(X;I) <= I(X;Z) and I(X;Y,I) <= I(X;Y,Z)
  bool link_symmetry = false;    ///< I(X;Z) == I(X;Y) within 1e-8
  double rate_margin = 0.0;      ///< I(X;Y) + a + sqrt(2a/ln2) - I(X;Y,I)
  EntropyReport report;
};

RateChainVerdict check_rate_chain(const ToyRelayCode& code, const QuadratureSpec& quad = {});

}  // namespace relaylab
