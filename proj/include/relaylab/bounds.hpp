#pragma once

#include <optional>
#include <string_view>

namespace relaylab {

/// Primitive relay channel: source power over noise, plus the rate of the noiseless
/// relay-to-destination link. All rates are in bits per channel use.
///
/// The symmetric channel uses `snr` for both source links. Setting both `snr1`
/// (source-relay) and `snr2` (source-destination) selects the asymmetric description,
/// in which case `snr` is ignored; only the cut-set bound is defined there.
struct ChannelParams {
  double snr = 0.0;
  std::optional<double> snr1;
  std::optional<double> snr2;
  double r0 = 0.0;

  static ChannelParams symmetric(double snr, double r0) { return {snr, {}, {}, r0}; }
  static ChannelParams asymmetric(double snr1, double snr2, double r0) {
    return {0.0, snr1, snr2, r0};
  }

  bool is_symmetric() const { return !snr1 && !snr2; }
  /// Throws DomainError on negative or non-finite fields, or a half-specified asymmetric pair.
  void validate() const;
};

enum class CutsetBinding { broadcast, multiple_access };
enum class NewBoundBinding { broadcast, crossing };

std::string_view to_string(CutsetBinding b);
std::string_view to_string(NewBoundBinding b);

struct CapacityTerms {
  double broadcast;       ///< 0.5 log2(1 + 2 snr): both receivers pooled
  double point_to_point;  ///< 0.5 log2(1 + snr): direct link alone
};

struct CutsetValue {
  double value;
  CutsetBinding binding;
};

struct NewBoundValue {
  double value;
  NewBoundBinding binding;
};

struct BoundReport {
  double cutset = 0.0;
  double new_bound = 0.0;
  double a_star = 0.0;
  double gap = 0.0;
  CutsetBinding cutset_binding = CutsetBinding::broadcast;
  NewBoundBinding new_binding = NewBoundBinding::broadcast;
};

CapacityTerms capacity_terms(const ChannelParams& params);

/// min(broadcast, point-to-point + r0); ties resolve to broadcast.
CutsetValue cutset_bound(const ChannelParams& params);

/// Relay-link penalty term sqrt(2a/ln 2), i.e. sqrt(2 a ln 2) log2(e).
double relay_penalty(double a);

/// Root of 2a + sqrt(2a/ln2) = r0. Closed form in sqrt(a), cross-checked by bisection.
double solve_a_star(double r0);

/// min(broadcast, point-to-point + r0 - a*(r0)). Symmetric channels only.
NewBoundValue new_bound(const ChannelParams& params);

/// cutset_bound - new_bound, always within [0, a*(r0)].
double gap(const ChannelParams& params);

BoundReport bound_report(const ChannelParams& params);

/// Per-node constant implied by a gap `delta` on a network with `antennas` antennas.
double network_gap_preconstant(double delta, int antennas);

}  // namespace relaylab
