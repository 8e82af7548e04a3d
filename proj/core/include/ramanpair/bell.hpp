#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ramanpair/pair_state.hpp"

namespace ramanpair {

// Measurement model
// -----------------
// Both parties measure in the real plane of their two-level subspace. For
// basis vectors e1, e2 an analyzer at angle t projects onto
//   |+t> = cos t e1 + sin t e2     (outcome +1)
//   |-t> = -sin t e1 + cos t e2    (outcome -1).
// The photon basis is (sigma+, sigma-) in channel order, so the linear
// analyzer {(s+ + s-)/sqrt2, (s+ - s-)/sqrt2} sits at t = pi/4. The atom
// basis is its two occupied sublevels in (F, m) order. With this half-angle
// convention (|00> + |11>)/sqrt2 gives E(a, b) = cos(2a - 2b) and
// (|00> - |11>)/sqrt2 gives cos(2a + 2b).

/// Photon angle a, atom angle b, in radians.
struct MeasurementSetting {
  double photon_angle = 0.0;
  double atom_angle = 0.0;
};

struct ChshSettings {
  double a = 0.0;
  double a_prime = 0.0;
  double b = 0.0;
  double b_prime = 0.0;

  auto operator<=>(const ChshSettings&) const = default;
};

/// The 2x2 amplitude block a Bell test acts on, rows photon and columns atom.
struct TwoQubitState {
  std::array<Complex, 4> amplitudes{};  // |00>, |01>, |10>, |11>
  std::array<std::size_t, 2> photon_rows{};
  std::array<std::size_t, 2> atom_cols{};
};

/// Extracts the normalized 2x2 block on the state's support, padding with
/// unused labels when the support is smaller. InputDomainError beyond 2x2.
TwoQubitState two_qubit_block(const PairState& state);

/// Outcome probabilities p(x, y) for x, y in {+1, -1}, ordered ++, +-, -+, --.
std::array<double, 4> joint_probabilities(const TwoQubitState& state, double a, double b);

/// E(a, b) = <A(a) (x) B(b)>.
double correlation(const PairState& state, double a, double b);
double correlation(const TwoQubitState& state, double a, double b);

/// S = E(a,b) - E(a,b') + E(a',b) + E(a',b').
double chsh(const PairState& state, const ChshSettings& settings);
double chsh(const TwoQubitState& state, const ChshSettings& settings);

struct ChshOptimum {
  ChshSettings settings;
  double S = 0.0;
};

/// Grid search at resolution pi/360 over all four angles in [0, pi), then
/// analytic coordinate ascent to 1e-10. Ties keep the lexicographically
/// smallest (a, a', b, b').
ChshOptimum optimize_chsh(const PairState& state);

struct EventRecord {
  std::uint64_t trial = 0;
  int setting_a = 0;  // 0 -> a, 1 -> a'
  int setting_b = 0;  // 0 -> b, 1 -> b'
  int photon_outcome = 1;
  int atom_outcome = 1;

  bool operator==(const EventRecord&) const = default;
};

inline constexpr const char* kGeneratorId = "mt19937_64+splitmix64-blocks/v1";

struct SampleResult {
  std::vector<EventRecord> events;
  /// Per setting pair, ordered (a,b), (a,b'), (a',b), (a',b').
  std::array<std::uint64_t, 4> counts{};
  std::array<double, 4> correlations{};
  double S_estimate = 0.0;
  double standard_error = 0.0;
  std::uint64_t seed = 0;
  std::string generator = kGeneratorId;
};

/// Seeded event sampling. Trials are partitioned in fixed blocks, each with
/// its own derived seed, so results do not depend on `threads` (0 = auto).
SampleResult sample_events(const PairState& state, const ChshSettings& settings, std::uint64_t n,
                           std::uint64_t seed, unsigned threads = 1);

/// S from per-setting correlations, in the same combination chsh() uses.
double chsh_combination(const std::array<double, 4>& correlations);

}  // namespace ramanpair
