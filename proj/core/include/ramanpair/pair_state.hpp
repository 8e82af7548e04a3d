#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ramanpair/atomic_model.hpp"
#include "ramanpair/raman_coupling.hpp"

namespace ramanpair {

/// Undepleted pump: classical laser amplitude beta_L and condensate number N0.
struct PumpConfig {
  Vec3 direction{0.0, 1.0, 0.0};
  CVec3 polarization{Complex(0.0), Complex(0.0), Complex(1.0)};
  double omega_L = 0.0;  // rad/s
  Complex amplitude{1.0, 0.0};
  double atom_number = 1.0;

  void validate() const;
  PhotonMode mode() const;
  Vec3 wavevector() const { return (omega_L / kSpeedOfLight) * direction; }
};

/// Internal state of the condensate mode over ground sublevels, unit norm.
/// All population must sit in a single ground F' (any m superposition).
class CondensateSpinor {
 public:
  explicit CondensateSpinor(std::map<Level, Complex> amplitudes);
  static CondensateSpinor single(Level level) { return CondensateSpinor({{level, Complex(1.0)}}); }

  const std::map<Level, Complex>& amplitudes() const { return amplitudes_; }
  HalfInt level_F() const { return amplitudes_.begin()->first.F; }

  /// Throws InputDomainError if any level is not a ground sublevel of spec.
  void check_against(const AtomSpec& spec) const;

 private:
  std::map<Level, Complex> amplitudes_;
};

/// Atomic state correlated with one scattered photon mode.
/// normalization == 0 marks the non-normalizable (empty) case.
struct ScatteredSpinor {
  std::map<Level, Complex> amplitudes;
  double normalization = 0.0;
  PhotonMode mode;

  bool empty() const { return normalization == 0.0; }
};

enum class ValidityPolicy { enforce, warn };

struct PairOptions {
  ValidityPolicy validity = ValidityPolicy::enforce;
  double validity_threshold = 100.0;
  /// Channels closer than this (rad/s) are marked unresolvable.
  double channel_resolution = kTwoPi * 1e6;
};

/// |S_k lambda> = N^-1 sum_{F'm'} G_{k lambda, K 1}(F m, F' m') phi0(F' m').
ScatteredSpinor scattered_spinor(const AtomSpec& spec, const PumpConfig& pump, const CondensateSpinor& condensate,
                                 const Vec3& k, int lambda, const PairOptions& options = {});

/// Scattered photon frequency for final level F_final from energy
/// conservation including recoil:
///   omega = omega_L + delta(F_initial) - delta(F_final) - hbar |K - k(omega)|^2 / 2m.
double photon_frequency(const AtomSpec& spec, const PumpConfig& pump, const Vec3& k, HalfInt F_final,
                        HalfInt F_initial);
double photon_frequency(const AtomSpec& spec, const PumpConfig& pump, const Vec3& k, HalfInt F_final);

/// Photon label of a pair state: frequency channel (keyed by final F) and polarization.
struct PhotonChannel {
  HalfInt F_final;
  int lambda = 1;
  double omega = 0.0;  // rad/s
  CVec3 polarization{};
  bool unresolvable = false;

  /// "omega_hz:lambda" with omega in Hz to millihertz.
  std::string key() const;
};

/// Joint atom-photon amplitudes; rows are photon channels ordered by
/// (F_final, lambda), columns are atomic levels ordered by (F, m).
struct PairState {
  std::vector<PhotonChannel> channels;
  std::vector<Level> atom_levels;
  std::vector<Complex> amplitudes;  // row-major, channels.size() x atom_levels.size()

  Vec3 direction{0.0, 0.0, 1.0};
  Vec3 recoil_momentum{};    // hbar (K - k), kg m/s
  Vec3 photon_wavevector{};  // k, 1/m
  double emission_weight = 0.0;
  std::optional<PumpConfig> pump;

  std::size_t rows() const { return channels.size(); }
  std::size_t cols() const { return atom_levels.size(); }
  Complex& at(std::size_t r, std::size_t c) { return amplitudes[r * cols() + c]; }
  const Complex& at(std::size_t r, std::size_t c) const { return amplitudes[r * cols() + c]; }

  double norm() const;
  /// Total probability in the frequency channel of final level F.
  double channel_probability(HalfInt F_final) const;
  /// Distinct final levels present, ascending.
  std::vector<HalfInt> final_levels() const;
};

/// Normalizes and rotates the global phase so the first nonzero entry in
/// row-major order is real positive. Throws EmptyStateError for a zero state.
void canonicalize(PairState& state);

/// Builds a canonical state from raw labels and amplitudes.
PairState make_pair_state(std::vector<PhotonChannel> channels, std::vector<Level> atom_levels,
                          std::vector<Complex> amplitudes);

/// Joint state sum_lambda N_k lambda |omega(F), lambda> |S_k lambda> for detection along k.
PairState build_pair_state(const AtomSpec& spec, const PumpConfig& pump, const CondensateSpinor& condensate,
                           const Vec3& k, const PairOptions& options = {});

/// Projects onto the frequency channel of F_select and renormalizes.
PairState spectral_filter(const PairState& state, HalfInt F_select);

}  // namespace ramanpair
