#pragma once

#include <array>
#include <compare>
#include <map>
#include <string>
#include <vector>

#include "ramanpair/half_int.hpp"
#include "ramanpair/vec3.hpp"

namespace ramanpair {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kHbar = 1.054571817e-34;        // J s
inline constexpr double kSpeedOfLight = 299792458.0;   // m/s

enum class Manifold { ground, excited };

/// Hyperfine sublevel |F m> within one manifold; ordered by (F, m).
struct Level {
  HalfInt F;
  HalfInt m;

  auto operator<=>(const Level&) const = default;

  /// "2F:2m", e.g. "2:-2" for |1,-1>.
  std::string key() const;
  static Level parse_key(const std::string& key);
};

struct Sublevel {
  Manifold manifold = Manifold::ground;
  HalfInt F;
  HalfInt m;

  static Sublevel ground(Level l) { return {Manifold::ground, l.F, l.m}; }
  static Sublevel excited(Level l) { return {Manifold::excited, l.F, l.m}; }
  Level level() const { return {F, m}; }
};

/// Alkali-like species: nuclear spin I, ground J' and excited J electronic
/// angular momenta, ground hyperfine splittings, single resonance frequency.
///
/// Immutable after construction. The full dipole table is evaluated once in
/// the constructor so the scattering code never re-enters the exact Racah sums.
class AtomSpec {
 public:
  struct Params {
    std::string name;
    HalfInt nuclear_spin;
    HalfInt ground_J;
    HalfInt excited_J;
    /// delta(F') in rad/s keyed by ground F'; lowest level must map to 0.
    std::map<HalfInt, double> ground_splittings;
    double resonance = 0.0;  // rad/s
    double linewidth = 0.0;  // rad/s
    double mass = 0.0;       // kg
    double reduced_dipole = 1.0;
  };

  explicit AtomSpec(Params params);

  /// Sodium D2 line: I = 3/2, J' = 1/2, J = 3/2.
  static AtomSpec sodium();

  const std::string& name() const { return p_.name; }
  HalfInt nuclear_spin() const { return p_.nuclear_spin; }
  HalfInt ground_J() const { return p_.ground_J; }
  HalfInt excited_J() const { return p_.excited_J; }
  double resonance() const { return p_.resonance; }
  double linewidth() const { return p_.linewidth; }
  double mass() const { return p_.mass; }
  double reduced_dipole() const { return p_.reduced_dipole; }
  const std::map<HalfInt, double>& ground_splittings() const { return p_.ground_splittings; }
  const Params& params() const { return p_; }

  const std::vector<HalfInt>& ground_levels() const { return ground_F_; }
  const std::vector<HalfInt>& excited_levels() const { return excited_F_; }
  const std::vector<Level>& ground_sublevels() const { return ground_sub_; }
  const std::vector<Level>& excited_sublevels() const { return excited_sub_; }

  bool has_ground_level(HalfInt F) const;
  bool has_excited_level(HalfInt F) const;
  HalfInt lowest_ground_level() const { return ground_F_.front(); }

  /// delta(F'); throws InputDomainError for an unknown level.
  double splitting(HalfInt ground_F) const;

  /// Cached <F m| e r.e_q |F' m'>; zero for anything outside the manifolds.
  double dipole(const Level& excited, const Level& ground, int q) const;

 private:
  Params p_;
  std::vector<HalfInt> ground_F_;
  std::vector<HalfInt> excited_F_;
  std::vector<Level> ground_sub_;
  std::vector<Level> excited_sub_;
  std::map<std::pair<Level, Level>, std::array<double, 3>> dipoles_;
};

/// e_{-1} = (x - iy)/sqrt2, e_0 = z, e_{+1} = -(x + iy)/sqrt2; index q + 1.
const std::array<CVec3, 3>& spherical_basis_vectors();
const CVec3& spherical_basis_vector(int q);

/// <F m| e r.e_q |F' m'> from the hyperfine decomposition
///   -(-1)^(-I-J'-F) sqrt((2F'+1)(2J+1)) D <F' m'; 1 q|F m> {I J' F'; 1 F J}.
///
/// The 6-j carries the excited F in its lower middle slot. With this layout
/// the elements equal the uncoupled |m_I, m_J> expansion (I coupled first)
/// with no extra phase.
double dipole_matrix_element(const AtomSpec& spec, const Sublevel& excited, const Sublevel& ground, int q);

/// Delta(F') = omega_L - omega_a + delta(F'), rad/s, sign preserved.
double detuning(const AtomSpec& spec, double omega_L, HalfInt ground_F);

struct ValidityReport {
  std::map<HalfInt, double> ratio;  // |Delta(F')| / Gamma
  double threshold = 100.0;
  bool pass = false;
};

/// Far-off-resonance check |Delta(F')| / Gamma > threshold for every ground F'.
ValidityReport validity_check(const AtomSpec& spec, double omega_L, double threshold = 100.0);

}  // namespace ramanpair
