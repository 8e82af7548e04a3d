#pragma once

#include <cmath>
#include <random>

#include "ramanpair/atomic_model.hpp"
#include "ramanpair/pair_state.hpp"

namespace testing_support {

using namespace ramanpair;

inline constexpr double kSqrt2 = 1.41421356237309504880;
inline constexpr double kSqrt3 = 1.73205080756887729353;

inline const AtomSpec& sodium() {
  static const AtomSpec spec = AtomSpec::sodium();
  return spec;
}

inline HalfInt F(int n) { return HalfInt::integer(n); }
inline Level level(int F_, int m) { return {HalfInt::integer(F_), HalfInt::integer(m)}; }

/// Pump along +y, pi-polarized along z, 10 GHz red of resonance.
inline PumpConfig sodium_pump(double detuning_hz = -10e9) {
  PumpConfig p;
  p.direction = {0.0, 1.0, 0.0};
  p.polarization = {Complex(0.0), Complex(0.0), Complex(1.0)};
  p.omega_L = sodium().resonance() + kTwoPi * detuning_hz;
  p.amplitude = {1.0, 0.0};
  p.atom_number = 1.0e5;
  return p;
}

inline CondensateSpinor sodium_condensate() { return CondensateSpinor::single(level(1, 0)); }

/// I = 0, J' = 1/2 -> J = 1/2: a sigma+ pump leaves |1/2, 1/2> dark.
inline AtomSpec dark_species() {
  AtomSpec::Params p;
  p.name = "dark";
  p.nuclear_spin = HalfInt::from_twice(0);
  p.ground_J = HalfInt::from_twice(1);
  p.excited_J = HalfInt::from_twice(1);
  p.ground_splittings = {{HalfInt::from_twice(1), 0.0}};
  p.resonance = kTwoPi * 5e14;
  p.linewidth = kTwoPi * 1e7;
  p.mass = 1e-25;
  return AtomSpec(p);
}

inline PumpConfig dark_pump(const AtomSpec& spec) {
  PumpConfig p;
  p.direction = {0.0, 0.0, 1.0};
  p.polarization = spherical_basis_vector(1);
  p.omega_L = spec.resonance() - kTwoPi * 10e9;
  return p;
}

inline std::size_t row_of(const PairState& s, int F_final, int lambda) {
  for (std::size_t r = 0; r < s.rows(); ++r) {
    if (s.channels[r].F_final == HalfInt::integer(F_final) && s.channels[r].lambda == lambda) return r;
  }
  return s.rows();
}

inline std::size_t col_of(const PairState& s, int F_, int m) {
  for (std::size_t c = 0; c < s.cols(); ++c) {
    if (s.atom_levels[c] == level(F_, m)) return c;
  }
  return s.cols();
}

inline Vec3 random_direction(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  for (;;) {
    Vec3 v{n(rng), n(rng), n(rng)};
    const double l = norm(v);
    if (l > 1e-6) return (1.0 / l) * v;
  }
}

/// Random normalized 2x2 state with generic labels (sigma+/-, two F=1 sublevels).
inline PairState two_by_two(const std::array<Complex, 4>& amps) {
  std::vector<PhotonChannel> channels = {{HalfInt::integer(1), 1, 1.0, {}, false},
                                         {HalfInt::integer(1), 2, 1.0, {}, false}};
  std::vector<Level> atoms = {level(1, -1), level(1, 1)};
  return make_pair_state(channels, atoms, {amps.begin(), amps.end()});
}

inline std::array<Complex, 4> random_amplitudes(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  std::array<Complex, 4> a;
  double n2 = 0.0;
  for (auto& z : a) {
    z = {n(rng), n(rng)};
    n2 += std::norm(z);
  }
  for (auto& z : a) z /= std::sqrt(n2);
  return a;
}

}  // namespace testing_support
