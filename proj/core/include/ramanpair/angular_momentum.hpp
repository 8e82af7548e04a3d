#pragma once

#include <optional>

#include <boost/multiprecision/cpp_int.hpp>

#include "ramanpair/half_int.hpp"

namespace ramanpair {

/// Largest doubled angular momentum accepted by the coupling routines.
inline constexpr int kMaxDoubledJ = 40;

/// sign * sqrt(numerator / denominator), numerator/denominator coprime.
/// sign is 0 exactly when the coefficient vanishes.
struct ExactForm {
  int sign = 0;
  boost::multiprecision::cpp_int numerator = 0;
  boost::multiprecision::cpp_int denominator = 1;

  /// Correctly rounded to double (evaluated with 50 significant digits).
  double to_double() const;

  bool operator==(const ExactForm&) const = default;
};

/// A coupling coefficient as a double together with its exact closed form.
struct CoupledValue {
  double value = 0.0;
  std::optional<ExactForm> exact;

  bool is_zero() const { return exact ? exact->sign == 0 : value == 0.0; }
};

/// |a - b| <= c <= a + b and a + b + c integral.
bool triangle_ok(HalfInt a, HalfInt b, HalfInt c);

/// <j1 m1; j2 m2 | J M> in the Condon-Shortley convention.
///
/// Returns exact zero when M != m1 + m2, the triangle {j1 j2 J} fails, or a
/// projection exceeds its j. Throws InputDomainError for negative j,
/// j above kMaxDoubledJ / 2, or a j/m parity mismatch.
CoupledValue clebsch_gordan(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt J, HalfInt M);

/// Wigner 3-j symbol (j1 j2 j3; m1 m2 m3) via the Racah sum.
CoupledValue wigner_3j(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt m1, HalfInt m2, HalfInt m3);

/// Wigner 6-j symbol {j1 j2 j3; j4 j5 j6} via the Racah sum. Zero unless
/// {j1 j2 j3}, {j1 j5 j6}, {j4 j2 j6} and {j4 j5 j3} all satisfy the triangle rule.
CoupledValue wigner_6j(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt j4, HalfInt j5, HalfInt j6);

}  // namespace ramanpair
