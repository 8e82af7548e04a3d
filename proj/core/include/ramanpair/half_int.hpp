#pragma once

#include <compare>
#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

namespace ramanpair {

// Angular momentum quantum number stored as twice its value, so j = 3/2 is 3.
class HalfInt {
 public:
  constexpr HalfInt() = default;

  static constexpr HalfInt from_twice(int twice) {
    HalfInt h;
    h.twice_ = twice;
    return h;
  }
  static constexpr HalfInt integer(int n) { return from_twice(2 * n); }

  constexpr int twice() const { return twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  constexpr double value() const { return 0.5 * twice_; }

  constexpr HalfInt operator-() const { return from_twice(-twice_); }
  constexpr HalfInt operator+(HalfInt o) const { return from_twice(twice_ + o.twice_); }
  constexpr HalfInt operator-(HalfInt o) const { return from_twice(twice_ - o.twice_); }
  constexpr HalfInt abs() const { return from_twice(twice_ < 0 ? -twice_ : twice_); }

  constexpr auto operator<=>(const HalfInt&) const = default;

  /// "3/2", "-1/2", "2".
  std::string str() const;

  /// Accepts "1", "-2", "3/2", "-1/2". Throws InputDomainError otherwise.
  static HalfInt parse(std::string_view text);

 private:
  int twice_ = 0;
};

/// m = -j, -j+1, ..., j.
std::vector<HalfInt> projections(HalfInt j);

/// |a-b|, |a-b|+1, ..., a+b.
std::vector<HalfInt> coupled_range(HalfInt a, HalfInt b);

/// True when m is a valid projection of j (same parity, |m| <= j).
constexpr bool is_projection_of(HalfInt m, HalfInt j) {
  const int d = j.twice() - m.twice();
  return j.twice() >= 0 && d % 2 == 0 && (m.twice() <= j.twice()) && (-m.twice() <= j.twice());
}

}  // namespace ramanpair
