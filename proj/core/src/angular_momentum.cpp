#include "ramanpair/angular_momentum.hpp"

#include <algorithm>
#include <array>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "ramanpair/errors.hpp"

namespace ramanpair {

namespace mp = boost::multiprecision;

namespace {

using BigInt = mp::cpp_int;
using Rational = mp::cpp_rational;

// Largest factorial argument any Racah sum can reach with j <= kMaxDoubledJ/2:
// the 6-j term (t+1)! with t <= j1+j2+j4+j5.
constexpr int kMaxFactorial = 2 * kMaxDoubledJ + 2;

const std::vector<BigInt>& factorial_table() {
  static const std::vector<BigInt> table = [] {
    std::vector<BigInt> f(kMaxFactorial + 1);
    f[0] = 1;
    for (int i = 1; i <= kMaxFactorial; ++i) f[i] = f[i - 1] * i;
    return f;
  }();
  return table;
}

const BigInt& fact(int n) { return factorial_table().at(static_cast<std::size_t>(n)); }

void check_j(HalfInt j, const char* what) {
  if (j.twice() < 0) throw InputDomainError(std::string(what) + " must be non-negative, got " + j.str());
  if (j.twice() > kMaxDoubledJ) {
    throw InputDomainError(std::string(what) + " = " + j.str() + " exceeds the supported maximum " +
                           HalfInt::from_twice(kMaxDoubledJ).str());
  }
}

void check_pair(HalfInt j, HalfInt m, const char* what) {
  check_j(j, what);
  if ((j.twice() - m.twice()) % 2 != 0) {
    throw InputDomainError(std::string("projection ") + m.str() + " has the wrong parity for " + what + " = " +
                           j.str());
  }
}

bool in_range(HalfInt j, HalfInt m) { return m.twice() <= j.twice() && -m.twice() <= j.twice(); }

// (ta + tb - tc) / 2 for doubled arguments already known to form a triangle.
int half(int twice_sum) { return twice_sum / 2; }

// Triangle coefficient Delta(abc) = (a+b-c)!(a-b+c)!(-a+b+c)!/(a+b+c+1)!.
Rational triangle_delta(HalfInt a, HalfInt b, HalfInt c) {
  const int ta = a.twice(), tb = b.twice(), tc = c.twice();
  return Rational(fact(half(ta + tb - tc)) * fact(half(ta - tb + tc)) * fact(half(-ta + tb + tc)),
                  fact(half(ta + tb + tc) + 1));
}

CoupledValue zero_value() { return CoupledValue{0.0, ExactForm{}}; }

// Packages sign * sqrt(square). `square` must be non-negative.
CoupledValue from_square(int sign, const Rational& square) {
  if (sign == 0 || square == 0) return zero_value();
  ExactForm exact;
  exact.sign = sign > 0 ? 1 : -1;
  exact.numerator = mp::numerator(square);
  exact.denominator = mp::denominator(square);
  const double v = exact.to_double();
  return CoupledValue{v, std::move(exact)};
}

int sign_of(const Rational& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

// (-1)^n for integer n, accepting negative n.
int parity_sign(int n) { return (n % 2 == 0) ? 1 : -1; }

}  // namespace

double ExactForm::to_double() const {
  if (sign == 0) return 0.0;
  using Float = mp::cpp_bin_float_50;
  const Float v = mp::sqrt(Float(numerator) / Float(denominator));
  return sign * static_cast<double>(v);
}

bool triangle_ok(HalfInt a, HalfInt b, HalfInt c) {
  const int ta = a.twice(), tb = b.twice(), tc = c.twice();
  if (ta < 0 || tb < 0 || tc < 0) return false;
  if ((ta + tb + tc) % 2 != 0) return false;
  return tc >= std::abs(ta - tb) && tc <= ta + tb;
}

CoupledValue wigner_3j(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt m1, HalfInt m2, HalfInt m3) {
  check_pair(j1, m1, "j1");
  check_pair(j2, m2, "j2");
  check_pair(j3, m3, "j3");
  if ((m1 + m2 + m3).twice() != 0) return zero_value();
  if (!triangle_ok(j1, j2, j3)) return zero_value();
  if (!in_range(j1, m1) || !in_range(j2, m2) || !in_range(j3, m3)) return zero_value();

  const int a = j1.twice(), b = j2.twice(), c = j3.twice();
  const int ma = m1.twice(), mb = m2.twice(), mc = m3.twice();

  // Racah: sum_k (-1)^k / [k! (j3-j2+k+m1)! (j3-j1+k-m2)! (j1+j2-j3-k)! (j1-k-m1)! (j2-k+m2)!]
  const int kmin = std::max({0, half(b - c - ma), half(a - c + mb)});
  const int kmax = std::min({half(a + b - c), half(a - ma), half(b + mb)});
  Rational sum = 0;
  for (int k = kmin; k <= kmax; ++k) {
    const BigInt den = fact(k) * fact(half(c - b + ma) + k) * fact(half(c - a - mb) + k) *
                       fact(half(a + b - c) - k) * fact(half(a - ma) - k) * fact(half(b + mb) - k);
    sum += Rational(parity_sign(k), den);
  }
  const Rational prefactor = triangle_delta(j1, j2, j3) * Rational(fact(half(a + ma)) * fact(half(a - ma)) *
                                                                     fact(half(b + mb)) * fact(half(b - mb)) *
                                                                     fact(half(c + mc)) * fact(half(c - mc)));
  const int phase = parity_sign(half(a - b - mc));
  return from_square(phase * sign_of(sum), prefactor * sum * sum);
}

CoupledValue clebsch_gordan(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt J, HalfInt M) {
  check_pair(j1, m1, "j1");
  check_pair(j2, m2, "j2");
  check_pair(J, M, "J");
  if ((m1 + m2).twice() != M.twice()) return zero_value();
  // <j1 m1 j2 m2|J M> = (-1)^(j1-j2+M) sqrt(2J+1) (j1 j2 J; m1 m2 -M)
  const CoupledValue threej = wigner_3j(j1, j2, J, m1, m2, -M);
  if (threej.is_zero()) return zero_value();
  const ExactForm& e = *threej.exact;
  const int phase = parity_sign(half(j1.twice() - j2.twice() + M.twice()));
  return from_square(phase * e.sign, Rational(e.numerator * (J.twice() + 1), e.denominator));
}

CoupledValue wigner_6j(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt j4, HalfInt j5, HalfInt j6) {
  check_j(j1, "j1");
  check_j(j2, "j2");
  check_j(j3, "j3");
  check_j(j4, "j4");
  check_j(j5, "j5");
  check_j(j6, "j6");
  if (!triangle_ok(j1, j2, j3) || !triangle_ok(j1, j5, j6) || !triangle_ok(j4, j2, j6) ||
      !triangle_ok(j4, j5, j3)) {
    return zero_value();
  }
  const int a = j1.twice(), b = j2.twice(), c = j3.twice();
  const int d = j4.twice(), e = j5.twice(), f = j6.twice();

  const std::array<int, 4> alpha = {half(a + b + c), half(a + e + f), half(d + b + f), half(d + e + c)};
  const std::array<int, 3> beta = {half(a + b + d + e), half(b + c + e + f), half(c + a + f + d)};
  const int tmin = *std::max_element(alpha.begin(), alpha.end());
  const int tmax = *std::min_element(beta.begin(), beta.end());

  Rational sum = 0;
  for (int t = tmin; t <= tmax; ++t) {
    BigInt den = 1;
    for (int x : alpha) den *= fact(t - x);
    for (int x : beta) den *= fact(x - t);
    sum += Rational(parity_sign(t) * fact(t + 1), den);
  }
  const Rational prefactor =
      triangle_delta(j1, j2, j3) * triangle_delta(j1, j5, j6) * triangle_delta(j4, j2, j6) * triangle_delta(j4, j5, j3);
  return from_square(sign_of(sum), prefactor * sum * sum);
}

}  // namespace ramanpair
