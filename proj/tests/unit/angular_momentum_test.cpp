#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <vector>

#include "racah_direct.hpp"
#include "ramanpair/angular_momentum.hpp"
#include "ramanpair/errors.hpp"

using namespace ramanpair;

namespace {

HalfInt h(int twice) { return HalfInt::from_twice(twice); }

constexpr int kGrid = 8;

}  // namespace

TEST(HalfInt, ParsesAndPrints) {
  EXPECT_EQ(HalfInt::parse("3/2").twice(), 3);
  EXPECT_EQ(HalfInt::parse("-1/2").twice(), -1);
  EXPECT_EQ(HalfInt::parse("2").twice(), 4);
  EXPECT_EQ(h(3).str(), "3/2");
  EXPECT_EQ(h(-4).str(), "-2");
  EXPECT_THROW(HalfInt::parse("1/3"), InputDomainError);
  EXPECT_THROW(HalfInt::parse("x"), InputDomainError);
  EXPECT_THROW(HalfInt::parse(""), InputDomainError);
}

TEST(HalfInt, ProjectionsAndCoupledRange) {
  const auto ms = projections(h(3));
  ASSERT_EQ(ms.size(), 4u);
  EXPECT_EQ(ms.front(), h(-3));
  EXPECT_EQ(ms.back(), h(3));
  const auto Js = coupled_range(h(3), h(1));
  ASSERT_EQ(Js.size(), 2u);
  EXPECT_EQ(Js[0], h(2));
  EXPECT_EQ(Js[1], h(4));
  EXPECT_TRUE(is_projection_of(h(-1), h(3)));
  EXPECT_FALSE(is_projection_of(h(2), h(3)));
  EXPECT_FALSE(is_projection_of(h(5), h(3)));
}

TEST(Triangle, Examples) {
  EXPECT_TRUE(triangle_ok(h(2), h(2), h(4)));
  EXPECT_FALSE(triangle_ok(h(1), h(1), h(4)));
  EXPECT_TRUE(triangle_ok(h(3), h(2), h(1)));
  EXPECT_FALSE(triangle_ok(h(1), h(1), h(1)));
}

TEST(ClebschGordan, ScalarCouplingIsOne) {
  for (int tj = 0; tj <= 12; ++tj) {
    for (int tm = -tj; tm <= tj; tm += 2) {
      const auto v = clebsch_gordan(h(tj), h(tm), h(0), h(0), h(tj), h(tm));
      EXPECT_DOUBLE_EQ(v.value, 1.0);
      ASSERT_TRUE(v.exact);
      EXPECT_EQ(v.exact->sign, 1);
      EXPECT_EQ(v.exact->numerator, 1);
      EXPECT_EQ(v.exact->denominator, 1);
    }
  }
}

TEST(ClebschGordan, FrozenValues) {
  const auto a = clebsch_gordan(h(1), h(1), h(1), h(-1), h(2), h(0));
  EXPECT_NEAR(a.value, std::sqrt(0.5), 1e-15);
  EXPECT_EQ(a.exact->sign, 1);
  EXPECT_EQ(a.exact->numerator, 1);
  EXPECT_EQ(a.exact->denominator, 2);

  const auto b = clebsch_gordan(h(2), h(2), h(2), h(0), h(4), h(2));
  EXPECT_NEAR(b.value, std::sqrt(0.5), 1e-15);

  const auto c = clebsch_gordan(h(2), h(2), h(2), h(0), h(4), h(4));
  EXPECT_TRUE(c.is_zero());
  EXPECT_EQ(c.value, 0.0);
}

TEST(ClebschGordan, SelectionRulesGiveExactZero) {
  EXPECT_TRUE(clebsch_gordan(h(2), h(2), h(2), h(2), h(4), h(2)).is_zero());
  EXPECT_TRUE(clebsch_gordan(h(1), h(1), h(1), h(1), h(6), h(2)).is_zero());
  EXPECT_TRUE(clebsch_gordan(h(2), h(4), h(2), h(0), h(4), h(4)).is_zero());
}

TEST(ClebschGordan, DomainErrors) {
  EXPECT_THROW(clebsch_gordan(h(-2), h(0), h(2), h(0), h(2), h(0)), InputDomainError);
  EXPECT_THROW(clebsch_gordan(h(2), h(1), h(2), h(0), h(2), h(1)), InputDomainError);
  EXPECT_THROW(clebsch_gordan(h(42), h(0), h(2), h(0), h(42), h(0)), InputDomainError);
}

TEST(Wigner3j, FrozenValues) {
  const auto a = wigner_3j(h(2), h(2), h(0), h(0), h(0), h(0));
  EXPECT_NEAR(a.value, -1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_EQ(a.exact->sign, -1);
  EXPECT_EQ(a.exact->denominator, 3);

  const auto b = wigner_3j(h(2), h(2), h(4), h(2), h(2), h(-4));
  EXPECT_NEAR(b.value, 1.0 / std::sqrt(5.0), 1e-15);
  EXPECT_EQ(b.exact->sign, 1);
  EXPECT_EQ(b.exact->numerator, 1);
  EXPECT_EQ(b.exact->denominator, 5);

  EXPECT_TRUE(wigner_3j(h(2), h(2), h(2), h(2), h(0), h(0)).is_zero());
}

TEST(Wigner3j, ClosedFormScalarRow) {
  for (int tj = 0; tj <= kGrid; ++tj) {
    for (int tm = -tj; tm <= tj; tm += 2) {
      const double expect = (((tj - tm) / 2) % 2 == 0 ? 1.0 : -1.0) / std::sqrt(tj + 1.0);
      EXPECT_NEAR(wigner_3j(h(tj), h(tj), h(0), h(tm), h(-tm), h(0)).value, expect, 1e-15);
    }
  }
}

TEST(Wigner6j, FrozenValues) {
  const auto a = wigner_6j(h(2), h(2), h(0), h(2), h(2), h(2));
  EXPECT_NEAR(a.value, -1.0 / 3.0, 1e-15);
  EXPECT_EQ(a.exact->sign, -1);
  EXPECT_EQ(a.exact->numerator, 1);
  EXPECT_EQ(a.exact->denominator, 9);

  const auto b = wigner_6j(h(1), h(1), h(2), h(1), h(1), h(2));
  EXPECT_NEAR(b.value, 1.0 / 6.0, 1e-15);

  EXPECT_TRUE(wigner_6j(h(4), h(4), h(4), h(4), h(4), h(10)).is_zero());
}

TEST(Wigner6j, ClosedFormWithZero) {
  for (int ta = 0; ta <= kGrid; ++ta) {
    for (int tc = 0; tc <= kGrid; ++tc) {
      for (int te = std::abs(ta - tc); te <= ta + tc; te += 2) {
        const double sign = (((ta + tc + te) / 2) % 2 == 0) ? 1.0 : -1.0;
        const double expect = sign / std::sqrt((ta + 1.0) * (tc + 1.0));
        EXPECT_NEAR(wigner_6j(h(ta), h(ta), h(0), h(tc), h(tc), h(te)).value, expect, 1e-14);
      }
    }
  }
}

TEST(AngularMomentumOracle, ClebschGordanFullGrid) {
  int compared = 0;
  for (int tj1 = 0; tj1 <= kGrid; ++tj1)
    for (int tj2 = 0; tj2 <= kGrid; ++tj2)
      for (int tJ = 0; tJ <= kGrid; ++tJ) {
        if ((tj1 + tj2 + tJ) % 2) continue;
        for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2)
          for (int tm2 = -tj2; tm2 <= tj2; tm2 += 2)
            for (int tM = -tJ; tM <= tJ; tM += 2) {
              const double lib = clebsch_gordan(h(tj1), h(tm1), h(tj2), h(tm2), h(tJ), h(tM)).value;
              const double ref = static_cast<double>(oracle::clebsch_gordan(tj1, tm1, tj2, tm2, tJ, tM));
              ASSERT_NEAR(lib, ref, 1e-12) << tj1 << ' ' << tm1 << ' ' << tj2 << ' ' << tm2 << ' ' << tJ << ' ' << tM;
              ++compared;
            }
      }
  EXPECT_GT(compared, 10000);
}

TEST(AngularMomentumOracle, ThreeJFullGridAndBridge) {
  for (int tj1 = 0; tj1 <= kGrid; ++tj1)
    for (int tj2 = 0; tj2 <= kGrid; ++tj2)
      for (int tj3 = 0; tj3 <= kGrid; ++tj3) {
        if ((tj1 + tj2 + tj3) % 2) continue;
        for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2)
          for (int tm2 = -tj2; tm2 <= tj2; tm2 += 2) {
            const int tm3 = -tm1 - tm2;
            if (std::abs(tm3) > tj3) continue;
            const double lib = wigner_3j(h(tj1), h(tj2), h(tj3), h(tm1), h(tm2), h(tm3)).value;
            ASSERT_NEAR(lib, static_cast<double>(oracle::wigner_3j(tj1, tj2, tj3, tm1, tm2, tm3)), 1e-12);
            // <j1 m1; j2 m2|J M> = (-1)^(j1 - j2 + M) sqrt(2J+1) (j1 j2 J; m1 m2 -M)
            const int e = (tj1 - tj2 - tm3) / 2;
            const double bridge = ((e % 2 == 0) ? 1.0 : -1.0) * std::sqrt(tj3 + 1.0) * lib;
            const double cg = clebsch_gordan(h(tj1), h(tm1), h(tj2), h(tm2), h(tj3), h(-tm3)).value;
            ASSERT_NEAR(cg, bridge, 1e-14);
          }
      }
}

TEST(AngularMomentumOracle, SixJFullGrid) {
  int nonzero = 0;
  for (int a = 0; a <= kGrid; ++a)
    for (int b = 0; b <= kGrid; ++b)
      for (int c = 0; c <= kGrid; ++c)
        for (int d = 0; d <= kGrid; ++d)
          for (int e = 0; e <= kGrid; ++e)
            for (int f = 0; f <= kGrid; ++f) {
              if ((a + b + c) % 2 || (a + e + f) % 2 || (d + b + f) % 2 || (d + e + c) % 2) continue;
              const auto lib = wigner_6j(h(a), h(b), h(c), h(d), h(e), h(f));
              ASSERT_NEAR(lib.value, static_cast<double>(oracle::wigner_6j(a, b, c, d, e, f)), 1e-12);
              if (!lib.is_zero()) ++nonzero;
            }
  EXPECT_GT(nonzero, 1000);
}

TEST(AngularMomentumProperty, Orthogonality) {
  for (int tj1 = 0; tj1 <= kGrid; ++tj1)
    for (int tj2 = 0; tj2 <= kGrid; ++tj2)
      for (int tJ = std::abs(tj1 - tj2); tJ <= std::min(tj1 + tj2, kGrid); tJ += 2)
        for (int tJp = std::abs(tj1 - tj2); tJp <= std::min(tj1 + tj2, kGrid); tJp += 2)
          for (int tM = -std::min(tJ, tJp); tM <= std::min(tJ, tJp); tM += 2) {
            double sum = 0.0;
            for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2) {
              const int tm2 = tM - tm1;
              if (std::abs(tm2) > tj2) continue;
              sum += clebsch_gordan(h(tj1), h(tm1), h(tj2), h(tm2), h(tJ), h(tM)).value *
                     clebsch_gordan(h(tj1), h(tm1), h(tj2), h(tm2), h(tJp), h(tM)).value;
            }
            ASSERT_NEAR(sum, tJ == tJp ? 1.0 : 0.0, 1e-12);
          }
}

TEST(AngularMomentumProperty, Completeness) {
  for (int tj1 = 0; tj1 <= kGrid; ++tj1)
    for (int tj2 = 0; tj2 <= kGrid; ++tj2)
      for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2)
        for (int tm2 = -tj2; tm2 <= tj2; tm2 += 2)
          for (int tm1p = -tj1; tm1p <= tj1; tm1p += 2) {
            const int tm2p = tm1 + tm2 - tm1p;
            if (std::abs(tm2p) > tj2) continue;
            double sum = 0.0;
            for (int tJ = std::abs(tj1 - tj2); tJ <= tj1 + tj2; tJ += 2) {
              const int tM = tm1 + tm2;
              if (std::abs(tM) > tJ) continue;
              sum += clebsch_gordan(h(tj1), h(tm1), h(tj2), h(tm2), h(tJ), h(tM)).value *
                     clebsch_gordan(h(tj1), h(tm1p), h(tj2), h(tm2p), h(tJ), h(tM)).value;
            }
            ASSERT_NEAR(sum, (tm1 == tm1p) ? 1.0 : 0.0, 1e-12);
          }
}

TEST(AngularMomentumProperty, SixJSymmetryImagesAreExact) {
  // Column permutations (6) times upper/lower swaps in two columns (4).
  const std::array<std::array<int, 3>, 6> perms = {
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  int checked = 0;
  for (int a = 0; a <= 6; ++a)
    for (int b = 0; b <= 6; ++b)
      for (int c = std::abs(a - b); c <= a + b && c <= 6; c += 2)
        for (int d = 0; d <= 6; ++d)
          for (int e = 0; e <= 6; ++e)
            for (int f = 0; f <= 6; ++f) {
              const auto base = wigner_6j(h(a), h(b), h(c), h(d), h(e), h(f));
              if (base.is_zero()) continue;
              const std::array<std::array<int, 2>, 3> cols = {{{a, d}, {b, e}, {c, f}}};
              for (const auto& p : perms) {
                for (int flip = 0; flip < 4; ++flip) {
                  auto x = cols[p[0]], y = cols[p[1]], z = cols[p[2]];
                  if (flip & 1) { std::swap(x[0], x[1]); std::swap(y[0], y[1]); }
                  if (flip & 2) { std::swap(y[0], y[1]); std::swap(z[0], z[1]); }
                  const auto img = wigner_6j(h(x[0]), h(y[0]), h(z[0]), h(x[1]), h(y[1]), h(z[1]));
                  ASSERT_EQ(img.exact, base.exact);
                  ASSERT_NEAR(img.value, base.value, 1e-14);
                }
              }
              ++checked;
            }
  EXPECT_GT(checked, 100);
}

TEST(AngularMomentumProperty, ExactAndFloatAgree) {
  for (int a = 0; a <= kGrid; ++a)
    for (int b = 0; b <= kGrid; ++b)
      for (int c = 0; c <= kGrid; ++c)
        for (int d = 0; d <= kGrid; d += 2)
          for (int e = 0; e <= kGrid; ++e)
            for (int f = 0; f <= kGrid; f += 3) {
              const auto v = wigner_6j(h(a), h(b), h(c), h(d), h(e), h(f));
              ASSERT_TRUE(v.exact);
              ASSERT_LE(std::abs(v.value - v.exact->to_double()), 1e-15 * std::max(1.0, std::abs(v.value)));
            }
}

TEST(AngularMomentumProperty, LargeArgumentsStayFinite) {
  const auto v = wigner_6j(h(40), h(40), h(40), h(40), h(40), h(40));
  EXPECT_TRUE(std::isfinite(v.value));
  EXPECT_LT(std::abs(v.value), 1.0);
  const auto c = clebsch_gordan(h(40), h(0), h(40), h(0), h(40), h(0));
  EXPECT_TRUE(std::isfinite(c.value));
}
