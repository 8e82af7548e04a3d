#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "ramanpair/atomic_model.hpp"
#include "ramanpair/errors.hpp"
#include "uncoupled_dipole.hpp"

using namespace ramanpair;
using testing_support::F;
using testing_support::level;
using testing_support::sodium;

namespace {

AtomSpec::Params rb85_params() {
  AtomSpec::Params p;
  p.name = "rb85";
  p.nuclear_spin = HalfInt::from_twice(5);
  p.ground_J = HalfInt::from_twice(1);
  p.excited_J = HalfInt::from_twice(3);
  p.ground_splittings = {{F(2), 0.0}, {F(3), kTwoPi * 3.0357e9}};
  p.resonance = kTwoPi * 384.23e12;
  p.linewidth = kTwoPi * 6.07e6;
  p.mass = 1.409993e-25;
  return p;
}

double oracle_element(const AtomSpec& s, const Level& e, const Level& g, int q) {
  return static_cast<double>(oracle::uncoupled_dipole(s.nuclear_spin().twice(), s.ground_J().twice(),
                                                      s.excited_J().twice(), e.F.twice(), e.m.twice(), g.F.twice(),
                                                      g.m.twice(), q, s.reduced_dipole()));
}

}  // namespace

TEST(LevelKey, RoundTrip) {
  EXPECT_EQ(level(1, -1).key(), "2:-2");
  EXPECT_EQ(Level::parse_key("4:2"), level(2, 1));
  EXPECT_THROW(Level::parse_key("2:4"), InputDomainError);
  EXPECT_THROW(Level::parse_key("2-2"), InputDomainError);
  EXPECT_THROW(Level::parse_key("2:1"), InputDomainError);
  EXPECT_THROW(Level::parse_key("a:0"), InputDomainError);
}

TEST(SphericalBasis, Vectors) {
  const auto& e0 = spherical_basis_vector(0);
  EXPECT_EQ(e0[0], Complex(0.0));
  EXPECT_EQ(e0[2], Complex(1.0));
  const auto& ep = spherical_basis_vector(1);
  EXPECT_NEAR(ep[0].real(), -1.0 / std::sqrt(2.0), 1e-16);
  EXPECT_NEAR(ep[1].imag(), -1.0 / std::sqrt(2.0), 1e-16);
  EXPECT_EQ(ep[2], Complex(0.0));
  const auto& em = spherical_basis_vector(-1);
  EXPECT_NEAR(em[0].real(), 1.0 / std::sqrt(2.0), 1e-16);
  EXPECT_NEAR(em[1].imag(), -1.0 / std::sqrt(2.0), 1e-16);
  for (int q = -1; q <= 1; ++q)
    for (int p = -1; p <= 1; ++p)
      EXPECT_NEAR(std::abs(inner(spherical_basis_vector(q), spherical_basis_vector(p)) - (q == p ? 1.0 : 0.0)), 0.0,
                  1e-15);
  EXPECT_THROW(spherical_basis_vector(2), InputDomainError);
}

TEST(AtomSpec, SodiumLevels) {
  const auto& na = sodium();
  ASSERT_EQ(na.ground_levels().size(), 2u);
  EXPECT_EQ(na.ground_levels()[0], F(1));
  EXPECT_EQ(na.ground_levels()[1], F(2));
  ASSERT_EQ(na.excited_levels().size(), 4u);
  EXPECT_EQ(na.excited_levels()[0], F(0));
  EXPECT_EQ(na.excited_levels()[3], F(3));
  EXPECT_EQ(na.ground_sublevels().size(), 8u);
  EXPECT_EQ(na.excited_sublevels().size(), 16u);
  EXPECT_EQ(na.lowest_ground_level(), F(1));
  EXPECT_NEAR(na.splitting(F(2)), kTwoPi * 1.772e9, 1.0);
  EXPECT_THROW(na.splitting(F(3)), InputDomainError);
}

TEST(AtomSpec, ValidationRejectsBadInput) {
  auto p = rb85_params();
  p.excited_J = HalfInt::from_twice(7);
  EXPECT_THROW(AtomSpec{p}, InputDomainError);
  p = rb85_params();
  p.ground_splittings.erase(F(3));
  EXPECT_THROW(AtomSpec{p}, InputDomainError);
  p = rb85_params();
  p.ground_splittings[F(2)] = 1.0;
  EXPECT_THROW(AtomSpec{p}, InputDomainError);
  p = rb85_params();
  p.linewidth = 0.0;
  EXPECT_THROW(AtomSpec{p}, InputDomainError);
  p = rb85_params();
  p.mass = -1.0;
  EXPECT_THROW(AtomSpec{p}, InputDomainError);
  EXPECT_NO_THROW(AtomSpec{rb85_params()});
}

TEST(Dipole, PumpExcitesOnlyF0AndF2FromM0) {
  const auto& na = sodium();
  for (const Level& e : na.excited_sublevels()) {
    const double d = dipole_matrix_element(na, Sublevel::excited(e), Sublevel::ground(level(1, 0)), 0);
    const bool allowed = e.m == HalfInt() && (e.F == F(0) || e.F == F(2));
    if (allowed) {
      EXPECT_GT(std::abs(d), 1e-3) << e.key();
    } else {
      EXPECT_EQ(d, 0.0) << e.key();
    }
  }
}

TEST(Dipole, DomainErrors) {
  const auto& na = sodium();
  EXPECT_THROW(dipole_matrix_element(na, Sublevel::ground(level(1, 0)), Sublevel::ground(level(1, 0)), 0),
               InputDomainError);
  EXPECT_THROW(dipole_matrix_element(na, Sublevel::excited(level(1, 0)), Sublevel::ground(level(1, 0)), 2),
               InputDomainError);
  EXPECT_THROW(dipole_matrix_element(na, Sublevel::excited(level(4, 0)), Sublevel::ground(level(1, 0)), 0),
               InputDomainError);
  EXPECT_THROW(dipole_matrix_element(na, Sublevel::excited(level(1, 0)), Sublevel::ground(level(3, 0)), 0),
               InputDomainError);
}

TEST(Dipole, SelectionRulesExhaustive) {
  for (const AtomSpec& s : {sodium(), AtomSpec(rb85_params())}) {
    for (const Level& e : s.excited_sublevels())
      for (const Level& g : s.ground_sublevels())
        for (int q = -1; q <= 1; ++q) {
          const double d = dipole_matrix_element(s, Sublevel::excited(e), Sublevel::ground(g), q);
          const bool m_ok = e.m == g.m + HalfInt::integer(q);
          const bool f_ok = std::abs(e.F.twice() - g.F.twice()) <= 2 && e.F.twice() + g.F.twice() >= 2;
          if (!m_ok || !f_ok) ASSERT_EQ(d, 0.0);
        }
  }
}

TEST(Dipole, SumRuleIndependentOfGroundProjection) {
  for (const AtomSpec& s : {sodium(), AtomSpec(rb85_params())}) {
    for (HalfInt Fg : s.ground_levels()) {
      double first = -1.0;
      for (HalfInt mg : projections(Fg)) {
        double total = 0.0;
        for (const Level& e : s.excited_sublevels())
          for (int q = -1; q <= 1; ++q) total += std::pow(s.dipole(e, {Fg, mg}, q), 2);
        if (first < 0.0) first = total;
        ASSERT_NEAR(total, first, 1e-12);
      }
      EXPECT_NEAR(first, (s.excited_J().twice() + 1.0) / (s.ground_J().twice() + 1.0), 1e-12);
    }
  }
}

TEST(DipoleOracle, SodiumFullTableMatchesUncoupledExpansion) {
  const auto& na = sodium();
  int nonzero = 0;
  for (const Level& e : na.excited_sublevels())
    for (const Level& g : na.ground_sublevels())
      for (int q = -1; q <= 1; ++q) {
        const double lib = dipole_matrix_element(na, Sublevel::excited(e), Sublevel::ground(g), q);
        ASSERT_NEAR(lib, oracle_element(na, e, g, q), 1e-12) << e.key() << ' ' << g.key() << ' ' << q;
        if (lib != 0.0) ++nonzero;
      }
  EXPECT_GT(nonzero, 20);
}

TEST(DipoleOracle, SecondSpeciesAndReducedDipoleScale) {
  auto p = rb85_params();
  p.reduced_dipole = 2.5;
  const AtomSpec rb(p);
  for (const Level& e : rb.excited_sublevels())
    for (const Level& g : rb.ground_sublevels())
      for (int q = -1; q <= 1; ++q) ASSERT_NEAR(rb.dipole(e, g, q), oracle_element(rb, e, g, q), 1e-12);
}

TEST(Detuning, Arithmetic) {
  const auto& na = sodium();
  EXPECT_EQ(detuning(na, na.resonance(), F(1)), 0.0);
  // omega_L itself is only representable to half a rad/s.
  EXPECT_NEAR(detuning(na, na.resonance() - kTwoPi * 1e9, F(1)), -kTwoPi * 1e9, 0.5);
  const double wl = na.resonance() - kTwoPi * 5e9;
  EXPECT_EQ(detuning(na, wl, F(2)) - detuning(na, wl, F(1)), na.splitting(F(2)));
  EXPECT_THROW(detuning(na, wl, F(3)), InputDomainError);
}

TEST(Validity, Examples) {
  const auto& na = sodium();
  const double gamma = na.linewidth();
  // Both ratios at least 2000.
  const auto far = validity_check(na, na.resonance() - na.splitting(F(2)) - 2000.0 * gamma);
  EXPECT_TRUE(far.pass);

  const auto res = validity_check(na, na.resonance());
  EXPECT_FALSE(res.pass);
  EXPECT_EQ(res.ratio.at(F(1)), 0.0);

  const auto edge = validity_check(na, na.resonance() - na.splitting(F(2)) - 99.0 * gamma);
  EXPECT_NEAR(edge.ratio.at(F(2)), 99.0, 1e-6);
  EXPECT_FALSE(edge.pass);
}
