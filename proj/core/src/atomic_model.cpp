#include "ramanpair/atomic_model.hpp"

#include <algorithm>
#include <cmath>

#include "ramanpair/angular_momentum.hpp"
#include "ramanpair/errors.hpp"

namespace ramanpair {

std::string Level::key() const { return std::to_string(F.twice()) + ":" + std::to_string(m.twice()); }

Level Level::parse_key(const std::string& key) {
  const auto colon = key.find(':');
  if (colon == std::string::npos) throw InputDomainError("level key must be '2F:2m', got '" + key + "'");
  try {
    std::size_t used_f = 0, used_m = 0;
    const std::string f = key.substr(0, colon), m = key.substr(colon + 1);
    const int tf = std::stoi(f, &used_f);
    const int tm = std::stoi(m, &used_m);
    if (used_f != f.size() || used_m != m.size()) throw std::invalid_argument(key);
    const Level l{HalfInt::from_twice(tf), HalfInt::from_twice(tm)};
    if (!is_projection_of(l.m, l.F)) throw InputDomainError("level key '" + key + "' has |m| > F or bad parity");
    return l;
  } catch (const std::logic_error&) {
    throw InputDomainError("level key must be '2F:2m', got '" + key + "'");
  }
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw InputDomainError("invalid atom spec: " + what);
}

double compute_dipole(const AtomSpec& spec, HalfInt F, HalfInt m, HalfInt Fp, HalfInt mp, int q) {
  const HalfInt one = HalfInt::integer(1);
  const HalfInt hq = HalfInt::integer(q);
  if ((mp + hq) != m) return 0.0;
  const CoupledValue cg = clebsch_gordan(Fp, mp, one, hq, F, m);
  if (cg.is_zero()) return 0.0;
  const HalfInt I = spec.nuclear_spin(), Jg = spec.ground_J(), Je = spec.excited_J();
  const CoupledValue six = wigner_6j(I, Jg, Fp, one, F, Je);
  if (six.is_zero()) return 0.0;
  // -(-1)^(-I-J'-F); the exponent is integral, checked at construction.
  const int exponent = -(I + Jg + F).twice() / 2;
  const double phase = (exponent % 2 == 0) ? -1.0 : 1.0;
  return phase * std::sqrt(double((Fp.twice() + 1) * (Je.twice() + 1))) * spec.reduced_dipole() * cg.value *
         six.value;
}

}  // namespace

AtomSpec::AtomSpec(Params params) : p_(std::move(params)) {
  const HalfInt I = p_.nuclear_spin, Jg = p_.ground_J, Je = p_.excited_J;
  require(I.twice() >= 0 && Jg.twice() >= 0 && Je.twice() >= 0, "angular momenta must be non-negative");
  require(std::abs(Je.twice() - Jg.twice()) <= 2 && (Je.twice() - Jg.twice()) % 2 == 0 &&
              Je.twice() + Jg.twice() >= 2,
          "J' -> J is not an electric-dipole transition");
  require(p_.resonance > 0.0 && std::isfinite(p_.resonance), "resonance must be positive");
  require(p_.linewidth > 0.0 && std::isfinite(p_.linewidth), "linewidth must be positive");
  require(p_.mass > 0.0 && std::isfinite(p_.mass), "mass must be positive");
  require(std::isfinite(p_.reduced_dipole) && p_.reduced_dipole != 0.0, "reduced dipole must be finite and nonzero");

  ground_F_ = coupled_range(I, Jg);
  excited_F_ = coupled_range(I, Je);

  require(p_.ground_splittings.size() == ground_F_.size(),
          "ground_splittings must list exactly the ground levels F' = |I-J'| .. I+J'");
  for (HalfInt F : ground_F_) {
    const auto it = p_.ground_splittings.find(F);
    require(it != p_.ground_splittings.end(), "missing splitting for F' = " + F.str());
    require(std::isfinite(it->second) && it->second >= 0.0, "splitting for F' = " + F.str() + " must be >= 0");
  }
  require(p_.ground_splittings.at(ground_F_.front()) == 0.0, "lowest ground level must have zero splitting");

  for (HalfInt F : excited_F_) {
    require(((I + Jg + F).twice()) % 2 == 0, "phase exponent -I-J'-F is not an integer");
  }

  for (HalfInt F : ground_F_)
    for (HalfInt m : projections(F)) ground_sub_.push_back({F, m});
  for (HalfInt F : excited_F_)
    for (HalfInt m : projections(F)) excited_sub_.push_back({F, m});

  for (const Level& e : excited_sub_) {
    for (const Level& g : ground_sub_) {
      std::array<double, 3> row{};
      bool any = false;
      for (int q = -1; q <= 1; ++q) {
        row[q + 1] = compute_dipole(*this, e.F, e.m, g.F, g.m, q);
        any = any || row[q + 1] != 0.0;
      }
      if (any) dipoles_.emplace(std::make_pair(e, g), row);
    }
  }
}

AtomSpec AtomSpec::sodium() {
  Params p;
  p.name = "sodium-23 D2";
  p.nuclear_spin = HalfInt::from_twice(3);
  p.ground_J = HalfInt::from_twice(1);
  p.excited_J = HalfInt::from_twice(3);
  // Ground hyperfine splitting is an external constant (~1.772 GHz).
  p.ground_splittings = {{HalfInt::integer(1), 0.0}, {HalfInt::integer(2), kTwoPi * 1.772e9}};
  p.resonance = kTwoPi * 508.8487162e12;
  p.linewidth = kTwoPi * 9.7946e6;
  p.mass = 3.8175458e-26;
  p.reduced_dipole = 1.0;
  return AtomSpec(std::move(p));
}

bool AtomSpec::has_ground_level(HalfInt F) const {
  return std::find(ground_F_.begin(), ground_F_.end(), F) != ground_F_.end();
}

bool AtomSpec::has_excited_level(HalfInt F) const {
  return std::find(excited_F_.begin(), excited_F_.end(), F) != excited_F_.end();
}

double AtomSpec::splitting(HalfInt ground_F) const {
  const auto it = p_.ground_splittings.find(ground_F);
  if (it == p_.ground_splittings.end()) {
    throw InputDomainError("F' = " + ground_F.str() + " is not a ground level of " + p_.name);
  }
  return it->second;
}

double AtomSpec::dipole(const Level& excited, const Level& ground, int q) const {
  if (q < -1 || q > 1) return 0.0;
  const auto it = dipoles_.find(std::make_pair(excited, ground));
  return it == dipoles_.end() ? 0.0 : it->second[q + 1];
}

const std::array<CVec3, 3>& spherical_basis_vectors() {
  static const std::array<CVec3, 3> basis = [] {
    const double r = 1.0 / std::sqrt(2.0);
    std::array<CVec3, 3> b{};
    b[0] = {Complex(r, 0.0), Complex(0.0, -r), Complex(0.0, 0.0)};    // q = -1
    b[1] = {Complex(0.0, 0.0), Complex(0.0, 0.0), Complex(1.0, 0.0)};  // q = 0
    b[2] = {Complex(-r, 0.0), Complex(0.0, -r), Complex(0.0, 0.0)};   // q = +1
    return b;
  }();
  return basis;
}

const CVec3& spherical_basis_vector(int q) {
  if (q < -1 || q > 1) throw InputDomainError("spherical index q must be -1, 0 or +1");
  return spherical_basis_vectors()[static_cast<std::size_t>(q + 1)];
}

double dipole_matrix_element(const AtomSpec& spec, const Sublevel& excited, const Sublevel& ground, int q) {
  if (excited.manifold != Manifold::excited || ground.manifold != Manifold::ground) {
    throw InputDomainError("dipole_matrix_element expects (excited, ground) sublevels");
  }
  if (q < -1 || q > 1) throw InputDomainError("spherical index q must be -1, 0 or +1");
  if (!spec.has_excited_level(excited.F) || !is_projection_of(excited.m, excited.F)) {
    throw InputDomainError("invalid excited sublevel F=" + excited.F.str() + " m=" + excited.m.str());
  }
  if (!spec.has_ground_level(ground.F) || !is_projection_of(ground.m, ground.F)) {
    throw InputDomainError("invalid ground sublevel F'=" + ground.F.str() + " m'=" + ground.m.str());
  }
  return spec.dipole(excited.level(), ground.level(), q);
}

double detuning(const AtomSpec& spec, double omega_L, HalfInt ground_F) {
  return omega_L - spec.resonance() + spec.splitting(ground_F);
}

ValidityReport validity_check(const AtomSpec& spec, double omega_L, double threshold) {
  ValidityReport report;
  report.threshold = threshold;
  report.pass = true;
  for (HalfInt F : spec.ground_levels()) {
    const double ratio = std::abs(detuning(spec, omega_L, F)) / spec.linewidth();
    report.ratio[F] = ratio;
    if (!(ratio > threshold)) report.pass = false;
  }
  return report;
}

}  // namespace ramanpair
