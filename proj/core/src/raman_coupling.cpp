#include "ramanpair/raman_coupling.hpp"

#include <cmath>
#include <string>

#include "ramanpair/errors.hpp"

namespace ramanpair {

namespace {

constexpr double kUnitTol = 1e-12;
constexpr double kPoleCone = 1e-9;

void require_unit(const Vec3& k) {
  const double n = norm(k);
  if (!std::isfinite(n) || std::abs(n - 1.0) > kUnitTol) {
    throw InputDomainError("direction must be a unit vector (|k| = " + std::to_string(n) + ")");
  }
}

// Projections (e_q* . eps) for q = -1, 0, +1.
std::array<Complex, 3> spherical_projections(const CVec3& eps) {
  const auto& basis = spherical_basis_vectors();
  return {bilinear(conj(basis[0]), eps), bilinear(conj(basis[1]), eps), bilinear(conj(basis[2]), eps)};
}

Complex coupling_from_projections(const AtomSpec& spec, const std::array<Complex, 3>& proj, double field,
                                  const Level& excited, const Level& ground) {
  Complex g{};
  for (int q = -1; q <= 1; ++q) {
    const Complex p = proj[static_cast<std::size_t>(q + 1)];
    if (p == Complex{}) continue;
    const double d = spec.dipole(excited, ground, q);
    if (d != 0.0) g += p * d;
  }
  return field * g;
}

}  // namespace

void PhotonMode::validate() const {
  require_unit(direction);
  if (lambda != 1 && lambda != 2) throw InputDomainError("polarization index lambda must be 1 or 2");
  if (std::abs(norm(polarization) - 1.0) > kUnitTol) throw InputDomainError("polarization must be unit-norm");
  if (std::abs(inner(polarization, direction)) > kUnitTol) {
    throw InputDomainError("polarization must be transverse to the propagation direction");
  }
  if (!std::isfinite(field_per_photon)) throw InputDomainError("field_per_photon must be finite");
}

std::pair<CVec3, CVec3> polarization_basis(const Vec3& k) {
  require_unit(k);
  const double rho = std::hypot(k[0], k[1]);
  if (rho < kPoleCone) return {spherical_basis_vector(+1), spherical_basis_vector(-1)};
  const double cos_t = k[2], sin_t = rho;
  const double cos_p = k[0] / rho, sin_p = k[1] / rho;
  const Vec3 theta_hat{cos_t * cos_p, cos_t * sin_p, -sin_t};
  const Vec3 phi_hat{-sin_p, cos_p, 0.0};
  return {to_complex(theta_hat), to_complex(phi_hat)};
}

PhotonMode photon_mode(const Vec3& k, int lambda) {
  if (lambda != 1 && lambda != 2) throw InputDomainError("polarization index lambda must be 1 or 2");
  auto [e1, e2] = polarization_basis(k);
  PhotonMode mode;
  mode.direction = k;
  mode.lambda = lambda;
  mode.polarization = lambda == 1 ? e1 : e2;
  return mode;
}

Complex single_photon_coupling(const AtomSpec& spec, const PhotonMode& mode, const Sublevel& excited,
                               const Sublevel& ground) {
  if (excited.manifold != Manifold::excited || ground.manifold != Manifold::ground) {
    throw InputDomainError("single_photon_coupling expects (excited, ground) sublevels");
  }
  return coupling_from_projections(spec, spherical_projections(mode.polarization), mode.field_per_photon,
                                   excited.level(), ground.level());
}

Complex effective_coupling(const AtomSpec& spec, double omega_L, const PhotonMode& out_mode,
                           const PhotonMode& in_mode, const Level& final_level, const Level& initial_level) {
  if (!spec.has_ground_level(final_level.F) || !spec.has_ground_level(initial_level.F)) {
    throw InputDomainError("effective_coupling expects ground-manifold levels");
  }
  const double delta = detuning(spec, omega_L, initial_level.F);
  if (delta == 0.0) {
    throw SingularDetuningError("detuning Delta(F'=" + initial_level.F.str() +
                                ") is zero; adiabatic elimination needs the far off-resonant regime");
  }
  const auto out_proj = spherical_projections(out_mode.polarization);
  const auto in_proj = spherical_projections(in_mode.polarization);
  Complex sum{};
  for (const Level& e : spec.excited_sublevels()) {
    const Complex g_in = coupling_from_projections(spec, in_proj, in_mode.field_per_photon, e, initial_level);
    if (g_in == Complex{}) continue;
    const Complex g_out = coupling_from_projections(spec, out_proj, out_mode.field_per_photon, e, final_level);
    sum += std::conj(g_out) * g_in;
  }
  return sum / delta;
}

CouplingTensor single_photon_tensor(const AtomSpec& spec, const PhotonMode& mode) {
  CouplingTensor t;
  const auto proj = spherical_projections(mode.polarization);
  for (const Level& e : spec.excited_sublevels()) {
    for (const Level& g : spec.ground_sublevels()) {
      const Complex v = coupling_from_projections(spec, proj, mode.field_per_photon, e, g);
      if (v != Complex{}) t.entries.emplace(std::make_pair(e, g), v);
    }
  }
  return t;
}

CouplingTensor effective_coupling_tensor(const AtomSpec& spec, double omega_L, const PhotonMode& out_mode,
                                         const PhotonMode& in_mode) {
  const CouplingTensor g_out = single_photon_tensor(spec, out_mode);
  const CouplingTensor g_in = single_photon_tensor(spec, in_mode);
  CouplingTensor t;
  for (const Level& initial : spec.ground_sublevels()) {
    const double delta = detuning(spec, omega_L, initial.F);
    if (delta == 0.0) {
      throw SingularDetuningError("detuning Delta(F'=" + initial.F.str() +
                                  ") is zero; adiabatic elimination needs the far off-resonant regime");
    }
    for (const Level& final_level : spec.ground_sublevels()) {
      Complex sum{};
      for (const Level& e : spec.excited_sublevels()) {
        const Complex gi = g_in.at(e, initial);
        if (gi == Complex{}) continue;
        sum += std::conj(g_out.at(e, final_level)) * gi;
      }
      if (sum != Complex{}) t.entries.emplace(std::make_pair(final_level, initial), sum / delta);
    }
  }
  return t;
}

}  // namespace ramanpair
