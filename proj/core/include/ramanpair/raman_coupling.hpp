#pragma once

#include <map>
#include <utility>

#include "ramanpair/atomic_model.hpp"

namespace ramanpair {

/// One photon mode: direction, polarization index and explicit polarization.
struct PhotonMode {
  Vec3 direction{0.0, 0.0, 1.0};
  int lambda = 1;
  CVec3 polarization{};
  double field_per_photon = 1.0;

  /// Unit direction, unit transverse polarization (1e-12); throws InputDomainError.
  void validate() const;
};

/// Orthonormal transverse pair for direction k. Off the z axis this is
/// (theta-hat, phi-hat); within sin(theta) < 1e-9 of +-z it is (e_{+1}, e_{-1}).
std::pair<CVec3, CVec3> polarization_basis(const Vec3& k);

/// Mode lambda (1 or 2) of polarization_basis(k).
PhotonMode photon_mode(const Vec3& k, int lambda);

/// g_{k lambda}(F m, F' m') = E_k sum_q (e_q* . e_{k lambda}) <F m| e r.e_q |F' m'>, hbar = 1 units.
Complex single_photon_coupling(const AtomSpec& spec, const PhotonMode& mode, const Sublevel& excited,
                               const Sublevel& ground);

/// Two-photon coupling that scatters in_mode into out_mode while taking the
/// ground state initial -> final:
///   G = sum_{F'' m''} conj(g_out(F''m'', final)) g_in(F''m'', initial) / Delta(F'_initial).
///
/// Throws SingularDetuningError if Delta of the initial level is zero.
Complex effective_coupling(const AtomSpec& spec, double omega_L, const PhotonMode& out_mode,
                           const PhotonMode& in_mode, const Level& final_level, const Level& initial_level);

/// Sparse (row, column) -> complex table; only nonzero entries are stored.
struct CouplingTensor {
  std::map<std::pair<Level, Level>, Complex> entries;

  Complex at(const Level& row, const Level& col) const {
    const auto it = entries.find({row, col});
    return it == entries.end() ? Complex{} : it->second;
  }
};

/// g for every (excited, ground) pair.
CouplingTensor single_photon_tensor(const AtomSpec& spec, const PhotonMode& mode);

/// G for every (final, initial) ground pair.
CouplingTensor effective_coupling_tensor(const AtomSpec& spec, double omega_L, const PhotonMode& out_mode,
                                         const PhotonMode& in_mode);

}  // namespace ramanpair
