#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ramanpair/pair_state.hpp"

namespace ramanpair {

/// Thin SVD A = U diag(s) V^H of a small dense complex matrix.
struct SvdResult {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> singular_values;       // descending, min(rows, cols) of them
  std::vector<std::vector<Complex>> left;    // column vectors of U, length rows
  std::vector<std::vector<Complex>> right;   // column vectors of V, length cols
};

/// One-sided (Hestenes) Jacobi SVD of a row-major rows x cols matrix.
/// Deterministic: fixed cyclic sweep order, no pivoting randomness.
SvdResult jacobi_svd(std::size_t rows, std::size_t cols, std::span<const Complex> matrix);

struct SchmidtResult {
  std::vector<double> coefficients;               // descending, > 0
  std::vector<std::vector<Complex>> photon_basis;  // over state.channels
  std::vector<std::vector<Complex>> atom_basis;    // over state.atom_levels
};

/// psi = sum_i c_i |p_i>|a_i>. Coefficients at or below 1e-13 are dropped.
SchmidtResult schmidt(const PairState& state);

/// -sum p log2 p over p = c^2, with 0 log 0 = 0.
double entropy_bits(std::span<const double> schmidt_coefficients);

/// Entanglement entropy in bits.
double entanglement_entropy(const PairState& state);

/// Rows / columns carrying any amplitude above tol.
struct Support {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
};
Support support(const PairState& state, double tol = 1e-12);

/// 2 |det M| over the (at most) 2x2 support. InputDomainError if larger.
double concurrence_2x2(const PairState& state);

/// sqrt(2 (1 - sum c_i^4)); equals concurrence_2x2 on 2x2 support and is
/// defined for any qubit-qudit pure state.
double generalized_concurrence(const PairState& state);

/// Second Schmidt coefficient below tol.
bool is_factorized(const PairState& state, double tol = 1e-10);

/// |<S_k1|S_k2>| for the two polarization branches along k.
/// EmptyStateError if either branch is non-normalizable.
double conditional_overlap(const AtomSpec& spec, const PumpConfig& pump, const CondensateSpinor& condensate,
                           const Vec3& k, const PairOptions& options = {});

}  // namespace ramanpair
