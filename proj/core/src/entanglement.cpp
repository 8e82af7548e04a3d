#include "ramanpair/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <numeric>

#include "ramanpair/errors.hpp"

namespace ramanpair {

namespace {

constexpr double kDropCoefficient = 1e-13;
constexpr double kTieTol = 1e-12;
constexpr int kMaxSweeps = 100;

double column_norm2(const std::vector<Complex>& col) {
  double s = 0.0;
  for (const Complex& z : col) s += std::norm(z);
  return s;
}

std::size_t first_significant(const std::vector<Complex>& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > kTieTol) return i;
  }
  return v.size();
}

}  // namespace

SvdResult jacobi_svd(std::size_t rows, std::size_t cols, std::span<const Complex> matrix) {
  if (matrix.size() != rows * cols) throw InputDomainError("matrix size does not match rows x cols");
  // Columns of A and the accumulated right rotation V.
  std::vector<std::vector<Complex>> a(cols, std::vector<Complex>(rows));
  std::vector<std::vector<Complex>> v(cols, std::vector<Complex>(cols));
  for (std::size_t c = 0; c < cols; ++c) {
    for (std::size_t r = 0; r < rows; ++r) a[c][r] = matrix[r * cols + c];
    v[c][c] = 1.0;
  }

  const double eps = std::numeric_limits<double>::epsilon();
  double frobenius2 = 0.0;
  for (const auto& col : a) frobenius2 += column_norm2(col);
  // Columns this small are rounding residue of a rank-deficient matrix.
  const double noise2 = eps * eps * frobenius2;
  bool converged = false;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    converged = true;
    for (std::size_t p = 0; p + 1 < cols; ++p) {
      for (std::size_t q = p + 1; q < cols; ++q) {
        const double alpha = column_norm2(a[p]);
        const double beta = column_norm2(a[q]);
        Complex gamma{};
        for (std::size_t r = 0; r < rows; ++r) gamma += std::conj(a[p][r]) * a[q][r];
        const double g = std::abs(gamma);
        if (g == 0.0 || g <= eps * std::sqrt(alpha * beta) || std::min(alpha, beta) <= noise2) continue;
        converged = false;
        // Rotate (a_p, e^{-i phi} a_q) as a real pair so that <a_p, a_q> = 0.
        const Complex phase = std::conj(gamma) / g;
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double cs = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = cs * t;
        for (std::size_t r = 0; r < rows; ++r) {
          const Complex xp = a[p][r], xq = a[q][r] * phase;
          a[p][r] = cs * xp - sn * xq;
          a[q][r] = sn * xp + cs * xq;
        }
        for (std::size_t r = 0; r < cols; ++r) {
          const Complex xp = v[p][r], xq = v[q][r] * phase;
          v[p][r] = cs * xp - sn * xq;
          v[q][r] = sn * xp + cs * xq;
        }
      }
    }
  }
  if (!converged) throw NumericalError("Jacobi SVD did not converge");

  std::vector<std::size_t> order(cols);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> sigma(cols);
  for (std::size_t c = 0; c < cols; ++c) sigma[c] = std::sqrt(column_norm2(a[c]));
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

  SvdResult out;
  out.rows = rows;
  out.cols = cols;
  const std::size_t k = std::min(rows, cols);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t c = order[i];
    out.singular_values.push_back(sigma[c]);
    std::vector<Complex> u(rows);
    if (sigma[c] > 0.0) {
      for (std::size_t r = 0; r < rows; ++r) u[r] = a[c][r] / sigma[c];
    }
    out.left.push_back(std::move(u));
    out.right.push_back(v[c]);
  }
  return out;
}

SchmidtResult schmidt(const PairState& state) {
  const SvdResult svd = jacobi_svd(state.rows(), state.cols(), state.amplitudes);

  struct Term {
    double c;
    std::vector<Complex> photon;
    std::vector<Complex> atom;
  };
  std::vector<Term> terms;
  for (std::size_t i = 0; i < svd.singular_values.size(); ++i) {
    if (svd.singular_values[i] <= kDropCoefficient) continue;
    Term t{svd.singular_values[i], svd.left[i], {}};
    // psi_rc = sum_i s_i U_ri conj(V_ci): atom vector is conj(V column).
    t.atom.reserve(svd.right[i].size());
    for (const Complex& z : svd.right[i]) t.atom.push_back(std::conj(z));
    const std::size_t lead = first_significant(t.photon);
    if (lead < t.photon.size()) {
      const Complex ph = std::conj(t.photon[lead]) / std::abs(t.photon[lead]);
      for (Complex& z : t.photon) z *= ph;
      for (Complex& z : t.atom) z /= ph;
    }
    terms.push_back(std::move(t));
  }
  std::stable_sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) {
    if (std::abs(x.c - y.c) > kTieTol) return x.c > y.c;
    return first_significant(x.photon) < first_significant(y.photon);
  });

  SchmidtResult out;
  for (Term& t : terms) {
    out.coefficients.push_back(t.c);
    out.photon_basis.push_back(std::move(t.photon));
    out.atom_basis.push_back(std::move(t.atom));
  }
  return out;
}

double entropy_bits(std::span<const double> schmidt_coefficients) {
  std::vector<double> p;
  double total = 0.0;
  for (double c : schmidt_coefficients) {
    p.push_back(c * c);
    total += c * c;
  }
  if (!(total > 0.0)) return 0.0;
  double h = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double pi = p[i] / total;
    if (pi <= 0.0) continue;
    if (pi > 0.5) {
      // log(p_i) from the small remainder, so near-product states keep their tiny entropy.
      double rest = 0.0;
      for (std::size_t j = 0; j < p.size(); ++j)
        if (j != i) rest += p[j] / total;
      h -= pi * std::log1p(-rest) / std::log(2.0);
    } else {
      h -= pi * std::log2(pi);
    }
  }
  return std::max(0.0, h);
}

double entanglement_entropy(const PairState& state) { return entropy_bits(schmidt(state).coefficients); }

Support support(const PairState& state, double tol) {
  Support s;
  for (std::size_t r = 0; r < state.rows(); ++r) {
    for (std::size_t c = 0; c < state.cols(); ++c) {
      if (std::abs(state.at(r, c)) > tol) {
        s.rows.push_back(r);
        break;
      }
    }
  }
  for (std::size_t c = 0; c < state.cols(); ++c) {
    for (std::size_t r = 0; r < state.rows(); ++r) {
      if (std::abs(state.at(r, c)) > tol) {
        s.cols.push_back(c);
        break;
      }
    }
  }
  return s;
}

double concurrence_2x2(const PairState& state) {
  const Support s = support(state);
  if (s.rows.size() > 2 || s.cols.size() > 2) {
    throw InputDomainError("concurrence_2x2 needs support on at most 2 photon and 2 atom labels, got " +
                           std::to_string(s.rows.size()) + " x " + std::to_string(s.cols.size()));
  }
  if (s.rows.size() < 2 || s.cols.size() < 2) return 0.0;
  const double n = state.norm();
  const Complex a = state.at(s.rows[0], s.cols[0]), b = state.at(s.rows[0], s.cols[1]);
  const Complex c = state.at(s.rows[1], s.cols[0]), d = state.at(s.rows[1], s.cols[1]);
  return 2.0 * std::abs(a * d - b * c) / (n * n);
}

double generalized_concurrence(const PairState& state) {
  const SchmidtResult r = schmidt(state);
  double p4 = 0.0;
  for (double c : r.coefficients) p4 += c * c * c * c;
  return std::sqrt(std::max(0.0, 2.0 * (1.0 - p4)));
}

bool is_factorized(const PairState& state, double tol) {
  const SchmidtResult r = schmidt(state);
  return r.coefficients.size() < 2 || r.coefficients[1] < tol;
}

double conditional_overlap(const AtomSpec& spec, const PumpConfig& pump, const CondensateSpinor& condensate,
                           const Vec3& k, const PairOptions& options) {
  const ScatteredSpinor s1 = scattered_spinor(spec, pump, condensate, k, 1, options);
  const ScatteredSpinor s2 = scattered_spinor(spec, pump, condensate, k, 2, options);
  if (s1.empty() || s2.empty()) {
    throw EmptyStateError("conditional overlap is undefined: a polarization branch has zero amplitude");
  }
  Complex ov{};
  for (const auto& [level, a] : s1.amplitudes) {
    const auto it = s2.amplitudes.find(level);
    if (it != s2.amplitudes.end()) ov += std::conj(a) * it->second;
  }
  return std::min(1.0, std::abs(ov));
}

}  // namespace ramanpair
