#include "ramanpair/bell.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <thread>

#include "ramanpair/entanglement.hpp"
#include "ramanpair/errors.hpp"

namespace ramanpair {

namespace {

constexpr std::size_t kVirtual = std::numeric_limits<std::size_t>::max();
constexpr int kGridSteps = 360;
constexpr std::uint64_t kBlockSize = 65536;

struct Plane {
  double c;
  double s;
};

// Coefficients of A(t) = cos(2t) Z + sin(2t) X.
Plane plane(double t) { return {std::cos(2.0 * t), std::sin(2.0 * t)}; }

// T_kl = <sigma_k (x) sigma_l>, k, l in {Z, X}.
using Tensor = std::array<std::array<double, 2>, 2>;

Tensor correlation_tensor(const TwoQubitState& s) {
  const double q = 0.25 * kPi;
  return {{{correlation(s, 0.0, 0.0), correlation(s, 0.0, q)}, {correlation(s, q, 0.0), correlation(s, q, q)}}};
}

double bilinear_form(const Tensor& T, Plane x, Plane y) {
  return x.c * (T[0][0] * y.c + T[0][1] * y.s) + x.s * (T[1][0] * y.c + T[1][1] * y.s);
}

double wrap_angle(double t) {
  t = std::fmod(t, kPi);
  if (t < 0.0) t += kPi;
  if (t >= kPi) t -= kPi;
  return t;
}

// Maximizer of alpha cos(2t) + beta sin(2t).
double best_angle(double alpha, double beta, double current) {
  if (alpha == 0.0 && beta == 0.0) return current;
  return wrap_angle(0.5 * std::atan2(beta, alpha));
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

double unit_uniform(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

}  // namespace

TwoQubitState two_qubit_block(const PairState& state) {
  const Support s = support(state);
  if (s.rows.size() > 2 || s.cols.size() > 2) {
    throw InputDomainError("Bell analysis needs a state supported on 2 photon x 2 atom labels, got " +
                           std::to_string(s.rows.size()) + " x " + std::to_string(s.cols.size()) +
                           "; select one frequency channel with a spectral filter first");
  }
  if (s.rows.empty()) throw EmptyStateError("state has no amplitude");
  auto pad = [](std::vector<std::size_t> idx, std::size_t n) {
    for (std::size_t i = 0; i < n && idx.size() < 2; ++i) {
      if (std::find(idx.begin(), idx.end(), i) == idx.end()) idx.push_back(i);
    }
    while (idx.size() < 2) idx.push_back(kVirtual);
    std::sort(idx.begin(), idx.end());
    return idx;
  };
  const auto rows = pad(s.rows, state.rows());
  const auto cols = pad(s.cols, state.cols());

  TwoQubitState out;
  out.photon_rows = {rows[0], rows[1]};
  out.atom_cols = {cols[0], cols[1]};
  double n2 = 0.0;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      const bool real = rows[i] != kVirtual && cols[j] != kVirtual;
      const Complex a = real ? state.at(rows[i], cols[j]) : Complex{};
      out.amplitudes[2 * i + j] = a;
      n2 += std::norm(a);
    }
  }
  const double n = std::sqrt(n2);
  for (Complex& a : out.amplitudes) a /= n;
  return out;
}

std::array<double, 4> joint_probabilities(const TwoQubitState& state, double a, double b) {
  const std::array<std::array<double, 2>, 2> u = {{{std::cos(a), std::sin(a)}, {-std::sin(a), std::cos(a)}}};
  const std::array<std::array<double, 2>, 2> v = {{{std::cos(b), std::sin(b)}, {-std::sin(b), std::cos(b)}}};
  std::array<double, 4> p{};
  for (std::size_t x = 0; x < 2; ++x) {
    for (std::size_t y = 0; y < 2; ++y) {
      Complex amp{};
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) amp += u[x][i] * v[y][j] * state.amplitudes[2 * i + j];
      p[2 * x + y] = std::norm(amp);
    }
  }
  return p;
}

double correlation(const TwoQubitState& state, double a, double b) {
  const auto p = joint_probabilities(state, a, b);
  return std::clamp(p[0] - p[1] - p[2] + p[3], -1.0, 1.0);
}

double correlation(const PairState& state, double a, double b) { return correlation(two_qubit_block(state), a, b); }

double chsh_combination(const std::array<double, 4>& e) { return e[0] - e[1] + e[2] + e[3]; }

double chsh(const TwoQubitState& state, const ChshSettings& s) {
  return chsh_combination({correlation(state, s.a, s.b), correlation(state, s.a, s.b_prime),
                           correlation(state, s.a_prime, s.b), correlation(state, s.a_prime, s.b_prime)});
}

double chsh(const PairState& state, const ChshSettings& settings) { return chsh(two_qubit_block(state), settings); }

ChshOptimum optimize_chsh(const PairState& state) {
  const TwoQubitState block = two_qubit_block(state);
  const Tensor T = correlation_tensor(block);
  const double step = kPi / kGridSteps;

  std::array<Plane, kGridSteps> grid{};
  for (int k = 0; k < kGridSteps; ++k) grid[static_cast<std::size_t>(k)] = plane(k * step);

  // S separates into f(a) + g(a') for fixed (b, b'), so maximizing a and a'
  // independently on the grid is the exhaustive 4-D grid search.
  double best_S = -std::numeric_limits<double>::infinity();
  std::array<int, 4> best{0, 0, 0, 0};  // a, a', b, b'
  for (int ib = 0; ib < kGridSteps; ++ib) {
    const Plane rb = grid[static_cast<std::size_t>(ib)];
    for (int ibp = 0; ibp < kGridSteps; ++ibp) {
      const Plane rbp = grid[static_cast<std::size_t>(ibp)];
      const Plane diff{rb.c - rbp.c, rb.s - rbp.s};
      const Plane sum{rb.c + rbp.c, rb.s + rbp.s};
      const double w1c = T[0][0] * diff.c + T[0][1] * diff.s, w1s = T[1][0] * diff.c + T[1][1] * diff.s;
      const double w2c = T[0][0] * sum.c + T[0][1] * sum.s, w2s = T[1][0] * sum.c + T[1][1] * sum.s;
      double fa = -std::numeric_limits<double>::infinity(), ga = fa;
      int ia = 0, iap = 0;
      for (int k = 0; k < kGridSteps; ++k) {
        const Plane r = grid[static_cast<std::size_t>(k)];
        const double f = r.c * w1c + r.s * w1s;
        const double g = r.c * w2c + r.s * w2s;
        if (f > fa) fa = f, ia = k;
        if (g > ga) ga = g, iap = k;
      }
      const double S = fa + ga;
      const std::array<int, 4> cand{ia, iap, ib, ibp};
      if (S > best_S || (S == best_S && cand < best)) {
        best_S = S;
        best = cand;
      }
    }
  }

  ChshSettings s{best[0] * step, best[1] * step, best[2] * step, best[3] * step};
  auto value = [&](const ChshSettings& x) {
    const Plane a = plane(x.a), ap = plane(x.a_prime), b = plane(x.b), bp = plane(x.b_prime);
    return bilinear_form(T, a, b) - bilinear_form(T, a, bp) + bilinear_form(T, ap, b) + bilinear_form(T, ap, bp);
  };
  double current = value(s);
  for (int iter = 0; iter < 10000; ++iter) {
    const double before = current;
    {
      const Plane b = plane(s.b), bp = plane(s.b_prime);
      const double dc = b.c - bp.c, ds = b.s - bp.s;
      s.a = best_angle(T[0][0] * dc + T[0][1] * ds, T[1][0] * dc + T[1][1] * ds, s.a);
      const double sc = b.c + bp.c, ss = b.s + bp.s;
      s.a_prime = best_angle(T[0][0] * sc + T[0][1] * ss, T[1][0] * sc + T[1][1] * ss, s.a_prime);
    }
    {
      const Plane a = plane(s.a), ap = plane(s.a_prime);
      const double pc = a.c + ap.c, ps = a.s + ap.s;
      s.b = best_angle(T[0][0] * pc + T[1][0] * ps, T[0][1] * pc + T[1][1] * ps, s.b);
      const double mc = ap.c - a.c, ms = ap.s - a.s;
      s.b_prime = best_angle(T[0][0] * mc + T[1][0] * ms, T[0][1] * mc + T[1][1] * ms, s.b_prime);
    }
    const double after = value(s);
    // Coordinate maximization never decreases S; keep the grid point if rounding says otherwise.
    if (after < before) break;
    current = after;
    if (after - before <= 1e-10) break;
  }
  return {s, chsh(block, s)};
}

SampleResult sample_events(const PairState& state, const ChshSettings& settings, std::uint64_t n,
                           std::uint64_t seed, unsigned threads) {
  if (n == 0) throw InputDomainError("sample_events needs at least one trial");
  const TwoQubitState block = two_qubit_block(state);
  const std::array<double, 2> photon_angles{settings.a, settings.a_prime};
  const std::array<double, 2> atom_angles{settings.b, settings.b_prime};
  std::array<std::array<double, 4>, 4> cumulative{};
  for (int s = 0; s < 4; ++s) {
    const auto p = joint_probabilities(block, photon_angles[static_cast<std::size_t>(s / 2)],
                                       atom_angles[static_cast<std::size_t>(s % 2)]);
    double acc = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
      acc += p[i];
      cumulative[static_cast<std::size_t>(s)][i] = acc;
    }
  }

  SampleResult out;
  out.seed = seed;
  out.events.resize(n);
  const std::uint64_t blocks = (n + kBlockSize - 1) / kBlockSize;

  auto run_block = [&](std::uint64_t blk) {
    std::mt19937_64 engine(splitmix64(seed ^ splitmix64(blk)));
    const std::uint64_t begin = blk * kBlockSize, end = std::min(n, begin + kBlockSize);
    for (std::uint64_t t = begin; t < end; ++t) {
      const std::uint64_t pick = engine();
      const int s = static_cast<int>(pick >> 62);
      const double u = unit_uniform(engine());
      const auto& cum = cumulative[static_cast<std::size_t>(s)];
      std::size_t outcome = 3;
      for (std::size_t i = 0; i < 3; ++i) {
        if (u < cum[i]) {
          outcome = i;
          break;
        }
      }
      EventRecord& e = out.events[t];
      e.trial = t;
      e.setting_a = s / 2;
      e.setting_b = s % 2;
      e.photon_outcome = outcome < 2 ? 1 : -1;
      e.atom_outcome = outcome % 2 == 0 ? 1 : -1;
    }
  };

  unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, blocks));
  if (workers <= 1) {
    for (std::uint64_t b = 0; b < blocks; ++b) run_block(b);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::uint64_t b = w; b < blocks; b += workers) run_block(b);
      });
    }
    for (auto& th : pool) th.join();
  }

  std::array<std::int64_t, 4> products{};
  for (const EventRecord& e : out.events) {
    const std::size_t s = static_cast<std::size_t>(2 * e.setting_a + e.setting_b);
    ++out.counts[s];
    products[s] += e.photon_outcome * e.atom_outcome;
  }
  double variance = 0.0;
  for (std::size_t s = 0; s < 4; ++s) {
    if (out.counts[s] == 0) {
      out.correlations[s] = 0.0;
      variance += 1.0;
      continue;
    }
    const double cnt = static_cast<double>(out.counts[s]);
    const double E = static_cast<double>(products[s]) / cnt;
    out.correlations[s] = E;
    variance += (1.0 - E * E) / cnt;
  }
  out.S_estimate = chsh_combination(out.correlations);
  out.standard_error = std::sqrt(variance);
  return out;
}

}  // namespace ramanpair
