#include "ramanpair/pair_state.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <string>

#include "ramanpair/errors.hpp"

namespace ramanpair {

namespace {

constexpr double kTol = 1e-12;
// Entries below this fraction of the summed term magnitudes are cancellation noise.
constexpr double kCancellation = 1e-13;

void require_unit(const Vec3& v, const char* what) {
  const double n = norm(v);
  if (!std::isfinite(n) || std::abs(n - 1.0) > kTol) {
    throw InputDomainError(std::string(what) + " must be a unit vector");
  }
}

void enforce_validity(const AtomSpec& spec, const PumpConfig& pump, const PairOptions& options) {
  if (options.validity != ValidityPolicy::enforce) return;
  const ValidityReport report = validity_check(spec, pump.omega_L, options.validity_threshold);
  if (report.pass) return;
  for (const auto& [F, ratio] : report.ratio) {
    if (!(ratio > report.threshold)) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "|Delta(F'=%s)|/Gamma = %.6g does not exceed %.6g", F.str().c_str(), ratio,
                    report.threshold);
      throw OffResonanceError(std::string("far off-resonant condition violated: ") + buf +
                              "; adiabatic elimination requires |Delta| >> Gamma");
    }
  }
}

struct RawBranch {
  std::map<Level, Complex> amplitudes;
  double norm = 0.0;
};

RawBranch raw_branch(const AtomSpec& spec, const PumpConfig& pump, const CondensateSpinor& condensate,
                     const PhotonMode& out_mode) {
  const PhotonMode in_mode = pump.mode();
  const CouplingTensor g_out = single_photon_tensor(spec, out_mode);
  const CouplingTensor g_in = single_photon_tensor(spec, in_mode);

  RawBranch branch;
  std::map<Level, double> scale;
  for (const auto& [initial, phi] : condensate.amplitudes()) {
    if (phi == Complex{}) continue;
    const double delta = detuning(spec, pump.omega_L, initial.F);
    if (delta == 0.0) {
      throw SingularDetuningError("detuning Delta(F'=" + initial.F.str() +
                                  ") is zero; adiabatic elimination needs the far off-resonant regime");
    }
    for (const Level& final_level : spec.ground_sublevels()) {
      Complex sum{};
      double mag = 0.0;
      for (const Level& e : spec.excited_sublevels()) {
        const Complex gi = g_in.at(e, initial);
        if (gi == Complex{}) continue;
        const Complex term = std::conj(g_out.at(e, final_level)) * gi;
        sum += term;
        mag += std::abs(term);
      }
      if (mag == 0.0) continue;
      branch.amplitudes[final_level] += sum / delta * phi;
      scale[final_level] += mag / std::abs(delta) * std::abs(phi);
    }
  }
  double total_scale = 0.0;
  for (const auto& [level, s] : scale) total_scale += s;
  for (auto it = branch.amplitudes.begin(); it != branch.amplitudes.end();) {
    if (std::abs(it->second) <= kCancellation * total_scale) {
      it = branch.amplitudes.erase(it);
    } else {
      ++it;
    }
  }
  double n2 = 0.0;
  for (const auto& [level, a] : branch.amplitudes) n2 += std::norm(a);
  branch.norm = std::sqrt(n2);
  return branch;
}

void check_inputs(const AtomSpec& spec, const PumpConfig& pump, const CondensateSpinor& condensate,
                  const Vec3& k, const PairOptions& options) {
  pump.validate();
  condensate.check_against(spec);
  require_unit(k, "detection direction");
  enforce_validity(spec, pump, options);
}

}  // namespace

void PumpConfig::validate() const {
  require_unit(direction, "pump direction");
  if (std::abs(norm(polarization) - 1.0) > kTol) throw InputDomainError("pump polarization must be unit-norm");
  if (std::abs(inner(polarization, direction)) > kTol) {
    throw InputDomainError("pump polarization must be transverse to the pump direction");
  }
  if (!(omega_L > 0.0) || !std::isfinite(omega_L)) throw InputDomainError("pump frequency must be positive");
  if (!std::isfinite(amplitude.real()) || !std::isfinite(amplitude.imag())) {
    throw InputDomainError("pump amplitude must be finite");
  }
  if (!(atom_number >= 1.0) || !std::isfinite(atom_number)) throw InputDomainError("atom_number must be >= 1");
}

PhotonMode PumpConfig::mode() const {
  PhotonMode m;
  m.direction = direction;
  m.lambda = 1;
  m.polarization = polarization;
  return m;
}

CondensateSpinor::CondensateSpinor(std::map<Level, Complex> amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.empty()) throw InputDomainError("condensate spinor has no amplitudes");
  double n2 = 0.0;
  for (const auto& [level, a] : amplitudes_) {
    if (!is_projection_of(level.m, level.F)) {
      throw InputDomainError("condensate level " + level.key() + " is not a valid |F m>");
    }
    if (level.F != amplitudes_.begin()->first.F) {
      throw InputDomainError("condensate spinor must occupy a single ground F'");
    }
    n2 += std::norm(a);
  }
  if (std::abs(n2 - 1.0) > kTol) throw InputDomainError("condensate spinor must be unit-norm");
}

void CondensateSpinor::check_against(const AtomSpec& spec) const {
  for (const auto& [level, a] : amplitudes_) {
    if (!spec.has_ground_level(level.F)) {
      throw InputDomainError("condensate level F'=" + level.F.str() + " is not a ground level of " + spec.name());
    }
  }
}

ScatteredSpinor scattered_spinor(const AtomSpec& spec, const PumpConfig& pump, const CondensateSpinor& condensate,
                                 const Vec3& k, int lambda, const PairOptions& options) {
  check_inputs(spec, pump, condensate, k, options);
  ScatteredSpinor out;
  out.mode = photon_mode(k, lambda);
  RawBranch branch = raw_branch(spec, pump, condensate, out.mode);
  if (branch.norm == 0.0) return out;
  out.normalization = branch.norm;
  for (auto& [level, a] : branch.amplitudes) out.amplitudes[level] = a / branch.norm;
  return out;
}

double photon_frequency(const AtomSpec& spec, const PumpConfig& pump, const Vec3& k, HalfInt F_final,
                        HalfInt F_initial) {
  require_unit(k, "detection direction");
  const double omega0 = pump.omega_L + spec.splitting(F_initial) - spec.splitting(F_final);
  const Vec3 K = pump.wavevector();
  const double recoil_coeff = kHbar / (2.0 * spec.mass());
  double omega = omega0;
  for (int iter = 0; iter < 100; ++iter) {
    const Vec3 q = K - (omega / kSpeedOfLight) * k;
    const double next = omega0 - recoil_coeff * dot(q, q);
    if (!(next > 0.0) || !std::isfinite(next)) throw NumericalError("photon frequency left the physical range");
    if (std::abs(next - omega) <= 1e-15 * std::abs(next)) return next;
    omega = next;
  }
  throw NumericalError("photon frequency fixed point did not converge in 100 iterations");
}

double photon_frequency(const AtomSpec& spec, const PumpConfig& pump, const Vec3& k, HalfInt F_final) {
  return photon_frequency(spec, pump, k, F_final, spec.lowest_ground_level());
}

std::string PhotonChannel::key() const {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f:%d", omega / kTwoPi, lambda);
  return buf;
}

double PairState::norm() const {
  double n2 = 0.0;
  for (const Complex& a : amplitudes) n2 += std::norm(a);
  return std::sqrt(n2);
}

double PairState::channel_probability(HalfInt F_final) const {
  double p = 0.0;
  for (std::size_t r = 0; r < rows(); ++r) {
    if (channels[r].F_final != F_final) continue;
    for (std::size_t c = 0; c < cols(); ++c) p += std::norm(at(r, c));
  }
  return p;
}

std::vector<HalfInt> PairState::final_levels() const {
  std::set<HalfInt> levels;
  for (const auto& ch : channels) levels.insert(ch.F_final);
  return {levels.begin(), levels.end()};
}

void canonicalize(PairState& state) {
  const double n = state.norm();
  if (n == 0.0 || !std::isfinite(n)) throw EmptyStateError("pair state has no nonzero amplitude");
  Complex phase{1.0, 0.0};
  std::size_t lead = state.amplitudes.size();
  for (std::size_t i = 0; i < state.amplitudes.size(); ++i) {
    const Complex a = state.amplitudes[i];
    if (std::abs(a) > kTol * n) {
      phase = std::conj(a) / std::abs(a);
      lead = i;
      break;
    }
  }
  for (Complex& a : state.amplitudes) a = a * phase / n;
  if (lead < state.amplitudes.size()) state.amplitudes[lead] = std::abs(state.amplitudes[lead]);
}

PairState make_pair_state(std::vector<PhotonChannel> channels, std::vector<Level> atom_levels,
                          std::vector<Complex> amplitudes) {
  if (amplitudes.size() != channels.size() * atom_levels.size()) {
    throw InputDomainError("amplitude count does not match channels x atom levels");
  }
  PairState s;
  s.channels = std::move(channels);
  s.atom_levels = std::move(atom_levels);
  s.amplitudes = std::move(amplitudes);
  canonicalize(s);
  return s;
}

PairState build_pair_state(const AtomSpec& spec, const PumpConfig& pump, const CondensateSpinor& condensate,
                           const Vec3& k, const PairOptions& options) {
  check_inputs(spec, pump, condensate, k, options);

  std::array<RawBranch, 2> branches;
  std::array<CVec3, 2> polarizations;
  for (int lambda = 1; lambda <= 2; ++lambda) {
    const PhotonMode mode = photon_mode(k, lambda);
    polarizations[lambda - 1] = mode.polarization;
    branches[lambda - 1] = raw_branch(spec, pump, condensate, mode);
  }
  if (branches[0].norm == 0.0 && branches[1].norm == 0.0) {
    throw EmptyStateError("no allowed scattering into this direction");
  }

  PairState state;
  state.direction = k;
  state.pump = pump;
  state.atom_levels = spec.ground_sublevels();
  const HalfInt F_initial = condensate.level_F();
  for (HalfInt F : spec.ground_levels()) {
    const double omega = photon_frequency(spec, pump, k, F, F_initial);
    for (int lambda = 1; lambda <= 2; ++lambda) {
      state.channels.push_back({F, lambda, omega, polarizations[lambda - 1], false});
    }
  }
  for (auto& a : state.channels) {
    for (const auto& b : state.channels) {
      if (a.F_final != b.F_final && std::abs(a.omega - b.omega) < options.channel_resolution) a.unresolvable = true;
    }
  }
  state.amplitudes.assign(state.rows() * state.cols(), Complex{});
  for (std::size_t r = 0; r < state.rows(); ++r) {
    const PhotonChannel& ch = state.channels[r];
    const RawBranch& branch = branches[static_cast<std::size_t>(ch.lambda - 1)];
    for (std::size_t c = 0; c < state.cols(); ++c) {
      const Level& level = state.atom_levels[c];
      if (level.F != ch.F_final) continue;
      const auto it = branch.amplitudes.find(level);
      if (it != branch.amplitudes.end()) state.at(r, c) = it->second;
    }
  }
  canonicalize(state);

  double weight = 0.0;
  for (const RawBranch& b : branches) weight += b.norm * b.norm;
  state.emission_weight = pump.atom_number * std::norm(pump.amplitude) * weight;

  double omega_ref = state.channels.front().omega;
  for (std::size_t r = 0; r < state.rows(); ++r) {
    bool nonzero = false;
    for (std::size_t c = 0; c < state.cols(); ++c) nonzero = nonzero || state.at(r, c) != Complex{};
    if (nonzero) {
      omega_ref = state.channels[r].omega;
      break;
    }
  }
  state.photon_wavevector = (omega_ref / kSpeedOfLight) * k;
  state.recoil_momentum = kHbar * (pump.wavevector() - state.photon_wavevector);
  return state;
}

PairState spectral_filter(const PairState& state, HalfInt F_select) {
  PairState out = state;
  out.channels.clear();
  out.amplitudes.clear();
  for (std::size_t r = 0; r < state.rows(); ++r) {
    if (state.channels[r].F_final != F_select) continue;
    out.channels.push_back(state.channels[r]);
    for (std::size_t c = 0; c < state.cols(); ++c) out.amplitudes.push_back(state.at(r, c));
  }
  if (out.channels.empty()) {
    throw InputDomainError("no frequency channel for F = " + F_select.str() + " in this state");
  }
  const double p = state.channel_probability(F_select) / std::pow(state.norm(), 2);
  if (!(p > 0.0)) throw EmptyStateError("frequency channel F = " + F_select.str() + " has zero probability");
  out.emission_weight = state.emission_weight * p;
  canonicalize(out);
  return out;
}

}  // namespace ramanpair
