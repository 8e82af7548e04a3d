#include "ramanpair/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <exception>
#include <mutex>
#include <thread>
#include <tuple>

#include "ramanpair/entanglement.hpp"
#include "ramanpair/errors.hpp"

namespace ramanpair {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

int steps_for(double span, double resolution) {
  return static_cast<int>(std::ceil(span / resolution - 1e-9));
}

}  // namespace

std::string Measure::name() const {
  switch (kind) {
    case MeasureKind::entropy:
      return "entropy";
    case MeasureKind::concurrence_after_filter:
      return "concurrence_after_filter(" + filter_F.str() + ")";
    case MeasureKind::conditional_overlap:
      return "conditional_overlap";
  }
  return "unknown";
}

Measure Measure::parse(const std::string& text) {
  if (text == "entropy") return {MeasureKind::entropy, HalfInt::integer(1)};
  if (text == "conditional_overlap" || text == "overlap") return {MeasureKind::conditional_overlap, HalfInt::integer(1)};
  const std::string prefix = "concurrence_after_filter(";
  if (text.rfind(prefix, 0) == 0 && text.size() > prefix.size() + 1 && text.back() == ')') {
    const std::string arg = text.substr(prefix.size(), text.size() - prefix.size() - 1);
    return {MeasureKind::concurrence_after_filter, HalfInt::parse(arg)};
  }
  throw InputDomainError("unknown measure '" + text +
                         "' (expected entropy, concurrence_after_filter(F) or conditional_overlap)");
}

MeasureValue evaluate_measure(const AtomSpec& spec, const PumpConfig& pump, const CondensateSpinor& condensate,
                              const Vec3& k, const Measure& measure, const PairOptions& options) {
  PairOptions opts = options;
  opts.validity = ValidityPolicy::warn;
  MeasureValue out;
  PairState state;
  try {
    state = build_pair_state(spec, pump, condensate, k, opts);
  } catch (const EmptyStateError&) {
    out.value = kNaN;
    out.flag = NodeFlag::no_scattering;
    return out;
  }
  for (HalfInt F : state.final_levels()) out.channels.push_back({F, state.channel_probability(F)});

  switch (measure.kind) {
    case MeasureKind::entropy:
      out.value = entanglement_entropy(state);
      break;
    case MeasureKind::concurrence_after_filter:
      try {
        out.value = generalized_concurrence(spectral_filter(state, measure.filter_F));
      } catch (const EmptyStateError&) {
        out.value = kNaN;
        out.flag = NodeFlag::undefined;
      }
      break;
    case MeasureKind::conditional_overlap:
      try {
        out.value = conditional_overlap(spec, pump, condensate, k, opts);
      } catch (const EmptyStateError&) {
        out.value = kNaN;
        out.flag = NodeFlag::undefined;
      }
      break;
  }
  return out;
}

Vec3 direction_from_angles(double theta, double phi) {
  if (theta == 0.0) return {0.0, 0.0, 1.0};
  if (theta == kPi) return {0.0, 0.0, -1.0};
  const Vec3 v{std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
  return (1.0 / norm(v)) * v;
}

ScanMap scan_sphere(const AtomSpec& spec, const PumpConfig& pump, const CondensateSpinor& condensate,
                    double resolution, const Measure& measure, const PairOptions& options, unsigned threads) {
  if (!(resolution >= kMinScanResolution * (1 - 1e-12)) || !(resolution <= kMaxScanResolution * (1 + 1e-12))) {
    throw InputDomainError("scan resolution must lie in [pi/1800, pi/6] rad");
  }
  if (measure.kind == MeasureKind::concurrence_after_filter && !spec.has_ground_level(measure.filter_F)) {
    throw InputDomainError("filter level F = " + measure.filter_F.str() + " is not a ground level");
  }
  pump.validate();
  condensate.check_against(spec);
  if (options.validity == ValidityPolicy::enforce) {
    // Same check build_pair_state would perform, once instead of per node.
    PairOptions probe = options;
    (void)scattered_spinor(spec, pump, condensate, {0.0, 0.0, 1.0}, 1, probe);
  }

  const int n_theta = steps_for(kPi, resolution);
  const int n_phi = steps_for(2.0 * kPi, resolution);
  const double d_theta = kPi / n_theta, d_phi = 2.0 * kPi / n_phi;

  ScanMap map;
  map.resolution = resolution;
  map.measure = measure;
  for (int i = 0; i <= n_theta; ++i) {
    const double theta = (i == n_theta) ? kPi : i * d_theta;
    const int count = (i == 0 || i == n_theta) ? 1 : n_phi;
    for (int j = 0; j < count; ++j) {
      ScanNode node;
      node.theta = theta;
      node.phi = j * d_phi;
      node.direction = direction_from_angles(theta, node.phi);
      map.nodes.push_back(node);
    }
  }

  auto eval = [&](std::size_t idx) {
    ScanNode& node = map.nodes[idx];
    MeasureValue v = evaluate_measure(spec, pump, condensate, node.direction, measure, options);
    node.measure = v.value;
    node.flag = v.flag;
    node.channels = std::move(v.channels);
  };
  unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, map.nodes.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < map.nodes.size(); ++i) eval(i);
  } else {
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < map.nodes.size(); i += workers) eval(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }
  return map;
}

const ScanNode& argmax_direction(const ScanMap& map) {
  const ScanNode* best = nullptr;
  for (const ScanNode& node : map.nodes) {
    if (node.flag != NodeFlag::ok) continue;
    if (best == nullptr || node.measure > best->measure ||
        (node.measure == best->measure &&
         std::tie(node.theta, node.phi) < std::tie(best->theta, best->phi))) {
      best = &node;
    }
  }
  if (best == nullptr) throw EmptyStateError("every scan node is flagged; no maximum exists");
  return *best;
}

}  // namespace ramanpair
