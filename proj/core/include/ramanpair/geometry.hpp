#pragma once

#include <string>
#include <vector>

#include "ramanpair/pair_state.hpp"

namespace ramanpair {

enum class MeasureKind { entropy, concurrence_after_filter, conditional_overlap };

struct Measure {
  MeasureKind kind = MeasureKind::entropy;
  HalfInt filter_F = HalfInt::integer(1);  // concurrence_after_filter only

  /// "entropy", "concurrence_after_filter(1)", "conditional_overlap".
  std::string name() const;
  /// Accepts the names above; throws InputDomainError otherwise.
  static Measure parse(const std::string& text);
};

enum class NodeFlag { ok = 0, no_scattering = 1, undefined = 2 };

struct ChannelWeight {
  HalfInt F_final;
  double probability = 0.0;
};

struct ScanNode {
  double theta = 0.0;
  double phi = 0.0;
  Vec3 direction{};
  double measure = 0.0;  // NaN unless flag == ok
  NodeFlag flag = NodeFlag::ok;
  std::vector<ChannelWeight> channels;
};

/// Sphere scan on an equiangular (theta, phi) lattice. Both poles are nodes
/// (a single node each, at phi = 0); nodes are sorted by (theta, phi).
struct ScanMap {
  std::vector<ScanNode> nodes;
  double resolution = 0.0;
  Measure measure;
};

struct MeasureValue {
  double value = 0.0;
  NodeFlag flag = NodeFlag::ok;
  std::vector<ChannelWeight> channels;
};

/// The measure at one detection direction; the scan calls exactly this per node.
/// Validity of the pump detuning is the caller's job (scan_sphere checks it once).
MeasureValue evaluate_measure(const AtomSpec& spec, const PumpConfig& pump, const CondensateSpinor& condensate,
                              const Vec3& k, const Measure& measure, const PairOptions& options = {});

inline constexpr double kMinScanResolution = kPi / 1800.0;
inline constexpr double kMaxScanResolution = kPi / 6.0;

/// Direction of the lattice node at polar angle theta and azimuth phi;
/// exact (0, 0, +-1) at the poles.
Vec3 direction_from_angles(double theta, double phi);

/// Evaluates `measure` over the sphere. `threads` = 0 uses all cores; the
/// result is identical for every thread count.
ScanMap scan_sphere(const AtomSpec& spec, const PumpConfig& pump, const CondensateSpinor& condensate,
                    double resolution, const Measure& measure, const PairOptions& options = {},
                    unsigned threads = 1);

/// Largest measure over ok nodes; ties go to the smallest (theta, phi).
/// EmptyStateError when every node is flagged.
const ScanNode& argmax_direction(const ScanMap& map);

}  // namespace ramanpair
