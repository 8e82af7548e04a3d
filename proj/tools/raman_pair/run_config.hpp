#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "ramanpair/atomic_model.hpp"
#include "ramanpair/pair_state.hpp"

namespace raman_pair {

using namespace ramanpair;

struct ScanBlock {
  std::optional<double> resolution_deg;
  std::optional<std::string> measure;
};

/// Parsed run configuration. Every key is checked; unknown keys are errors.
struct RunConfig {
  std::filesystem::path config_path;
  std::string config_sha256;
  std::filesystem::path atom_spec_path;  // resolved against the config directory
  std::string atom_spec_sha256;

  std::optional<AtomSpec> spec;
  PumpConfig pump;
  std::optional<CondensateSpinor> condensate;
  Vec3 detection{0.0, 0.0, 1.0};
  ScanBlock scan;
  PairOptions options;

  std::uint64_t samples = 0;
  std::uint64_t seed = 0;

  std::optional<std::string> output_path;
  std::optional<std::string> output_format;
};

/// Throws SchemaError naming the offending key path.
RunConfig load_run_config(const std::filesystem::path& path);

std::string sha256_hex(const std::string& bytes);

}  // namespace raman_pair
