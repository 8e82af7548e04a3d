#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "ramanpair/atomic_model.hpp"
#include "ramanpair/bell.hpp"
#include "ramanpair/geometry.hpp"
#include "ramanpair/pair_state.hpp"

namespace ramanpair::io {

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

/// Complex numbers are serialized as [re, im].
nlohmann::json complex_to_json(Complex z);
Complex complex_from_json(const nlohmann::json& j, const std::string& key);

/// Atom specification document:
///   {name, doubled_I, doubled_ground_J, doubled_excited_J,
///    ground_splittings_hz: {"<2F'>": Hz}, resonance_hz, linewidth_hz,
///    mass_kg, reduced_dipole, comment?}
/// Unknown keys are rejected with SchemaError. Hz are converted to rad/s by 2 pi.
AtomSpec atom_spec_from_json(const nlohmann::json& doc);
AtomSpec load_atom_spec(const std::filesystem::path& path);
nlohmann::json atom_spec_to_json(const AtomSpec& spec);

nlohmann::json pump_to_json(const PumpConfig& pump);

/// Pair state: channels keyed "omega_hz:lambda", atom levels keyed "2F:2m".
nlohmann::json pair_state_to_json(const PairState& state);
PairState pair_state_from_json(const nlohmann::json& doc);

/// theta_rad,phi_rad,kx,ky,kz,measure,flag; NaN measures print as "nan".
std::string scan_map_csv(const ScanMap& map);
nlohmann::json scan_map_to_json(const ScanMap& map);

/// trial,setting_a_label,setting_b_label,photon_outcome,atom_outcome
std::string events_csv(const SampleResult& result);

std::string read_file(const std::filesystem::path& path);

}  // namespace ramanpair::io
