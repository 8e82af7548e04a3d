#include "ramanpair/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "ramanpair/errors.hpp"

namespace ramanpair::io {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& prefix) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) throw SchemaError(prefix + key, "unknown key");
  }
}

const json& required(const json& obj, const std::string& key, const std::string& prefix) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(prefix + key, "missing required key");
  return *it;
}

double number(const json& j, const std::string& key) {
  if (!j.is_number()) throw SchemaError(key, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw SchemaError(key, "expected a finite number");
  return v;
}

int integer(const json& j, const std::string& key) {
  if (!j.is_number_integer()) throw SchemaError(key, "expected an integer");
  return j.get<int>();
}

json vec_to_json(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }

Vec3 vec_from_json(const json& j, const std::string& key) {
  if (!j.is_array() || j.size() != 3) throw SchemaError(key, "expected an array of 3 numbers");
  return {number(j[0], key), number(j[1], key), number(j[2], key)};
}

json cvec_to_json(const CVec3& v) {
  return json::array({complex_to_json(v[0]), complex_to_json(v[1]), complex_to_json(v[2])});
}

CVec3 cvec_from_json(const json& j, const std::string& key) {
  if (!j.is_array() || j.size() != 3) throw SchemaError(key, "expected an array of 3 [re, im] pairs");
  return {complex_from_json(j[0], key), complex_from_json(j[1], key), complex_from_json(j[2], key)};
}

std::vector<std::string> channel_keys(const PairState& state) {
  std::vector<std::string> keys;
  std::set<std::string> seen;
  for (const auto& ch : state.channels) {
    std::string k = ch.key();
    if (!seen.insert(k).second) {
      k += "#" + std::to_string(ch.F_final.twice());
      seen.insert(k);
    }
    keys.push_back(std::move(k));
  }
  return keys;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j, const std::string& key) {
  if (!j.is_array() || j.size() != 2) throw SchemaError(key, "expected a complex number [re, im]");
  return {number(j[0], key), number(j[1], key)};
}

AtomSpec atom_spec_from_json(const json& doc) {
  if (!doc.is_object()) throw SchemaError("", "atom spec must be a JSON object");
  reject_unknown(doc,
                 {"name", "doubled_I", "doubled_ground_J", "doubled_excited_J", "ground_splittings_hz",
                  "resonance_hz", "linewidth_hz", "mass_kg", "reduced_dipole", "comment"},
                 "");
  AtomSpec::Params p;
  const json& name = required(doc, "name", "");
  if (!name.is_string()) throw SchemaError("name", "expected a string");
  p.name = name.get<std::string>();
  if (doc.contains("comment") && !doc["comment"].is_string()) throw SchemaError("comment", "expected a string");
  p.nuclear_spin = HalfInt::from_twice(integer(required(doc, "doubled_I", ""), "doubled_I"));
  p.ground_J = HalfInt::from_twice(integer(required(doc, "doubled_ground_J", ""), "doubled_ground_J"));
  p.excited_J = HalfInt::from_twice(integer(required(doc, "doubled_excited_J", ""), "doubled_excited_J"));
  const json& splits = required(doc, "ground_splittings_hz", "");
  if (!splits.is_object()) throw SchemaError("ground_splittings_hz", "expected an object keyed by doubled F'");
  for (const auto& [key, value] : splits.items()) {
    const std::string path = "ground_splittings_hz." + key;
    int twice_F = 0;
    const auto res = std::from_chars(key.data(), key.data() + key.size(), twice_F);
    if (res.ec != std::errc() || res.ptr != key.data() + key.size()) {
      throw SchemaError(path, "key must be a doubled F' integer");
    }
    p.ground_splittings[HalfInt::from_twice(twice_F)] = kTwoPi * number(value, path);
  }
  p.resonance = kTwoPi * number(required(doc, "resonance_hz", ""), "resonance_hz");
  p.linewidth = kTwoPi * number(required(doc, "linewidth_hz", ""), "linewidth_hz");
  p.mass = number(required(doc, "mass_kg", ""), "mass_kg");
  if (doc.contains("reduced_dipole")) p.reduced_dipole = number(doc["reduced_dipole"], "reduced_dipole");
  try {
    return AtomSpec(std::move(p));
  } catch (const SchemaError&) {
    throw;
  } catch (const InputDomainError& e) {
    throw SchemaError("", e.what());
  }
}

AtomSpec load_atom_spec(const std::filesystem::path& path) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw SchemaError("", path.string() + ": " + e.what());
  }
  return atom_spec_from_json(doc);
}

json atom_spec_to_json(const AtomSpec& spec) {
  json splits = json::object();
  for (const auto& [F, delta] : spec.ground_splittings()) splits[std::to_string(F.twice())] = delta / kTwoPi;
  return {{"name", spec.name()},
          {"doubled_I", spec.nuclear_spin().twice()},
          {"doubled_ground_J", spec.ground_J().twice()},
          {"doubled_excited_J", spec.excited_J().twice()},
          {"ground_splittings_hz", splits},
          {"resonance_hz", spec.resonance() / kTwoPi},
          {"linewidth_hz", spec.linewidth() / kTwoPi},
          {"mass_kg", spec.mass()},
          {"reduced_dipole", spec.reduced_dipole()}};
}

json pump_to_json(const PumpConfig& pump) {
  return {{"direction", vec_to_json(pump.direction)},
          {"polarization", cvec_to_json(pump.polarization)},
          {"frequency_hz", pump.omega_L / kTwoPi},
          {"omega_rad_s", pump.omega_L},
          {"amplitude", complex_to_json(pump.amplitude)},
          {"atom_number", pump.atom_number}};
}

json pair_state_to_json(const PairState& state) {
  const auto keys = channel_keys(state);
  json channels = json::array();
  json amplitudes = json::object();
  const double n2 = std::pow(state.norm(), 2);
  for (std::size_t r = 0; r < state.rows(); ++r) {
    const PhotonChannel& ch = state.channels[r];
    double p = 0.0;
    json row = json::object();
    for (std::size_t c = 0; c < state.cols(); ++c) {
      const Complex a = state.at(r, c);
      p += std::norm(a);
      if (a != Complex{}) row[state.atom_levels[c].key()] = complex_to_json(a);
    }
    channels.push_back({{"key", keys[r]},
                        {"F_final", ch.F_final.str()},
                        {"lambda", ch.lambda},
                        {"omega_hz", ch.omega / kTwoPi},
                        {"omega_rad_s", ch.omega},
                        {"polarization", cvec_to_json(ch.polarization)},
                        {"probability", n2 > 0 ? p / n2 : 0.0},
                        {"unresolvable", ch.unresolvable}});
    amplitudes[keys[r]] = row;
  }
  json atoms = json::array();
  for (const Level& l : state.atom_levels) atoms.push_back(l.key());
  json doc = {{"channels", channels},
              {"atom_basis", atoms},
              {"amplitudes", amplitudes},
              {"direction", vec_to_json(state.direction)},
              {"recoil_momentum", vec_to_json(state.recoil_momentum)},
              {"photon_wavevector", vec_to_json(state.photon_wavevector)},
              {"emission_weight", state.emission_weight}};
  if (state.pump) doc["pump"] = pump_to_json(*state.pump);
  return doc;
}

PairState pair_state_from_json(const json& doc) {
  if (!doc.is_object()) throw SchemaError("", "pair state must be a JSON object");
  reject_unknown(doc,
                 {"channels", "atom_basis", "amplitudes", "direction", "recoil_momentum", "photon_wavevector",
                  "emission_weight", "pump", "analysis", "metadata"},
                 "");
  PairState s;
  for (const json& a : required(doc, "atom_basis", "")) {
    if (!a.is_string()) throw SchemaError("atom_basis", "expected level keys");
    s.atom_levels.push_back(Level::parse_key(a.get<std::string>()));
  }
  std::vector<std::string> keys;
  for (const json& c : required(doc, "channels", "")) {
    PhotonChannel ch;
    ch.F_final = HalfInt::parse(required(c, "F_final", "channels.").get<std::string>());
    ch.lambda = integer(required(c, "lambda", "channels."), "channels.lambda");
    ch.omega = number(required(c, "omega_rad_s", "channels."), "channels.omega_rad_s");
    ch.polarization = cvec_from_json(required(c, "polarization", "channels."), "channels.polarization");
    ch.unresolvable = c.value("unresolvable", false);
    keys.push_back(required(c, "key", "channels.").get<std::string>());
    s.channels.push_back(ch);
  }
  s.amplitudes.assign(s.rows() * s.cols(), Complex{});
  const json& amps = required(doc, "amplitudes", "");
  for (std::size_t r = 0; r < s.rows(); ++r) {
    const auto it = amps.find(keys[r]);
    if (it == amps.end()) continue;
    for (const auto& [level_key, value] : it->items()) {
      const Level level = Level::parse_key(level_key);
      const auto pos = std::find(s.atom_levels.begin(), s.atom_levels.end(), level);
      if (pos == s.atom_levels.end()) throw SchemaError("amplitudes." + keys[r] + "." + level_key, "unknown level");
      s.at(r, static_cast<std::size_t>(pos - s.atom_levels.begin())) = complex_from_json(value, "amplitudes");
    }
  }
  s.direction = vec_from_json(required(doc, "direction", ""), "direction");
  s.recoil_momentum = vec_from_json(required(doc, "recoil_momentum", ""), "recoil_momentum");
  s.photon_wavevector = vec_from_json(required(doc, "photon_wavevector", ""), "photon_wavevector");
  s.emission_weight = number(required(doc, "emission_weight", ""), "emission_weight");
  if (doc.contains("pump")) {
    const json& p = doc["pump"];
    PumpConfig pump;
    pump.direction = vec_from_json(required(p, "direction", "pump."), "pump.direction");
    pump.polarization = cvec_from_json(required(p, "polarization", "pump."), "pump.polarization");
    pump.omega_L = number(required(p, "omega_rad_s", "pump."), "pump.omega_rad_s");
    pump.amplitude = complex_from_json(required(p, "amplitude", "pump."), "pump.amplitude");
    pump.atom_number = number(required(p, "atom_number", "pump."), "pump.atom_number");
    s.pump = pump;
  }
  return s;
}

std::string scan_map_csv(const ScanMap& map) {
  std::string out = "theta_rad,phi_rad,kx,ky,kz,measure,flag\n";
  for (const ScanNode& n : map.nodes) {
    out += format_double(n.theta) + "," + format_double(n.phi) + "," + format_double(n.direction[0]) + "," +
           format_double(n.direction[1]) + "," + format_double(n.direction[2]) + "," + format_double(n.measure) +
           "," + std::to_string(static_cast<int>(n.flag)) + "\n";
  }
  return out;
}

json scan_map_to_json(const ScanMap& map) {
  json nodes = json::array();
  for (const ScanNode& n : map.nodes) {
    json channels = json::object();
    for (const auto& c : n.channels) channels[c.F_final.str()] = c.probability;
    nodes.push_back({{"theta_rad", n.theta},
                     {"phi_rad", n.phi},
                     {"direction", vec_to_json(n.direction)},
                     {"measure", n.flag == NodeFlag::ok ? json(n.measure) : json(nullptr)},
                     {"flag", static_cast<int>(n.flag)},
                     {"channel_probabilities", channels}});
  }
  return {{"measure_name", map.measure.name()}, {"resolution_rad", map.resolution}, {"nodes", nodes}};
}

std::string events_csv(const SampleResult& result) {
  std::ostringstream out;
  out << "trial,setting_a_label,setting_b_label,photon_outcome,atom_outcome\n";
  for (const EventRecord& e : result.events) {
    out << e.trial << ',' << (e.setting_a == 0 ? "a" : "a'") << ',' << (e.setting_b == 0 ? "b" : "b'") << ','
        << e.photon_outcome << ',' << e.atom_outcome << '\n';
  }
  return out.str();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("", "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace ramanpair::io
