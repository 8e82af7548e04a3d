#include "raman_pair/run_config.hpp"

#include <openssl/evp.h>

#include <array>
#include <cmath>
#include <set>

#include <nlohmann/json.hpp>

#include "ramanpair/errors.hpp"
#include "ramanpair/io.hpp"

namespace raman_pair {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
  if (!obj.is_object()) throw SchemaError(path, "expected an object");
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key)) throw SchemaError(path.empty() ? key : path + "." + key, "unknown key");
}

double number(const json& j, const std::string& key) {
  if (!j.is_number()) throw SchemaError(key, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw SchemaError(key, "expected a finite number");
  return v;
}

std::uint64_t unsigned_integer(const json& j, const std::string& key) {
  if (!j.is_number_unsigned()) throw SchemaError(key, "expected a non-negative integer");
  return j.get<std::uint64_t>();
}

Complex complex_value(const json& j, const std::string& key) {
  if (j.is_number()) return {number(j, key), 0.0};
  if (j.is_array() && j.size() == 2) return {number(j[0], key), number(j[1], key)};
  throw SchemaError(key, "expected a number or [re, im]");
}

Vec3 vec3(const json& j, const std::string& key) {
  if (!j.is_array() || j.size() != 3) throw SchemaError(key, "expected an array of 3 numbers");
  return {number(j[0], key), number(j[1], key), number(j[2], key)};
}

CVec3 cvec3(const json& j, const std::string& key) {
  if (!j.is_array() || j.size() != 3) throw SchemaError(key, "expected an array of 3 components");
  return {complex_value(j[0], key), complex_value(j[1], key), complex_value(j[2], key)};
}

// Library domain errors raised while building config objects are reported against the block.
template <class F>
auto within(const std::string& key, F&& build) {
  try {
    return build();
  } catch (const SchemaError&) {
    throw;
  } catch (const InputDomainError& e) {
    throw SchemaError(key, e.what());
  }
}

PumpConfig parse_pump(const json& p, const AtomSpec& spec) {
  const std::string path = "pump";
  reject_unknown(p, path,
                 {"direction", "polarization", "frequency_hz", "detuning_hz", "amplitude", "atom_number"});
  PumpConfig pump;
  if (!p.contains("direction")) throw SchemaError("pump.direction", "missing required key");
  pump.direction = vec3(p["direction"], "pump.direction");
  if (!p.contains("polarization")) throw SchemaError("pump.polarization", "missing required key");
  pump.polarization = cvec3(p["polarization"], "pump.polarization");
  const bool has_f = p.contains("frequency_hz"), has_d = p.contains("detuning_hz");
  if (has_f == has_d) throw SchemaError("pump.detuning_hz", "give exactly one of frequency_hz or detuning_hz");
  pump.omega_L = has_f ? kTwoPi * number(p["frequency_hz"], "pump.frequency_hz")
                       : spec.resonance() + kTwoPi * number(p["detuning_hz"], "pump.detuning_hz");
  if (p.contains("amplitude")) pump.amplitude = complex_value(p["amplitude"], "pump.amplitude");
  if (p.contains("atom_number")) pump.atom_number = number(p["atom_number"], "pump.atom_number");
  within(path, [&] {
    pump.validate();
    return 0;
  });
  return pump;
}

CondensateSpinor parse_condensate(const json& c, const AtomSpec& spec) {
  reject_unknown(c, "condensate", {"amplitudes"});
  if (!c.contains("amplitudes") || !c["amplitudes"].is_object()) {
    throw SchemaError("condensate.amplitudes", "expected an object keyed by \"2F:2m\"");
  }
  std::map<Level, Complex> amps;
  for (const auto& [key, value] : c["amplitudes"].items()) {
    const std::string path = "condensate.amplitudes." + key;
    const Level l = within(path, [&] { return Level::parse_key(key); });
    amps[l] = complex_value(value, path);
  }
  return within("condensate", [&] {
    CondensateSpinor s(std::move(amps));
    s.check_against(spec);
    return s;
  });
}

}  // namespace

std::string sha256_hex(const std::string& bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw NumericalError("SHA-256 failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  RunConfig cfg;
  cfg.config_path = path;
  const std::string text = io::read_file(path);
  cfg.config_sha256 = sha256_hex(text);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError("", path.string() + ": " + e.what());
  }
  reject_unknown(doc, "",
                 {"atom_spec_path", "pump", "condensate", "detection", "validity", "chsh", "output",
                  "channel_resolution_hz", "comment"});

  if (!doc.contains("atom_spec_path") || !doc["atom_spec_path"].is_string()) {
    throw SchemaError("atom_spec_path", "expected a path string");
  }
  cfg.atom_spec_path = doc["atom_spec_path"].get<std::string>();
  if (cfg.atom_spec_path.is_relative()) cfg.atom_spec_path = path.parent_path() / cfg.atom_spec_path;
  const std::string spec_text = [&] {
    try {
      return io::read_file(cfg.atom_spec_path);
    } catch (const SchemaError& e) {
      throw SchemaError("atom_spec_path", e.what());
    }
  }();
  cfg.atom_spec_sha256 = sha256_hex(spec_text);
  try {
    cfg.spec = io::atom_spec_from_json(json::parse(spec_text));
  } catch (const json::parse_error& e) {
    throw SchemaError("atom_spec_path", e.what());
  } catch (const SchemaError& e) {
    throw SchemaError(e.key().empty() ? "atom_spec_path" : "atom_spec." + e.key(), e.what());
  }

  if (!doc.contains("pump")) throw SchemaError("pump", "missing required key");
  cfg.pump = parse_pump(doc["pump"], *cfg.spec);
  if (!doc.contains("condensate")) throw SchemaError("condensate", "missing required key");
  cfg.condensate = parse_condensate(doc["condensate"], *cfg.spec);

  if (doc.contains("detection")) {
    const json& d = doc["detection"];
    reject_unknown(d, "detection", {"direction", "scan"});
    if (d.contains("direction")) cfg.detection = vec3(d["direction"], "detection.direction");
    if (d.contains("scan")) {
      const json& s = d["scan"];
      reject_unknown(s, "detection.scan", {"resolution_deg", "measure"});
      if (s.contains("resolution_deg")) {
        cfg.scan.resolution_deg = number(s["resolution_deg"], "detection.scan.resolution_deg");
      }
      if (s.contains("measure")) {
        if (!s["measure"].is_string()) throw SchemaError("detection.scan.measure", "expected a string");
        cfg.scan.measure = s["measure"].get<std::string>();
      }
    }
  }

  if (doc.contains("validity")) {
    const json& v = doc["validity"];
    reject_unknown(v, "validity", {"threshold", "enforce"});
    if (v.contains("threshold")) {
      cfg.options.validity_threshold = number(v["threshold"], "validity.threshold");
      if (!(cfg.options.validity_threshold > 0.0)) throw SchemaError("validity.threshold", "must be positive");
    }
    if (v.contains("enforce")) {
      if (!v["enforce"].is_boolean()) throw SchemaError("validity.enforce", "expected true or false");
      cfg.options.validity = v["enforce"].get<bool>() ? ValidityPolicy::enforce : ValidityPolicy::warn;
    }
  }
  if (doc.contains("channel_resolution_hz")) {
    const double hz = number(doc["channel_resolution_hz"], "channel_resolution_hz");
    if (!(hz >= 0.0)) throw SchemaError("channel_resolution_hz", "must be non-negative");
    cfg.options.channel_resolution = kTwoPi * hz;
  }

  if (doc.contains("chsh")) {
    const json& c = doc["chsh"];
    reject_unknown(c, "chsh", {"samples", "seed"});
    if (c.contains("samples")) cfg.samples = unsigned_integer(c["samples"], "chsh.samples");
    if (c.contains("seed")) cfg.seed = unsigned_integer(c["seed"], "chsh.seed");
  }

  if (doc.contains("output")) {
    const json& o = doc["output"];
    reject_unknown(o, "output", {"path", "format"});
    if (o.contains("path")) {
      if (!o["path"].is_string()) throw SchemaError("output.path", "expected a string");
      cfg.output_path = o["path"].get<std::string>();
    }
    if (o.contains("format")) {
      if (!o["format"].is_string()) throw SchemaError("output.format", "expected \"json\" or \"csv\"");
      cfg.output_format = o["format"].get<std::string>();
      if (*cfg.output_format != "json" && *cfg.output_format != "csv") {
        throw SchemaError("output.format", "expected \"json\" or \"csv\"");
      }
    }
  }
  return cfg;
}

}  // namespace raman_pair
