#include "raman_pair/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ramanpair/angular_momentum.hpp"
#include "ramanpair/bell.hpp"
#include "ramanpair/entanglement.hpp"
#include "ramanpair/errors.hpp"
#include "ramanpair/geometry.hpp"
#include "ramanpair/io.hpp"
#include "raman_pair/run_config.hpp"

namespace raman_pair {

using nlohmann::json;

namespace {

constexpr int kMaxTableJ = 12;

/// A physical precondition of the requested analysis does not hold.
class RequirementError : public Error {
 public:
  using Error::Error;
};

struct Flags {
  std::string config;
  std::string output;
  std::string format;
  std::string F_select;
  std::string filter;
  std::string events;
  std::optional<double> resolution_deg;
  std::string measure;
  std::optional<std::uint64_t> samples;
  std::optional<std::uint64_t> seed;
  int max_doubled_j = 4;
};

unsigned thread_count() {
  const char* env = std::getenv("RAMAN_PAIR_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  unsigned n = 0;
  const std::string text(env);
  const auto res = std::from_chars(text.data(), text.data() + text.size(), n);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw SchemaError("RAMAN_PAIR_THREADS", "expected a non-negative integer, got '" + text + "'");
  }
  return n;
}

RunConfig require_config(const Flags& flags, const std::string& command) {
  if (flags.config.empty()) throw SchemaError("--config", "required by '" + command + "'");
  return load_run_config(flags.config);
}

std::string format_of(const Flags& flags, const RunConfig* cfg, const std::string& fallback) {
  if (!flags.format.empty()) return flags.format;
  if (cfg && cfg->output_format) return *cfg->output_format;
  return fallback;
}

json metadata(const std::string& command, const RunConfig* cfg, std::optional<std::uint64_t> seed) {
  json m = {{"tool", "raman_pair"},
            {"version", RAMAN_PAIR_VERSION},
            {"command", command},
            {"config_sha256", cfg ? json(cfg->config_sha256) : json(nullptr)},
            {"atom_spec_sha256", cfg ? json(cfg->atom_spec_sha256) : json(nullptr)},
            {"seed", seed ? json(*seed) : json(nullptr)}};
  return m;
}

std::string csv_preamble(const json& meta) {
  std::string s;
  for (const auto& [key, value] : meta.items()) {
    s += "# " + key + ": " + (value.is_string() ? value.get<std::string>() : value.dump()) + "\n";
  }
  return s;
}

void write_text(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw SchemaError("--output", "cannot write " + path);
  f << text;
  if (!f) throw SchemaError("--output", "write failed for " + path);
}

void emit(const std::string& text, const Flags& flags, const RunConfig* cfg, std::ostream& out) {
  std::string path = flags.output;
  if (path.empty() && cfg && cfg->output_path) path = *cfg->output_path;
  write_text(text, path, out);
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

HalfInt parse_level(const std::string& text, const std::string& key, const AtomSpec& spec) {
  HalfInt F;
  try {
    F = HalfInt::parse(text);
  } catch (const InputDomainError& e) {
    throw SchemaError(key, e.what());
  }
  if (!spec.has_ground_level(F)) {
    throw SchemaError(key, "F = " + F.str() + " is not a ground level of " + spec.name());
  }
  return F;
}

PairState filtered(const PairState& state, HalfInt F) {
  try {
    return spectral_filter(state, F);
  } catch (const EmptyStateError&) {
    throw;
  } catch (const InputDomainError&) {
    throw EmptyStateError("no photon is scattered into the F = " + F.str() + " channel for this configuration");
  }
}

json analysis(const AtomSpec& spec, const RunConfig& cfg, const PairState& state, bool with_overlap) {
  const SchmidtResult sr = schmidt(state);
  json a;
  a["entropy_bits"] = entanglement_entropy(state);
  a["schmidt_coefficients"] = sr.coefficients;
  json probs = json::object();
  for (HalfInt F : state.final_levels()) probs[F.str()] = state.channel_probability(F);
  a["channel_probabilities"] = probs;
  a["factorized"] = is_factorized(state);
  if (with_overlap) {
    try {
      a["conditional_overlap"] = conditional_overlap(spec, cfg.pump, *cfg.condensate, cfg.detection, cfg.options);
    } catch (const EmptyStateError&) {
      a["conditional_overlap"] = nullptr;
    }
  }
  const ValidityReport v = validity_check(spec, cfg.pump.omega_L, cfg.options.validity_threshold);
  json ratios = json::object();
  for (const auto& [F, r] : v.ratio) ratios[F.str()] = r;
  a["validity"] = {{"threshold", v.threshold}, {"detuning_over_linewidth", ratios}, {"pass", v.pass}};
  return a;
}

std::string state_csv(const PairState& s) {
  std::string out = "channel,F_final,lambda,omega_hz,atom_level,re,im\n";
  for (std::size_t r = 0; r < s.rows(); ++r)
    for (std::size_t c = 0; c < s.cols(); ++c) {
      const PhotonChannel& ch = s.channels[r];
      const Complex z = s.at(r, c);
      out += ch.key() + "," + ch.F_final.str() + "," + std::to_string(ch.lambda) + "," +
             io::format_double(ch.omega / kTwoPi) + "," + s.atom_levels[c].key() + "," +
             io::format_double(z.real()) + "," + io::format_double(z.imag()) + "\n";
    }
  return out;
}

void emit_state(const std::string& command, const Flags& flags, const RunConfig& cfg, const PairState& state,
                json extra, std::ostream& out) {
  const json meta = metadata(command, &cfg, std::nullopt);
  if (format_of(flags, &cfg, "json") == "csv") {
    emit(csv_preamble(meta) + state_csv(state), flags, &cfg, out);
    return;
  }
  json doc = {{"metadata", meta},
              {"atom_spec", io::atom_spec_to_json(*cfg.spec)},
              {"state", io::pair_state_to_json(state)},
              {"analysis", std::move(extra)}};
  emit(dump(doc), flags, &cfg, out);
}

int cmd_state(const Flags& flags, std::ostream& out) {
  const RunConfig cfg = require_config(flags, "state");
  const PairState s = build_pair_state(*cfg.spec, cfg.pump, *cfg.condensate, cfg.detection, cfg.options);
  emit_state("state", flags, cfg, s, analysis(*cfg.spec, cfg, s, true), out);
  return kExitOk;
}

int cmd_filter(const Flags& flags, std::ostream& out) {
  const RunConfig cfg = require_config(flags, "filter");
  const HalfInt F = parse_level(flags.F_select, "F_select", *cfg.spec);
  const PairState full = build_pair_state(*cfg.spec, cfg.pump, *cfg.condensate, cfg.detection, cfg.options);
  const PairState s = filtered(full, F);
  json a = analysis(*cfg.spec, cfg, s, false);
  a["filter_F"] = F.str();
  a["pass_probability"] = full.channel_probability(F);
  a["generalized_concurrence"] = generalized_concurrence(s);
  const Support sup = support(s);
  a["concurrence"] = (sup.rows.size() <= 2 && sup.cols.size() <= 2) ? json(concurrence_2x2(s)) : json(nullptr);
  emit_state("filter", flags, cfg, s, std::move(a), out);
  return kExitOk;
}

int cmd_scan(const Flags& flags, std::ostream& out, std::ostream& err) {
  const RunConfig cfg = require_config(flags, "scan");
  const double deg = flags.resolution_deg ? *flags.resolution_deg : cfg.scan.resolution_deg.value_or(2.0);
  const std::string key = flags.resolution_deg ? "--resolution-deg" : "detection.scan.resolution_deg";
  if (!(deg >= 0.1 && deg <= 30.0)) throw SchemaError(key, "resolution must lie in [0.1, 30] degrees");
  const std::string measure_text =
      !flags.measure.empty() ? flags.measure : cfg.scan.measure.value_or("concurrence_after_filter(1)");
  Measure measure;
  try {
    measure = Measure::parse(measure_text);
  } catch (const InputDomainError& e) {
    throw SchemaError(flags.measure.empty() ? "detection.scan.measure" : "--measure", e.what());
  }
  if (measure.kind == MeasureKind::concurrence_after_filter) {
    parse_level(measure.filter_F.str(), flags.measure.empty() ? "detection.scan.measure" : "--measure", *cfg.spec);
  }
  const ScanMap map =
      scan_sphere(*cfg.spec, cfg.pump, *cfg.condensate, deg * kPi / 180.0, measure, cfg.options, thread_count());

  const ScanNode* best = nullptr;
  try {
    best = &argmax_direction(map);
  } catch (const EmptyStateError&) {
  }
  json argmax = nullptr;
  if (best) {
    argmax = {{"theta_rad", best->theta},
              {"phi_rad", best->phi},
              {"direction", {best->direction[0], best->direction[1], best->direction[2]}},
              {"measure", best->measure}};
  }

  const json meta = metadata("scan", &cfg, std::nullopt);
  if (format_of(flags, &cfg, "json") == "csv") {
    emit(csv_preamble(meta) + io::scan_map_csv(map), flags, &cfg, out);
  } else {
    json doc = {{"metadata", meta},
                {"pump", io::pump_to_json(cfg.pump)},
                {"resolution_deg", deg},
                {"argmax", argmax},
                {"scan", io::scan_map_to_json(map)}};
    emit(dump(doc), flags, &cfg, out);
  }

  if (best) {
    const char* pole = best->theta == 0.0 ? " (+z pole)" : best->theta == kPi ? " (-z pole)" : "";
    err << "scan: " << map.nodes.size() << " nodes, " << measure.name() << " max " << io::format_double(best->measure)
        << " at theta=" << io::format_double(best->theta) << " phi=" << io::format_double(best->phi) << pole << "\n";
  } else {
    err << "scan: " << map.nodes.size() << " nodes, every node flagged; no maximum\n";
  }
  return kExitOk;
}

int cmd_chsh(const Flags& flags, std::ostream& out) {
  const RunConfig cfg = require_config(flags, "chsh");
  const std::uint64_t samples = flags.samples.value_or(cfg.samples);
  const std::uint64_t seed = flags.seed.value_or(cfg.seed);
  const std::string format = format_of(flags, &cfg, "json");
  if (format == "csv" && samples == 0) throw SchemaError("--samples", "CSV output lists events; give --samples > 0");

  PairState state = build_pair_state(*cfg.spec, cfg.pump, *cfg.condensate, cfg.detection, cfg.options);
  if (!flags.filter.empty()) state = filtered(state, parse_level(flags.filter, "--filter", *cfg.spec));
  const Support sup = support(state);
  if (sup.rows.size() > 2 || sup.cols.size() > 2) {
    throw RequirementError("CHSH needs a state on 2 photon x 2 atom labels; this one has " +
                           std::to_string(sup.rows.size()) + " photon labels and " + std::to_string(sup.cols.size()) +
                           " atom levels. Select one frequency channel with --filter F");
  }

  const ChshOptimum opt = optimize_chsh(state);
  const ChshSettings& st = opt.settings;
  json analytic = {
      {"settings_rad", {{"a", st.a}, {"a_prime", st.a_prime}, {"b", st.b}, {"b_prime", st.b_prime}}},
      {"correlations",
       {correlation(state, st.a, st.b), correlation(state, st.a, st.b_prime), correlation(state, st.a_prime, st.b),
        correlation(state, st.a_prime, st.b_prime)}},
      {"S", opt.S}};

  std::optional<SampleResult> sampled;
  if (samples > 0) sampled = sample_events(state, st, samples, seed, thread_count());
  const json meta = metadata("chsh", &cfg, samples > 0 ? std::optional(seed) : std::nullopt);

  if (sampled && !flags.events.empty()) write_text(csv_preamble(meta) + io::events_csv(*sampled), flags.events, out);
  if (format == "csv") {
    emit(csv_preamble(meta) + io::events_csv(*sampled), flags, &cfg, out);
    return kExitOk;
  }
  json doc = {{"metadata", meta}, {"state", io::pair_state_to_json(state)}, {"analytic", analytic}};
  if (sampled) {
    doc["sampled"] = {{"samples", samples},
                      {"generator", sampled->generator},
                      {"counts", sampled->counts},
                      {"correlations", sampled->correlations},
                      {"S", sampled->S_estimate},
                      {"standard_error", sampled->standard_error}};
  }
  emit(dump(doc), flags, &cfg, out);
  return kExitOk;
}

std::string exact_text(const CoupledValue& v) {
  if (!v.exact) return "";
  const ExactForm& e = *v.exact;
  if (e.sign == 0) return "0";
  return std::string(e.sign < 0 ? "-" : "") + "sqrt(" + e.numerator.str() + "/" + e.denominator.str() + ")";
}

std::string table_row(const char* kind, std::initializer_list<int> args, const CoupledValue& v) {
  std::string row = kind;
  for (int a : args) row += "," + std::to_string(a);
  return row + "," + io::format_double(v.value) + "," + exact_text(v) + "\n";
}

int cmd_tables(const Flags& flags, std::ostream& out) {
  const int n = flags.max_doubled_j;
  if (n < 0 || n > kMaxTableJ) {
    throw SchemaError("--max-doubled-j", "must lie in [0, " + std::to_string(kMaxTableJ) + "], got " + std::to_string(n));
  }
  if (format_of(flags, nullptr, "csv") != "csv") throw SchemaError("--format", "tables are emitted as CSV only");
  std::optional<RunConfig> cfg;
  if (!flags.config.empty()) cfg = load_run_config(flags.config);
  auto h = [](int t) { return HalfInt::from_twice(t); };

  // CG columns: 2j1,2m1,2j2,2m2,2J,2M. 3j: 2j1,2j2,2j3,2m1,2m2,2m3. 6j: the six doubled j.
  std::string csv = csv_preamble(metadata("tables", cfg ? &*cfg : nullptr, std::nullopt));
  csv += "symbol,a1,a2,a3,a4,a5,a6,value,exact\n";
  for (int a = 0; a <= n; ++a)
    for (int b = 0; b <= n; ++b)
      for (int c = 0; c <= n; ++c) {
        if ((a + b + c) % 2 || !triangle_ok(h(a), h(b), h(c))) continue;
        for (int ma = -a; ma <= a; ma += 2)
          for (int mb = -b; mb <= b; mb += 2) {
            const int mc = ma + mb;
            if (std::abs(mc) > c) continue;
            csv += table_row("cg", {a, ma, b, mb, c, mc}, clebsch_gordan(h(a), h(ma), h(b), h(mb), h(c), h(mc)));
            csv += table_row("3j", {a, b, c, ma, mb, -mc}, wigner_3j(h(a), h(b), h(c), h(ma), h(mb), h(-mc)));
          }
      }
  for (int a = 0; a <= n; ++a)
    for (int b = 0; b <= n; ++b)
      for (int c = 0; c <= n; ++c) {
        if ((a + b + c) % 2 || !triangle_ok(h(a), h(b), h(c))) continue;
        for (int d = 0; d <= n; ++d)
          for (int e = 0; e <= n; ++e)
            for (int f = 0; f <= n; ++f) {
              if (!triangle_ok(h(a), h(e), h(f)) || !triangle_ok(h(d), h(b), h(f)) ||
                  !triangle_ok(h(d), h(e), h(c))) {
                continue;
              }
              csv += table_row("6j", {a, b, c, d, e, f}, wigner_6j(h(a), h(b), h(c), h(d), h(e), h(f)));
            }
      }
  emit(csv, flags, cfg ? &*cfg : nullptr, out);
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Atom-photon entangled pairs from Raman scattering off a spinor condensate", "raman_pair"};
  app.set_version_flag("--version", RAMAN_PAIR_VERSION);
  app.require_subcommand(1);
  app.fallthrough();

  Flags flags;
  app.add_option("--config", flags.config, "Run configuration (JSON)");
  app.add_option("--output", flags.output, "Output file (default: stdout)");
  app.add_option("--format", flags.format, "Output format")->check(CLI::IsMember({"json", "csv"}));

  auto* state = app.add_subcommand("state", "Joint atom-photon state along the detection direction");
  auto* filter = app.add_subcommand("filter", "State after a narrow spectral filter on one channel");
  filter->add_option("F_select", flags.F_select, "Final ground level F to keep")->required();
  auto* scan = app.add_subcommand("scan", "Entanglement measure over detection directions");
  scan->add_option("--resolution-deg", flags.resolution_deg, "Grid step in degrees, 0.1 to 30");
  scan->add_option("--measure", flags.measure,
                   "entropy | concurrence_after_filter(F) | conditional_overlap");
  auto* chsh = app.add_subcommand("chsh", "CHSH optimum and seeded event sampling");
  chsh->add_option("--filter", flags.filter, "Select frequency channel F before the analysis");
  chsh->add_option("--samples", flags.samples, "Number of sampled trials");
  chsh->add_option("--seed", flags.seed, "Sampling seed");
  chsh->add_option("--events", flags.events, "Also write the event CSV here");
  auto* tables = app.add_subcommand("tables", "CSV grids of Clebsch-Gordan, 3-j and 6-j coefficients");
  tables->add_option("--max-doubled-j", flags.max_doubled_j, "Largest doubled j (at most 12)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (state->parsed()) return cmd_state(flags, out);
    if (filter->parsed()) return cmd_filter(flags, out);
    if (scan->parsed()) return cmd_scan(flags, out, err);
    if (chsh->parsed()) return cmd_chsh(flags, out);
    if (tables->parsed()) return cmd_tables(flags, out);
  } catch (const InputDomainError& e) {
    err << "raman_pair: configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    err << "raman_pair: " << e.what() << "\n";
    return kExitPhysics;
  }
  return kExitConfig;
}

}  // namespace raman_pair
