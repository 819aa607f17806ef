#include "wsn/cli.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "wsn/errors.hpp"
#include "wsn/metrics.hpp"
#include "wsn/presets.hpp"
#include "wsn/result_io.hpp"
#include "wsn/scenario.hpp"
#include "wsn/simengine.hpp"
#include "wsn/sweep.hpp"
#include "wsn/table3.hpp"

namespace wsn {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// config assembly: defaults -> preset or file -> flag overrides

struct Overrides {
  std::string config_path;
  std::string preset;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint32_t> nodes;
  std::optional<double> duration_s;
  std::optional<double> field_m;
  std::optional<std::string> technique;
  std::optional<std::string> model;
  std::optional<double> threshold_db;
  std::optional<double> e_p_j;
  std::optional<double> attacker_fraction;
  std::optional<double> attack_rate;
  std::optional<double> timeout_s;
  std::optional<std::uint32_t> warning_threshold;
  std::optional<double> triad_fraction;
  std::optional<double> bitrate_bps;
  std::optional<std::uint32_t> payload_bytes;
  bool events = false;
};

void add_config_options(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path,
                  "scenario config file (JSON; a result.json also works, its "
                  "embedded config is used)");
  cmd->add_option("--preset", o.preset,
                  "named preset: baseline, radius, compare, attack-demo");
  cmd->add_option("--seed", o.seed, "RNG seed");
  cmd->add_option("--nodes", o.nodes, "sensor count");
  cmd->add_option("--duration", o.duration_s, "simulated seconds");
  cmd->add_option("--field", o.field_m, "square field side, metres");
  cmd->add_option("--technique", o.technique,
                  "conventional | improved | both");
  cmd->add_option("--model", o.model, "hierarchical | flat");
  cmd->add_option("--threshold-db", o.threshold_db,
                  "monitor sensing threshold (dB)");
  cmd->add_option("--e-p", o.e_p_j, "IDS install energy per node (J)");
  cmd->add_option("--attacker-fraction", o.attacker_fraction,
                  "share of sensors turned into packet droppers");
  cmd->add_option("--attack-rate", o.attack_rate,
                  "drop probability for sampled attackers");
  cmd->add_option("--timeout", o.timeout_s, "watchdog timeout (s)");
  cmd->add_option("--warning-threshold", o.warning_threshold,
                  "warnings needed for a malicious verdict");
  cmd->add_option("--triad-fraction", o.triad_fraction,
                  "share of in-cell relay traffic from plain nodes");
  cmd->add_option("--bitrate", o.bitrate_bps, "radio bitrate (bps)");
  cmd->add_option("--payload-bytes", o.payload_bytes, "payload size");
  cmd->add_flag("--events", o.events,
                "keep a (capped) human-readable event trace in the result");
}

TechniqueChoice parse_technique(const std::string& s) {
  if (s == "conventional") return TechniqueChoice::Conventional;
  if (s == "improved") return TechniqueChoice::Improved;
  if (s == "both") return TechniqueChoice::Both;
  throw ConfigError("technique",
                    "expected conventional|improved|both, got '" + s + "'");
}

IdsModel parse_model(const std::string& s) {
  if (s == "hierarchical") return IdsModel::Hierarchical;
  if (s == "flat") return IdsModel::Flat;
  throw ConfigError("model", "expected hierarchical|flat, got '" + s + "'");
}

ScenarioConfig load_config_any(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("config", "cannot open '" + path + "'");
  json j;
  try {
    j = json::parse(f);
  } catch (const json::parse_error& e) {
    throw ConfigError("config", std::string("parse failure: ") + e.what());
  }
  // A result file embeds its effective config; accept it directly so any
  // run can be replayed from its own output.
  if (j.is_object() && j.contains("config")) {
    return scenario_from_json(j["config"]);
  }
  return scenario_from_json(j);
}

ScenarioConfig build_config(const Overrides& o) {
  if (!o.config_path.empty() && !o.preset.empty()) {
    throw ConfigError("config", "give either --config or --preset, not both");
  }
  ScenarioConfig cfg;
  if (!o.preset.empty()) cfg = preset_by_name(o.preset);
  if (!o.config_path.empty()) cfg = load_config_any(o.config_path);

  if (o.seed) cfg.seed = *o.seed;
  if (o.nodes) cfg.node_count = *o.nodes;
  if (o.duration_s) cfg.duration_s = *o.duration_s;
  if (o.field_m) cfg.field_size_m = *o.field_m;
  if (o.technique) cfg.technique = parse_technique(*o.technique);
  if (o.model) cfg.ids_model = parse_model(*o.model);
  if (o.threshold_db) cfg.radio.sense_threshold_db = *o.threshold_db;
  if (o.e_p_j) cfg.e_p_j = *o.e_p_j;
  if (o.attacker_fraction) cfg.attacker_fraction = *o.attacker_fraction;
  if (o.attack_rate) cfg.attack_rate = *o.attack_rate;
  if (o.timeout_s) cfg.timeout_s = *o.timeout_s;
  if (o.warning_threshold) cfg.warning_threshold = *o.warning_threshold;
  if (o.triad_fraction) cfg.triad_fraction = *o.triad_fraction;
  if (o.bitrate_bps) cfg.bitrate_bps = *o.bitrate_bps;
  if (o.payload_bytes) cfg.payload_bytes = *o.payload_bytes;
  if (o.events) cfg.record_events = true;
  return cfg;
}

// ---------------------------------------------------------------------------
// manifest + output helpers

std::string iso_utc(std::chrono::system_clock::time_point tp) {
  const std::time_t t = std::chrono::system_clock::to_time_t(tp);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct Manifest {
  std::vector<std::string> command;
  std::chrono::system_clock::time_point started;
  std::vector<std::string> outputs;
};

// Wall-clock provenance lives here and only here; the result files stay a
// pure function of the config.  The embedded config snapshot has every
// default materialized, so nothing about the run is implicit.
void write_manifest(const fs::path& dir, const Manifest& m,
                    const ScenarioConfig* cfg) {
  const auto finished = std::chrono::system_clock::now();
  ordered_json j;
  j["tool"] = "wsnsim";
  j["version"] = kToolVersion;
  j["command"] = m.command;
  if (cfg) {
    j["config"] = scenario_to_json(*cfg);
    j["seed"] = cfg->seed;
  }
  j["outputs"] = m.outputs;
  j["started_utc"] = iso_utc(m.started);
  j["finished_utc"] = iso_utc(finished);
  j["wall_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                     finished - m.started)
                     .count();
  write_text_file((dir / "manifest.json").string(), j.dump(2) + "\n");
}

void emit(const fs::path& dir, const std::string& name,
          const std::string& content, Manifest& m) {
  const fs::path p = dir / name;
  write_text_file(p.string(), content);
  m.outputs.push_back(name);
  std::fprintf(stderr, "wsnsim: wrote %s\n", p.string().c_str());
}

std::vector<std::string> collect_args(int argc, char** argv) {
  std::vector<std::string> v;
  v.reserve(static_cast<std::size_t>(argc));
  for (int i = 0; i < argc; ++i) v.emplace_back(argv[i]);
  return v;
}

void print_technique_summary(const TechniqueResult& t) {
  const ConservationCounters& c = t.conservation;
  std::printf("technique=%s\n", technique_name(t.technique));
  std::printf(
      "  packets: generated=%llu delivered=%llu dropped_by_attack=%llu "
      "lost_to_dead=%llu lost_to_jamming=%llu in_flight=%llu alerts=%llu\n",
      static_cast<unsigned long long>(c.generated),
      static_cast<unsigned long long>(c.delivered),
      static_cast<unsigned long long>(c.dropped_by_attack),
      static_cast<unsigned long long>(c.lost_to_dead),
      static_cast<unsigned long long>(c.lost_to_receiver_collision),
      static_cast<unsigned long long>(c.in_flight_at_end),
      static_cast<unsigned long long>(c.alerts_generated));
  std::printf(
      "  monitoring: comparisons=%llu matched=%llu warnings=%zu verdicts=%zu "
      "alerts_sent=%llu\n",
      static_cast<unsigned long long>(t.comparisons),
      static_cast<unsigned long long>(t.observed.good_counter),
      t.warnings.size(), t.verdicts.size(),
      static_cast<unsigned long long>(t.alerts_sent));
  if (t.error_ratio_observed) {
    std::printf("  error_ratio_observed=%.6g\n", *t.error_ratio_observed);
  } else {
    std::printf("  error_ratio_observed=n/a (no comparisons)\n");
  }
  if (t.error_ratio_truth) {
    std::printf("  error_ratio_truth=%.6g\n", *t.error_ratio_truth);
  }
  std::printf("  lifetimes: sum=%.6g s, node_deaths=%zu", t.sum_node_lifetimes_s,
              t.deaths.size());
  if (t.first_ch_death_s) {
    std::printf(", first_head_death=%.6g s", *t.first_ch_death_s);
  }
  std::printf("\n");
}

void print_result_summary(const ScenarioResult& r) {
  std::printf("nodes=%u cells_l1=%zu groups_l2=%zu seed=%llu duration=%.6g s\n",
              r.config.node_count, r.topology.cells_l1.size(),
              r.topology.cells_l2.size(),
              static_cast<unsigned long long>(r.config.seed),
              r.config.duration_s);
  for (const TechniqueResult& t : r.techniques) print_technique_summary(t);
}

// ---------------------------------------------------------------------------
// subcommands

int cmd_simulate(const Overrides& o, const fs::path& out_dir,
                 Manifest manifest) {
  ScenarioConfig cfg = build_config(o);
  std::fprintf(stderr, "wsnsim: simulating %u nodes for %g s (seed %llu)\n",
               cfg.node_count, cfg.duration_s,
               static_cast<unsigned long long>(cfg.seed));
  const ScenarioResult res = run_scenario(cfg);

  emit(out_dir, "result.json", render_result_json(res), manifest);
  emit(out_dir, "lifetimes.csv", render_lifetimes_csv(res.techniques.front()),
       manifest);
  if (res.techniques.size() > 1) {
    for (const TechniqueResult& t : res.techniques) {
      emit(out_dir,
           std::string("lifetimes_") + technique_name(t.technique) + ".csv",
           render_lifetimes_csv(t), manifest);
    }
  }
  if (res.event_log_enabled) {
    emit(out_dir, "events.log", render_events_log(res), manifest);
  }
  write_manifest(out_dir, manifest, &cfg);
  print_result_summary(res);
  return 0;
}

int cmd_compare(const Overrides& o, const fs::path& out_dir,
                Manifest manifest) {
  ScenarioConfig cfg = build_config(o);
  // The comparison contrasts install models, not techniques; run one
  // technique on both models with the same seed.
  if (cfg.technique == TechniqueChoice::Both) {
    cfg.technique = TechniqueChoice::Improved;
  }
  ScenarioConfig hier_cfg = cfg;
  hier_cfg.ids_model = IdsModel::Hierarchical;
  ScenarioConfig flat_cfg = cfg;
  flat_cfg.ids_model = IdsModel::Flat;

  std::fprintf(stderr, "wsnsim: comparing install models (%u nodes, seed "
                       "%llu)\n",
               cfg.node_count, static_cast<unsigned long long>(cfg.seed));
  const ScenarioResult hier = run_scenario(hier_cfg);
  const ScenarioResult flat = run_scenario(flat_cfg);
  const ModelComparison cmp = compare_models(hier, flat);

  const NodeLifetimeDelta* best = nullptr;
  for (const NodeLifetimeDelta& row : cmp.rows) {
    if (!best || row.delta_s > best->delta_s) best = &row;
  }

  ordered_json j;
  j["total_delta_s"] = cmp.sum_hierarchical_s - cmp.sum_flat_s;
  j["energy_saved_j"] = cmp.energy_saved_j;
  j["installs_hierarchical"] = cmp.installs_hierarchical;
  j["installs_flat"] = cmp.installs_flat;
  j["install_cost_hierarchical_j"] = cmp.install_cost_hierarchical_j;
  j["install_cost_flat_j"] = cmp.install_cost_flat_j;
  j["sum_lifetime_hierarchical_s"] = cmp.sum_hierarchical_s;
  j["sum_lifetime_flat_s"] = cmp.sum_flat_s;
  if (best) {
    j["argmax_node"] = best->id;
    j["argmax_delta_s"] = best->delta_s;
  }

  emit(out_dir, "compare.csv", render_compare_csv(cmp), manifest);
  emit(out_dir, "compare_summary.json", j.dump(2) + "\n", manifest);
  write_manifest(out_dir, manifest, &cfg);

  std::printf("installs: hierarchical=%u flat=%u, energy_saved=%.6g J\n",
              cmp.installs_hierarchical, cmp.installs_flat,
              cmp.energy_saved_j);
  std::printf("sum lifetime: hierarchical=%.6g s flat=%.6g s delta=%.6g s\n",
              cmp.sum_hierarchical_s, cmp.sum_flat_s,
              cmp.sum_hierarchical_s - cmp.sum_flat_s);
  if (best) {
    std::printf("largest gain: node %u (+%.6g s)\n", best->id, best->delta_s);
  }
  return 0;
}

std::vector<double> parse_threshold_list(const std::string& s) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t comma = std::min(s.find(',', pos), s.size());
    const std::string tok = s.substr(pos, comma - pos);
    if (!tok.empty()) {
      try {
        std::size_t used = 0;
        out.push_back(std::stod(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw ConfigError("thresholds", "bad threshold '" + tok + "'");
      }
    }
    pos = comma + 1;
  }
  return out;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& s) {
  std::vector<std::uint64_t> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t comma = std::min(s.find(',', pos), s.size());
    std::string tok = s.substr(pos, comma - pos);
    if (!tok.empty()) {
      try {
        const std::size_t dash = tok.find('-');
        if (dash != std::string::npos) {
          const std::uint64_t lo = std::stoull(tok.substr(0, dash));
          const std::uint64_t hi = std::stoull(tok.substr(dash + 1));
          if (hi < lo) throw std::invalid_argument(tok);
          for (std::uint64_t v = lo; v <= hi; ++v) out.push_back(v);
        } else {
          out.push_back(std::stoull(tok));
        }
      } catch (const std::exception&) {
        throw ConfigError("seeds", "bad seed token '" + tok + "'");
      }
    }
    pos = comma + 1;
  }
  return out;
}

int cmd_radius_sweep(const Overrides& o, const std::string& thresholds,
                     const std::string& seeds, int workers,
                     const fs::path& out_dir, Manifest manifest) {
  Overrides base = o;
  if (base.config_path.empty() && base.preset.empty()) {
    base.preset = "radius";  // the experiment this sweep exists for
  }
  SweepSpec spec;
  spec.base = build_config(base);
  spec.thresholds_db = parse_threshold_list(thresholds);
  spec.seeds = parse_seed_list(seeds);

  std::fprintf(stderr,
               "wsnsim: sweeping %zu thresholds x 2 techniques x %zu seeds "
               "(%d worker%s)\n",
               spec.thresholds_db.size(), spec.seeds.size(), workers,
               workers == 1 ? "" : "s");
  const SweepResult res = run_radius_sweep(spec, workers);

  emit(out_dir, "radius_sweep.csv", render_radius_sweep_csv(res), manifest);
  emit(out_dir, "radius_sweep_runs.csv",
       render_radius_sweep_runs_csv(res, spec), manifest);
  write_manifest(out_dir, manifest, &spec.base);

  std::printf("%-14s %-14s %s\n", "threshold_db", "technique",
              "mean_error_ratio");
  for (const SweepCell& c : res.cells) {
    std::printf("%-14.6g %-14s %.6g\n", c.threshold_db,
                technique_name(c.technique), c.mean_error);
  }
  return 0;
}

int cmd_table3(const std::optional<double>& timeout_override,
               const std::optional<std::string>& out_dir_opt,
               Manifest manifest) {
  const Table3Outcome out = run_table3(timeout_override);
  std::fputs(render_table3_text(out).c_str(), stdout);
  if (out_dir_opt) {
    const fs::path dir = *out_dir_opt;
    emit(dir, "table3.csv", render_table3_csv(out), manifest);
    write_manifest(dir, manifest, nullptr);
  }
  if (!out.all_match) {
    std::fprintf(stderr, "wsnsim: first mismatching scenario: %s\n",
                 out.first_mismatch ? out.first_mismatch->c_str() : "?");
    return 2;
  }
  return 0;
}

int cmd_report(const std::string& result_path, bool replay) {
  std::ifstream f(result_path);
  if (!f) throw ConfigError("result", "cannot open '" + result_path + "'");
  std::string original((std::istreambuf_iterator<char>(f)),
                       std::istreambuf_iterator<char>());
  json j;
  try {
    j = json::parse(original);
  } catch (const json::parse_error& e) {
    throw ConfigError("result", std::string("parse failure: ") + e.what());
  }
  if (!j.contains("config")) {
    throw ConfigError("result", "not a result file (no embedded config)");
  }

  const ScenarioConfig cfg = scenario_from_json(j["config"]);
  std::printf("result file: %s\n", result_path.c_str());
  std::printf("nodes=%u seed=%llu duration=%.6g s technique(s):",
              cfg.node_count, static_cast<unsigned long long>(cfg.seed),
              cfg.duration_s);
  for (const json& t : j["techniques"]) {
    std::printf(" %s", t["technique"].get<std::string>().c_str());
  }
  std::printf("\n");
  for (const json& t : j["techniques"]) {
    std::printf("technique=%s: generated=%llu delivered=%llu warnings=%zu "
                "verdicts=%zu\n",
                t["technique"].get<std::string>().c_str(),
                t["conservation"]["generated"].get<unsigned long long>(),
                t["conservation"]["delivered"].get<unsigned long long>(),
                t["warnings"].size(), t["verdicts"].size());
  }

  if (replay) {
    std::fprintf(stderr, "wsnsim: replaying embedded config...\n");
    const ScenarioResult res = run_scenario(cfg);
    const std::string rendered = render_result_json(res);
    if (rendered == original) {
      std::printf("replay: byte-identical\n");
      return 0;
    }
    std::printf("replay: DIFFERS from the stored result\n");
    return 2;
  }
  return 0;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"wsnsim: deterministic sensor-network watchdog simulator"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  std::string out_dir = "out";
  app.add_option("--out", out_dir, "output directory")
      ->envname("WSNSIM_OUT")
      ->capture_default_str();

  Overrides o;

  CLI::App* sim = app.add_subcommand(
      "simulate", "run one scenario and write result files");
  add_config_options(sim, o);

  CLI::App* cmp = app.add_subcommand(
      "compare",
      "run the same scenario under hierarchical and flat installs");
  add_config_options(cmp, o);

  CLI::App* sweep = app.add_subcommand(
      "radius-sweep", "mean error ratio per sensing threshold and technique");
  add_config_options(sweep, o);
  std::string thresholds = "-60,-75,-78";
  std::string seeds = "1-10";
  int workers = 1;
  sweep->add_option("--thresholds", thresholds,
                    "comma-separated dB thresholds")
      ->capture_default_str();
  sweep->add_option("--seeds", seeds, "comma list and/or lo-hi ranges")
      ->capture_default_str();
  sweep->add_option("--workers", workers,
                    "parallel simulation workers (1 = serial reference)")
      ->capture_default_str();

  CLI::App* t3 = app.add_subcommand(
      "table3", "run the six canned head-to-head scenarios");
  std::optional<double> t3_timeout;
  bool t3_write = false;
  t3->add_option("--override-timeout", t3_timeout,
                 "replace every scenario's watchdog timeout (testing aid)");
  t3->add_flag("--write", t3_write, "also write table3.csv to the output dir");

  CLI::App* rep = app.add_subcommand(
      "report", "summarize a result.json; optionally verify it replays");
  std::string result_path;
  bool replay = false;
  rep->add_option("result", result_path, "path to result.json")->required();
  rep->add_flag("--replay", replay,
                "re-run the embedded config and require byte-identical output");

  // global options (--out) may also appear after the subcommand name
  for (CLI::App* sub : {sim, cmp, sweep, t3, rep}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help/--version exit 0; any real parse problem is a config error (1)
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  Manifest manifest;
  manifest.command = collect_args(argc, argv);
  manifest.started = std::chrono::system_clock::now();

  try {
    if (sim->parsed()) return cmd_simulate(o, out_dir, manifest);
    if (cmp->parsed()) return cmd_compare(o, out_dir, manifest);
    if (sweep->parsed()) {
      return cmd_radius_sweep(o, thresholds, seeds, workers, out_dir,
                              manifest);
    }
    if (t3->parsed()) {
      std::optional<std::string> dir;
      if (t3_write) dir = out_dir;
      return cmd_table3(t3_timeout, dir, manifest);
    }
    if (rep->parsed()) return cmd_report(result_path, replay);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "wsnsim: config error: %s\n", e.what());
    return 1;
  } catch (const SimError& e) {
    std::fprintf(stderr, "wsnsim: error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "wsnsim: unexpected error: %s\n", e.what());
    return 1;
  }
  return 0;
}

}  // namespace wsn
