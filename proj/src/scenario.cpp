#include "wsn/scenario.hpp"

#include <cmath>
#include <fstream>

#include "wsn/errors.hpp"

namespace wsn {

using nlohmann::json;
using nlohmann::ordered_json;

const char* attack_kind_name(AttackKind k) {
  switch (k) {
    case AttackKind::SelectiveForwarding: return "selective_forwarding";
    case AttackKind::Modification: return "modification";
    case AttackKind::Collusion: return "collusion";
    case AttackKind::CollisionAtMonitor: return "collision_at_monitor";
    case AttackKind::ReceiverCollision: return "receiver_collision";
  }
  return "?";
}

const char* collision_model_name(CollisionModel m) {
  return m == CollisionModel::None ? "none" : "overlap";
}

namespace {

AttackKind attack_kind_from(const std::string& s, const std::string& field) {
  if (s == "selective_forwarding") return AttackKind::SelectiveForwarding;
  if (s == "modification") return AttackKind::Modification;
  if (s == "collusion") return AttackKind::Collusion;
  if (s == "collision_at_monitor") return AttackKind::CollisionAtMonitor;
  if (s == "receiver_collision") return AttackKind::ReceiverCollision;
  throw ConfigError(field, "unknown attack kind '" + s + "'");
}

TechniqueChoice technique_from(const std::string& s, const std::string& field) {
  if (s == "conventional") return TechniqueChoice::Conventional;
  if (s == "improved") return TechniqueChoice::Improved;
  if (s == "both") return TechniqueChoice::Both;
  throw ConfigError(field, "unknown technique '" + s + "'");
}

std::string technique_to(TechniqueChoice t) {
  switch (t) {
    case TechniqueChoice::Conventional: return "conventional";
    case TechniqueChoice::Improved: return "improved";
    case TechniqueChoice::Both: return "both";
  }
  return "?";
}

IdsModel model_from(const std::string& s, const std::string& field) {
  if (s == "hierarchical") return IdsModel::Hierarchical;
  if (s == "flat") return IdsModel::Flat;
  throw ConfigError(field, "unknown ids model '" + s + "'");
}

CollisionModel collision_from(const std::string& s, const std::string& field) {
  if (s == "none") return CollisionModel::None;
  if (s == "overlap") return CollisionModel::Overlap;
  throw ConfigError(field, "unknown collision model '" + s + "'");
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(key, "has the wrong type");
  }
}

}  // namespace

void ScenarioConfig::validate() const {
  auto positive = [](double v, const char* f) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ConfigError(f, "must be a positive finite number");
    }
  };
  auto non_negative = [](double v, const char* f) {
    if (v < 0.0 || !std::isfinite(v)) {
      throw ConfigError(f, "must be a non-negative finite number");
    }
  };
  auto unit_interval = [](double v, const char* f) {
    if (!(v >= 0.0 && v <= 1.0)) throw ConfigError(f, "must be in [0, 1]");
  };

  if (node_count < 1) throw ConfigError("node_count", "must be >= 1");
  positive(field_size_m, "field_size_m");
  positive(duration_s, "duration_s");
  if (payload_bytes < 1) throw ConfigError("payload_bytes", "must be >= 1");
  non_negative(hop_latency_s, "hop_latency_s");
  positive(bitrate_bps, "bitrate_bps");
  unit_interval(triad_fraction, "triad_fraction");
  if (boot_time_min_s < 0 || boot_time_max_s < boot_time_min_s) {
    throw ConfigError("boot_time_min_s",
                      "boot time range must satisfy 0 <= min <= max");
  }
  positive(energy.a1, "energy.a1");
  non_negative(energy.a2, "energy.a2");
  positive(energy.n, "energy.n");
  positive(energy.B, "energy.B");
  positive(energy.R, "energy.R");
  positive(energy.I, "energy.I");
  non_negative(rates.r_ri, "rates.r_ri");
  non_negative(rates.r_gi, "rates.r_gi");
  positive(radio.exponent, "radio.exponent");
  if (!std::isfinite(radio.ref_loss_db)) {
    throw ConfigError("radio.ref_loss_db", "must be finite");
  }
  if (!std::isfinite(radio.sense_threshold_db)) {
    throw ConfigError("radio.sense_threshold_db", "must be finite");
  }
  if (layering.max_per_cell_l1 < 1) {
    throw ConfigError("layering.max_per_cell_l1", "must be >= 1");
  }
  if (layering.max_per_cell_l2 < 1) {
    throw ConfigError("layering.max_per_cell_l2", "must be >= 1");
  }
  non_negative(e_p_j, "e_p_j");
  if (warning_threshold < 1) {
    throw ConfigError("warning_threshold", "must be >= 1");
  }
  if (conventional_warning_threshold && *conventional_warning_threshold < 1) {
    throw ConfigError("conventional_warning_threshold", "must be >= 1");
  }
  non_negative(timeout_s, "timeout_s");
  if (buffer_capacity < 1) throw ConfigError("buffer_capacity", "must be >= 1");
  non_negative(per_comparison_cost_j, "per_comparison_cost_j");
  unit_interval(attacker_fraction, "attacker_fraction");
  unit_interval(attack_rate, "attack_rate");

  for (const auto& [id, p] : positions) {
    if (id >= node_count) {
      throw ConfigError("positions", "node id " + std::to_string(id) +
                                         " out of range");
    }
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw ConfigError("positions", "coordinates must be finite");
    }
  }
  for (const auto& [id, t] : boot_times_s) {
    if (id >= node_count) {
      throw ConfigError("boot_times_s", "node id " + std::to_string(id) +
                                            " out of range");
    }
    if (t < 0 || !std::isfinite(t)) {
      throw ConfigError("boot_times_s", "must be non-negative and finite");
    }
  }

  for (std::size_t i = 0; i < attacks.size(); ++i) {
    const AttackConfig& a = attacks[i];
    const std::string f = "attacks[" + std::to_string(i) + "]";
    if (a.attacker >= node_count) {
      throw ConfigError(f + ".attacker", "node id out of range");
    }
    if (!(a.rate >= 0.0 && a.rate <= 1.0)) {
      throw ConfigError(f + ".rate", "must be in [0, 1]");
    }
    if (a.start_s < 0.0 || a.end_s < a.start_s) {
      throw ConfigError(f + ".start_s", "attack window must satisfy 0 <= start <= end");
    }
    if (a.kind == AttackKind::Collusion) {
      if (!a.partner) throw ConfigError(f + ".partner", "collusion needs a partner");
      if (*a.partner >= node_count) {
        throw ConfigError(f + ".partner", "node id out of range");
      }
      if (*a.partner == a.attacker) {
        throw ConfigError(f + ".partner", "partner must differ from attacker");
      }
    }
    if (a.kind == AttackKind::ReceiverCollision) {
      if (!a.victim) throw ConfigError(f + ".victim", "receiver collision needs a victim");
      if (*a.victim > node_count) {  // base station allowed as victim
        throw ConfigError(f + ".victim", "node id out of range");
      }
    }
  }

  for (std::size_t i = 0; i < flows.size(); ++i) {
    const FlowConfig& fl = flows[i];
    const std::string f = "flows[" + std::to_string(i) + "]";
    if (fl.path.size() < 2) throw ConfigError(f, "needs at least two hops");
    for (std::size_t h = 0; h < fl.path.size(); ++h) {
      const NodeId n = fl.path[h];
      if (n > node_count) throw ConfigError(f, "node id out of range");
      if (n == node_count && h + 1 < fl.path.size()) {
        throw ConfigError(f, "the base station can only terminate a path");
      }
      if (h > 0 && n == fl.path[h - 1]) {
        throw ConfigError(f, "consecutive duplicate hops");
      }
    }
    if (fl.path.front() == fl.path.back()) {
      throw ConfigError(f, "origin and destination must differ");
    }
  }
}

ScenarioConfig scenario_from_json(const json& j) {
  ScenarioConfig c;
  c.node_count = get_or<std::uint32_t>(j, "node_count", c.node_count);
  c.field_size_m = get_or<double>(j, "field_size_m", c.field_size_m);
  if (j.contains("bs_position")) {
    c.bs_position.x = get_or<double>(j.at("bs_position"), "x", 0.0);
    c.bs_position.y = get_or<double>(j.at("bs_position"), "y", 0.0);
  }
  if (j.contains("positions")) {
    for (const auto& e : j.at("positions")) {
      const NodeId id = e.at("id").get<NodeId>();
      c.positions[id] = Position{e.at("x").get<double>(), e.at("y").get<double>()};
    }
  }
  if (j.contains("boot_times_s")) {
    for (const auto& e : j.at("boot_times_s")) {
      c.boot_times_s[e.at("id").get<NodeId>()] = e.at("t").get<double>();
    }
  }
  c.boot_time_min_s = get_or<double>(j, "boot_time_min_s", c.boot_time_min_s);
  c.boot_time_max_s = get_or<double>(j, "boot_time_max_s", c.boot_time_max_s);
  c.duration_s = get_or<double>(j, "duration_s", c.duration_s);
  c.payload_bytes = get_or<std::uint32_t>(j, "payload_bytes", c.payload_bytes);
  c.header_bits = get_or<std::uint32_t>(j, "header_bits", c.header_bits);
  c.hop_latency_s = get_or<double>(j, "hop_latency_s", c.hop_latency_s);
  c.bitrate_bps = get_or<double>(j, "bitrate_bps", c.bitrate_bps);
  c.triad_fraction = get_or<double>(j, "triad_fraction", c.triad_fraction);
  if (j.contains("flows")) {
    for (const auto& e : j.at("flows")) {
      FlowConfig f;
      f.path = e.at("path").get<std::vector<NodeId>>();
      c.flows.push_back(std::move(f));
    }
  }
  if (j.contains("energy")) {
    const json& e = j.at("energy");
    c.energy.a1 = get_or<double>(e, "a1", c.energy.a1);
    c.energy.a2 = get_or<double>(e, "a2", c.energy.a2);
    c.energy.n = get_or<double>(e, "n", c.energy.n);
    c.energy.B = get_or<double>(e, "B", c.energy.B);
    c.energy.R = get_or<double>(e, "R", c.energy.R);
    c.energy.I = get_or<double>(e, "I", c.energy.I);
  }
  if (j.contains("rates")) {
    c.rates.r_ri = get_or<double>(j.at("rates"), "r_ri", c.rates.r_ri);
    c.rates.r_gi = get_or<double>(j.at("rates"), "r_gi", c.rates.r_gi);
  }
  if (j.contains("radio")) {
    const json& r = j.at("radio");
    c.radio.ref_loss_db = get_or<double>(r, "ref_loss_db", c.radio.ref_loss_db);
    c.radio.exponent = get_or<double>(r, "exponent", c.radio.exponent);
    c.radio.sense_threshold_db =
        get_or<double>(r, "sense_threshold_db", c.radio.sense_threshold_db);
  }
  if (j.contains("layering")) {
    const json& l = j.at("layering");
    c.layering.max_per_cell_l1 =
        get_or<std::uint32_t>(l, "max_per_cell_l1", c.layering.max_per_cell_l1);
    c.layering.max_per_cell_l2 =
        get_or<std::uint32_t>(l, "max_per_cell_l2", c.layering.max_per_cell_l2);
  }
  c.collision_model = collision_from(
      get_or<std::string>(j, "collision_model",
                          collision_model_name(c.collision_model)),
      "collision_model");
  c.technique = technique_from(
      get_or<std::string>(j, "technique", technique_to(c.technique)),
      "technique");
  c.ids_model =
      model_from(get_or<std::string>(j, "ids_model", ids_model_name(c.ids_model)),
                 "ids_model");
  c.e_p_j = get_or<double>(j, "e_p_j", c.e_p_j);
  c.warning_threshold =
      get_or<std::uint32_t>(j, "warning_threshold", c.warning_threshold);
  if (j.contains("conventional_warning_threshold") &&
      !j.at("conventional_warning_threshold").is_null()) {
    c.conventional_warning_threshold =
        j.at("conventional_warning_threshold").get<std::uint32_t>();
  }
  c.timeout_s = get_or<double>(j, "timeout_s", c.timeout_s);
  c.buffer_capacity =
      get_or<std::uint32_t>(j, "buffer_capacity", c.buffer_capacity);
  c.per_comparison_cost_j =
      get_or<double>(j, "per_comparison_cost_j", c.per_comparison_cost_j);
  if (j.contains("attacks")) {
    std::size_t i = 0;
    for (const auto& e : j.at("attacks")) {
      const std::string f = "attacks[" + std::to_string(i++) + "].kind";
      AttackConfig a;
      a.kind = attack_kind_from(e.at("kind").get<std::string>(), f);
      a.attacker = e.at("attacker").get<NodeId>();
      a.rate = get_or<double>(e, "rate", 1.0);
      if (e.contains("partner") && !e.at("partner").is_null()) {
        a.partner = e.at("partner").get<NodeId>();
      }
      if (e.contains("victim") && !e.at("victim").is_null()) {
        a.victim = e.at("victim").get<NodeId>();
      }
      a.start_s = get_or<double>(e, "start_s", 0.0);
      if (e.contains("end_s") && !e.at("end_s").is_null()) {
        a.end_s = e.at("end_s").get<double>();
      }
      c.attacks.push_back(a);
    }
  }
  c.attacker_fraction =
      get_or<double>(j, "attacker_fraction", c.attacker_fraction);
  c.attack_rate = get_or<double>(j, "attack_rate", c.attack_rate);
  c.seed = get_or<std::uint64_t>(j, "seed", c.seed);
  c.record_events = get_or<bool>(j, "record_events", c.record_events);
  return c;
}

ordered_json scenario_to_json(const ScenarioConfig& c) {
  ordered_json j;
  j["node_count"] = c.node_count;
  j["field_size_m"] = c.field_size_m;
  j["bs_position"] = {{"x", c.bs_position.x}, {"y", c.bs_position.y}};
  if (!c.positions.empty()) {
    ordered_json arr = ordered_json::array();
    for (const auto& [id, p] : c.positions) {
      arr.push_back({{"id", id}, {"x", p.x}, {"y", p.y}});
    }
    j["positions"] = std::move(arr);
  }
  if (!c.boot_times_s.empty()) {
    ordered_json arr = ordered_json::array();
    for (const auto& [id, t] : c.boot_times_s) {
      arr.push_back({{"id", id}, {"t", t}});
    }
    j["boot_times_s"] = std::move(arr);
  }
  j["boot_time_min_s"] = c.boot_time_min_s;
  j["boot_time_max_s"] = c.boot_time_max_s;
  j["duration_s"] = c.duration_s;
  j["payload_bytes"] = c.payload_bytes;
  j["header_bits"] = c.header_bits;
  j["hop_latency_s"] = c.hop_latency_s;
  j["bitrate_bps"] = c.bitrate_bps;
  j["triad_fraction"] = c.triad_fraction;
  if (!c.flows.empty()) {
    ordered_json arr = ordered_json::array();
    for (const auto& f : c.flows) arr.push_back({{"path", f.path}});
    j["flows"] = std::move(arr);
  }
  j["energy"] = {{"a1", c.energy.a1}, {"a2", c.energy.a2}, {"n", c.energy.n},
                 {"B", c.energy.B},   {"R", c.energy.R},   {"I", c.energy.I}};
  j["rates"] = {{"r_ri", c.rates.r_ri}, {"r_gi", c.rates.r_gi}};
  j["radio"] = {{"ref_loss_db", c.radio.ref_loss_db},
                {"exponent", c.radio.exponent},
                {"sense_threshold_db", c.radio.sense_threshold_db}};
  j["layering"] = {{"max_per_cell_l1", c.layering.max_per_cell_l1},
                   {"max_per_cell_l2", c.layering.max_per_cell_l2}};
  j["collision_model"] = collision_model_name(c.collision_model);
  j["technique"] = technique_to(c.technique);
  j["ids_model"] = ids_model_name(c.ids_model);
  j["e_p_j"] = c.e_p_j;
  j["warning_threshold"] = c.warning_threshold;
  if (c.conventional_warning_threshold) {
    j["conventional_warning_threshold"] = *c.conventional_warning_threshold;
  } else {
    j["conventional_warning_threshold"] = nullptr;
  }
  j["timeout_s"] = c.timeout_s;
  j["buffer_capacity"] = c.buffer_capacity;
  j["per_comparison_cost_j"] = c.per_comparison_cost_j;
  ordered_json attacks = ordered_json::array();
  for (const AttackConfig& a : c.attacks) {
    ordered_json e;
    e["kind"] = attack_kind_name(a.kind);
    e["attacker"] = a.attacker;
    e["rate"] = a.rate;
    if (a.partner) e["partner"] = *a.partner; else e["partner"] = nullptr;
    if (a.victim) e["victim"] = *a.victim; else e["victim"] = nullptr;
    e["start_s"] = a.start_s;
    if (std::isfinite(a.end_s)) e["end_s"] = a.end_s; else e["end_s"] = nullptr;
    attacks.push_back(std::move(e));
  }
  j["attacks"] = std::move(attacks);
  j["attacker_fraction"] = c.attacker_fraction;
  j["attack_rate"] = c.attack_rate;
  j["seed"] = c.seed;
  j["record_events"] = c.record_events;
  return j;
}

ScenarioConfig load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config", "invalid JSON in '" + path + "': " + e.what());
  }
  return scenario_from_json(j);
}

}  // namespace wsn
