#include "wsn/result_io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "wsn/errors.hpp"
#include "wsn/scenario.hpp"

namespace wsn {

using nlohmann::ordered_json;

const TechniqueResult& ScenarioResult::technique(Technique t) const {
  for (const TechniqueResult& r : techniques) {
    if (r.technique == t) return r;
  }
  throw SimError(std::string("result holds no run for the ") +
                 technique_name(t) + " technique");
}

namespace {

// CSV numbers: 9 significant digits, locale-independent.
std::string num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

ordered_json json_or_null(const std::optional<double>& v) {
  if (v) return *v;
  return nullptr;
}

ordered_json topology_json(const Topology& t) {
  ordered_json j;
  j["base_station"] = t.base_station;
  ordered_json l1 = ordered_json::array();
  for (const L1Cell& c : t.cells_l1) {
    l1.push_back(
        {{"id", c.id}, {"head", c.head}, {"members", c.members}});
  }
  j["cells_l1"] = std::move(l1);
  ordered_json l2 = ordered_json::array();
  for (const L2Cell& c : t.cells_l2) {
    ordered_json e;
    e["id"] = c.id;
    e["head"] = c.head;
    e["l1_cell_ids"] = c.l1_cell_ids;
    e["member_heads"] = c.member_heads;
    if (t.regional_of_l2[c.id]) {
      e["regional"] = *t.regional_of_l2[c.id];
    } else {
      e["regional"] = nullptr;
    }
    l2.push_back(std::move(e));
  }
  j["cells_l2"] = std::move(l2);
  j["regionals"] = t.regionals;
  return j;
}

ordered_json technique_json(const TechniqueResult& r) {
  ordered_json j;
  j["technique"] = technique_name(r.technique);
  j["observed"] = {{"good", r.observed.good_counter},
                   {"bad", r.observed.bad_counter}};
  j["truth"] = {{"good", r.truth.good_counter}, {"bad", r.truth.bad_counter}};
  j["error_ratio_observed"] = json_or_null(r.error_ratio_observed);
  j["error_ratio_truth"] = json_or_null(r.error_ratio_truth);
  j["conservation"] = {
      {"generated", r.conservation.generated},
      {"delivered", r.conservation.delivered},
      {"dropped_by_attack", r.conservation.dropped_by_attack},
      {"lost_to_dead", r.conservation.lost_to_dead},
      {"lost_to_receiver_collision",
       r.conservation.lost_to_receiver_collision},
      {"in_flight_at_end", r.conservation.in_flight_at_end},
      {"alerts_generated", r.conservation.alerts_generated}};
  j["buffer"] = {{"created", r.buffer_totals.created},
                 {"matched", r.buffer_totals.matched},
                 {"expired", r.buffer_totals.expired},
                 {"evicted", r.buffer_totals.evicted},
                 {"discarded", r.buffer_totals.discarded},
                 {"expired_after_warning",
                  r.buffer_totals.expired_after_warning},
                 {"pending_at_end", r.expectations_pending_at_end}};
  j["comparisons"] = r.comparisons;
  j["alerts_sent"] = r.alerts_sent;
  j["sum_node_lifetimes_s"] = r.sum_node_lifetimes_s;
  j["first_ch_death_s"] = json_or_null(r.first_ch_death_s);

  ordered_json warnings = ordered_json::array();
  for (const Warning& w : r.warnings) {
    warnings.push_back({{"time", w.time},
                        {"monitor", w.monitor},
                        {"suspect", w.suspect},
                        {"kind", warning_kind_name(w.kind)}});
  }
  j["warnings"] = std::move(warnings);

  ordered_json verdicts = ordered_json::array();
  for (const VerdictRecord& v : r.verdicts) {
    verdicts.push_back(
        {{"time", v.time}, {"monitor", v.monitor}, {"suspect", v.suspect}});
  }
  j["verdicts"] = std::move(verdicts);

  ordered_json deaths = ordered_json::array();
  for (const DeathRecord& d : r.deaths) {
    deaths.push_back({{"time", d.time}, {"node", d.node}});
  }
  j["deaths"] = std::move(deaths);

  ordered_json nodes = ordered_json::array();
  for (const NodeRecord& n : r.nodes) {
    ordered_json e;
    e["id"] = n.id;
    e["x"] = n.pos.x;
    e["y"] = n.pos.y;
    e["role"] = role_name(n.role);
    e["d_bs_m"] = n.d_bs_m;
    e["e_i_j"] = n.e_i_j;
    e["e_p_paid_j"] = n.e_p_paid_j;
    e["e_it_j_per_s"] = n.e_it_j_per_s;
    e["lifetime_projected_s"] = n.lifetime_projected_s;
    e["consumed_j"] = n.consumed_j;
    e["death_time_s"] = json_or_null(n.death_time_s);
    nodes.push_back(std::move(e));
  }
  j["nodes"] = std::move(nodes);
  return j;
}

}  // namespace

ordered_json result_to_json(const ScenarioResult& r) {
  ordered_json j;
  j["config"] = scenario_to_json(r.config);
  j["topology"] = topology_json(r.topology);
  ordered_json techs = ordered_json::array();
  for (const TechniqueResult& t : r.techniques) {
    techs.push_back(technique_json(t));
  }
  j["techniques"] = std::move(techs);
  if (r.event_log_enabled) {
    ordered_json log = ordered_json::array();
    for (const EventLogLine& l : r.event_log) {
      log.push_back({{"time", l.time}, {"text", l.text}});
    }
    j["event_log"] = std::move(log);
  }
  return j;
}

std::string render_result_json(const ScenarioResult& r) {
  return result_to_json(r).dump(2) + "\n";
}

std::string render_lifetimes_csv(const TechniqueResult& r) {
  std::string out =
      "id,x,y,role,d_bs_m,e_i_j,e_it_j_per_s,lifetime_s\n";
  for (const NodeRecord& n : r.nodes) {
    out += std::to_string(n.id);
    out += ',';
    out += num(n.pos.x);
    out += ',';
    out += num(n.pos.y);
    out += ',';
    out += role_name(n.role);
    out += ',';
    out += num(n.d_bs_m);
    out += ',';
    out += num(n.e_i_j);
    out += ',';
    out += num(n.e_it_j_per_s);
    out += ',';
    out += num(n.lifetime_projected_s);
    out += '\n';
  }
  return out;
}

std::string render_histogram_csv(const std::vector<HistogramBucket>& buckets) {
  std::string out = "lo_s,hi_s,count,share\n";
  for (const HistogramBucket& b : buckets) {
    out += num(b.lo);
    out += ',';
    out += num(b.hi);
    out += ',';
    out += std::to_string(b.count);
    out += ',';
    out += num(b.share);
    out += '\n';
  }
  return out;
}

std::string render_compare_csv(const ModelComparison& c) {
  std::string out = "id,lifetime_hierarchical_s,lifetime_flat_s,delta_s\n";
  for (const NodeLifetimeDelta& d : c.rows) {
    out += std::to_string(d.id);
    out += ',';
    out += num(d.hierarchical_s);
    out += ',';
    out += num(d.flat_s);
    out += ',';
    out += num(d.delta_s);
    out += '\n';
  }
  out += "total,";
  out += num(c.sum_hierarchical_s);
  out += ',';
  out += num(c.sum_flat_s);
  out += ',';
  out += num(c.sum_hierarchical_s - c.sum_flat_s);
  out += '\n';
  return out;
}

std::string render_events_log(const ScenarioResult& r) {
  std::string out;
  char head[64];
  for (const EventLogLine& l : r.event_log) {
    std::snprintf(head, sizeof head, "t=%012.6f  ", l.time);
    out += head;
    out += l.text;
    out += '\n';
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
    if (ec) {
      throw SimError("cannot create directory '" + p.parent_path().string() +
                     "': " + ec.message());
    }
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SimError("cannot open '" + path + "' for writing");
  out << content;
  out.close();
  if (!out) throw SimError("failed writing '" + path + "'");
}

}  // namespace wsn
