#include "wsn/presets.hpp"

#include "wsn/errors.hpp"

namespace wsn {

ScenarioConfig preset_baseline() {
  ScenarioConfig c;
  c.node_count = 100;
  c.duration_s = 200.0;
  c.technique = TechniqueChoice::Both;
  c.ids_model = IdsModel::Hierarchical;
  c.e_p_j = 1.0;
  c.seed = 1;
  return c;
}

ScenarioConfig preset_radius() {
  ScenarioConfig c;
  c.node_count = 100;
  c.duration_s = 900.0;
  c.technique = TechniqueChoice::Both;
  c.ids_model = IdsModel::Hierarchical;
  c.e_p_j = 1.0;
  c.seed = 1;

  // Slow radio: 10 ms frames instead of 2 ms, so concurrent transmissions
  // actually overlap and the collision force scales with how much of the
  // field a monitor can hear.
  c.bitrate_bps = 50000.0;
  c.collision_model = CollisionModel::Overlap;

  // All plain-node traffic stays inside the cell (short hops a small radius
  // can still cover); head-originated reports travel the long ladder.
  c.triad_fraction = 1.0;

  // Tight budgets: a monitor that promiscuously decodes most of the field
  // runs dry mid-run, which is the point of the experiment.
  c.boot_time_min_s = 35000.0;
  c.boot_time_max_s = 70000.0;

  c.attacker_fraction = 0.10;
  c.attack_rate = 0.8;
  c.radio.sense_threshold_db = -75.0;
  return c;
}

ScenarioConfig preset_compare() {
  ScenarioConfig c;
  c.node_count = 100;
  c.duration_s = 200.0;
  c.technique = TechniqueChoice::Improved;
  c.ids_model = IdsModel::Hierarchical;
  c.e_p_j = 1.0;
  c.seed = 1;
  return c;
}

ScenarioConfig preset_attack_demo() {
  ScenarioConfig c;
  c.node_count = 100;
  c.duration_s = 300.0;
  c.technique = TechniqueChoice::Both;
  c.ids_model = IdsModel::Hierarchical;
  c.e_p_j = 1.0;
  c.attacker_fraction = 0.05;
  c.attack_rate = 1.0;
  c.seed = 7;
  return c;
}

ScenarioConfig preset_by_name(const std::string& name) {
  if (name == "baseline") return preset_baseline();
  if (name == "radius") return preset_radius();
  if (name == "compare") return preset_compare();
  if (name == "attack-demo") return preset_attack_demo();
  std::string known;
  for (const std::string& n : preset_names()) {
    if (!known.empty()) known += ", ";
    known += n;
  }
  throw ConfigError("preset", "unknown preset '" + name + "' (known: " +
                                  known + ")");
}

std::vector<std::string> preset_names() {
  return {"baseline", "radius", "compare", "attack-demo"};
}

}  // namespace wsn
