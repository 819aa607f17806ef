#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wsn/energy.hpp"
#include "wsn/hierarchy.hpp"
#include "wsn/netmodel.hpp"
#include "wsn/watchdog.hpp"

// Everything a run needs, in one declarative struct.  A ScenarioConfig plus a
// seed fully determines a run: same config + same seed => byte-identical
// results.  The JSON form round-trips with all defaults materialized, so a
// result file always embeds the complete effective configuration.

namespace wsn {

enum class AttackKind : std::uint8_t {
  SelectiveForwarding,  // attacker drops packets it should relay
  Modification,         // attacker forwards with one byte flipped
  Collusion,            // attacker drops; a partner fakes the forward
  CollisionAtMonitor,   // corrupts nearby monitors' view of honest forwards
  ReceiverCollision,    // jams a victim's receiver; deliveries to it are lost
};

const char* attack_kind_name(AttackKind k);

struct AttackConfig {
  AttackKind kind = AttackKind::SelectiveForwarding;
  NodeId attacker = 0;
  double rate = 1.0;                  // probability per opportunity
  std::optional<NodeId> partner;      // Collusion only
  std::optional<NodeId> victim;       // ReceiverCollision only
  double start_s = 0.0;
  double end_s = std::numeric_limits<double>::infinity();

  bool active_at(double t) const { return t >= start_s && t < end_s; }
};

enum class TechniqueChoice : std::uint8_t { Conventional, Improved, Both };

// An explicitly routed packet flow; when any are given they replace the
// derived traffic entirely (used by the canned attack scenarios).
struct FlowConfig {
  std::vector<NodeId> path;  // origin, relays..., destination
};

enum class CollisionModel : std::uint8_t {
  None,     // observations never collide on their own
  Overlap,  // frames overlapping in the air blind every monitor in range of
            // both transmitters (deliveries are unaffected)
};

const char* collision_model_name(CollisionModel m);

struct ScenarioConfig {
  // Population and geometry.  node_count counts sensors; the base station is
  // one extra device with id node_count.
  std::uint32_t node_count = 100;
  double field_size_m = 100.0;
  Position bs_position{50.0, 50.0};
  std::map<NodeId, Position> positions;     // explicit override (else seeded)
  std::map<NodeId, double> boot_times_s;    // explicit override (else seeded)
  double boot_time_min_s = 5.0e5;
  double boot_time_max_s = 1.0e6;

  // Time and traffic.
  double duration_s = 200.0;
  std::uint32_t payload_bytes = 64;
  std::uint32_t header_bits = 0;
  double hop_latency_s = 0.1;
  double bitrate_bps = 250000.0;  // airtime of a frame = size_bits / bitrate
  double triad_fraction = 0.3;    // share of in-cell relay traffic
  std::vector<FlowConfig> flows;  // explicit flows replace derived traffic

  // Models.
  EnergyParams energy;
  TrafficRates rates;
  RadioModel radio;
  LayeringRule layering;
  CollisionModel collision_model = CollisionModel::None;

  // Detection.
  TechniqueChoice technique = TechniqueChoice::Improved;
  IdsModel ids_model = IdsModel::Hierarchical;
  double e_p_j = 0.0;              // IDS install cost per node
  std::uint32_t warning_threshold = 5;
  std::optional<std::uint32_t> conventional_warning_threshold;
  double timeout_s = 2.0;
  std::uint32_t buffer_capacity = 64;
  double per_comparison_cost_j = 0.0;

  // Attacks.  attacker_fraction > 0 additionally designates that share of
  // sensors (seeded pick) as selective-forwarding attackers at attack_rate.
  std::vector<AttackConfig> attacks;
  double attacker_fraction = 0.0;
  double attack_rate = 1.0;

  std::uint64_t seed = 1;

  // Keep a human-readable event trace in the result (capped; costs memory).
  bool record_events = false;

  NodeId base_station_id() const { return node_count; }
  std::uint32_t conv_threshold() const {
    return conventional_warning_threshold.value_or(warning_threshold);
  }

  // Throws ConfigError (naming the offending field) on any bad value.
  void validate() const;
};

ScenarioConfig scenario_from_json(const nlohmann::json& j);
nlohmann::ordered_json scenario_to_json(const ScenarioConfig& cfg);
ScenarioConfig load_scenario_file(const std::string& path);

}  // namespace wsn
