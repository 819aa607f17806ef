#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wsn/hierarchy.hpp"
#include "wsn/netmodel.hpp"
#include "wsn/scenario.hpp"
#include "wsn/watchdog.hpp"

// Outputs of a run.  Everything here is a pure function of (config, seed), so
// serializing a ScenarioResult twice yields byte-identical files.

namespace wsn {

// Forwarding tallies in the sense of the error-ratio metric: good counts
// packets seen forwarded faithfully, bad counts packets deemed not forwarded
// (dropped or tampered).  One instance holds the monitors' view, another the
// ground truth reconstructed from the attack log.
struct ForwardCounters {
  std::uint64_t good_counter = 0;
  std::uint64_t bad_counter = 0;
};

struct NodeRecord {
  NodeId id = 0;
  Position pos;
  NodeRole role = NodeRole::Plain;
  double d_bs_m = 0.0;        // distance to the base station
  double e_i_j = 0.0;         // boot charge
  double e_p_paid_j = 0.0;    // IDS install cost actually debited
  double e_it_j_per_s = 0.0;  // steady-state burn at d_bs under config rates
  double lifetime_projected_s = 0.0;  // (e_i - e_p_paid) / e_it
  double consumed_j = 0.0;            // simulated consumption
  std::optional<double> death_time_s;
};

struct VerdictRecord {
  double time = 0.0;
  NodeId monitor = 0;
  NodeId suspect = 0;
};

struct DeathRecord {
  double time = 0.0;
  NodeId node = 0;
};

// Packet conservation: generated = delivered + dropped_by_attack +
// lost_to_dead + lost_to_receiver_collision + in_flight_at_end.  Alert
// packets emitted by monitors are included and also counted separately.
struct ConservationCounters {
  std::uint64_t generated = 0;
  std::uint64_t delivered = 0;
  std::uint64_t dropped_by_attack = 0;
  std::uint64_t lost_to_dead = 0;
  std::uint64_t lost_to_receiver_collision = 0;
  std::uint64_t in_flight_at_end = 0;
  std::uint64_t alerts_generated = 0;
};

struct TechniqueResult {
  Technique technique = Technique::Improved;
  std::vector<NodeRecord> nodes;  // sensors only, sorted by id
  ForwardCounters observed;       // what the monitors saw
  ForwardCounters truth;          // reconstructed from the attack log
  std::optional<double> error_ratio_observed;
  std::optional<double> error_ratio_truth;
  std::vector<Warning> warnings;
  std::vector<VerdictRecord> verdicts;
  std::vector<DeathRecord> deaths;
  ConservationCounters conservation;
  BufferStats buffer_totals;      // summed over all monitors
  std::uint64_t expectations_pending_at_end = 0;
  std::uint64_t comparisons = 0;  // payload comparisons performed
  std::uint64_t alerts_sent = 0;
  double sum_node_lifetimes_s = 0.0;  // sum of projected lifetimes
  std::optional<double> first_ch_death_s;
};

struct EventLogLine {
  double time = 0.0;
  std::string text;
};

struct ScenarioResult {
  ScenarioConfig config;
  Topology topology;
  std::vector<TechniqueResult> techniques;  // one per technique executed
  std::vector<EventLogLine> event_log;      // filled only when requested
  bool event_log_enabled = false;

  const TechniqueResult& technique(Technique t) const;
};

}  // namespace wsn
