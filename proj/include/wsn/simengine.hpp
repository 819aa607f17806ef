#pragma once

#include <map>
#include <vector>

#include "wsn/result.hpp"
#include "wsn/scenario.hpp"

// Discrete-event core.  run_scenario() derives positions, boot charges,
// topology, routes and the attacker set from the config, then executes one
// event-driven run per requested technique.  Runs for different techniques
// share all traffic-side randomness (placement, phases, attack draws), so
// generated/dropped counts are monitor-independent by construction.

namespace wsn {

// Attacks actually in force for a run: the explicit list plus selective
// forwarders sampled via attacker_fraction.  Exposed for tests.
std::vector<AttackConfig> effective_attacks(const ScenarioConfig& cfg);

// Deterministic positions for ids 0..node_count (the last entry is the base
// station).  Explicit overrides in the config win over seeded draws.
std::vector<Position> derive_positions(const ScenarioConfig& cfg);

// Deterministic boot charges for sensors 0..node_count-1.
std::vector<double> derive_boot_energy(const ScenarioConfig& cfg);

ScenarioResult run_scenario(const ScenarioConfig& cfg);

}  // namespace wsn
