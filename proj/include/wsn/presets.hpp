#pragma once

#include <string>
#include <vector>

#include "wsn/scenario.hpp"

namespace wsn {

// Ready-made scenario configurations for the experiments the tool exists to
// run.  Every preset is a plain ScenarioConfig: load it, override fields,
// run it.

// Honest 100-node network, both techniques, hierarchical IDS.  Shows the
// topology build and the zero-false-positive baseline.
ScenarioConfig preset_baseline();

// Base configuration for the sensing-radius experiment: dense air (slow
// radio, overlapping frames), in-cell relay traffic, tight energy budgets
// and 10% selective-forwarding attackers.  The sweep varies threshold,
// technique and seed on top of this.
ScenarioConfig preset_radius();

// Honest network for the hierarchical-vs-flat lifetime comparison.
ScenarioConfig preset_compare();

// A handful of full-drop attackers for watching detections happen.
ScenarioConfig preset_attack_demo();

ScenarioConfig preset_by_name(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace wsn
