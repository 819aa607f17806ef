#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wsn/scenario.hpp"
#include "wsn/watchdog.hpp"

namespace wsn {

// The sensing-radius experiment: run the base scenario at every threshold,
// for both techniques, across a set of seeds, and average the observed
// error ratio per (threshold, technique).
//
// Each technique runs under its natural deployment: the conventional
// watchdog on the flat model (every node is its own monitor and pays the
// install cost), the improved watchdog on the hierarchical model.

struct SweepSpec {
  ScenarioConfig base;
  std::vector<double> thresholds_db;
  std::vector<std::uint64_t> seeds;
};

struct SweepCell {
  double threshold_db = 0.0;
  Technique technique = Technique::Conventional;
  std::vector<double> per_seed_error;  // same order as spec.seeds
  double mean_error = 0.0;
};

struct SweepResult {
  std::vector<SweepCell> cells;  // thresholds in spec order x {conv, improved}
};

// workers <= 1 runs the plain serial reference loop; workers > 1 fans the
// independent runs out across OpenMP threads.  Both produce identical
// results: every run lands in a preassigned slot, nothing is shared.
SweepResult run_radius_sweep(const SweepSpec& spec, int workers);

// One row per (threshold, technique) with the mean over seeds.
std::string render_radius_sweep_csv(const SweepResult&);
// One row per individual run.
std::string render_radius_sweep_runs_csv(const SweepResult&,
                                         const SweepSpec&);

}  // namespace wsn
