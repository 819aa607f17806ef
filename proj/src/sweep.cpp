#include "wsn/sweep.hpp"

#include <cstdio>

#include <omp.h>

#include "wsn/errors.hpp"
#include "wsn/metrics.hpp"
#include "wsn/simengine.hpp"

namespace wsn {

namespace {

constexpr Technique kTechniques[2] = {Technique::Conventional,
                                      Technique::Improved};

ScenarioConfig cell_config(const SweepSpec& spec, double threshold_db,
                           Technique tech, std::uint64_t seed) {
  ScenarioConfig c = spec.base;
  c.radio.sense_threshold_db = threshold_db;
  c.seed = seed;
  if (tech == Technique::Conventional) {
    c.technique = TechniqueChoice::Conventional;
    c.ids_model = IdsModel::Flat;
  } else {
    c.technique = TechniqueChoice::Improved;
    c.ids_model = IdsModel::Hierarchical;
  }
  return c;
}

double one_run(const SweepSpec& spec, double threshold_db, Technique tech,
               std::uint64_t seed) {
  const ScenarioResult r =
      run_scenario(cell_config(spec, threshold_db, tech, seed));
  const TechniqueResult& tr = r.technique(tech);
  // A run whose monitors never completed a single comparison has no error
  // ratio; report it as zero rather than poisoning the mean.
  return tr.error_ratio_observed.value_or(0.0);
}

}  // namespace

SweepResult run_radius_sweep(const SweepSpec& spec, int workers) {
  if (spec.thresholds_db.empty()) {
    throw ConfigError("thresholds", "at least one threshold is required");
  }
  if (spec.seeds.empty()) {
    throw ConfigError("seeds", "at least one seed is required");
  }
  spec.base.validate();

  SweepResult out;
  out.cells.resize(spec.thresholds_db.size() * 2);
  for (std::size_t ti = 0; ti < spec.thresholds_db.size(); ++ti) {
    for (std::size_t k = 0; k < 2; ++k) {
      SweepCell& cell = out.cells[ti * 2 + k];
      cell.threshold_db = spec.thresholds_db[ti];
      cell.technique = kTechniques[k];
      cell.per_seed_error.assign(spec.seeds.size(), 0.0);
    }
  }

  // Flattened run list: every (cell, seed) is one independent simulation
  // with a preassigned result slot, so the execution order cannot matter.
  const std::size_t n_runs = out.cells.size() * spec.seeds.size();
  if (workers <= 1) {
    for (std::size_t i = 0; i < n_runs; ++i) {
      const std::size_t ci = i / spec.seeds.size();
      const std::size_t si = i % spec.seeds.size();
      out.cells[ci].per_seed_error[si] =
          one_run(spec, out.cells[ci].threshold_db, out.cells[ci].technique,
                  spec.seeds[si]);
    }
  } else {
#pragma omp parallel for schedule(dynamic) num_threads(workers)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n_runs); ++i) {
      const std::size_t ci = static_cast<std::size_t>(i) / spec.seeds.size();
      const std::size_t si = static_cast<std::size_t>(i) % spec.seeds.size();
      out.cells[ci].per_seed_error[si] =
          one_run(spec, out.cells[ci].threshold_db, out.cells[ci].technique,
                  spec.seeds[si]);
    }
  }

  for (SweepCell& cell : out.cells) {
    cell.mean_error = mean_of(cell.per_seed_error);
  }
  return out;
}

std::string render_radius_sweep_csv(const SweepResult& res) {
  std::string s = "threshold_db,technique,mean_error_ratio\n";
  char line[128];
  for (const SweepCell& c : res.cells) {
    std::snprintf(line, sizeof(line), "%.9g,%s,%.9g\n", c.threshold_db,
                  technique_name(c.technique), c.mean_error);
    s += line;
  }
  return s;
}

std::string render_radius_sweep_runs_csv(const SweepResult& res,
                                         const SweepSpec& spec) {
  std::string s = "threshold_db,technique,seed,error_ratio\n";
  char line[128];
  for (const SweepCell& c : res.cells) {
    for (std::size_t si = 0; si < c.per_seed_error.size(); ++si) {
      std::snprintf(line, sizeof(line), "%.9g,%s,%llu,%.9g\n", c.threshold_db,
                    technique_name(c.technique),
                    static_cast<unsigned long long>(spec.seeds[si]),
                    c.per_seed_error[si]);
      s += line;
    }
  }
  return s;
}

}  // namespace wsn
