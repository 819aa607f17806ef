#pragma once

#include <cstdint>
#include <vector>

#include "wsn/result.hpp"

// Derived figures: the error-ratio metric, lifetime tables/histograms and the
// hierarchical-vs-flat install comparison.  Pure functions of run results.

namespace wsn {

// Error ratio scaled to a byte: 255 * bad / (bad + good).
// Throws SimError when there is nothing to rate (bad + good == 0).
double error_ratio(const ForwardCounters& c);

// Arithmetic mean; throws SimError on an empty list.
double mean_of(const std::vector<double>& values);

struct LifetimeRow {
  NodeId id = 0;
  double d_bs_m = 0.0;
  double e_i_j = 0.0;
  double e_it_j_per_s = 0.0;
  double lifetime_s = 0.0;
};

std::vector<LifetimeRow> lifetime_table(const TechniqueResult& r);

struct HistogramBucket {
  double lo = 0.0;
  double hi = 0.0;  // +inf for the overflow bucket
  std::uint32_t count = 0;
  double share = 0.0;  // fraction of all samples
};

// Buckets [0, edges[0]), [edges[0], edges[1]), ..., [edges.back(), inf).
// Edges must be strictly increasing and positive; samples must be >= 0.
std::vector<HistogramBucket> lifetime_histogram(
    const std::vector<double>& lifetimes_s, const std::vector<double>& edges);

struct NodeLifetimeDelta {
  NodeId id = 0;
  double hierarchical_s = 0.0;
  double flat_s = 0.0;
  double delta_s = 0.0;  // hierarchical - flat; never negative
};

struct ModelComparison {
  std::vector<NodeLifetimeDelta> rows;
  double sum_hierarchical_s = 0.0;
  double sum_flat_s = 0.0;
  std::uint32_t installs_hierarchical = 0;
  std::uint32_t installs_flat = 0;
  double install_cost_hierarchical_j = 0.0;
  double install_cost_flat_j = 0.0;
  double energy_saved_j = 0.0;  // flat install cost - hierarchical install cost
};

// Compares two runs of the same scenario/seed that differ only in ids_model.
// Uses the first technique entry of each result.  Throws SimError if the runs
// are not comparable (different node sets).
ModelComparison compare_models(const ScenarioResult& hierarchical,
                               const ScenarioResult& flat);

}  // namespace wsn
