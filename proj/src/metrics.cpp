#include "wsn/metrics.hpp"

#include <cmath>
#include <limits>

#include "wsn/errors.hpp"

namespace wsn {

double error_ratio(const ForwardCounters& c) {
  const double total = double(c.good_counter) + double(c.bad_counter);
  if (total <= 0.0) {
    throw SimError("error ratio undefined: no forwards were rated");
  }
  return 255.0 * double(c.bad_counter) / total;
}

double mean_of(const std::vector<double>& values) {
  if (values.empty()) throw SimError("mean of an empty list");
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / double(values.size());
}

std::vector<LifetimeRow> lifetime_table(const TechniqueResult& r) {
  std::vector<LifetimeRow> rows;
  rows.reserve(r.nodes.size());
  for (const NodeRecord& n : r.nodes) {
    rows.push_back(LifetimeRow{n.id, n.d_bs_m, n.e_i_j, n.e_it_j_per_s,
                               n.lifetime_projected_s});
  }
  return rows;
}

std::vector<HistogramBucket> lifetime_histogram(
    const std::vector<double>& lifetimes_s, const std::vector<double>& edges) {
  if (edges.empty()) throw SimError("histogram needs at least one edge");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!(edges[i] > 0.0) || !std::isfinite(edges[i])) {
      throw SimError("histogram edges must be positive and finite");
    }
    if (i > 0 && !(edges[i] > edges[i - 1])) {
      throw SimError("histogram edges must be strictly increasing");
    }
  }
  std::vector<HistogramBucket> buckets(edges.size() + 1);
  for (std::size_t b = 0; b < buckets.size(); ++b) {
    buckets[b].lo = b == 0 ? 0.0 : edges[b - 1];
    buckets[b].hi = b < edges.size()
                        ? edges[b]
                        : std::numeric_limits<double>::infinity();
  }
  for (double v : lifetimes_s) {
    if (v < 0.0) throw SimError("negative lifetime in histogram input");
    std::size_t b = 0;
    while (b < edges.size() && v >= edges[b]) ++b;
    ++buckets[b].count;
  }
  if (!lifetimes_s.empty()) {
    for (auto& b : buckets) {
      b.share = double(b.count) / double(lifetimes_s.size());
    }
  }
  return buckets;
}

ModelComparison compare_models(const ScenarioResult& hierarchical,
                               const ScenarioResult& flat) {
  if (hierarchical.techniques.empty() || flat.techniques.empty()) {
    throw SimError("compare_models needs at least one technique per run");
  }
  const TechniqueResult& h = hierarchical.techniques.front();
  const TechniqueResult& f = flat.techniques.front();
  if (h.nodes.size() != f.nodes.size()) {
    throw SimError("compare_models: node sets differ");
  }

  ModelComparison out;
  out.rows.reserve(h.nodes.size());
  for (std::size_t i = 0; i < h.nodes.size(); ++i) {
    const NodeRecord& a = h.nodes[i];
    const NodeRecord& b = f.nodes[i];
    if (a.id != b.id) throw SimError("compare_models: node sets differ");
    NodeLifetimeDelta d;
    d.id = a.id;
    d.hierarchical_s = a.lifetime_projected_s;
    d.flat_s = b.lifetime_projected_s;
    d.delta_s = a.lifetime_projected_s - b.lifetime_projected_s;
    out.rows.push_back(d);
    out.sum_hierarchical_s += d.hierarchical_s;
    out.sum_flat_s += d.flat_s;
    if (a.e_p_paid_j > 0.0) {
      ++out.installs_hierarchical;
      out.install_cost_hierarchical_j += a.e_p_paid_j;
    }
    if (b.e_p_paid_j > 0.0) {
      ++out.installs_flat;
      out.install_cost_flat_j += b.e_p_paid_j;
    }
  }
  out.energy_saved_j =
      out.install_cost_flat_j - out.install_cost_hierarchical_j;
  return out;
}

}  // namespace wsn
