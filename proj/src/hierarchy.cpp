#include "wsn/hierarchy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wsn/errors.hpp"

namespace wsn {

NodeRole Topology::role_of(NodeId n) const {
  auto it = roles.find(n);
  return it == roles.end() ? NodeRole::Plain : it->second;
}

const char* ids_model_name(IdsModel m) {
  return m == IdsModel::Hierarchical ? "hierarchical" : "flat";
}

CellAssignment partition_cells(const std::vector<NodeId>& sensors,
                               const std::map<NodeId, Position>& positions,
                               const LayeringRule& rule) {
  if (rule.max_per_cell_l1 == 0) throw SimError("max_per_cell_l1 must be >= 1");
  if (rule.max_per_cell_l2 == 0) throw SimError("max_per_cell_l2 must be >= 1");

  CellAssignment out;
  const std::size_t n = sensors.size();
  if (n == 0) return out;

  const std::uint32_t k1 = rule.max_per_cell_l1;
  const std::size_t n_cells = (n + k1 - 1) / k1;

  // Sort sensors by (x, y, id) and sweep in strips so that cells stay
  // spatially compact: a single x-then-y chunking would produce cells that
  // span the whole field vertically, which defeats a cluster head's job of
  // covering its own cell by radio.
  std::vector<NodeId> order = sensors;
  std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    const Position& pa = positions.at(a);
    const Position& pb = positions.at(b);
    if (pa.x != pb.x) return pa.x < pb.x;
    if (pa.y != pb.y) return pa.y < pb.y;
    return a < b;
  });

  // Number of strips ~ sqrt(#cells); cells are spread over strips as evenly
  // as possible, every cell at full size k1 except possibly the last one.
  const std::size_t n_strips = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::lround(std::sqrt(double(n_cells)))));
  std::vector<std::size_t> cells_per_strip(n_strips, n_cells / n_strips);
  for (std::size_t i = 0; i < n_cells % n_strips; ++i) ++cells_per_strip[i];

  std::size_t taken = 0;
  for (std::size_t s = 0; s < n_strips; ++s) {
    if (cells_per_strip[s] == 0) continue;
    std::size_t strip_nodes = std::min(n - taken, cells_per_strip[s] * k1);
    // The very last strip absorbs any remainder so counts stay exact.
    if (s + 1 == n_strips) strip_nodes = n - taken;
    std::vector<NodeId> strip(order.begin() + taken,
                              order.begin() + taken + strip_nodes);
    taken += strip_nodes;
    // Within a strip, chunk bottom-to-top.
    std::sort(strip.begin(), strip.end(), [&](NodeId a, NodeId b) {
      const Position& pa = positions.at(a);
      const Position& pb = positions.at(b);
      if (pa.y != pb.y) return pa.y < pb.y;
      if (pa.x != pb.x) return pa.x < pb.x;
      return a < b;
    });
    for (std::size_t i = 0; i < strip.size(); i += k1) {
      const std::size_t end = std::min(strip.size(), i + k1);
      out.l1_cells.emplace_back(strip.begin() + i, strip.begin() + end);
    }
  }

  if (out.l1_cells.size() != n_cells) {
    throw SimError("internal: partition produced wrong cell count");
  }

  // Layer-2 grouping: consecutive layer-1 cells (the sweep order keeps
  // neighbours adjacent) in chunks of at most max_per_cell_l2.
  const std::uint32_t k2 = rule.max_per_cell_l2;
  for (std::size_t i = 0; i < n_cells; i += k2) {
    std::vector<std::uint32_t> group;
    for (std::size_t j = i; j < std::min(n_cells, i + k2); ++j) {
      group.push_back(static_cast<std::uint32_t>(j));
    }
    out.l2_groups.push_back(std::move(group));
  }
  return out;
}

double threshold_lifetime(const std::vector<double>& lifetimes) {
  if (lifetimes.empty()) throw SimError("threshold_lifetime of an empty cell");
  return *std::max_element(lifetimes.begin(), lifetimes.end());
}

namespace {

// Longest-lived candidate, ties to the smallest id.  Returns nullopt if no
// candidate passes the filter.
std::optional<NodeId> best_by_lifetime(
    const std::vector<NodeId>& candidates,
    const std::map<NodeId, double>& lifetimes,
    const std::map<NodeId, bool>* eligible,
    const std::map<NodeId, NodeRole>& designated) {
  std::optional<NodeId> best;
  double best_l = -1.0;
  for (NodeId n : candidates) {
    if (designated.count(n)) continue;
    if (eligible) {
      auto it = eligible->find(n);
      if (it != eligible->end() && !it->second) continue;
    }
    const double l = lifetimes.at(n);
    if (!best || l > best_l || (l == best_l && n < *best)) {
      best = n;
      best_l = l;
    }
  }
  return best;
}

}  // namespace

Topology select_cluster_heads(const CellAssignment& cells,
                              const std::map<NodeId, double>& lifetimes,
                              const std::map<NodeId, bool>* eligible) {
  Topology topo;
  std::map<NodeId, NodeRole> designated;

  // Pass 1: high-level heads first.  Each layer-2 group takes the
  // longest-lived sensor of its whole region as a dedicated device.
  std::vector<NodeId> l2_heads(cells.l2_groups.size());
  for (std::size_t g = 0; g < cells.l2_groups.size(); ++g) {
    std::vector<NodeId> region;
    for (std::uint32_t ci : cells.l2_groups[g]) {
      const auto& m = cells.l1_cells[ci];
      region.insert(region.end(), m.begin(), m.end());
    }
    auto head = best_by_lifetime(region, lifetimes, eligible, designated);
    if (!head) throw SimError("cell cannot host IDS");
    l2_heads[g] = *head;
    designated[*head] = NodeRole::ClusterHeadL2;
  }

  // Pass 2: each layer-1 cell elects the best remaining member.  A cell whose
  // only member(s) got designated above falls back to its layer-2 head.
  std::vector<NodeId> l1_heads(cells.l1_cells.size());
  std::vector<std::uint32_t> l2_of_l1(cells.l1_cells.size(), 0);
  for (std::size_t g = 0; g < cells.l2_groups.size(); ++g) {
    for (std::uint32_t ci : cells.l2_groups[g]) l2_of_l1[ci] = g;
  }
  for (std::size_t c = 0; c < cells.l1_cells.size(); ++c) {
    auto head =
        best_by_lifetime(cells.l1_cells[c], lifetimes, eligible, designated);
    if (head) {
      l1_heads[c] = *head;
      designated[*head] = NodeRole::ClusterHeadL1;
    } else {
      NodeId fallback = l2_heads[l2_of_l1[c]];
      bool member = false;
      for (NodeId n : cells.l1_cells[c]) member = member || n == fallback;
      if (!member) throw SimError("cell cannot host IDS");
      l1_heads[c] = fallback;  // degenerate cell: the L2 head wears two hats
    }
  }

  // Assemble.
  topo.cells_l1.resize(cells.l1_cells.size());
  for (std::size_t c = 0; c < cells.l1_cells.size(); ++c) {
    L1Cell& cell = topo.cells_l1[c];
    cell.id = static_cast<std::uint32_t>(c);
    cell.members = cells.l1_cells[c];
    cell.head = l1_heads[c];
    for (NodeId n : cell.members) {
      topo.l1_cell_of[n] = cell.id;
      if (!designated.count(n)) topo.roles[n] = NodeRole::Plain;
    }
  }
  topo.cells_l2.resize(cells.l2_groups.size());
  for (std::size_t g = 0; g < cells.l2_groups.size(); ++g) {
    L2Cell& cell = topo.cells_l2[g];
    cell.id = static_cast<std::uint32_t>(g);
    cell.l1_cell_ids = cells.l2_groups[g];
    for (std::uint32_t ci : cell.l1_cell_ids) {
      cell.member_heads.push_back(l1_heads[ci]);
      topo.l2_cell_of_l1[ci] = cell.id;
    }
    cell.head = l2_heads[g];
  }
  for (const auto& [n, role] : designated) topo.roles[n] = role;
  topo.regional_of_l2.assign(cells.l2_groups.size(), std::nullopt);
  return topo;
}

void place_regional_nodes(Topology& topo,
                          const std::map<NodeId, Position>& positions,
                          bool allow_missing,
                          const std::map<NodeId, bool>* eligible) {
  topo.regionals.clear();
  topo.regional_of_l2.assign(topo.cells_l2.size(), std::nullopt);
  for (auto& [n, role] : topo.roles) {
    if (role == NodeRole::Regional) role = NodeRole::Plain;
  }

  for (L2Cell& cell : topo.cells_l2) {
    // Centroid of the layer-1 head positions of this layer-2 cell.
    double cx = 0.0, cy = 0.0;
    for (NodeId h : cell.member_heads) {
      cx += positions.at(h).x;
      cy += positions.at(h).y;
    }
    cx /= double(cell.member_heads.size());
    cy /= double(cell.member_heads.size());

    std::optional<NodeId> pick;
    double best_d = std::numeric_limits<double>::infinity();
    for (const auto& [n, role] : topo.roles) {
      if (role != NodeRole::Plain) continue;
      if (eligible) {
        auto it = eligible->find(n);
        if (it != eligible->end() && !it->second) continue;
      }
      const double d = euclidean_distance(positions.at(n), Position{cx, cy});
      if (d < best_d || (d == best_d && pick && n < *pick)) {
        pick = n;
        best_d = d;
      }
    }
    if (!pick) {
      if (allow_missing) continue;  // heads route straight to the base station
      throw SimError("no spare node left for regional placement");
    }
    topo.roles[*pick] = NodeRole::Regional;
    topo.regionals.push_back(*pick);
    topo.regional_of_l2[cell.id] = *pick;
  }
}

InstallReport install_ids(const Topology& topo,
                          std::map<NodeId, EnergyState>& energy, double e_p,
                          IdsModel model) {
  InstallReport rep;
  if (e_p < 0.0) throw SimError("install cost must be non-negative");

  auto runs_ids = [&](NodeId n, NodeRole role) {
    if (role == NodeRole::BaseStation) return false;
    if (model == IdsModel::Flat) return true;
    (void)n;
    return role == NodeRole::ClusterHeadL1 || role == NodeRole::ClusterHeadL2 ||
           role == NodeRole::Regional;
  };

  for (auto& [n, st] : energy) {
    const NodeRole role = topo.role_of(n);
    if (!runs_ids(n, role)) continue;
    if (model == IdsModel::Hierarchical && st.remaining_j() < e_p) {
      // Selection is supposed to have filtered these out already.
      throw SimError("insufficient energy to install IDS");
    }
    st.debit(e_p);  // flat model: an unaffordable node simply boots dead
    rep.installed.push_back(n);
    ++rep.installed_count;
  }
  // Analytic total so that reported savings are exact multiples of e_p.
  rep.total_cost_j = e_p * double(rep.installed_count);
  return rep;
}

}  // namespace wsn
