#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "wsn/energy.hpp"
#include "wsn/netmodel.hpp"

// Power-aware layering: sensors are partitioned into compact layer-1 cells,
// the layer-1 cells are grouped into layer-2 cells, and cluster heads are
// selected by projected lifetime (longest-lived node wins, high-level heads
// picked before low-level ones).  One regional node per layer-2 cell relays
// between the cluster heads and the base station.  Only the designated nodes
// (cluster heads + regionals) run the intrusion-detection program under the
// hierarchical model, which is where the energy saving over the flat model
// comes from.

namespace wsn {

struct LayeringRule {
  std::uint32_t max_per_cell_l1 = 5;  // max sensors per layer-1 cell
  std::uint32_t max_per_cell_l2 = 4;  // max layer-1 cells per layer-2 cell
};

// Pure spatial partition, before any head selection.
struct CellAssignment {
  // l1_cells[i] = sensor ids of cell i.  Cells are ordered by the sweep.
  std::vector<std::vector<NodeId>> l1_cells;
  // l2_groups[j] = indices into l1_cells forming layer-2 cell j.
  std::vector<std::vector<std::uint32_t>> l2_groups;
};

struct L1Cell {
  std::uint32_t id = 0;
  std::vector<NodeId> members;  // includes the head
  NodeId head = 0;
};

struct L2Cell {
  std::uint32_t id = 0;
  std::vector<std::uint32_t> l1_cell_ids;
  std::vector<NodeId> member_heads;  // layer-1 heads of those cells
  NodeId head = 0;                   // a distinct device, selected first
};

struct Topology {
  std::vector<L1Cell> cells_l1;
  std::vector<L2Cell> cells_l2;
  std::vector<NodeId> regionals;  // regionals[j] serves cells_l2[j]; may be
                                  // absent (no spare node) - see engine
  std::vector<std::optional<NodeId>> regional_of_l2;
  NodeId base_station = 0;
  std::map<NodeId, NodeRole> roles;
  std::map<NodeId, std::uint32_t> l1_cell_of;   // plain + l1 head members
  std::map<NodeId, std::uint32_t> l2_cell_of_l1;  // l1 cell -> l2 cell

  NodeRole role_of(NodeId n) const;
};

// Deterministic, seed-independent spatial grouping: sensors are sorted by
// position into vertical strips and each strip is chunked bottom-to-top, so
// cells come out compact instead of degenerate slabs.  Always produces
// exactly ceil(N / max_per_cell_l1) layer-1 cells and
// ceil(#l1 / max_per_cell_l2) layer-2 groups, every cell within its size cap.
CellAssignment partition_cells(const std::vector<NodeId>& sensors,
                               const std::map<NodeId, Position>& positions,
                               const LayeringRule& rule);

// Largest lifetime among the given values; errors on an empty cell.
double threshold_lifetime(const std::vector<double>& lifetimes);

// Head selection.  High-level heads are chosen first: for each layer-2 group
// the longest-lived sensor of the whole region becomes its head; then each
// layer-1 cell elects the longest-lived member not yet designated.  Ties go
// to the smallest node id.  `eligible` filters candidates (used to re-run
// selection when a would-be head cannot afford the IDS install); pass nullptr
// for no filter.  If a layer-1 cell has no eligible member left, its head
// falls back to the layer-2 head of its group (degenerate single-node case).
Topology select_cluster_heads(const CellAssignment& cells,
                              const std::map<NodeId, double>& lifetimes,
                              const std::map<NodeId, bool>* eligible = nullptr);

// Places one regional node per layer-2 cell: the not-yet-designated sensor
// nearest to the centroid of that cell's layer-1 head positions (ties to the
// smallest id).  Strict: throws if any layer-2 cell has no candidate left.
// The engine uses allow_missing=true instead, leaving such cells without a
// regional (their heads then route straight to the base station).  `eligible`
// filters candidates the same way as in head selection.
void place_regional_nodes(Topology& topo,
                          const std::map<NodeId, Position>& positions,
                          bool allow_missing = false,
                          const std::map<NodeId, bool>* eligible = nullptr);

enum class IdsModel : std::uint8_t { Hierarchical, Flat };

const char* ids_model_name(IdsModel m);

struct InstallReport {
  std::uint32_t installed_count = 0;
  double total_cost_j = 0.0;  // installed_count * e_p, computed analytically
  std::vector<NodeId> installed;
};

// Debits the install cost e_p once from every node that runs the IDS under
// the given model: cluster heads + regionals (hierarchical) or every sensor
// (flat).  Under the flat model a node that cannot afford e_p simply boots
// dead; under the hierarchical model heads were already selected among nodes
// that can afford it, so an unaffordable head here is an error.
InstallReport install_ids(const Topology& topo,
                          std::map<NodeId, EnergyState>& energy, double e_p,
                          IdsModel model);

}  // namespace wsn
