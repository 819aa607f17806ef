#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <vector>

#include "wsn/errors.hpp"
#include "wsn/hierarchy.hpp"
#include "wsn/rng.hpp"

using namespace wsn;

namespace {

struct Instance {
  std::vector<NodeId> sensors;
  std::map<NodeId, Position> positions;
  std::map<NodeId, double> lifetimes;
};

Instance random_instance(std::uint32_t n, std::uint64_t seed) {
  Instance inst;
  auto s = rng::Stream::of(seed, 77);
  for (NodeId i = 0; i < n; ++i) {
    inst.sensors.push_back(i);
    inst.positions[i] = {s.uniform_range(3 * i, 0.0, 100.0),
                         s.uniform_range(3 * i + 1, 0.0, 100.0)};
    inst.lifetimes[i] = s.uniform_range(3 * i + 2, 1.0, 1.0e6);
  }
  return inst;
}

// Argmax by lifetime with ties to the smallest id.
NodeId best_of(const std::vector<NodeId>& candidates,
               const std::map<NodeId, double>& lifetimes) {
  REQUIRE_FALSE(candidates.empty());
  NodeId best = candidates.front();
  for (NodeId c : candidates) {
    const double lc = lifetimes.at(c), lb = lifetimes.at(best);
    if (lc > lb || (lc == lb && c < best)) best = c;
  }
  return best;
}

}  // namespace

TEST_CASE("partition: exact cell counts and caps") {
  LayeringRule rule;  // 5 per layer-1 cell, 4 cells per layer-2 group
  for (std::uint32_t n : {1u, 7u, 50u, 100u, 203u}) {
    auto inst = random_instance(n, 10 + n);
    auto cells = partition_cells(inst.sensors, inst.positions, rule);

    const std::uint32_t want_l1 = (n + rule.max_per_cell_l1 - 1) / rule.max_per_cell_l1;
    const std::uint32_t want_l2 =
        (want_l1 + rule.max_per_cell_l2 - 1) / rule.max_per_cell_l2;
    CHECK(cells.l1_cells.size() == want_l1);
    CHECK(cells.l2_groups.size() == want_l2);

    // every sensor lands in exactly one layer-1 cell
    std::set<NodeId> seen;
    for (const auto& cell : cells.l1_cells) {
      CHECK(cell.size() <= rule.max_per_cell_l1);
      CHECK_FALSE(cell.empty());
      for (NodeId m : cell) CHECK(seen.insert(m).second);
    }
    CHECK(seen.size() == n);

    // every layer-1 cell lands in exactly one layer-2 group
    std::set<std::uint32_t> grouped;
    for (const auto& g : cells.l2_groups) {
      CHECK(g.size() <= rule.max_per_cell_l2);
      CHECK_FALSE(g.empty());
      for (auto idx : g) {
        CHECK(idx < cells.l1_cells.size());
        CHECK(grouped.insert(idx).second);
      }
    }
    CHECK(grouped.size() == cells.l1_cells.size());
  }
}

TEST_CASE("partition is independent of input order") {
  auto inst = random_instance(60, 5);
  LayeringRule rule;
  auto a = partition_cells(inst.sensors, inst.positions, rule);
  auto shuffled = inst.sensors;
  std::reverse(shuffled.begin(), shuffled.end());
  auto b = partition_cells(shuffled, inst.positions, rule);
  REQUIRE(a.l1_cells.size() == b.l1_cells.size());
  for (std::size_t i = 0; i < a.l1_cells.size(); ++i)
    CHECK(a.l1_cells[i] == b.l1_cells[i]);
}

TEST_CASE("threshold lifetime is the cell maximum") {
  CHECK(threshold_lifetime({3.0, 9.0, 1.0}) == doctest::Approx(9.0));
  CHECK(threshold_lifetime({4.5}) == doctest::Approx(4.5));
  CHECK_THROWS_AS((void)threshold_lifetime({}), SimError);
}

TEST_CASE("head selection picks the longest-lived, high level first") {
  LayeringRule rule;
  auto inst = random_instance(100, 21);
  auto cells = partition_cells(inst.sensors, inst.positions, rule);
  auto topo = select_cluster_heads(cells, inst.lifetimes);

  REQUIRE(topo.cells_l1.size() == 20);
  REQUIRE(topo.cells_l2.size() == 5);

  // Reference selection, recomputed from scratch: each layer-2 group's head
  // is the longest-lived sensor of its whole region.
  std::set<NodeId> l2_heads;
  for (std::size_t j = 0; j < cells.l2_groups.size(); ++j) {
    std::vector<NodeId> region;
    for (auto ci : cells.l2_groups[j])
      region.insert(region.end(), cells.l1_cells[ci].begin(),
                    cells.l1_cells[ci].end());
    const NodeId want = best_of(region, inst.lifetimes);
    CHECK(topo.cells_l2[j].head == want);
    CHECK(l2_heads.insert(want).second);  // heads are distinct devices
    CHECK(topo.role_of(want) == NodeRole::ClusterHeadL2);
  }

  // Then each layer-1 cell elects the longest-lived member not yet taken.
  std::set<NodeId> all_heads = l2_heads;
  for (std::size_t i = 0; i < cells.l1_cells.size(); ++i) {
    std::vector<NodeId> eligible;
    for (NodeId m : cells.l1_cells[i])
      if (!l2_heads.count(m)) eligible.push_back(m);
    REQUIRE_FALSE(eligible.empty());  // 5-member cells always have a spare
    const NodeId want = best_of(eligible, inst.lifetimes);
    CHECK(topo.cells_l1[i].head == want);
    CHECK(all_heads.insert(want).second);
    CHECK(topo.role_of(want) == NodeRole::ClusterHeadL1);
  }

  // each layer-2 cell's member_heads mirror its layer-1 cells' heads
  for (const auto& l2 : topo.cells_l2) {
    REQUIRE(l2.member_heads.size() == l2.l1_cell_ids.size());
    for (std::size_t k = 0; k < l2.l1_cell_ids.size(); ++k)
      CHECK(l2.member_heads[k] == topo.cells_l1[l2.l1_cell_ids[k]].head);
  }
}

TEST_CASE("tie on lifetime goes to the smallest id") {
  // Five nodes, all with identical lifetimes: head picks must be id-minimal.
  Instance inst;
  for (NodeId i = 0; i < 5; ++i) {
    inst.sensors.push_back(i);
    inst.positions[i] = {double(i), 0.0};
    inst.lifetimes[i] = 42.0;
  }
  auto cells = partition_cells(inst.sensors, inst.positions, LayeringRule{});
  REQUIRE(cells.l1_cells.size() == 1);
  auto topo = select_cluster_heads(cells, inst.lifetimes);
  CHECK(topo.cells_l2[0].head == 0);  // group head first, smallest id
  CHECK(topo.cells_l1[0].head == 1);  // next-smallest among the rest
}

TEST_CASE("eligibility filter reruns the election without the filtered node") {
  auto inst = random_instance(10, 33);
  auto cells = partition_cells(inst.sensors, inst.positions, LayeringRule{});
  auto topo = select_cluster_heads(cells, inst.lifetimes);
  const NodeId original = topo.cells_l2[0].head;

  std::map<NodeId, bool> eligible;
  for (NodeId n : inst.sensors) eligible[n] = (n != original);
  auto topo2 = select_cluster_heads(cells, inst.lifetimes, &eligible);
  CHECK(topo2.cells_l2[0].head != original);
  // the replacement is the best of the remaining candidates
  std::vector<NodeId> region;
  for (auto ci : cells.l2_groups[0])
    for (NodeId m : cells.l1_cells[ci])
      if (m != original) region.push_back(m);
  CHECK(topo2.cells_l2[0].head == best_of(region, inst.lifetimes));
}

TEST_CASE("single-node network: one node wears every hat") {
  Instance inst;
  inst.sensors = {0};
  inst.positions[0] = {1.0, 1.0};
  inst.lifetimes[0] = 10.0;
  auto cells = partition_cells(inst.sensors, inst.positions, LayeringRule{});
  auto topo = select_cluster_heads(cells, inst.lifetimes);
  CHECK(topo.cells_l2[0].head == 0);
  CHECK(topo.cells_l1[0].head == 0);  // falls back to the group head
  CHECK_THROWS_AS(place_regional_nodes(topo, inst.positions), SimError);
  place_regional_nodes(topo, inst.positions, /*allow_missing=*/true);
  CHECK(topo.regionals.empty());
  REQUIRE(topo.regional_of_l2.size() == 1);
  CHECK_FALSE(topo.regional_of_l2[0].has_value());
}

TEST_CASE("regional placement: nearest spare node to the heads' centroid") {
  auto inst = random_instance(100, 55);
  auto cells = partition_cells(inst.sensors, inst.positions, LayeringRule{});
  auto topo = select_cluster_heads(cells, inst.lifetimes);
  auto reference = topo;  // copy before placement for the oracle below
  place_regional_nodes(topo, inst.positions);

  REQUIRE(topo.regionals.size() == topo.cells_l2.size());

  // Reference: walk the layer-2 cells in order, maintaining the designated
  // set, and pick the nearest non-designated sensor to each centroid.
  std::set<NodeId> designated;
  for (const auto& l1 : reference.cells_l1) designated.insert(l1.head);
  for (const auto& l2 : reference.cells_l2) designated.insert(l2.head);
  for (std::size_t j = 0; j < reference.cells_l2.size(); ++j) {
    Position centroid{0, 0};
    const auto& heads = reference.cells_l2[j].member_heads;
    for (NodeId h : heads) {
      centroid.x += inst.positions.at(h).x;
      centroid.y += inst.positions.at(h).y;
    }
    centroid.x /= double(heads.size());
    centroid.y /= double(heads.size());

    NodeId want = 0;
    double best = -1.0;
    for (NodeId n : inst.sensors) {
      if (designated.count(n)) continue;
      const double d = euclidean_distance(inst.positions.at(n), centroid);
      if (best < 0 || d < best || (d == best && n < want)) {
        best = d;
        want = n;
      }
    }
    CHECK(topo.regionals[j] == want);
    REQUIRE(topo.regional_of_l2[j].has_value());
    CHECK(*topo.regional_of_l2[j] == want);
    CHECK(topo.role_of(want) == NodeRole::Regional);
    designated.insert(want);
  }

  // designated sets never overlap
  std::set<NodeId> uniq(topo.regionals.begin(), topo.regionals.end());
  CHECK(uniq.size() == topo.regionals.size());
  for (NodeId r : topo.regionals) {
    for (const auto& l1 : topo.cells_l1) CHECK(l1.head != r);
    for (const auto& l2 : topo.cells_l2) CHECK(l2.head != r);
  }
}

TEST_CASE("two-node network has no spare for a regional") {
  Instance inst;
  inst.sensors = {0, 1};
  inst.positions[0] = {0, 0};
  inst.positions[1] = {5, 5};
  inst.lifetimes[0] = 1.0;
  inst.lifetimes[1] = 2.0;
  auto cells = partition_cells(inst.sensors, inst.positions, LayeringRule{});
  auto topo = select_cluster_heads(cells, inst.lifetimes);
  CHECK(topo.cells_l2[0].head == 1);
  CHECK(topo.cells_l1[0].head == 0);
  CHECK_THROWS_AS(place_regional_nodes(topo, inst.positions), SimError);
}

TEST_CASE("install accounting: hierarchical charges only designated nodes") {
  auto inst = random_instance(20, 91);
  auto cells = partition_cells(inst.sensors, inst.positions, LayeringRule{});
  auto topo = select_cluster_heads(cells, inst.lifetimes);
  place_regional_nodes(topo, inst.positions);

  std::map<NodeId, EnergyState> energy;
  for (NodeId n : inst.sensors) energy[n] = EnergyState{10.0, 0.0, true};

  const double e_p = 1.25;
  auto rep = install_ids(topo, energy, e_p, IdsModel::Hierarchical);
  // 4 layer-1 heads + 1 layer-2 head + 1 regional
  CHECK(rep.installed_count == 6);
  CHECK(rep.total_cost_j == doctest::Approx(6 * e_p));
  std::set<NodeId> installed(rep.installed.begin(), rep.installed.end());
  CHECK(installed.size() == 6);
  for (NodeId n : inst.sensors) {
    if (installed.count(n)) {
      CHECK(energy[n].remaining_j() == doctest::Approx(10.0 - e_p));
      CHECK(topo.role_of(n) != NodeRole::Plain);
    } else {
      CHECK(energy[n].remaining_j() == doctest::Approx(10.0));
      CHECK(topo.role_of(n) == NodeRole::Plain);
    }
  }
}

TEST_CASE("install accounting: flat charges everyone, poor nodes boot dead") {
  auto inst = random_instance(20, 92);
  auto cells = partition_cells(inst.sensors, inst.positions, LayeringRule{});
  auto topo = select_cluster_heads(cells, inst.lifetimes);
  place_regional_nodes(topo, inst.positions);

  std::map<NodeId, EnergyState> energy;
  for (NodeId n : inst.sensors) energy[n] = EnergyState{10.0, 0.0, true};
  energy[3] = EnergyState{0.5, 0.0, true};  // cannot afford the program

  auto rep = install_ids(topo, energy, 1.0, IdsModel::Flat);
  CHECK(rep.installed_count == 20);
  CHECK(rep.total_cost_j == doctest::Approx(20.0));
  CHECK_FALSE(energy[3].alive);
  CHECK(energy[3].remaining_j() == doctest::Approx(0.0));
  for (NodeId n : inst.sensors)
    if (n != 3) CHECK(energy[n].remaining_j() == doctest::Approx(9.0));
}

TEST_CASE("install refuses an unaffordable designated node") {
  auto inst = random_instance(20, 93);
  auto cells = partition_cells(inst.sensors, inst.positions, LayeringRule{});
  auto topo = select_cluster_heads(cells, inst.lifetimes);
  std::map<NodeId, EnergyState> energy;
  for (NodeId n : inst.sensors) energy[n] = EnergyState{10.0, 0.0, true};
  energy[topo.cells_l2[0].head] = EnergyState{0.1, 0.0, true};
  CHECK_THROWS_AS((void)install_ids(topo, energy, 1.0, IdsModel::Hierarchical),
                  SimError);
}

TEST_CASE("zero install cost is free for every model") {
  auto inst = random_instance(10, 94);
  auto cells = partition_cells(inst.sensors, inst.positions, LayeringRule{});
  auto topo = select_cluster_heads(cells, inst.lifetimes);
  place_regional_nodes(topo, inst.positions, true);
  std::map<NodeId, EnergyState> energy;
  for (NodeId n : inst.sensors) energy[n] = EnergyState{1.0, 0.0, true};
  auto rep = install_ids(topo, energy, 0.0, IdsModel::Flat);
  CHECK(rep.total_cost_j == doctest::Approx(0.0));
  for (NodeId n : inst.sensors) CHECK(energy[n].remaining_j() == doctest::Approx(1.0));
}
