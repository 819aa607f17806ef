#include "wsn/netmodel.hpp"

#include <cmath>

namespace wsn {

const char* role_name(NodeRole r) {
  switch (r) {
    case NodeRole::Plain: return "plain";
    case NodeRole::ClusterHeadL1: return "cluster_head_l1";
    case NodeRole::ClusterHeadL2: return "cluster_head_l2";
    case NodeRole::Regional: return "regional";
    case NodeRole::BaseStation: return "base_station";
  }
  return "?";
}

double euclidean_distance(const Position& a, const Position& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

double received_level_db(const RadioModel& m, double d_m) {
  if (d_m <= 0.0) return 0.0;  // co-located: ceiling of the model
  return -(m.ref_loss_db + 10.0 * m.exponent * std::log10(d_m));
}

bool can_eavesdrop(const RadioModel& m, const Position& monitor,
                   const Position& transmitter) {
  // Single source of truth for reachability: everything that needs to know
  // whether a node is within sensing range goes through this predicate.
  const double d = euclidean_distance(monitor, transmitter);
  return received_level_db(m, d) >= m.sense_threshold_db;
}

}  // namespace wsn
