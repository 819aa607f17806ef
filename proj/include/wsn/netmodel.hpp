#pragma once

#include <cstdint>
#include <vector>

// Geometry, radio reachability and the packet/node vocabulary shared by the
// rest of the simulator.

namespace wsn {

using NodeId = std::uint32_t;

struct Position {
  double x = 0.0;
  double y = 0.0;
};

enum class NodeRole : std::uint8_t {
  Plain,
  ClusterHeadL1,
  ClusterHeadL2,
  Regional,
  BaseStation,
};

const char* role_name(NodeRole r);

// One hop's worth of a packet as seen on the air.  `forwarder` is the node
// currently transmitting, `next_hop` the addressed receiver of this hop and
// `dest` the final destination.  A monitor that overhears a transmission with
// next_hop != dest knows a forward by next_hop is due.
struct Packet {
  std::uint64_t seq = 0;     // unique per generated packet
  NodeId origin = 0;
  NodeId forwarder = 0;      // current hop sender
  NodeId next_hop = 0;       // current hop receiver
  NodeId dest = 0;
  std::vector<std::uint8_t> payload;
  std::uint32_t size_bits = 0;  // 8 * payload bytes + fixed header
};

// Deterministic log-distance radio: the received level of a transmission over
// distance d is -(ref_loss_db + 10 * exponent * log10(d)) dB.  A monitor can
// eavesdrop a transmitter iff that level is at or above sense_threshold_db,
// so lowering the threshold widens the sensing radius.
struct RadioModel {
  double ref_loss_db = 40.0;
  double exponent = 2.0;
  double sense_threshold_db = -90.0;
};

double euclidean_distance(const Position& a, const Position& b);

// Received signal level in dB for a transmission over distance d_m.
// Co-located (d <= 0) is clamped to 0 dB, the model's ceiling.
double received_level_db(const RadioModel& m, double d_m);

// True iff `monitor` can overhear a transmission made at `transmitter`.
// Boundary is inclusive: a signal exactly at the threshold is heard.
bool can_eavesdrop(const RadioModel& m, const Position& monitor,
                   const Position& transmitter);

}  // namespace wsn
