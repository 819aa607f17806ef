#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "wsn/netmodel.hpp"

// Watchdog monitoring state machines.
//
// A monitor that overhears a transmission A -> B addressed onward to C keeps
// a copy of the payload and expects to overhear B forwarding it to C within a
// timeout.  A faithful forward clears the expectation; a tampered forward
// raises a Modified warning; silence until the deadline raises a Dropped
// warning.  Warnings accumulate per suspect, and a suspect crossing the
// warning threshold is declared malicious - permanently.
//
// The same machine serves both techniques.  Under the conventional technique
// every sender monitors its own next hop and verdicts stay local.  Under the
// improved technique the designated monitors (cluster heads, regional nodes,
// base station) watch the forwarders in their charge and escalate verdicts
// upstream.

namespace wsn {

enum class Technique : std::uint8_t { Conventional, Improved };

const char* technique_name(Technique t);

enum class WarningKind : std::uint8_t { Dropped, Modified };

const char* warning_kind_name(WarningKind k);

enum class Verdict : std::uint8_t { Trusted, Malicious };

struct Warning {
  double time = 0.0;
  NodeId monitor = 0;
  NodeId suspect = 0;
  WarningKind kind = WarningKind::Dropped;
};

// Emitted when a monitor running the improved technique convicts a suspect;
// the engine turns it into a real packet towards the monitor's parent.
struct UpstreamAlert {
  NodeId monitor = 0;
  NodeId suspect = 0;
};

// Returns 0 if the two byte sequences are identical, otherwise 1 + the index
// of the first differing position.  Sequences of different length differ at
// min(len_a, len_b) at the latest.
std::size_t compare_payloads(std::span<const std::uint8_t> a,
                             std::span<const std::uint8_t> b);

struct PendingExpectation {
  std::uint64_t slot = 0;  // creation order, unique per monitor
  NodeId expected_forwarder = 0;
  NodeId expected_dest = 0;
  NodeId origin = 0;       // packet identity, read from the wire header
  std::uint64_t seq = 0;
  std::vector<std::uint8_t> payload;  // copy saved at creation
  double created = 0.0;
  double deadline = 0.0;
  bool warned = false;  // a Modified warning already fired for this entry
};

// Counters proving entry conservation: every entry created is eventually
// matched, expired, evicted on overflow, or discarded when the monitor dies,
// or else is still pending.
struct BufferStats {
  std::uint64_t created = 0;
  std::uint64_t matched = 0;
  std::uint64_t expired = 0;
  std::uint64_t evicted = 0;
  std::uint64_t discarded = 0;             // monitor died with entries pending
  std::uint64_t expired_after_warning = 0; // subset of expired; no new warning
};

// FIFO buffer of pending expectations with bounded capacity.  Overflow evicts
// the oldest entry silently - a monitoring miss, not an accusation.
class WatchdogBuffer {
 public:
  explicit WatchdogBuffer(std::size_t capacity = 64) : capacity_(capacity) {}

  void push(PendingExpectation e);
  std::size_t size() const { return entries_.size(); }
  std::size_t capacity() const { return capacity_; }
  const std::deque<PendingExpectation>& entries() const { return entries_; }
  std::deque<PendingExpectation>& entries() { return entries_; }
  const BufferStats& stats() const { return stats_; }
  BufferStats& stats() { return stats_; }

 private:
  std::deque<PendingExpectation> entries_;
  std::size_t capacity_;
  BufferStats stats_;
};

enum class ObserveOutcome : std::uint8_t { NoMatch, Matched, Mismatch };

struct ObserveResult {
  ObserveOutcome outcome = ObserveOutcome::NoMatch;
  std::optional<Warning> warning;  // set on Mismatch
};

class MonitorState {
 public:
  MonitorState() = default;
  MonitorState(NodeId monitor, Technique technique, std::size_t buffer_capacity,
               std::uint32_t warning_threshold, double timeout_s)
      : monitor_(monitor),
        technique_(technique),
        buffer_(buffer_capacity),
        warning_threshold_(warning_threshold),
        timeout_s_(timeout_s) {}

  NodeId monitor() const { return monitor_; }
  Technique technique() const { return technique_; }
  double timeout_s() const { return timeout_s_; }
  const WatchdogBuffer& buffer() const { return buffer_; }
  WatchdogBuffer& buffer() { return buffer_; }
  const std::map<NodeId, std::uint32_t>& warnings() const { return warnings_; }
  const std::map<NodeId, Verdict>& verdicts() const { return verdicts_; }

  bool is_malicious(NodeId n) const {
    auto it = verdicts_.find(n);
    return it != verdicts_.end() && it->second == Verdict::Malicious;
  }

  // Records the expectation for a transmission the monitor just heard (or,
  // for a conventional monitor, just made).  Caller has already checked
  // reachability and that pkt.next_hop != pkt.dest.
  void observe_origin_send(const Packet& pkt, double now);

  // Feeds an overheard forward into the buffer.  `observed_payload` is what
  // the monitor decoded - normally pkt.payload, but a collision can hand the
  // monitor corrupted bytes.  The forward is matched against the pending
  // entry for the same (forwarder, dest) AND the same packet identity
  // (origin, seq): a busy relay interleaves many nodes' flows, and a forward
  // of somebody else's packet is unsolicited traffic, not evidence.  A
  // payload mismatch on the identified entry leaves it in place and raises a
  // Modified warning (once per entry).
  ObserveResult observe_forward(const Packet& pkt,
                                std::span<const std::uint8_t> observed_payload,
                                double now);

  // Removes entries whose deadline has passed, yielding one Dropped warning
  // per entry that had not already been warned about.
  std::vector<Warning> expire(double now);

  // Books a warning against its suspect.  When the count reaches the
  // threshold the suspect is declared malicious; the improved technique
  // additionally emits an upstream alert, the conventional one keeps the
  // verdict local.  Verdicts are never revoked.
  std::optional<UpstreamAlert> escalate(const Warning& w);

  // Monitor died: drop all pending entries without accusations.
  void discard_all();

 private:
  NodeId monitor_ = 0;
  Technique technique_ = Technique::Improved;
  WatchdogBuffer buffer_{64};
  std::map<NodeId, std::uint32_t> warnings_;
  std::map<NodeId, Verdict> verdicts_;
  std::uint32_t warning_threshold_ = 5;
  double timeout_s_ = 2.0;
  std::uint64_t next_slot_ = 0;
};

}  // namespace wsn
