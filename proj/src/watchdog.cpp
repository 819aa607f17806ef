#include "wsn/watchdog.hpp"

#include <algorithm>

namespace wsn {

const char* technique_name(Technique t) {
  return t == Technique::Conventional ? "conventional" : "improved";
}

const char* warning_kind_name(WarningKind k) {
  return k == WarningKind::Dropped ? "dropped" : "modified";
}

std::size_t compare_payloads(std::span<const std::uint8_t> a,
                             std::span<const std::uint8_t> b) {
  const std::size_t common = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < common; ++i) {
    if (a[i] != b[i]) return i + 1;
  }
  if (a.size() != b.size()) return common + 1;  // length mismatch
  return 0;
}

void WatchdogBuffer::push(PendingExpectation e) {
  if (entries_.size() >= capacity_) {
    // Overflow: silently lose the oldest pending item.  No warning - we
    // simply were not able to keep watching it.
    entries_.pop_front();
    ++stats_.evicted;
  }
  entries_.push_back(std::move(e));
  ++stats_.created;
}

void MonitorState::observe_origin_send(const Packet& pkt, double now) {
  PendingExpectation e;
  e.slot = next_slot_++;
  e.expected_forwarder = pkt.next_hop;
  e.expected_dest = pkt.dest;
  e.origin = pkt.origin;
  e.seq = pkt.seq;
  e.payload = pkt.payload;
  e.created = now;
  e.deadline = now + timeout_s_;
  buffer_.push(std::move(e));
}

ObserveResult MonitorState::observe_forward(
    const Packet& pkt, std::span<const std::uint8_t> observed_payload,
    double now) {
  ObserveResult res;
  auto& entries = buffer_.entries();
  // The wire header identifies the packet, so the sighting is compared
  // against the copy saved for that exact packet.  Matching by (forwarder,
  // dest) alone would make a busy relay's interleaved flows accuse each
  // other: with expectations from several origins pending, every forward of
  // somebody else's packet would "mismatch" the oldest one.
  const auto same_packet = [&](const PendingExpectation& e) {
    return e.expected_forwarder == pkt.forwarder &&
           e.expected_dest == pkt.dest && e.origin == pkt.origin &&
           e.seq == pkt.seq;
  };
  auto it = std::find_if(entries.begin(), entries.end(), same_packet);
  if (it == entries.end()) return res;  // unsolicited traffic: ignore

  if (compare_payloads(it->payload, observed_payload) == 0) {
    entries.erase(it);
    ++buffer_.stats().matched;
    res.outcome = ObserveOutcome::Matched;
    return res;
  }

  // Tampered forward.  The entry stays in the buffer (it will age out via
  // its original deadline without producing a second warning).
  res.outcome = ObserveOutcome::Mismatch;
  if (!it->warned) {
    it->warned = true;
    res.warning = Warning{now, monitor_, pkt.forwarder, WarningKind::Modified};
  }
  return res;
}

std::vector<Warning> MonitorState::expire(double now) {
  std::vector<Warning> out;
  auto& entries = buffer_.entries();
  for (auto it = entries.begin(); it != entries.end();) {
    if (it->deadline <= now) {
      ++buffer_.stats().expired;
      if (it->warned) {
        // Already produced its Modified warning; expiry is bookkeeping only.
        ++buffer_.stats().expired_after_warning;
      } else {
        out.push_back(
            Warning{now, monitor_, it->expected_forwarder, WarningKind::Dropped});
      }
      it = entries.erase(it);
    } else {
      ++it;
    }
  }
  return out;
}

std::optional<UpstreamAlert> MonitorState::escalate(const Warning& w) {
  const std::uint32_t count = ++warnings_[w.suspect];
  if (count == warning_threshold_ && !is_malicious(w.suspect)) {
    verdicts_[w.suspect] = Verdict::Malicious;
    if (technique_ == Technique::Improved) {
      return UpstreamAlert{monitor_, w.suspect};
    }
    // Conventional: the verdict is recorded locally, nothing transmitted.
  }
  return std::nullopt;
}

void MonitorState::discard_all() {
  buffer_.stats().discarded += buffer_.entries().size();
  buffer_.entries().clear();
}

}  // namespace wsn
