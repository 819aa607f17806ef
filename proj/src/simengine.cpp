#include "wsn/simengine.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <span>
#include <string>
#include <utility>

#include "wsn/errors.hpp"
#include "wsn/metrics.hpp"
#include "wsn/rng.hpp"

namespace wsn {

namespace {

// Alert packets draw from a disjoint uid space so that injecting alerts (which
// only the improved technique does) can never shift the draw indices of data
// packets.  That keeps traffic and attacker decisions identical across
// technique runs of the same scenario.
constexpr std::uint64_t kAlertUidBase = 1ULL << 62;
constexpr std::uint32_t kAlertPayloadBytes = 16;
constexpr std::size_t kMaxLogLines = 50000;

struct PacketInstance {
  std::uint64_t uid = 0;
  bool is_alert = false;
  NodeId origin = 0;
  NodeId dest = 0;
  std::vector<NodeId> route;  // origin .. dest
  std::size_t hop = 0;        // index of the node currently holding it
  std::vector<std::uint8_t> payload;
  std::uint32_t size_bits = 0;
  bool finalized = false;
};

struct Transmission {
  std::uint64_t uid = 0;
  std::uint32_t packet = 0;
  NodeId claimed_from = 0;  // forwarder field on the air
  NodeId phys_from = 0;     // device actually radiating (spoofs differ)
  NodeId to = 0;
  double start = 0.0;
  double airtime = 0.0;
  bool spoof = false;
  std::vector<std::uint8_t> payload;      // bytes on the air
  std::vector<Position> overlap_sources;  // senders overlapping this frame
};

struct SpoofPlan {
  std::uint32_t packet = 0;
  NodeId attacker = 0;
  NodeId partner = 0;
  NodeId to = 0;
  std::vector<std::uint8_t> payload;
};

struct MonitorSlot {
  NodeId node = 0;
  bool is_bs = false;
  std::vector<std::uint8_t> watch;  // improved: watch[id] => in jurisdiction
  MonitorState state;
};

enum class EvKind : std::uint8_t { Generate, Transmit, Deliver, Timeout, Spoof };

struct Event {
  double time = 0.0;
  std::uint64_t order = 0;  // scheduling order breaks same-time ties
  EvKind kind = EvKind::Generate;
  std::uint64_t a = 0;
};

struct EventAfter {
  bool operator()(const Event& x, const Event& y) const {
    if (x.time != y.time) return x.time > y.time;
    return x.order > y.order;
  }
};

struct Generator {
  NodeId origin = 0;
  std::uint64_t stream_id = 0;
  int flow_idx = -1;  // >= 0: explicit flow
  std::uint64_t emitted = 0;
  double interval = 0.0;
  double phase = 0.0;
};

// Everything derivable from the config alone, shared by both technique runs.
struct SharedSetup {
  const ScenarioConfig* cfg = nullptr;
  std::uint32_t n = 0;
  NodeId bs = 0;
  std::vector<Position> pos;  // 0..n-1 sensors, n = base station
  std::vector<double> e_i;
  std::vector<double> d_bs;
  std::vector<double> e_it_static;
  Topology topo;
  InstallReport install;
  std::vector<EnergyState> energy0;  // post-install battery states
  std::vector<DeathRecord> boot_deaths;
  std::vector<NodeRole> role;  // 0..n
  std::vector<std::vector<NodeId>> upstream;            // per sensor
  std::vector<std::optional<std::array<NodeId, 3>>> triad;  // per sensor
  std::vector<NodeId> generator_nodes;
  std::vector<AttackConfig> attacks;
  std::vector<std::vector<std::uint32_t>> fwd_attacks_of;  // per sensor
  std::vector<std::uint32_t> observer_jammers;  // CollisionAtMonitor indices
  std::vector<std::vector<std::uint32_t>> rx_jammers_of;  // per node incl bs
  std::uint32_t data_bits = 0;
  std::uint32_t alert_bits = 0;
};

SharedSetup build_setup(const ScenarioConfig& cfg) {
  SharedSetup S;
  S.cfg = &cfg;
  S.n = cfg.node_count;
  S.bs = cfg.base_station_id();
  S.pos = derive_positions(cfg);
  S.e_i = derive_boot_energy(cfg);

  S.d_bs.resize(S.n);
  S.e_it_static.resize(S.n);
  std::map<NodeId, double> lifetime;
  std::map<NodeId, Position> pmap;
  std::vector<NodeId> sensors(S.n);
  for (NodeId id = 0; id < S.n; ++id) {
    sensors[id] = id;
    pmap[id] = S.pos[id];
    S.d_bs[id] = euclidean_distance(S.pos[id], S.pos[S.bs]);
    S.e_it_static[id] =
        per_second_consumption(cfg.energy, cfg.rates, S.d_bs[id]);
    lifetime[id] = lifetime_seconds(S.e_i[id], S.e_it_static[id]);
  }

  // Under the hierarchical model only nodes that can afford the IDS install
  // may be designated.  (Under the flat model everyone pays regardless.)
  std::map<NodeId, bool> eligible;
  const std::map<NodeId, bool>* eligible_ptr = nullptr;
  if (cfg.ids_model == IdsModel::Hierarchical && cfg.e_p_j > 0.0) {
    for (NodeId id = 0; id < S.n; ++id) eligible[id] = S.e_i[id] >= cfg.e_p_j;
    eligible_ptr = &eligible;
  }

  const CellAssignment cells = partition_cells(sensors, pmap, cfg.layering);
  S.topo = select_cluster_heads(cells, lifetime, eligible_ptr);
  S.topo.base_station = S.bs;
  S.topo.roles[S.bs] = NodeRole::BaseStation;
  place_regional_nodes(S.topo, pmap, /*allow_missing=*/true, eligible_ptr);

  // Dedicated upper-layer devices (layer-2 heads, regionals) leave their
  // layer-1 cell: they are watched by their own parent level, not by the cell
  // head.  A layer-2 head that doubles as a cell head (degenerate cell) stays.
  for (L1Cell& c : S.topo.cells_l1) {
    std::vector<NodeId> kept;
    kept.reserve(c.members.size());
    for (NodeId m : c.members) {
      const NodeRole r = S.topo.role_of(m);
      const bool upper =
          r == NodeRole::ClusterHeadL2 || r == NodeRole::Regional;
      if (upper && m != c.head) {
        S.topo.l1_cell_of.erase(m);
        continue;
      }
      kept.push_back(m);
    }
    c.members = std::move(kept);
  }

  // Install the IDS and take the boot casualties (flat model only: a node
  // that cannot afford the install starts its life already exhausted).
  std::map<NodeId, EnergyState> emap;
  for (NodeId id = 0; id < S.n; ++id) {
    emap[id] = EnergyState{S.e_i[id], 0.0, S.e_i[id] > 0.0};
  }
  S.install = install_ids(S.topo, emap, cfg.e_p_j, cfg.ids_model);
  S.energy0.resize(S.n);
  for (NodeId id = 0; id < S.n; ++id) {
    S.energy0[id] = emap.at(id);
    if (!S.energy0[id].alive) S.boot_deaths.push_back(DeathRecord{0.0, id});
  }

  S.role.resize(S.n + 1);
  for (NodeId id = 0; id <= S.n; ++id) S.role[id] = S.topo.role_of(id);

  // Upstream chains.  Duplicate consecutive hops collapse (e.g. a dual-hat
  // head or a missing regional).
  std::map<NodeId, std::uint32_t> group_of_l2head;
  std::map<NodeId, std::uint32_t> group_of_regional;
  for (const L2Cell& c : S.topo.cells_l2) {
    group_of_l2head[c.head] = c.id;
    if (S.topo.regional_of_l2[c.id]) {
      group_of_regional[*S.topo.regional_of_l2[c.id]] = c.id;
    }
  }
  S.upstream.resize(S.n);
  for (NodeId u = 0; u < S.n; ++u) {
    std::vector<NodeId> ch{u};
    auto app = [&](NodeId x) {
      if (ch.back() != x) ch.push_back(x);
    };
    std::optional<std::uint32_t> g;
    const NodeRole r = S.role[u];
    if (r == NodeRole::Plain || r == NodeRole::ClusterHeadL1) {
      auto ci = S.topo.l1_cell_of.find(u);
      if (ci != S.topo.l1_cell_of.end()) {
        const L1Cell& c = S.topo.cells_l1[ci->second];
        app(c.head);
        g = S.topo.l2_cell_of_l1.at(c.id);
        app(S.topo.cells_l2[*g].head);
      }
    } else if (r == NodeRole::ClusterHeadL2) {
      g = group_of_l2head.at(u);
    } else if (r == NodeRole::Regional) {
      g = group_of_regional.at(u);
    }
    if (g && S.topo.regional_of_l2[*g]) app(*S.topo.regional_of_l2[*g]);
    app(S.bs);
    S.upstream[u] = std::move(ch);
  }

  // In-cell relay triads: nearest plain cellmate relays to the second
  // nearest.  Cells with fewer than two other plain members have none.
  S.triad.resize(S.n);
  for (NodeId u = 0; u < S.n; ++u) {
    if (S.role[u] != NodeRole::Plain) continue;
    auto ci = S.topo.l1_cell_of.find(u);
    if (ci == S.topo.l1_cell_of.end()) continue;
    std::vector<NodeId> mates;
    for (NodeId m : S.topo.cells_l1[ci->second].members) {
      if (m != u && S.role[m] == NodeRole::Plain) mates.push_back(m);
    }
    if (mates.size() < 2) continue;
    std::sort(mates.begin(), mates.end(), [&](NodeId a, NodeId b) {
      const double da = euclidean_distance(S.pos[u], S.pos[a]);
      const double db = euclidean_distance(S.pos[u], S.pos[b]);
      if (da != db) return da < db;
      return a < b;
    });
    S.triad[u] = std::array<NodeId, 3>{u, mates[0], mates[1]};
  }

  // All sensing devices generate data; regionals are pure relay stations.
  for (NodeId id = 0; id < S.n; ++id) {
    const NodeRole r = S.role[id];
    if (r == NodeRole::Plain || r == NodeRole::ClusterHeadL1 ||
        r == NodeRole::ClusterHeadL2) {
      S.generator_nodes.push_back(id);
    }
  }

  S.attacks = effective_attacks(cfg);
  S.fwd_attacks_of.resize(S.n);
  S.rx_jammers_of.resize(S.n + 1);
  for (std::uint32_t i = 0; i < S.attacks.size(); ++i) {
    const AttackConfig& a = S.attacks[i];
    switch (a.kind) {
      case AttackKind::SelectiveForwarding:
      case AttackKind::Modification:
      case AttackKind::Collusion:
        S.fwd_attacks_of[a.attacker].push_back(i);
        break;
      case AttackKind::CollisionAtMonitor:
        S.observer_jammers.push_back(i);
        break;
      case AttackKind::ReceiverCollision:
        S.rx_jammers_of[*a.victim].push_back(i);
        break;
    }
  }

  S.data_bits = cfg.payload_bytes * 8 + cfg.header_bits;
  S.alert_bits = kAlertPayloadBytes * 8 + cfg.header_bits;
  return S;
}

class TechniqueRun {
 public:
  TechniqueRun(const SharedSetup& S, Technique tech,
               std::vector<EventLogLine>* log)
      : S_(S), cfg_(*S.cfg), tech_(tech), log_(log) {}

  TechniqueResult run() {
    R_.technique = tech_;
    energy_ = S_.energy0;
    death_time_.assign(S_.n, std::nullopt);
    for (const DeathRecord& d : S_.boot_deaths) {
      R_.deaths.push_back(d);
      death_time_[d.node] = d.time;
      logf("%s: node %u boots dead (cannot afford the IDS install)",
           technique_name(tech_), d.node);
    }
    build_monitors();
    build_generators();
    logf("%s: run begins (%u sensors, %zu monitors)", technique_name(tech_),
         S_.n, monitors_.size());

    while (!q_.empty()) {
      const Event ev = q_.top();
      if (ev.time > cfg_.duration_s) break;  // beyond the horizon
      q_.pop();
      now_ = ev.time;
      switch (ev.kind) {
        case EvKind::Generate: on_generate(ev.a); break;
        case EvKind::Transmit: on_transmit(std::uint32_t(ev.a)); break;
        case EvKind::Deliver: on_deliver(std::uint32_t(ev.a)); break;
        case EvKind::Timeout: on_timeout(std::size_t(ev.a)); break;
        case EvKind::Spoof: on_spoof(std::size_t(ev.a)); break;
      }
    }
    finish();
    return std::move(R_);
  }

 private:
  void schedule(double t, EvKind k, std::uint64_t a) {
    q_.push(Event{t, next_order_++, k, a});
  }

  void logf(const char* fmt, ...) {
    if (!log_ || log_->size() >= kMaxLogLines) return;
    char buf[256];
    va_list ap;
    va_start(ap, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, ap);
    va_end(ap);
    log_->push_back(EventLogLine{now_, buf});
  }

  bool alive(NodeId n) const { return n == S_.bs || energy_[n].alive; }

  // Spends energy; returns true if the node died on this debit.
  bool debit(NodeId node, double j) {
    if (node == S_.bs) return false;
    EnergyState& e = energy_[node];
    if (!e.alive) return false;
    if (e.debit(j)) {
      on_death(node);
      return true;
    }
    return false;
  }

  void on_death(NodeId node) {
    death_time_[node] = now_;
    R_.deaths.push_back(DeathRecord{now_, node});
    if (monitor_of_[node] >= 0) {
      monitors_[std::size_t(monitor_of_[node])].state.discard_all();
    }
    logf("%s: node %u ran out of energy", technique_name(tech_), node);
  }

  void finalize(PacketInstance& p, std::uint64_t& counter) {
    if (p.finalized) return;
    p.finalized = true;
    ++counter;
  }

  void build_monitors() {
    monitor_of_.assign(S_.n + 1, -1);
    if (tech_ == Technique::Conventional) {
      // Every sensor runs its own watchdog over its own sends.
      const std::uint32_t thr = cfg_.conv_threshold();
      for (NodeId id = 0; id < S_.n; ++id) {
        MonitorSlot m;
        m.node = id;
        m.state =
            MonitorState(id, tech_, cfg_.buffer_capacity, thr, cfg_.timeout_s);
        monitor_of_[id] = int(monitors_.size());
        monitors_.push_back(std::move(m));
      }
      return;
    }
    // Improved: designated devices watch the forwarders in their charge.
    std::map<NodeId, std::set<NodeId>> watch;
    for (const L1Cell& c : S_.topo.cells_l1) {
      auto& ws = watch[c.head];
      for (NodeId m : c.members) {
        if (m != c.head) ws.insert(m);
      }
    }
    for (const L2Cell& c : S_.topo.cells_l2) {
      auto& ws = watch[c.head];
      for (NodeId h : c.member_heads) {
        if (h != c.head) ws.insert(h);
      }
      if (S_.topo.regional_of_l2[c.id]) {
        watch[*S_.topo.regional_of_l2[c.id]].insert(c.head);
      }
    }
    auto& bs_watch = watch[S_.bs];
    for (NodeId r : S_.topo.regionals) bs_watch.insert(r);

    for (auto& [node, ws] : watch) {
      MonitorSlot m;
      m.node = node;
      m.is_bs = node == S_.bs;
      m.watch.assign(S_.n + 1, 0);
      for (NodeId w : ws) {
        if (w != node) m.watch[w] = 1;
      }
      m.state = MonitorState(node, tech_, cfg_.buffer_capacity,
                             cfg_.warning_threshold, cfg_.timeout_s);
      monitor_of_[node] = int(monitors_.size());
      monitors_.push_back(std::move(m));
    }
  }

  void build_generators() {
    if (cfg_.rates.r_gi <= 0.0) return;  // silent network
    const double interval = double(cfg_.payload_bytes) * 8.0 / cfg_.rates.r_gi;
    auto add = [&](NodeId origin, std::uint64_t stream_id, int flow_idx) {
      Generator g;
      g.origin = origin;
      g.stream_id = stream_id;
      g.flow_idx = flow_idx;
      g.interval = interval;
      g.phase =
          rng::Stream::of(cfg_.seed, rng::kTrafficPhase, stream_id).uniform(0) *
          interval;
      gens_.push_back(g);
      schedule(g.phase, EvKind::Generate, gens_.size() - 1);
    };
    if (!cfg_.flows.empty()) {
      for (std::size_t i = 0; i < cfg_.flows.size(); ++i) {
        add(cfg_.flows[i].path.front(), i, int(i));
      }
    } else {
      for (NodeId id : S_.generator_nodes) add(id, id, -1);
    }
  }

  void on_generate(std::uint64_t gi) {
    Generator& g = gens_[gi];
    const std::uint64_t k = g.emitted++;
    if (!alive(g.origin)) return;  // dead origin: lineage ends here

    std::vector<NodeId> route;
    if (g.flow_idx >= 0) {
      route = cfg_.flows[std::size_t(g.flow_idx)].path;
    } else if (S_.role[g.origin] == NodeRole::Plain && S_.triad[g.origin] &&
               rng::Stream::of(cfg_.seed, rng::kTrafficKind, g.stream_id)
                       .uniform(k) < cfg_.triad_fraction) {
      const auto& t = *S_.triad[g.origin];
      route.assign(t.begin(), t.end());
    } else {
      route = S_.upstream[g.origin];
    }

    PacketInstance p;
    p.uid = data_uid_++;
    p.origin = g.origin;
    p.dest = route.back();
    p.route = std::move(route);
    p.size_bits = S_.data_bits;
    p.payload.resize(cfg_.payload_bytes);
    for (std::size_t i = 0; i < p.payload.size(); ++i) {
      p.payload[i] = std::uint8_t(
          (std::uint64_t(g.origin) * 131 + p.uid * 31 + i * 7) & 0xFF);
    }
    const std::uint32_t pi = std::uint32_t(packets_.size());
    packets_.push_back(std::move(p));
    ++R_.conservation.generated;
    schedule(now_, EvKind::Transmit, pi);

    const double next_t = g.phase + double(g.emitted) * g.interval;
    if (next_t <= cfg_.duration_s) schedule(next_t, EvKind::Generate, gi);
  }

  void on_transmit(std::uint32_t pi) {
    PacketInstance& p = packets_[pi];
    const NodeId from = p.route[p.hop];
    const NodeId to = p.route[p.hop + 1];
    if (!alive(from)) {
      finalize(p, R_.conservation.lost_to_dead);
      return;
    }

    if (p.hop > 0) {
      // A relay obligation: the first active attack on this node decides its
      // behaviour, otherwise it forwards faithfully.
      bool dropped = false;
      bool modified = false;
      const AttackConfig* collusion = nullptr;
      for (std::uint32_t ai : S_.fwd_attacks_of[from]) {
        const AttackConfig& a = S_.attacks[ai];
        if (!a.active_at(now_)) continue;
        const double u = rng::Stream::of(cfg_.seed, rng::kAttackDraw,
                                         std::uint64_t(a.attacker))
                             .uniform(p.uid);
        if (a.kind == AttackKind::SelectiveForwarding) {
          dropped = u < a.rate;
        } else if (a.kind == AttackKind::Modification) {
          modified = u < a.rate;
        } else if (a.kind == AttackKind::Collusion) {
          dropped = u < a.rate;
          if (dropped) collusion = &a;
        }
        break;
      }
      if (dropped) {
        ++R_.truth.bad_counter;
        if (collusion) {
          spoofs_.push_back(SpoofPlan{pi, collusion->attacker,
                                      *collusion->partner, to, p.payload});
          schedule(now_ + cfg_.hop_latency_s * 0.5, EvKind::Spoof,
                   spoofs_.size() - 1);
          logf("%s: node %u dropped packet %llu; partner %u will fake it",
               technique_name(tech_), from,
               static_cast<unsigned long long>(p.uid), *collusion->partner);
        } else {
          logf("%s: node %u dropped packet %llu", technique_name(tech_), from,
               static_cast<unsigned long long>(p.uid));
        }
        finalize(p, R_.conservation.dropped_by_attack);
        return;
      }
      if (modified) {
        p.payload[p.uid % p.payload.size()] ^= 0xFF;
        ++R_.truth.bad_counter;
        logf("%s: node %u tampered packet %llu", technique_name(tech_), from,
             static_cast<unsigned long long>(p.uid));
      } else {
        ++R_.truth.good_counter;
      }
    }

    start_tx(pi, from, from, to, /*spoof=*/false, p.payload);
  }

  void start_tx(std::uint32_t pi, NodeId claimed, NodeId phys, NodeId to,
                bool spoof, const std::vector<std::uint8_t>& payload) {
    PacketInstance& p = packets_[pi];
    Transmission t;
    t.uid = std::uint64_t(txs_.size());
    t.packet = pi;
    t.claimed_from = claimed;
    t.phys_from = phys;
    t.to = to;
    t.start = now_;
    t.airtime = double(p.size_bits) / cfg_.bitrate_bps;
    t.spoof = spoof;
    t.payload = payload;

    if (cfg_.collision_model == CollisionModel::Overlap) {
      for (auto it = active_.begin(); it != active_.end();) {
        Transmission& o = txs_[*it];
        if (o.start + o.airtime <= now_) {
          it = active_.erase(it);
          continue;
        }
        // Mutual interference: each frame records the other's source.
        o.overlap_sources.push_back(S_.pos[t.phys_from]);
        t.overlap_sources.push_back(S_.pos[o.phys_from]);
        ++it;
      }
      active_.push_back(std::uint32_t(t.uid));
    }

    // The transmitter pays per bit over the distance it must cover; a spoof
    // has to reach the deceived monitors near the packet's origin.
    const NodeId target = spoof ? p.origin : to;
    const double d = euclidean_distance(S_.pos[phys], S_.pos[target]);
    debit(phys, double(p.size_bits) * transmit_power_per_bit(cfg_.energy, d));

    // Conventional watchdog: the sender itself expects to overhear the next
    // hop forwarding.  It needs no radio check for its own transmission.
    if (tech_ == Technique::Conventional && !spoof && to != p.dest &&
        monitor_of_[phys] >= 0 && energy_[phys].alive) {
      const std::size_t mi = std::size_t(monitor_of_[phys]);
      Packet w = wire_header(p, t);
      w.payload = t.payload;
      monitors_[mi].state.observe_origin_send(w, now_);
      schedule(now_ + cfg_.timeout_s, EvKind::Timeout, mi);
    }

    txs_.push_back(std::move(t));
    schedule(now_ + cfg_.hop_latency_s, EvKind::Deliver, txs_.size() - 1);
  }

  void on_spoof(std::size_t si) {
    const SpoofPlan sp = spoofs_[si];
    if (!alive(sp.partner)) return;
    start_tx(sp.packet, sp.attacker, sp.partner, sp.to, /*spoof=*/true,
             sp.payload);
  }

  Packet wire_header(const PacketInstance& p, const Transmission& t) const {
    Packet w;
    w.seq = p.uid;
    w.origin = p.origin;
    w.forwarder = t.claimed_from;
    w.next_hop = t.to;
    w.dest = p.dest;
    w.size_bits = p.size_bits;
    return w;
  }

  // One draw decides whether a jammer destroyed this frame at its addressed
  // receiver; the answer gates both the delivery and the receiver's own
  // watchdog resolution.
  bool receiver_jammed(const Transmission& t) const {
    for (std::uint32_t ji : S_.rx_jammers_of[t.to]) {
      const AttackConfig& a = S_.attacks[ji];
      if (!a.active_at(now_)) continue;
      const double u =
          rng::Stream::of(cfg_.seed, rng::kReceiverCollisionDraw,
                          std::uint64_t(a.attacker), std::uint64_t(t.to))
              .uniform(t.uid);
      if (u < a.rate) return true;
    }
    return false;
  }

  void on_deliver(std::uint32_t ti) {
    Transmission& t = txs_[ti];
    PacketInstance& p = packets_[t.packet];
    const bool jammed = receiver_jammed(t);
    dispatch_observations(t, p, jammed);
    if (t.spoof) return;  // observation-only frame, nothing is delivered

    const NodeId to = t.to;
    if (jammed) {
      logf("%s: delivery of packet %llu to node %u jammed",
           technique_name(tech_), static_cast<unsigned long long>(p.uid), to);
      finalize(p, R_.conservation.lost_to_receiver_collision);
      return;
    }
    if (to == S_.bs) {
      finalize(p, R_.conservation.delivered);
      return;
    }
    if (!energy_[to].alive) {
      finalize(p, R_.conservation.lost_to_dead);
      return;
    }
    debit(to, double(p.size_bits) * receive_power_per_bit(cfg_.energy));
    if (to == p.dest) {
      finalize(p, R_.conservation.delivered);
      return;
    }
    ++p.hop;
    schedule(now_, EvKind::Transmit, t.packet);
  }

  void dispatch_observations(const Transmission& t, const PacketInstance& p,
                             bool jammed_at_receiver) {
    const Packet hdr = wire_header(p, t);
    for (std::size_t mi = 0; mi < monitors_.size(); ++mi) {
      MonitorSlot& m = monitors_[mi];
      // The radiating device never watchdogs its own frame.
      if (m.node == t.phys_from || m.node == t.claimed_from) continue;
      if (m.node == t.to) {
        // The addressed receiver is no bystander, but its own reception
        // settles any expectation it holds on the forwarder: when a watched
        // node's parent is also its next hop (a head relaying to the device
        // that watches it), the "overheard forward" arrives as a delivery.
        // No promiscuous-decode charge (reception is billed by the delivery
        // path) and no expectation is created (a monitor never watches
        // itself).
        if (jammed_at_receiver) continue;
        if (!m.is_bs && !energy_[m.node].alive) continue;
        const ObserveResult res =
            m.state.observe_forward(hdr, {t.payload}, now_);
        if (res.outcome != ObserveOutcome::NoMatch) {
          ++R_.comparisons;
          if (res.outcome == ObserveOutcome::Matched) {
            ++R_.observed.good_counter;
          }
          if (res.warning) record_warning(mi, *res.warning);
          if (cfg_.per_comparison_cost_j > 0.0 && !m.is_bs) {
            debit(m.node, cfg_.per_comparison_cost_j);
          }
        }
        continue;
      }
      if (!m.is_bs && !energy_[m.node].alive) continue;
      if (!can_eavesdrop(cfg_.radio, S_.pos[m.node], S_.pos[t.phys_from])) {
        continue;
      }
      bool blinded = false;
      for (const Position& src : t.overlap_sources) {
        if (can_eavesdrop(cfg_.radio, S_.pos[m.node], src)) {
          blinded = true;
          break;
        }
      }
      if (blinded) continue;  // collision garbled the frame for this monitor

      // Promiscuous decode costs the same as any reception.
      if (!m.is_bs &&
          debit(m.node, double(p.size_bits) *
                            receive_power_per_bit(cfg_.energy))) {
        continue;  // died mid-decode
      }

      // What the monitor decoded: normally the bytes on the air, but a
      // collision attacker nearby can corrupt its view of a forward.
      std::span<const std::uint8_t> observed{t.payload};
      std::vector<std::uint8_t> corrupted;
      if (!t.spoof && t.claimed_from != p.origin) {
        for (std::uint32_t ci : S_.observer_jammers) {
          const AttackConfig& a = S_.attacks[ci];
          if (!a.active_at(now_)) continue;
          if (!can_eavesdrop(cfg_.radio, S_.pos[m.node], S_.pos[a.attacker])) {
            continue;
          }
          const double u =
              rng::Stream::of(cfg_.seed, rng::kCollisionDraw,
                              std::uint64_t(a.attacker), std::uint64_t(m.node))
                  .uniform(t.uid);
          if (u >= a.rate) continue;
          corrupted = t.payload;
          corrupted[p.uid % corrupted.size()] ^= 0xA5;
          observed = corrupted;
          break;
        }
      }

      const ObserveResult res = m.state.observe_forward(hdr, observed, now_);
      if (res.outcome != ObserveOutcome::NoMatch) {
        ++R_.comparisons;
        if (res.outcome == ObserveOutcome::Matched) {
          ++R_.observed.good_counter;
        }
        if (res.warning) record_warning(mi, *res.warning);
        if (cfg_.per_comparison_cost_j > 0.0 && !m.is_bs) {
          debit(m.node, cfg_.per_comparison_cost_j);
        }
      }

      // Improved technique: overhearing a handoff to a node in this
      // monitor's jurisdiction creates the expectation - provided the
      // monitor could also hear that node later (creation is double-gated).
      if (tech_ == Technique::Improved && !t.spoof && t.to != p.dest &&
          m.watch[t.to] != 0 &&
          can_eavesdrop(cfg_.radio, S_.pos[m.node], S_.pos[t.to])) {
        // The stored copy is what was on the air; collision noise affects
        // the comparison of a later sighting, not the saved reference.
        Packet w = hdr;
        w.payload = t.payload;
        m.state.observe_origin_send(w, now_);
        schedule(now_ + cfg_.timeout_s, EvKind::Timeout, mi);
      }
    }
  }

  void record_warning(std::size_t mi, const Warning& w) {
    MonitorSlot& m = monitors_[mi];
    ++R_.observed.bad_counter;
    R_.warnings.push_back(w);
    logf("%s: monitor %u warns about node %u (%s)", technique_name(tech_),
         m.node, w.suspect, warning_kind_name(w.kind));
    const bool was = m.state.is_malicious(w.suspect);
    const auto alert = m.state.escalate(w);
    if (!was && m.state.is_malicious(w.suspect)) {
      R_.verdicts.push_back(VerdictRecord{now_, m.node, w.suspect});
      logf("%s: monitor %u declares node %u malicious", technique_name(tech_),
           m.node, w.suspect);
      if (alert && m.node != S_.bs) send_alert(m.node, w.suspect);
    }
  }

  void send_alert(NodeId from, NodeId suspect) {
    const std::vector<NodeId>& route = S_.upstream[from];
    if (route.size() < 2) return;
    PacketInstance p;
    p.uid = kAlertUidBase + alert_uid_++;
    p.is_alert = true;
    p.origin = from;
    p.dest = route.back();
    p.route = route;
    p.size_bits = S_.alert_bits;
    p.payload.resize(kAlertPayloadBytes);
    for (std::size_t i = 0; i < p.payload.size(); ++i) {
      p.payload[i] =
          std::uint8_t(((suspect >> (8 * (i % 4))) ^ (0x5A + i)) & 0xFF);
    }
    const std::uint32_t pi = std::uint32_t(packets_.size());
    packets_.push_back(std::move(p));
    ++R_.conservation.generated;
    ++R_.conservation.alerts_generated;
    ++R_.alerts_sent;
    schedule(now_, EvKind::Transmit, pi);
  }

  void on_timeout(std::size_t mi) {
    MonitorSlot& m = monitors_[mi];
    if (!m.is_bs && !energy_[m.node].alive) return;
    for (const Warning& w : m.state.expire(now_)) record_warning(mi, w);
  }

  void finish() {
    R_.nodes.resize(S_.n);
    double sum_l = 0.0;
    for (NodeId id = 0; id < S_.n; ++id) {
      NodeRecord& r = R_.nodes[id];
      r.id = id;
      r.pos = S_.pos[id];
      r.role = S_.role[id];
      r.d_bs_m = S_.d_bs[id];
      r.e_i_j = S_.e_i[id];
      r.e_p_paid_j = S_.energy0[id].consumed_j;
      r.e_it_j_per_s = S_.e_it_static[id];
      r.lifetime_projected_s =
          lifetime_seconds(S_.e_i[id] - r.e_p_paid_j, S_.e_it_static[id]);
      r.consumed_j = energy_[id].consumed_j;
      r.death_time_s = death_time_[id];
      sum_l += r.lifetime_projected_s;
    }
    R_.sum_node_lifetimes_s = sum_l;

    for (const DeathRecord& d : R_.deaths) {
      const NodeRole role = S_.role[d.node];
      if (role != NodeRole::ClusterHeadL1 && role != NodeRole::ClusterHeadL2) {
        continue;
      }
      if (!R_.first_ch_death_s || d.time < *R_.first_ch_death_s) {
        R_.first_ch_death_s = d.time;
      }
    }

    std::uint64_t pending = 0;
    for (const MonitorSlot& m : monitors_) {
      const BufferStats& s = m.state.buffer().stats();
      R_.buffer_totals.created += s.created;
      R_.buffer_totals.matched += s.matched;
      R_.buffer_totals.expired += s.expired;
      R_.buffer_totals.evicted += s.evicted;
      R_.buffer_totals.discarded += s.discarded;
      R_.buffer_totals.expired_after_warning += s.expired_after_warning;
      pending += m.state.buffer().size();
    }
    R_.expectations_pending_at_end = pending;

    std::uint64_t in_flight = 0;
    for (const PacketInstance& p : packets_) {
      if (!p.finalized) ++in_flight;
    }
    R_.conservation.in_flight_at_end = in_flight;

    if (R_.observed.good_counter + R_.observed.bad_counter > 0) {
      R_.error_ratio_observed = error_ratio(R_.observed);
    }
    if (R_.truth.good_counter + R_.truth.bad_counter > 0) {
      R_.error_ratio_truth = error_ratio(R_.truth);
    }
    logf("%s: run ends (%llu generated, %llu delivered)",
         technique_name(tech_),
         static_cast<unsigned long long>(R_.conservation.generated),
         static_cast<unsigned long long>(R_.conservation.delivered));
  }

  const SharedSetup& S_;
  const ScenarioConfig& cfg_;
  Technique tech_;
  std::vector<EventLogLine>* log_;

  TechniqueResult R_;
  std::vector<EnergyState> energy_;
  std::vector<std::optional<double>> death_time_;
  std::priority_queue<Event, std::vector<Event>, EventAfter> q_;
  std::uint64_t next_order_ = 0;
  double now_ = 0.0;
  std::vector<PacketInstance> packets_;
  std::vector<Transmission> txs_;
  std::vector<std::uint32_t> active_;
  std::vector<MonitorSlot> monitors_;
  std::vector<int> monitor_of_;
  std::vector<Generator> gens_;
  std::vector<SpoofPlan> spoofs_;
  std::uint64_t data_uid_ = 0;
  std::uint64_t alert_uid_ = 0;
};

}  // namespace

std::vector<AttackConfig> effective_attacks(const ScenarioConfig& cfg) {
  std::vector<AttackConfig> out = cfg.attacks;
  const auto k =
      std::uint32_t(cfg.attacker_fraction * double(cfg.node_count));
  if (k == 0) return out;
  std::vector<std::pair<double, NodeId>> keys;
  keys.reserve(cfg.node_count);
  for (NodeId id = 0; id < cfg.node_count; ++id) {
    keys.emplace_back(
        rng::Stream::of(cfg.seed, rng::kAttackerPick, id).uniform(0), id);
  }
  std::sort(keys.begin(), keys.end());
  std::vector<NodeId> picked;
  for (std::uint32_t i = 0; i < k && i < keys.size(); ++i) {
    picked.push_back(keys[i].second);
  }
  std::sort(picked.begin(), picked.end());
  for (NodeId id : picked) {
    AttackConfig a;
    a.kind = AttackKind::SelectiveForwarding;
    a.attacker = id;
    a.rate = cfg.attack_rate;
    out.push_back(a);
  }
  return out;
}

std::vector<Position> derive_positions(const ScenarioConfig& cfg) {
  std::vector<Position> pos(cfg.node_count + 1);
  for (NodeId id = 0; id < cfg.node_count; ++id) {
    auto it = cfg.positions.find(id);
    if (it != cfg.positions.end()) {
      pos[id] = it->second;
    } else {
      const auto s = rng::Stream::of(cfg.seed, rng::kPosition, id);
      pos[id] = Position{s.uniform(0) * cfg.field_size_m,
                         s.uniform(1) * cfg.field_size_m};
    }
  }
  pos[cfg.node_count] = cfg.bs_position;
  return pos;
}

std::vector<double> derive_boot_energy(const ScenarioConfig& cfg) {
  std::vector<double> e(cfg.node_count);
  for (NodeId id = 0; id < cfg.node_count; ++id) {
    double t;
    auto it = cfg.boot_times_s.find(id);
    if (it != cfg.boot_times_s.end()) {
      t = it->second;
    } else {
      t = rng::Stream::of(cfg.seed, rng::kBootTime, id)
              .uniform_range(0, cfg.boot_time_min_s, cfg.boot_time_max_s);
    }
    e[id] = boot_energy(cfg.energy, t);
  }
  return e;
}

ScenarioResult run_scenario(const ScenarioConfig& cfg) {
  cfg.validate();
  const SharedSetup S = build_setup(cfg);

  ScenarioResult out;
  out.config = cfg;
  out.topology = S.topo;
  out.event_log_enabled = cfg.record_events;

  std::vector<Technique> techs;
  switch (cfg.technique) {
    case TechniqueChoice::Conventional:
      techs = {Technique::Conventional};
      break;
    case TechniqueChoice::Improved:
      techs = {Technique::Improved};
      break;
    case TechniqueChoice::Both:
      techs = {Technique::Conventional, Technique::Improved};
      break;
  }
  for (Technique t : techs) {
    TechniqueRun run(S, t, cfg.record_events ? &out.event_log : nullptr);
    out.techniques.push_back(run.run());
  }
  return out;
}

}  // namespace wsn
