#pragma once

#include <cstdint>

// Counter-based pseudo-random streams.
//
// Every stream is identified by a 64-bit key derived from the run seed plus an
// arbitrary list of integer id parts (node id, purpose tag, ...).  A draw is a
// pure function of (key, index), so streams are position-addressable and two
// streams with different ids never share state.  That property is what makes
// runs bit-reproducible and lets us guarantee that adding or removing a
// monitor does not perturb traffic or attacker draws.

namespace wsn::rng {

// SplitMix64 finalizer.  Good avalanche behaviour, cheap, and stateless.
inline std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class Stream {
 public:
  Stream() = default;
  explicit Stream(std::uint64_t key) : key_(key) {}

  // Builds a stream key from a seed and any number of integer id parts.
  template <typename... Parts>
  static Stream of(std::uint64_t seed, Parts... parts) {
    std::uint64_t k = mix(seed);
    ((k = mix(k ^ mix(static_cast<std::uint64_t>(parts)))), ...);
    return Stream(k);
  }

  std::uint64_t bits(std::uint64_t index) const {
    return mix(key_ ^ mix(index + 0x632be59bd9b4e019ULL));
  }

  // Uniform double in [0, 1), 53 significant bits.
  double uniform(std::uint64_t index) const {
    return static_cast<double>(bits(index) >> 11) * 0x1.0p-53;
  }

  double uniform_range(std::uint64_t index, double lo, double hi) const {
    return lo + (hi - lo) * uniform(index);
  }

  std::uint64_t key() const { return key_; }

 private:
  std::uint64_t key_ = 0;
};

// Purpose tags for stream ids.  Keeping them in one enum avoids accidental
// collisions between subsystems.
enum Purpose : std::uint64_t {
  kPosition = 1,
  kBootTime = 2,
  kTrafficPhase = 3,
  kTrafficKind = 4,
  kAttackDraw = 5,
  kAttackerPick = 6,
  kCollisionDraw = 7,
  kReceiverCollisionDraw = 8,
};

}  // namespace wsn::rng
