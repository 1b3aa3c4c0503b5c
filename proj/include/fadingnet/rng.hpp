#pragma once

#include <cstdint>
#include <random>

namespace fadingnet {

// splitmix64 finalizer; full avalanche on 64 bits.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Uniform in [0,1) from the top 53 bits of a 64-bit word.
inline double unit_from_bits(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Counter-keyed uniform: a pure function of (salt, a, b). Asymmetric in
// (a, b), so (k, i) and (i, k) index independent values. The three parts
// are exposed separately so hot loops can hoist the invariant mixes.
inline std::uint64_t hash_salt_part(std::uint64_t salt) {
  return mix64(salt ^ 0x8f1bbcdcbfa53e0bULL);
}

inline std::uint64_t hash_index_a(std::uint64_t a) { return mix64(a); }

inline std::uint64_t hash_index_b(std::uint64_t b) {
  return mix64(b + 0x2545f4914f6cdd1dULL);
}

inline double unit_hash01_parts(std::uint64_t salt_part, std::uint64_t a_part,
                                std::uint64_t b_part) {
  return unit_from_bits(mix64(mix64(salt_part ^ a_part) ^ b_part));
}

inline double unit_hash01(std::uint64_t salt, std::uint64_t a, std::uint64_t b) {
  return unit_hash01_parts(hash_salt_part(salt), hash_index_a(a), hash_index_b(b));
}

// Deterministic random stream. Streams are never shared between workers;
// derive() produces independent substreams from (master seed, path...).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  template <class... Parts>
  static Rng derive(std::uint64_t master, Parts... parts) {
    std::uint64_t h = mix64(master);
    ((h = mix64(h ^ static_cast<std::uint64_t>(parts))), ...);
    return Rng(h);
  }

  double uniform01() { return unit_from_bits(engine_()); }

  bool bernoulli(double p) { return uniform01() < p; }

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

// Purpose tags keeping substream families disjoint across harness stages.
enum StreamDomain : std::uint64_t {
  kStreamSweep = 1,
  kStreamConcentration = 2,
  kStreamDirectPower = 3,
  kStreamInterference = 4,
  kStreamFalk = 5,
  kStreamTolerance = 6,
  kStreamSlotDebug = 7,
};

}  // namespace fadingnet
