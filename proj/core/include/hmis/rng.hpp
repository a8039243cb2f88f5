#pragma once

#include <cstdint>
#include <initializer_list>

namespace hmis {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic counter-based stream. Per-node streams are derived by mixing
// the global seed with node id and a phase salt, so results do not depend on
// the order in which nodes are stepped.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  static Rng derive(std::uint64_t seed, std::initializer_list<std::uint64_t> salts) {
    std::uint64_t s = seed;
    splitmix64(s);
    for (std::uint64_t salt : salts) {
      s ^= salt + 0x9e3779b97f4a7c15ULL + (s << 6) + (s >> 2);
      splitmix64(s);
    }
    return Rng(s);
  }

  std::uint64_t next() { return splitmix64(state_); }

  // Uniform in [0, bound). Fixed multiply-shift mapping, identical everywhere.
  std::uint64_t below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * bound) >> 64);
  }

  // Uniform in [lo, hi], inclusive.
  std::uint64_t range(std::uint64_t lo, std::uint64_t hi) {
    return lo + below(hi - lo + 1);
  }

  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return unit() < p; }

 private:
  std::uint64_t state_;
};

}  // namespace hmis
