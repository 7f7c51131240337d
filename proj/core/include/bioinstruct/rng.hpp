#pragma once

#include <cstdint>
#include <string_view>

namespace bioinstruct {

// Deterministic pseudo-random generator used everywhere randomness is needed.
//
// The algorithm is splitmix64 (Steele, Lea & Flood 2014): the state advances
// by the golden-gamma constant and each output is a finalizing bit mix. It is
// fixed by this header, independent of the standard library, so a given seed
// produces the same draw sequence on every platform and in every build.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : seed_(seed), state_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform draw in [0, bound); rejection sampling, no modulo bias.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

  // Uniform double in [0, 1) with 53 bits of precision.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Substream keyed by a string (e.g. a record id). Derived from the original
  // seed, not the current state, so partitioned work is order-independent.
  SeededRng derive(std::string_view key) const {
    // FNV-1a over the key, folded into the base seed.
    std::uint64_t h = 0xcbf29ce484222325ull ^ seed_;
    for (const char c : key) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ull;
    }
    return SeededRng(h);
  }

 private:
  std::uint64_t seed_;
  std::uint64_t state_;
};

}  // namespace bioinstruct
