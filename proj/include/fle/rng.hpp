#pragma once

#include <cstdint>

namespace fle {

// Deterministic 64-bit generator (splitmix64). We pin the algorithm rather
// than use std::mt19937 distributions so that sampled valuations are
// bit-identical across platforms and standard-library versions.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform draw from [0, bound) via the multiply-shift reduction; bound must
  // be positive. Deterministic given the seed and call sequence.
  std::uint32_t below(std::uint32_t bound) {
    return static_cast<std::uint32_t>(
        (static_cast<unsigned __int128>(next()) * bound) >> 64);
  }

private:
  std::uint64_t state_;
};

// Default master seed for every sampling surface (CLI, battery checks,
// test generators). Recorded verbatim in reports.
inline constexpr std::uint64_t kDefaultSeed = 0xF1E3;

// Derives an independent stream from a master seed and a stream index, so
// that per-(model, item) sampling does not depend on iteration order.
inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t stream) {
  SplitMix64 g(master ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
  return g.next();
}

}  // namespace fle
