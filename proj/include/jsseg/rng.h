// Deterministic random streams for shuffle baselines.
//
// The generator is splitmix64 (Steele/Lea/Vigna fixed-increment scrambler),
// used here as a family of independent streams: one stream per
// (master seed, span, replicate) triple. Pure 64-bit integer arithmetic, so
// identical output on every platform.

#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace jsseg {

/// Algorithm identifier pinned into run metadata so trees can be reproduced.
inline constexpr const char* kGeneratorName = "splitmix64-fisher-yates-v1";

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform draw in [0, bound) via rejection; bound must be positive.
  std::uint64_t nextBelow(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

/// Mixes the master seed with three stream coordinates (span start, span end,
/// replicate index) into an independent stream seed.
std::uint64_t deriveStreamSeed(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                               std::uint64_t c);

/// In-place Fisher-Yates shuffle driven by `rng`.
template <typename T>
void fisherYatesShuffle(std::vector<T>& items, SplitMix64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.nextBelow(i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace jsseg
