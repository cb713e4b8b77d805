#include "jsseg/rng.h"

namespace jsseg {
namespace {

std::uint64_t scramble(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t SplitMix64::nextBelow(std::uint64_t bound) {
  // Reject draws from the incomplete top interval so the result is unbiased.
  const std::uint64_t threshold = (0ULL - bound) % bound;
  for (;;) {
    const std::uint64_t draw = next();
    if (draw >= threshold) {
      return draw % bound;
    }
  }
}

std::uint64_t deriveStreamSeed(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                               std::uint64_t c) {
  std::uint64_t h = seed;
  h = scramble(h + 0x9E3779B97F4A7C15ULL * (a + 1));
  h = scramble(h + 0x9E3779B97F4A7C15ULL * (b + 1));
  h = scramble(h + 0x9E3779B97F4A7C15ULL * (c + 1));
  return h;
}

}  // namespace jsseg
