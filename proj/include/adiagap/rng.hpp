#ifndef ADIAGAP_RNG_HPP
#define ADIAGAP_RNG_HPP

#include <cstdint>
#include <random>

namespace adiagap {

// Seedable source of portable random words. The engine is std::mt19937_64,
// whose output sequence for a given seed is fixed by the C++ standard; the
// bounded draw below is implemented here (rejection sampling) instead of
// std::uniform_int_distribution, whose mapping is implementation-defined.
// Instances generated from a seed therefore reproduce across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  // Uniform in [0, bound), bound >= 1. Unbiased: words below the rejection
  // threshold 2^64 mod bound are redrawn.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

 private:
  std::mt19937_64 eng_;
};

// SplitMix64 finalizer; used to derive independent stream seeds from a base
// seed plus an index without correlating the resulting mt19937_64 states.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace adiagap

#endif  // ADIAGAP_RNG_HPP
