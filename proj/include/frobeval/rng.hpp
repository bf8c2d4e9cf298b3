#ifndef FROBEVAL_RNG_HPP
#define FROBEVAL_RNG_HPP

#include <cstdint>

namespace frobeval {

/// SplitMix64 (Steele, Lea, Flood; public domain reference constants). The
/// output sequence is fully determined by the seed and identical on every
/// platform; random_poly and the CLI seed semantics rely on that. Residues
/// are drawn as next() mod bound (rejection-free; bound is tiny against 2^64).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint32_t below(std::uint32_t bound) {
    return static_cast<std::uint32_t>(next() % bound);
  }

 private:
  std::uint64_t state_;
};

}  // namespace frobeval

#endif
