#pragma once

#include <cmath>
#include <cstdint>

namespace cqlearn {

// splitmix64 finalizer (Steele, Lea, Flood 2014). Used both as the stream
// generator and as the seed-derivation mix everywhere in this project.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Deterministic seed derivation: seed -> per-(a,b) stream seed.
// derive_seed(s, a, b) = mix64(mix64(s ^ mix64(a + 1)) ^ mix64(b + 0x9e37...)).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                 std::uint64_t b = 0) {
  return mix64(mix64(master ^ mix64(a + 1)) ^ mix64(b + 0x9e3779b97f4a7c15ULL));
}

// Seedable 64-bit random source (splitmix64 stream). Streams are split by
// index with child(i), which derives a fresh stream from the construction
// seed; children are stable no matter how much of the parent was consumed.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : seed_(seed), state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1), 53 random bits.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller (two uniforms per call, no caching so the
  // draw count stays predictable).
  double gaussian() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
  }

  RandomSource child(std::uint64_t index) const {
    return RandomSource(derive_seed(seed_, index));
  }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::uint64_t state_;
};

}  // namespace cqlearn
