#pragma once

#include <cstdint>

namespace gnpspec {

// Identifies the uniform stream used by gen_gnp. Embedded in every output
// record; fixtures are only comparable across builds with the same string.
inline constexpr const char* kGeneratorVersion = "splitmix64-v1";

// SplitMix64 (Steele, Lea, Flood 2014). Counter-based: the whole stream is
// a pure function of the seed, so generation is reproducible across
// platforms and thread counts.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform double in (0, 1]. The +1 keeps log(u) finite.
  double next_unit_open() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

// Finalizer of SplitMix64, usable as a standalone 64-bit mixer.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Per-trial seed derivation: mix(base_seed, n, trial). Trials get
// independent streams without sequential reuse, so they can run in any
// order (or in parallel) and still reproduce bit-identically.
inline std::uint64_t mix_seed(std::uint64_t base_seed, std::uint64_t n,
                              std::uint64_t trial) {
  std::uint64_t h = mix64(base_seed + 0x9E3779B97F4A7C15ULL);
  h = mix64(h ^ (n + 0xD1B54A32D192ED03ULL));
  h = mix64(h ^ (trial + 0x8CB92BA72F3D8DD7ULL));
  return h;
}

}  // namespace gnpspec
