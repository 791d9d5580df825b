#pragma once

#include <cstdint>
#include <vector>

namespace gml {

// splitmix64. Hand-rolled because the standard distributions are not
// bit-identical across library implementations, and reruns must reproduce
// the exact sample set for byte-identical reports.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : x_(seed) {}

  std::uint64_t next() {
    x_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = x_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t x_;
};

// Multiplier sample for the S(a) / R(a) scans: the structural values
// {2, 3, p/3, p/2, p-2} plus 16 pseudorandom draws from a stream keyed by
// (seed, p). Deduplicated and sorted ascending.
std::vector<std::int64_t> sample_multipliers(std::int64_t p, std::uint64_t seed);

}  // namespace gml
