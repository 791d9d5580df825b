#include "gml/sampling.hpp"

#include <set>

namespace gml {

std::vector<std::int64_t> sample_multipliers(std::int64_t p, std::uint64_t seed) {
  std::set<std::int64_t> vals;
  for (std::int64_t a : {std::int64_t{2}, std::int64_t{3}, p / 3, p / 2, p - 2}) {
    std::int64_t r = a % p;
    if (r < 0) r += p;
    if (r != 0) vals.insert(r);
  }
  if (p >= 5) {
    // Stream seed mixes the run seed with p so neighboring primes do not
    // share draw sequences.
    SplitMix64 rng((seed * 0x100000001B3ull) ^ static_cast<std::uint64_t>(p));
    for (int i = 0; i < 16; ++i) {
      vals.insert(2 + static_cast<std::int64_t>(rng.next() % static_cast<std::uint64_t>(p - 3)));
    }
  }
  return std::vector<std::int64_t>(vals.begin(), vals.end());
}

}  // namespace gml
