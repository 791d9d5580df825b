#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "gml/field_characters.hpp"

namespace gml {

// Exact integer sums built from the quadratic character rho = (./p).
struct CharSumRecord {
  std::int64_t p = 0;
  std::vector<std::int64_t> kernel;  // K(x) for x = 1 .. p-1
  std::int64_t N = 0;
  std::int64_t T = 0;
  std::int64_t tripleFull = 0;
  std::map<std::int64_t, std::int64_t> S;  // a -> S(a)
  std::map<std::int64_t, std::int64_t> R;  // a -> R(a)
  std::vector<std::int64_t> phi;           // phi(t) for t = 0 .. p-1; empty unless requested
  std::map<std::int64_t, std::int64_t> diagS;
  std::int64_t diagT = 0;
  std::map<std::int64_t, std::int64_t> diagR;
};

// K(x) = sum_{b=1}^{p-1} rho(b^2 - x^2) rho(b^2 - 1).
// Everything downstream of K is exact int64; the magnitudes involved stay
// far below 2^63 for any p this project sweeps.
class CharSumEngine {
 public:
  explicit CharSumEngine(const PrimeContext& ctx);

  std::int64_t p() const { return ctx_->p; }

  std::int64_t kernel_at(std::int64_t x) const;  // x in [1, p-1]

  // N = rho(-1) sum_{a=2}^{p-2} rho(a^2 - 1) K(a)
  std::int64_t sum_N() const;
  // T = sum_{a=2}^{p-2} K(a)^2
  std::int64_t sum_T() const;
  // S(a) = sum_{c=1}^{p-1} K(a c) K(c)
  std::int64_t triple_S(std::int64_t a) const;
  // sum_{c=1}^{p-1} K(c)^2; equals 2 (p-3)^2 + T since K(1) = K(p-1) = p-3
  std::int64_t triple_full() const;
  // R(a) = sum_{c=1}^{p-1} rho(c^2 - 1) K(a c)
  std::int64_t sum_R(std::int64_t a) const;

  // phi(t) = sum_b rho(b - t) rho(b - 1) rho(b); builds the full table on
  // first use (O(p^2), wanted only by the diagnostics below)
  std::int64_t phi(std::int64_t t) const;

  // s'(a) = sum_c rho(c) phi(a^2 c) phi(c)
  std::int64_t diag_s(std::int64_t a) const;
  // t' = sum_c rho(c) phi(c)^2
  std::int64_t diag_t() const;
  // r'(a) = sum_c rho(c^2 - c) phi(a^2 c)
  std::int64_t diag_r(std::int64_t a) const;

  // max over x with x^2 != 1 of |K(x)| / (3 sqrt p)
  double weil_max_ratio() const;

  CharSumRecord record(const std::vector<std::int64_t>& a_values, bool include_phi) const;

 private:
  void build_phi() const;
  std::int64_t reduce(std::int64_t a) const;

  const PrimeContext* ctx_;
  std::vector<std::int64_t> kernel_;            // index 0 .. p-1; [0] unused
  mutable std::vector<std::int64_t> phi_;       // lazy
};

}  // namespace gml
