#pragma once

#include <cstdint>
#include <vector>

namespace gml {

bool is_prime_u64(std::uint64_t n);

// All primes in [lo, hi], ascending.
std::vector<std::int64_t> primes_in_range(std::int64_t lo, std::int64_t hi);

// (a/p) via Euler's criterion; a may be any integer, p an odd prime.
int legendre_symbol(std::int64_t a, std::int64_t p);

// Per-prime tables shared by everything downstream. All index arithmetic
// for characters happens through dlog, so building one is O(p).
struct PrimeContext {
  std::int64_t p = 0;
  std::int64_t g = 0;  // smallest primitive root mod p
  // dlog[a] = t with g^t == a (mod p) for 1 <= a < p; dlog[0] = -1.
  std::vector<std::int32_t> dlog;
  // legendre[a] = (a/p) for 0 <= a < p, with legendre[0] = 0.
  std::vector<std::int8_t> legendre;
  std::vector<std::int32_t> squares;  // squares[a] = a^2 mod p, 0 <= a < p
  std::vector<std::int32_t> pow_g;    // pow_g[t] = g^t mod p, t in [0, p-1)

  std::int64_t order() const { return p - 1; }
};

// Throws std::invalid_argument unless p is an odd prime.
PrimeContext build_context(std::int64_t p);

// Dirichlet character mod p indexed against the smallest primitive root g:
// chi_k(g^t) = e(k t / (p-1)). k = 0 is the principal character.
struct Character {
  std::int64_t p = 0;
  std::int64_t k = 0;

  bool is_principal() const { return k == 0; }
  // chi(-1) = e(k/2) = (-1)^k since -1 = g^{(p-1)/2}
  bool is_even() const { return k % 2 == 0; }
  Character conjugate() const { return {p, (p - 1 - k) % (p - 1)}; }
  Character times(const Character& o) const { return {p, (k + o.k) % (p - 1)}; }
};

// Exact character value: zero, or the root of unity e(num/den) in lowest
// terms with 0 <= num < den.
struct CharValue {
  bool zero = true;
  std::int64_t num = 0;
  std::int64_t den = 1;
};

CharValue char_eval(const PrimeContext& ctx, const Character& chi, std::int64_t a);

enum class CharFilter { all, even, odd, even_nonprincipal };

std::vector<Character> enumerate_characters(const PrimeContext& ctx, CharFilter filter);

}  // namespace gml
