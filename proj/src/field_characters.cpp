#include "gml/field_characters.hpp"

#include <numeric>
#include <stdexcept>

namespace gml {

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, b, m);
    b = mulmod_u64(b, b, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic witness set for all n < 2^64.
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::int64_t> primes_in_range(std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> out;
  if (hi < 2 || hi < lo) return out;
  lo = std::max<std::int64_t>(lo, 2);
  std::vector<bool> sieve(static_cast<std::size_t>(hi - lo + 1), true);
  for (std::int64_t q = 2; q * q <= hi; ++q) {
    std::int64_t start = std::max(q * q, ((lo + q - 1) / q) * q);
    for (std::int64_t m = start; m <= hi; m += q) sieve[static_cast<std::size_t>(m - lo)] = false;
  }
  for (std::int64_t v = lo; v <= hi; ++v) {
    if (sieve[static_cast<std::size_t>(v - lo)]) out.push_back(v);
  }
  return out;
}

int legendre_symbol(std::int64_t a, std::int64_t p) {
  std::int64_t r = a % p;
  if (r < 0) r += p;
  if (r == 0) return 0;
  std::uint64_t e = powmod_u64(static_cast<std::uint64_t>(r), static_cast<std::uint64_t>((p - 1) / 2),
                               static_cast<std::uint64_t>(p));
  return e == 1 ? 1 : -1;
}

PrimeContext build_context(std::int64_t p) {
  if (p < 3 || p % 2 == 0 || !is_prime_u64(static_cast<std::uint64_t>(p)))
    throw std::invalid_argument("build_context: p must be an odd prime");

  PrimeContext ctx;
  ctx.p = p;
  const std::int64_t n = p - 1;

  // Factor p-1 once, then test candidates g by checking g^{(p-1)/q} != 1.
  std::vector<std::int64_t> prime_factors;
  {
    std::int64_t m = n;
    for (std::int64_t q = 2; q * q <= m; ++q) {
      if (m % q == 0) {
        prime_factors.push_back(q);
        while (m % q == 0) m /= q;
      }
    }
    if (m > 1) prime_factors.push_back(m);
  }
  for (std::int64_t g = 2; g < p; ++g) {
    bool primitive = true;
    for (std::int64_t q : prime_factors) {
      if (powmod_u64(static_cast<std::uint64_t>(g), static_cast<std::uint64_t>(n / q),
                     static_cast<std::uint64_t>(p)) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      ctx.g = g;
      break;
    }
  }

  ctx.dlog.assign(static_cast<std::size_t>(p), -1);
  ctx.pow_g.resize(static_cast<std::size_t>(n));
  std::int64_t acc = 1;
  for (std::int64_t t = 0; t < n; ++t) {
    ctx.pow_g[static_cast<std::size_t>(t)] = static_cast<std::int32_t>(acc);
    ctx.dlog[static_cast<std::size_t>(acc)] = static_cast<std::int32_t>(t);
    acc = (acc * ctx.g) % p;
  }

  // Legendre table by marking nonzero squares; independent of the Euler
  // criterion in legendre_symbol, which tests cross-check against it.
  ctx.legendre.assign(static_cast<std::size_t>(p), -1);
  ctx.legendre[0] = 0;
  ctx.squares.resize(static_cast<std::size_t>(p));
  ctx.squares[0] = 0;
  for (std::int64_t a = 1; a < p; ++a) {
    std::int64_t s = (a * a) % p;
    ctx.squares[static_cast<std::size_t>(a)] = static_cast<std::int32_t>(s);
    ctx.legendre[static_cast<std::size_t>(s)] = 1;
  }
  return ctx;
}

CharValue char_eval(const PrimeContext& ctx, const Character& chi, std::int64_t a) {
  std::int64_t r = a % ctx.p;
  if (r < 0) r += ctx.p;
  if (r == 0) return CharValue{};
  const std::int64_t n = ctx.p - 1;
  std::int64_t t = ctx.dlog[static_cast<std::size_t>(r)];
  std::int64_t num = (chi.k % n) * t % n;
  std::int64_t d = std::gcd(num == 0 ? n : num, n);
  return CharValue{false, num / d, n / d};
}

std::vector<Character> enumerate_characters(const PrimeContext& ctx, CharFilter filter) {
  std::vector<Character> out;
  for (std::int64_t k = 0; k < ctx.p - 1; ++k) {
    const bool even = k % 2 == 0;
    switch (filter) {
      case CharFilter::all:
        break;
      case CharFilter::even:
        if (!even) continue;
        break;
      case CharFilter::odd:
        if (even) continue;
        break;
      case CharFilter::even_nonprincipal:
        if (!even || k == 0) continue;
        break;
    }
    out.push_back(Character{ctx.p, k});
  }
  return out;
}

}  // namespace gml
