// Internal numerics shared by the gauss-sum, L-function and moment modules.
// Everything here is templated on the real type R: double for standard
// precision, a 50-digit binary float for extended verification runs.
#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "gml/field_characters.hpp"
#include "gml/numeric.hpp"

namespace gml::detail {

using big_float = boost::multiprecision::cpp_bin_float_50;

// Constant in the compensated-summation error claim err = 16 eps sum|terms|.
inline constexpr double kErrC = 16.0;

inline double to_double(double x) { return x; }
inline double to_double(const big_float& x) { return x.convert_to<double>(); }

template <class R>
R r_abs(const R& x) {
  using std::fabs;
  return fabs(x);
}

template <class R>
constexpr double r_eps() {
  return static_cast<double>(std::numeric_limits<R>::epsilon());
}

// Neumaier variant of Kahan summation; also tallies sum of |x| so the
// caller can state a rounding bound proportional to the absolute mass.
template <class R>
struct Neumaier {
  R sum{0};
  R comp{0};
  R abs_sum{0};

  void add(const R& x) {
    R t = sum + x;
    if (r_abs(sum) >= r_abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
    abs_sum += r_abs(x);
  }

  R value() const { return sum + comp; }
};

template <class R>
struct ComplexAccum {
  Neumaier<R> re, im;
  void add(const R& xr, const R& xi) {
    re.add(xr);
    im.add(xi);
  }
};

// Componentwise bounds |d re| <= 16 eps sum|re terms| (same for im) give
// |d z| <= 16 eps hypot of the two tallies.
inline ComplexValue finish(const ComplexAccum<double>& acc) {
  ComplexValue v{acc.re.value(), acc.im.value(), 0.0};
  v.err = kErrC * r_eps<double>() * std::hypot(acc.re.abs_sum, acc.im.abs_sum);
  return v;
}

inline ComplexValue finish(const ComplexAccum<big_float>& acc) {
  ComplexValue v{to_double(acc.re.value()), to_double(acc.im.value()), 0.0};
  double mass = std::hypot(to_double(acc.re.abs_sum), to_double(acc.im.abs_sum));
  // extended rounding mass plus the final cast of each component to double
  v.err = kErrC * r_eps<big_float>() * mass + gml::detail::kEps * v.abs();
  return v;
}

template <class R>
struct Trig;

template <>
struct Trig<double> {
  // Angles reduced in 80-bit extended so table entries land within an ulp.
  static void fill(std::int64_t denom, std::vector<double>& c, std::vector<double>& s) {
    c.resize(static_cast<std::size_t>(denom));
    s.resize(static_cast<std::size_t>(denom));
    const long double two_pi = 6.283185307179586476925286766559L;
    for (std::int64_t r = 0; r < denom; ++r) {
      long double th = two_pi * static_cast<long double>(r) / static_cast<long double>(denom);
      c[static_cast<std::size_t>(r)] = static_cast<double>(std::cos(th));
      s[static_cast<std::size_t>(r)] = static_cast<double>(std::sin(th));
    }
  }
  static double pi() { return M_PI; }
};

template <>
struct Trig<big_float> {
  static void fill(std::int64_t denom, std::vector<big_float>& c, std::vector<big_float>& s) {
    c.resize(static_cast<std::size_t>(denom));
    s.resize(static_cast<std::size_t>(denom));
    const big_float two_pi = 2 * boost::math::constants::pi<big_float>();
    for (std::int64_t r = 0; r < denom; ++r) {
      big_float th = two_pi * r / denom;
      c[static_cast<std::size_t>(r)] = cos(th);
      s[static_cast<std::size_t>(r)] = sin(th);
    }
  }
  static big_float pi() { return boost::math::constants::pi<big_float>(); }
};

template <class R>
struct Tables {
  std::int64_t p = 0;
  std::vector<R> cosP, sinP;  // e(r/p), r in [0, p)
  std::vector<R> cosU, sinU;  // e(j/(p-1)), j in [0, p-1)
  // Log(1 - e(a/p)) on the principal branch, index a in [1, p):
  // 1 - e(a/p) = 2 sin(pi a/p) e(i (pi a/p - pi/2)), so
  // logRe[a] = ln(2 sin(pi a/p)), logIm[a] = pi a/p - pi/2.
  std::vector<R> logRe, logIm;
  bool logs_built = false;

  void build(std::int64_t prime) {
    p = prime;
    Trig<R>::fill(p, cosP, sinP);
    Trig<R>::fill(p - 1, cosU, sinU);
  }

  void build_logs() {
    if (logs_built) return;
    logRe.resize(static_cast<std::size_t>(p));
    logIm.resize(static_cast<std::size_t>(p));
    const R pi = Trig<R>::pi();
    using std::log;
    using std::sin;
    for (std::int64_t a = 1; a < p; ++a) {
      R frac = R(a) / R(p);
      logRe[static_cast<std::size_t>(a)] = log(2 * sin(pi * frac));
      logIm[static_cast<std::size_t>(a)] = pi * frac - pi / 2;
    }
    logs_built = true;
  }
};

struct WorkspaceImpl {
  const PrimeContext* ctx = nullptr;
  Precision prec = Precision::standard;
  Tables<double> t_std;
  std::optional<Tables<big_float>> t_ext;
  // q2[n][t] = n g^{2t} mod p; drives e(n a^2 / p) when a = g^t.
  std::map<std::int64_t, std::vector<std::int32_t>> g2_by_n;
  // |L(1, chi_k)| and its error bound for k in [0, p-1); slot 0 unused.
  std::optional<std::vector<double>> l_abs;
  std::optional<std::vector<double>> l_abs_err;

  const std::vector<std::int32_t>& q2_for(std::int64_t n) {
    auto it = g2_by_n.find(n);
    if (it != g2_by_n.end()) return it->second;
    const std::int64_t p = ctx->p;
    std::vector<std::int32_t> q2(static_cast<std::size_t>(p - 1));
    std::int64_t nm = n % p;
    if (nm < 0) nm += p;
    for (std::int64_t t = 0; t < p - 1; ++t) {
      std::int64_t sq = ctx->pow_g[static_cast<std::size_t>(2 * t % (p - 1))];
      q2[static_cast<std::size_t>(t)] = static_cast<std::int32_t>(nm * sq % p);
    }
    return g2_by_n.emplace(n, std::move(q2)).first->second;
  }

  Tables<big_float>& ext() {
    if (!t_ext) {
      t_ext.emplace();
      t_ext->build(ctx->p);
    }
    return *t_ext;
  }
};

}  // namespace gml::detail
