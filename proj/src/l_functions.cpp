#include "gml/l_functions.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "engine.hpp"

namespace gml {

namespace {

// sum_t e(k t / (p-1)) f(g^t) with f given per residue; additive index
// stepping keeps the inner loop multiplication-free.
template <class R>
ComplexValue char_weighted_sum(const PrimeContext& ctx, const detail::Tables<R>& tb,
                               std::int64_t k, const std::vector<R>& f_re,
                               const std::vector<R>& f_im) {
  const std::int64_t u = ctx.p - 1;
  detail::ComplexAccum<R> acc;
  std::int64_t idx = 0;
  for (std::int64_t t = 0; t < u; ++t) {
    const std::size_t a = static_cast<std::size_t>(ctx.pow_g[static_cast<std::size_t>(t)]);
    const R cr = tb.cosU[static_cast<std::size_t>(idx)];
    const R ci = tb.sinU[static_cast<std::size_t>(idx)];
    acc.add(cr * f_re[a] - ci * f_im[a], cr * f_im[a] + ci * f_re[a]);
    idx += k;
    if (idx >= u) idx -= u;
  }
  return detail::finish(acc);
}

template <class R>
ComplexValue tau_impl(const PrimeContext& ctx, const detail::Tables<R>& tb, std::int64_t k) {
  const std::int64_t u = ctx.p - 1;
  detail::ComplexAccum<R> acc;
  std::int64_t idx = 0;
  for (std::int64_t t = 0; t < u; ++t) {
    const std::size_t a = static_cast<std::size_t>(ctx.pow_g[static_cast<std::size_t>(t)]);
    const R cr = tb.cosU[static_cast<std::size_t>(idx)];
    const R ci = tb.sinU[static_cast<std::size_t>(idx)];
    acc.add(cr * tb.cosP[a] - ci * tb.sinP[a], cr * tb.sinP[a] + ci * tb.cosP[a]);
    idx += k;
    if (idx >= u) idx -= u;
  }
  return detail::finish(acc);
}

template <class R>
ComplexValue log_sum_impl(const PrimeContext& ctx, detail::Tables<R>& tb, std::int64_t k_conj) {
  tb.build_logs();
  return char_weighted_sum(ctx, tb, k_conj, tb.logRe, tb.logIm);
}

void require_nonprincipal(const Character& chi) {
  if (chi.is_principal()) throw std::invalid_argument("L(1, chi) requires a non-principal character");
}

}  // namespace

ComplexValue tau(Workspace& ws, const Character& chi) {
  if (ws.context().p != chi.p) throw std::invalid_argument("character modulus differs from workspace prime");
  auto& im = ws.impl();
  if (im.prec == Precision::extended) return tau_impl(*im.ctx, im.ext(), chi.k);
  return tau_impl(*im.ctx, im.t_std, chi.k);
}

LValueRecord l1_closed(Workspace& ws, const Character& chi) {
  if (ws.context().p != chi.p) throw std::invalid_argument("character modulus differs from workspace prime");
  require_nonprincipal(chi);
  auto& im = ws.impl();
  const std::int64_t u = chi.p - 1;
  const std::int64_t kc = (u - chi.k) % u;
  ComplexValue s, tau_conj;
  if (im.prec == Precision::extended) {
    s = log_sum_impl(*im.ctx, im.ext(), kc);
    tau_conj = tau_impl(*im.ctx, im.ext(), kc);
  } else {
    s = log_sum_impl(*im.ctx, im.t_std, kc);
    tau_conj = tau_impl(*im.ctx, im.t_std, kc);
  }
  ComplexValue l = scale(s / tau_conj, -1.0);
  LValueRecord rec;
  rec.p = chi.p;
  rec.k = chi.k;
  rec.value = l;
  rec.absValue = l.abs();
  rec.method = "closed";
  rec.tailBound = 0.0;
  return rec;
}

LValueRecord l1_series(Workspace& ws, const Character& chi, std::int64_t terms) {
  if (ws.context().p != chi.p) throw std::invalid_argument("character modulus differs from workspace prime");
  require_nonprincipal(chi);
  if (terms < 1) throw std::invalid_argument("l1_series: terms must be positive");
  const auto& ctx = ws.context();
  const std::int64_t p = ctx.p;

  // H[r] = sum of 1/n over n <= terms with n = r mod p
  std::vector<double> h(static_cast<std::size_t>(p), 0.0);
  for (std::int64_t n = 1; n <= terms; ++n) {
    std::size_t r = static_cast<std::size_t>(n % p);
    if (r != 0) h[r] += 1.0 / static_cast<double>(n);
  }
  auto& im = ws.impl();
  std::vector<double> zero(static_cast<std::size_t>(p), 0.0);
  ComplexValue s = char_weighted_sum(ctx, im.t_std, chi.k, h, zero);

  LValueRecord rec;
  rec.p = p;
  rec.k = chi.k;
  rec.value = s;
  rec.absValue = s.abs();
  rec.method = "series";
  rec.tailBound = 2.0 * static_cast<double>(p) / static_cast<double>(terms + 1);
  return rec;
}

const std::vector<double>& l_abs_all(Workspace& ws) {
  auto& im = ws.impl();
  if (!im.l_abs) {
    const auto& ctx = *im.ctx;
    const std::int64_t p = ctx.p;
    const std::int64_t u = p - 1;
    const double sqrt_p = std::sqrt(static_cast<double>(p));
    std::vector<double> vals(static_cast<std::size_t>(u), 0.0);
    std::vector<double> errs(static_cast<std::size_t>(u), 0.0);
    for (std::int64_t k = 1; k < u; ++k) {
      const std::int64_t kc = (u - k) % u;
      // |L| = |sum_a conj(chi)(a) Log(1 - e(a/p))| / |tau(conj chi)| and
      // |tau| = sqrt(p) exactly for non-principal chi mod p
      ComplexValue s = im.prec == Precision::extended ? log_sum_impl(ctx, im.ext(), kc)
                                                      : log_sum_impl(ctx, im.t_std, kc);
      vals[static_cast<std::size_t>(k)] = s.abs() / sqrt_p;
      errs[static_cast<std::size_t>(k)] = s.err / sqrt_p + detail::kEps * vals[static_cast<std::size_t>(k)];
    }
    im.l_abs = std::move(vals);
    im.l_abs_err = std::move(errs);
  }
  return *im.l_abs;
}

const std::vector<double>& l_abs_err_all(Workspace& ws) {
  l_abs_all(ws);
  return *ws.impl().l_abs_err;
}

double euler_factor_C(std::int64_t q, int kmax) {
  double factor = 1.0;
  double r = 1.0;       // binom(2k,k)/4^k via the ratio recurrence
  double qk = 1.0;      // q^k
  for (int k = 1; k <= kmax; ++k) {
    r *= static_cast<double>(2 * k - 1) / static_cast<double>(2 * k);
    qk *= static_cast<double>(q);
    const double term = (r / qk) * (r / qk);
    factor += term;
    if (term == 0.0) break;
  }
  return factor;
}

ConstantC constant_C(std::int64_t pmax, int kmax) {
  if (pmax < 2 || kmax < 1) throw std::invalid_argument("constant_C: need pmax >= 2, kmax >= 1");
  ConstantC c;
  c.pmax = pmax;
  c.kmax = kmax;
  double prod = 1.0;
  for (std::int64_t q : primes_in_range(2, pmax)) prod *= euler_factor_C(q, kmax);
  c.value = prod;
  // log of the omitted prime factors is under sum_{q > pmax} 1/(4 q^2),
  // roughly 1/(4 pmax ln pmax) over primes; the kmax tail is far smaller.
  c.tailBound = prod * (0.25 / (static_cast<double>(pmax) * std::log(static_cast<double>(pmax)))) + 1e-14;
  return c;
}

ConstantC constant_C_cached(std::int64_t pmax, int kmax, const std::string& cache_dir) {
  namespace fs = std::filesystem;
  fs::path file = fs::path(cache_dir) / "euler_constant.txt";
  if (fs::exists(file)) {
    std::ifstream in(file);
    std::string line;
    while (std::getline(in, line)) {
      std::istringstream row(line);
      ConstantC c;
      if (row >> c.pmax >> c.kmax >> c.value >> c.tailBound) {
        if (c.pmax == pmax && c.kmax == kmax) return c;
      }
    }
  }
  ConstantC c = constant_C(pmax, kmax);
  std::ostringstream row;
  row.precision(17);
  row << c.pmax << " " << c.kmax << " " << c.value << " " << c.tailBound << "\n";
  std::ofstream out(file, std::ios::app);
  out << row.str();
  return c;
}

double diag_G3(Workspace& ws) {
  const auto& labs = l_abs_all(ws);
  const std::int64_t u = ws.context().p - 1;
  double acc = 0.0;
  for (std::int64_t k = 2; k < u; k += 2) acc += labs[static_cast<std::size_t>(k)];
  return acc;
}

double diag_gen6(Workspace& ws) {
  const auto& labs = l_abs_all(ws);
  const auto& ctx = ws.context();
  const std::int64_t p = ctx.p;
  const std::int64_t u = p - 1;
  auto& im = ws.impl();
  const auto& tb = im.t_std;
  double acc = 0.0;
  for (std::int64_t a = 1; a < p; ++a) {
    const std::int64_t t = ctx.dlog[static_cast<std::size_t>(a)];
    detail::ComplexAccum<double> sum;
    std::int64_t j = 0;  // j = k t mod u as k steps
    for (std::int64_t k = 1; k < u; ++k) {
      j += t;
      if (j >= u) j -= u;
      const double l = labs[static_cast<std::size_t>(k)];
      sum.add(tb.cosU[static_cast<std::size_t>(j)] * l, tb.sinU[static_cast<std::size_t>(j)] * l);
    }
    acc += detail::finish(sum).abs();
  }
  return acc;
}

}  // namespace gml
