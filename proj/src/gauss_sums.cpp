#include "gml/gauss_sums.hpp"

#include <cmath>
#include <stdexcept>

#include "engine.hpp"

namespace gml {

Workspace::Workspace(const PrimeContext& ctx, Precision prec)
    : impl_(std::make_unique<detail::WorkspaceImpl>()) {
  impl_->ctx = &ctx;
  impl_->prec = prec;
  impl_->t_std.build(ctx.p);
}

Workspace::~Workspace() = default;
Workspace::Workspace(Workspace&&) noexcept = default;
Workspace& Workspace::operator=(Workspace&&) noexcept = default;

const PrimeContext& Workspace::context() const { return *impl_->ctx; }
Precision Workspace::precision() const { return impl_->prec; }

namespace {

template <class R>
ComplexValue classical_gauss_impl(std::int64_t n, std::int64_t q) {
  std::vector<R> c, s;
  detail::Trig<R>::fill(q, c, s);
  detail::ComplexAccum<R> acc;
  std::int64_t nm = n % q;
  if (nm < 0) nm += q;
  for (std::int64_t a = 1; a <= q; ++a) {
    std::int64_t r = (a % q) * (a % q) % q * nm % q;
    acc.add(c[static_cast<std::size_t>(r)], s[static_cast<std::size_t>(r)]);
  }
  return detail::finish(acc);
}

template <class R>
ComplexValue gauss_closed_impl(std::int64_t q) {
  using std::sqrt;
  double sq = detail::to_double(sqrt(R(q)));
  double err = 2.0 * detail::kEps * sq;
  switch (q % 4) {
    case 1:
      return {sq, 0.0, err};
    case 2:
      return {0.0, 0.0, 0.0};
    case 3:
      return {0.0, sq, err};
    default:
      return {sq, sq, err};
  }
}

// chi_k applied along a = g^t against phase table e(q2[t]/p).
template <class R>
ComplexValue gen_gauss_impl(const detail::Tables<R>& tb, const std::vector<std::int32_t>& q2,
                            std::int64_t k) {
  const std::int64_t u = tb.p - 1;
  detail::ComplexAccum<R> acc;
  std::int64_t idx = 0;
  for (std::int64_t t = 0; t < u; ++t) {
    const R cr = tb.cosU[static_cast<std::size_t>(idx)];
    const R ci = tb.sinU[static_cast<std::size_t>(idx)];
    const R pr = tb.cosP[static_cast<std::size_t>(q2[static_cast<std::size_t>(t)])];
    const R pm = tb.sinP[static_cast<std::size_t>(q2[static_cast<std::size_t>(t)])];
    acc.add(cr * pr - ci * pm, cr * pm + ci * pr);
    idx += k;
    if (idx >= u) idx -= u;
  }
  return detail::finish(acc);
}

template <class R>
ComplexValue w_sum_impl(const PrimeContext& ctx, const detail::Tables<R>& tb, std::int64_t k) {
  const std::int64_t p = ctx.p;
  const std::int64_t u = p - 1;
  detail::ComplexAccum<R> acc;
  std::int64_t idx = 0;
  for (std::int64_t t = 0; t < u; ++t) {
    const std::int64_t a = ctx.pow_g[static_cast<std::size_t>(t)];
    const int rho = ctx.legendre[static_cast<std::size_t>(
        (ctx.squares[static_cast<std::size_t>(a)] + p - 1) % p)];
    if (rho != 0) {
      const R f = R(rho);
      acc.add(f * tb.cosU[static_cast<std::size_t>(idx)], f * tb.sinU[static_cast<std::size_t>(idx)]);
    }
    idx += k;
    if (idx >= u) idx -= u;
  }
  return detail::finish(acc);
}

void require_same_prime(const Workspace& ws, const Character& chi) {
  if (ws.context().p != chi.p) throw std::invalid_argument("character modulus differs from workspace prime");
}

}  // namespace

ComplexValue classical_gauss(std::int64_t n, std::int64_t q, Precision prec) {
  if (q < 1) throw std::invalid_argument("classical_gauss: q must be positive");
  if (prec == Precision::extended) return classical_gauss_impl<detail::big_float>(n, q);
  return classical_gauss_impl<double>(n, q);
}

ComplexValue gauss_closed(std::int64_t q, Precision prec) {
  if (q < 1) throw std::invalid_argument("gauss_closed: q must be positive");
  if (prec == Precision::extended) return gauss_closed_impl<detail::big_float>(q);
  return gauss_closed_impl<double>(q);
}

double gauss_identity_residual(std::int64_t q, Precision prec) {
  return (classical_gauss(1, q, prec) - gauss_closed(q, prec)).abs();
}

double twist_identity_residual(const PrimeContext& ctx, std::int64_t n, Precision prec) {
  std::int64_t r = n % ctx.p;
  if (r < 0) r += ctx.p;
  ComplexValue lhs = classical_gauss(n, ctx.p, prec);
  ComplexValue rhs = scale(gauss_closed(ctx.p, prec),
                           static_cast<double>(ctx.legendre[static_cast<std::size_t>(r)]));
  return (lhs - rhs).abs();
}

GaussSumRecord generalized_gauss(Workspace& ws, std::int64_t n, const Character& chi) {
  require_same_prime(ws, chi);
  auto& im = ws.impl();
  const auto& q2 = im.q2_for(n);
  ComplexValue v = im.prec == Precision::extended ? gen_gauss_impl(im.ext(), q2, chi.k)
                                                  : gen_gauss_impl(im.t_std, q2, chi.k);
  return GaussSumRecord{ws.context().p, n, chi.k, v, v.abs2()};
}

ComplexValue w_sum(Workspace& ws, const Character& chi) {
  require_same_prime(ws, chi);
  auto& im = ws.impl();
  if (im.prec == Precision::extended) return w_sum_impl(*im.ctx, im.ext(), chi.k);
  return w_sum_impl(*im.ctx, im.t_std, chi.k);
}

double gen1_residual(Workspace& ws, std::int64_t n, const Character& chi) {
  const auto& ctx = ws.context();
  const std::int64_t p = ctx.p;
  std::int64_t r = n % p;
  if (r < 0) r += p;
  GaussSumRecord g = generalized_gauss(ws, n, chi);
  ComplexValue w = w_sum(ws, chi);
  ComplexValue g1 = gauss_closed(p, ws.precision());
  ComplexValue rhs = scale(g1 * w, static_cast<double>(ctx.legendre[static_cast<std::size_t>(r)]));
  rhs.re += 2.0 * static_cast<double>(p);
  return std::hypot(g.abs2 - rhs.re, rhs.im);
}

double precision_deviation(const PrimeContext& ctx, std::int64_t n, const Character& chi) {
  Workspace a(ctx, Precision::standard);
  Workspace b(ctx, Precision::extended);
  ComplexValue ga = generalized_gauss(a, n, chi).value;
  ComplexValue gb = generalized_gauss(b, n, chi).value;
  return std::hypot(ga.re - gb.re, ga.im - gb.im);
}

}  // namespace gml
