#include "gml/moments.hpp"

#include <cmath>
#include <stdexcept>

#include "engine.hpp"
#include "gml/l_functions.hpp"

namespace gml {

namespace {

using i128 = __int128;

void require_m(std::int64_t m) {
  if (m < 1 || m > 4) throw std::invalid_argument("moment order must be in [1, 4]");
}

int legendre_of(const PrimeContext& ctx, std::int64_t n) {
  std::int64_t r = n % ctx.p;
  if (r < 0) r += ctx.p;
  if (r == 0) throw std::invalid_argument("n must be nonzero mod p");
  return ctx.legendre[static_cast<std::size_t>(r)];
}

double pow_int(double x, std::int64_t e) {
  double r = 1.0;
  for (std::int64_t i = 0; i < e; ++i) r *= x;
  return r;
}

}  // namespace

double moment_coeff(std::int64_t m) {
  require_m(m);
  static constexpr double kCoeff[] = {1.0, 3.0, 10.0, 35.0};
  return kCoeff[m - 1];
}

MomentSum moment_unweighted(Workspace& ws, std::int64_t n, std::int64_t m, bool include_principal) {
  require_m(m);
  const std::int64_t u = ws.context().p - 1;
  detail::Neumaier<double> acc;
  double err = 0.0;
  for (std::int64_t k = include_principal ? 0 : 2; k < u; k += 2) {
    auto g = generalized_gauss(ws, n, Character{ws.context().p, k});
    const double term = pow_int(g.abs2, m);
    acc.add(term);
    err += static_cast<double>(m) * pow_int(g.abs2, m - 1) * g.value.abs2_err();
  }
  return {acc.value(), err + detail::kErrC * detail::kEps * acc.abs_sum};
}

MomentSum moment_weighted(Workspace& ws, std::int64_t n, std::int64_t m, bool debug_all) {
  require_m(m);
  const std::int64_t p = ws.context().p;
  const std::int64_t u = p - 1;
  const auto& labs = l_abs_all(ws);
  const auto& lerr = l_abs_err_all(ws);
  detail::Neumaier<double> acc;
  double err = 0.0;
  const std::int64_t step = debug_all ? 1 : 2;
  for (std::int64_t k = debug_all ? 1 : 2; k < u; k += step) {
    auto g = generalized_gauss(ws, n, Character{p, k});
    const double gm = pow_int(g.abs2, m);
    acc.add(gm * labs[static_cast<std::size_t>(k)]);
    err += static_cast<double>(m) * pow_int(g.abs2, m - 1) * g.value.abs2_err() *
               labs[static_cast<std::size_t>(k)] +
           gm * lerr[static_cast<std::size_t>(k)];
  }
  return {acc.value(), err + detail::kErrC * detail::kEps * acc.abs_sum};
}

double moment6_closed(const PrimeContext& ctx, std::int64_t n, std::int64_t N) {
  const i128 p = ctx.p;
  const int chi_n = legendre_of(ctx, n);
  if (ctx.p % 4 == 3) {
    const i128 poly = (p - 1) * (10 * p * p * p - 25 * p * p - 4 * p - 1);
    return static_cast<double>(poly);
  }
  const i128 poly = (p - 1) * (10 * p * p * p - 25 * p * p - 16 * p - 1);
  const i128 inner = p * (p - 1) * N + 18 * p * p - 12 * p - 6;
  const double sp = std::sqrt(static_cast<double>(ctx.p));
  return static_cast<double>(poly) + chi_n * sp * static_cast<double>(inner);
}

double moment8_closed(const PrimeContext& ctx, std::int64_t n, std::int64_t N, std::int64_t T) {
  const i128 p = ctx.p;
  const int chi_n = legendre_of(ctx, n);
  if (ctx.p % 4 == 3) {
    const i128 poly = (p - 1) * (34 * p * p * p * p - 99 * p * p * p + 7 * p * p - 5 * p - 1) +
                      p * p * (p - 1) * T;
    return static_cast<double>(poly);
  }
  const i128 poly = (p - 1) * (34 * p * p * p * p - 99 * p * p * p - 65 * p * p - 29 * p - 1) +
                    p * p * (p - 1) * T;
  const i128 inner = 56 * p * p * p + 8 * p * p - 56 * p - 8 + 8 * p * p * (p - 1) * N;
  const double sp = std::sqrt(static_cast<double>(ctx.p));
  return static_cast<double>(poly) + chi_n * sp * static_cast<double>(inner);
}

double main_term(std::int64_t m, std::int64_t p, double C) {
  require_m(m);
  return moment_coeff(m) * C * pow_int(static_cast<double>(p), m + 1);
}

std::vector<MomentReport> moment_reports_fused(Workspace& ws, std::int64_t n,
                                               const std::vector<std::int64_t>& m_list,
                                               double C, std::int64_t N, std::int64_t T) {
  for (std::int64_t m : m_list) require_m(m);
  const std::int64_t p = ws.context().p;
  const std::int64_t u = p - 1;
  const auto& labs = l_abs_all(ws);
  const auto& lerr = l_abs_err_all(ws);
  struct Acc {
    detail::Neumaier<double> uw, w;
    double uw_err = 0.0;
    double w_err = 0.0;
  };
  Acc acc[5];
  for (std::int64_t k = 0; k < u; k += 2) {
    auto g = generalized_gauss(ws, n, Character{p, k});
    const double a2e = g.value.abs2_err();
    for (std::int64_t m : m_list) {
      const double term = pow_int(g.abs2, m);
      const double dterm = static_cast<double>(m) * pow_int(g.abs2, m - 1) * a2e;
      Acc& a = acc[m];
      a.uw.add(term);
      a.uw_err += dterm;
      if (k >= 2) {
        const double lv = labs[static_cast<std::size_t>(k)];
        a.w.add(term * lv);
        a.w_err += dterm * lv + term * lerr[static_cast<std::size_t>(k)];
      }
    }
  }
  std::vector<MomentReport> out;
  out.reserve(m_list.size());
  for (std::int64_t m : m_list) {
    const Acc& a = acc[m];
    MomentReport rep;
    rep.p = p;
    rep.n = n;
    rep.m = m;
    rep.unweighted_all = a.uw.value();
    rep.unweighted_err = a.uw_err + detail::kErrC * detail::kEps * a.uw.abs_sum;
    if (m == 3) {
      rep.has_closed_form = true;
      rep.closed_form = moment6_closed(ws.context(), n, N);
    } else if (m == 4) {
      rep.has_closed_form = true;
      rep.closed_form = moment8_closed(ws.context(), n, N, T);
    }
    if (rep.has_closed_form) rep.closed_residual = std::fabs(rep.unweighted_all - rep.closed_form);
    rep.weighted = a.w.value();
    rep.weighted_err = a.w_err + detail::kErrC * detail::kEps * a.w.abs_sum;
    rep.main_term = gml::main_term(m, p, C);
    rep.residual_norm = std::fabs(rep.weighted - rep.main_term) /
                        (std::pow(static_cast<double>(p), static_cast<double>(m) + 0.5) *
                         std::log(static_cast<double>(p)));
    rep.conjecture_ratio = rep.unweighted_all > 0.0 ? rep.weighted / (C * rep.unweighted_all) : 0.0;
    out.push_back(rep);
  }
  return out;
}

MomentReport moment_report(Workspace& ws, std::int64_t n, std::int64_t m, double C,
                           std::int64_t N, std::int64_t T) {
  require_m(m);
  const std::int64_t p = ws.context().p;
  MomentReport rep;
  rep.p = p;
  rep.n = n;
  rep.m = m;

  auto uw = moment_unweighted(ws, n, m, true);
  rep.unweighted_all = uw.value;
  rep.unweighted_err = uw.err;

  if (m == 3) {
    rep.has_closed_form = true;
    rep.closed_form = moment6_closed(ws.context(), n, N);
  } else if (m == 4) {
    rep.has_closed_form = true;
    rep.closed_form = moment8_closed(ws.context(), n, N, T);
  }
  if (rep.has_closed_form) rep.closed_residual = std::fabs(rep.unweighted_all - rep.closed_form);

  auto w = moment_weighted(ws, n, m, false);
  rep.weighted = w.value;
  rep.weighted_err = w.err;
  rep.main_term = gml::main_term(m, p, C);
  rep.residual_norm = std::fabs(rep.weighted - rep.main_term) /
                      (std::pow(static_cast<double>(p), static_cast<double>(m) + 0.5) *
                       std::log(static_cast<double>(p)));
  rep.conjecture_ratio = rep.unweighted_all > 0.0 ? rep.weighted / (C * rep.unweighted_all) : 0.0;
  return rep;
}

}  // namespace gml
