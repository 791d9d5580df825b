#pragma once

#include <cstdint>
#include <vector>

#include "gml/gauss_sums.hpp"

namespace gml {

// Leading coefficient of the m-th power-moment main term, m in [1, 4].
double moment_coeff(std::int64_t m);

struct MomentSum {
  double value = 0.0;
  double err = 0.0;  // first-order propagated bound
};

// sum over characters of |G(n,chi)|^{2m}; odd characters contribute exactly
// zero and are skipped. include_principal controls the chi_0 term.
MomentSum moment_unweighted(Workspace& ws, std::int64_t n, std::int64_t m, bool include_principal);

// sum over even non-principal chi of |G(n,chi)|^{2m} |L(1,chi)|. debug_all
// instead sums over every non-principal chi, which must agree since the odd
// terms vanish.
MomentSum moment_weighted(Workspace& ws, std::int64_t n, std::int64_t m, bool debug_all = false);

// Exact closed forms for the all-character sums at m = 3 and m = 4; N and T
// are the integer character-sum aggregates for the same prime.
double moment6_closed(const PrimeContext& ctx, std::int64_t n, std::int64_t N);
double moment8_closed(const PrimeContext& ctx, std::int64_t n, std::int64_t N, std::int64_t T);

// coeff(m) C p^{m+1}
double main_term(std::int64_t m, std::int64_t p, double C);

struct MomentReport {
  std::int64_t p = 0;
  std::int64_t n = 0;
  std::int64_t m = 0;
  double unweighted_all = 0.0;
  double unweighted_err = 0.0;
  bool has_closed_form = false;  // true for m = 3, 4
  double closed_form = 0.0;
  double closed_residual = 0.0;  // |unweighted_all - closed_form|
  double weighted = 0.0;
  double weighted_err = 0.0;
  double main_term = 0.0;
  double residual_norm = 0.0;    // |weighted - main_term| / (p^{m+1/2} ln p)
  double conjecture_ratio = 0.0; // weighted / (C unweighted_all)
};

MomentReport moment_report(Workspace& ws, std::int64_t n, std::int64_t m, double C,
                           std::int64_t N, std::int64_t T);

// All requested orders from a single pass over the characters, so each Gauss
// sum is evaluated once instead of once per m. m_list must be deduplicated.
// Produces bit-identical numbers to calling moment_report per order.
std::vector<MomentReport> moment_reports_fused(Workspace& ws, std::int64_t n,
                                               const std::vector<std::int64_t>& m_list,
                                               double C, std::int64_t N, std::int64_t T);

}  // namespace gml
