#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gml/charsum_engine.hpp"
#include "gml/field_characters.hpp"
#include "gml/moments.hpp"

using namespace gml;

namespace {

std::int64_t smallest_nonresidue(const PrimeContext& ctx) {
  for (std::int64_t a = 2; a < ctx.p; ++a)
    if (ctx.legendre[static_cast<std::size_t>(a)] == -1) return a;
  return 1;
}

}  // namespace

TEST_CASE("coefficients") {
  CHECK(moment_coeff(1) == 1.0);
  CHECK(moment_coeff(2) == 3.0);
  CHECK(moment_coeff(3) == 10.0);
  CHECK(moment_coeff(4) == 35.0);
  CHECK_THROWS_AS(moment_coeff(0), std::invalid_argument);
  CHECK_THROWS_AS(moment_coeff(5), std::invalid_argument);
}

TEST_CASE("first moment over all characters is (p-1)^2") {
  for (std::int64_t p : {5, 7, 13, 31, 101}) {
    auto ctx = build_context(p);
    Workspace ws(ctx, Precision::standard);
    for (std::int64_t n : {1, 2}) {
      auto s = moment_unweighted(ws, n, 1, true);
      CAPTURE(p);
      CAPTURE(n);
      const double expect = static_cast<double>((p - 1) * (p - 1));
      CHECK(std::fabs(s.value - expect) <= s.err);
    }
  }
}

TEST_CASE("pinned sixth and eighth moments at small primes") {
  auto c5 = build_context(5);
  Workspace w5(c5, Precision::standard);
  auto m3n1 = moment_unweighted(w5, 1, 3, true);
  CHECK(m3n1.value == doctest::Approx(3034.6501033599192).epsilon(1e-11));
  auto m3n2 = moment_unweighted(w5, 2, 3, true);
  CHECK(m3n2.value == doctest::Approx(1317.3498966400808).epsilon(1e-11));

  auto c7 = build_context(7);
  Workspace w7(c7, Precision::standard);
  CHECK(moment_unweighted(w7, 1, 3, true).value == doctest::Approx(13056.0).epsilon(1e-11));
  CHECK(moment_unweighted(w7, 2, 3, true).value == doctest::Approx(13056.0).epsilon(1e-11));
  CHECK(moment_unweighted(w7, 1, 4, true).value == doctest::Approx(292608.0).epsilon(1e-11));
  CHECK(moment_unweighted(w7, 2, 4, true).value == doctest::Approx(292608.0).epsilon(1e-11));

  auto c13 = build_context(13);
  Workspace w13(c13, Precision::standard);
  CHECK(moment_unweighted(w13, 1, 3, true).value == doctest::Approx(229815.44365689441).epsilon(1e-11));
  CHECK(moment_unweighted(w13, 2, 3, true).value == doctest::Approx(191048.55634310559).epsilon(1e-11));
  CHECK(moment_unweighted(w13, 1, 4, true).value == doctest::Approx(10547842.626398616).epsilon(1e-11));
  CHECK(moment_unweighted(w13, 2, 4, true).value == doctest::Approx(7784317.3736013845).epsilon(1e-11));
}

TEST_CASE("closed forms match the numerical sums across a sweep") {
  for (std::int64_t p : primes_in_range(5, 200)) {
    auto ctx = build_context(p);
    CharSumEngine cs(ctx);
    Workspace ws(ctx, Precision::standard);
    const std::int64_t N = cs.sum_N();
    const std::int64_t T = cs.sum_T();
    for (std::int64_t n : {std::int64_t{1}, smallest_nonresidue(ctx)}) {
      CAPTURE(p);
      CAPTURE(n);
      auto m3 = moment_unweighted(ws, n, 3, true);
      const double c3 = moment6_closed(ctx, n, N);
      CHECK(std::fabs(m3.value - c3) <= m3.err + 1e-9 * std::fabs(c3));
      auto m4 = moment_unweighted(ws, n, 4, true);
      const double c4 = moment8_closed(ctx, n, N, T);
      CHECK(std::fabs(m4.value - c4) <= m4.err + 1e-9 * std::fabs(c4));
    }
  }
}

TEST_CASE("closed forms at a larger prime in each residue class") {
  for (std::int64_t p : {397, 431}) {
    auto ctx = build_context(p);
    CharSumEngine cs(ctx);
    Workspace ws(ctx, Precision::standard);
    const std::int64_t n = smallest_nonresidue(ctx);
    auto m4 = moment_unweighted(ws, n, 4, true);
    const double c4 = moment8_closed(ctx, n, cs.sum_N(), cs.sum_T());
    CAPTURE(p);
    CHECK(std::fabs(m4.value - c4) / std::fabs(c4) < 1e-10);
  }
}

TEST_CASE("moment depends on n only through its residue class") {
  auto ctx = build_context(13);
  Workspace ws(ctx, Precision::standard);
  // 4 = 2^2 is a square times 1; 5 = 2 * 9 is a square times 2
  auto a1 = moment_unweighted(ws, 1, 3, true);
  auto a4 = moment_unweighted(ws, 4, 3, true);
  CHECK(std::fabs(a1.value - a4.value) <= a1.err + a4.err);
  auto b2 = moment_weighted(ws, 2, 2);
  auto b5 = moment_weighted(ws, 5, 2);
  CHECK(std::fabs(b2.value - b5.value) <= b2.err + b5.err);
}

TEST_CASE("pinned weighted moments at p = 5") {
  auto ctx = build_context(5);
  Workspace ws(ctx, Precision::standard);
  CHECK(moment_weighted(ws, 1, 1).value == doctest::Approx(6.22893671).epsilon(1e-8));
  CHECK(moment_weighted(ws, 1, 3).value == doctest::Approx(1304.605442).epsilon(1e-8));
}

TEST_CASE("debug-all weighted sum agrees with the even-only sum") {
  for (std::int64_t p : {5, 13, 31}) {
    auto ctx = build_context(p);
    Workspace ws(ctx, Precision::standard);
    for (std::int64_t m = 1; m <= 4; ++m) {
      auto fast = moment_weighted(ws, 1, m, false);
      auto full = moment_weighted(ws, 1, m, true);
      CAPTURE(p);
      CAPTURE(m);
      CHECK(std::fabs(fast.value - full.value) <= fast.err + full.err);
    }
  }
}

TEST_CASE("report wiring") {
  auto ctx = build_context(13);
  CharSumEngine cs(ctx);
  Workspace ws(ctx, Precision::standard);
  const double C = 1.1307497934426223;
  auto rep = moment_report(ws, 1, 3, C, cs.sum_N(), cs.sum_T());
  CHECK(rep.p == 13);
  CHECK(rep.m == 3);
  CHECK(rep.has_closed_form);
  CHECK(rep.closed_form == doctest::Approx(229815.44365689441).epsilon(1e-12));
  CHECK(rep.closed_residual <= rep.unweighted_err);
  CHECK(rep.main_term == doctest::Approx(10.0 * C * 28561.0));  // p^4 = 28561
  CHECK(rep.conjecture_ratio ==
        doctest::Approx(rep.weighted / (C * rep.unweighted_all)).epsilon(1e-15));
  CHECK(rep.residual_norm ==
        doctest::Approx(std::fabs(rep.weighted - rep.main_term) /
                        (std::pow(13.0, 3.5) * std::log(13.0)))
            .epsilon(1e-13));

  auto rep1 = moment_report(ws, 1, 1, C, cs.sum_N(), cs.sum_T());
  CHECK_FALSE(rep1.has_closed_form);

  // p = 3 has no even non-principal character at all
  auto c3 = build_context(3);
  Workspace w3(c3, Precision::standard);
  auto rep3 = moment_report(w3, 1, 2, C, 0, 0);
  CHECK(rep3.weighted == 0.0);
  CHECK(rep3.conjecture_ratio == 0.0);
}

TEST_CASE("n divisible by p is rejected in closed forms") {
  auto ctx = build_context(7);
  CHECK_THROWS_AS(moment6_closed(ctx, 7, 0), std::invalid_argument);
  CHECK_THROWS_AS(moment8_closed(ctx, 14, 0, 0), std::invalid_argument);
}
