#pragma once

#include <cstdint>
#include <string>

#include "gml/field_characters.hpp"
#include "gml/gauss_sums.hpp"
#include "gml/numeric.hpp"

namespace gml {

struct LValueRecord {
  std::int64_t p = 0;
  std::int64_t k = 0;
  ComplexValue value;
  double absValue = 0.0;
  std::string method;     // "closed" or "series"
  double tailBound = 0.0;  // truncation bound beyond value.err; 0 for closed
};

// tau(chi) = sum_{a=1}^{p-1} chi(a) e(a/p)
ComplexValue tau(Workspace& ws, const Character& chi);

// L(1,chi) = -(1/tau(conj chi)) sum_a conj(chi)(a) Log(1 - e(a/p)) on the
// principal branch; chi must be non-principal (mod a prime that makes every
// such character primitive).
LValueRecord l1_closed(Workspace& ws, const Character& chi);

// Direct partial sum of sum_n chi(n)/n through n <= terms, grouped by
// residue class so the cost is O(terms + p). tailBound = 2p/(terms+1).
LValueRecord l1_series(Workspace& ws, const Character& chi, std::int64_t terms);

// |L(1,chi_k)| for k = 0 .. p-2, slot 0 unused (set to 0); cached in the
// workspace. Moduli only, via |tau| = sqrt(p).
const std::vector<double>& l_abs_all(Workspace& ws);
const std::vector<double>& l_abs_err_all(Workspace& ws);

struct ConstantC {
  double value = 0.0;
  std::int64_t pmax = 0;
  int kmax = 0;
  double tailBound = 0.0;
};

// One Euler factor: 1 + sum_{k=1}^{kmax} (binom(2k,k) / (4^k q^k))^2.
double euler_factor_C(std::int64_t q, int kmax);

// Product of Euler factors over primes q <= pmax.
ConstantC constant_C(std::int64_t pmax, int kmax);

// File-backed variant: reuses a stored value only on an exact (pmax, kmax)
// match, otherwise computes and appends. cache_dir must exist.
ConstantC constant_C_cached(std::int64_t pmax, int kmax, const std::string& cache_dir);

// sum over even non-principal chi of |L(1,chi)|
double diag_G3(Workspace& ws);

// sum over a of |sum_{chi != chi_0} chi(a) |L(1,chi)||
double diag_gen6(Workspace& ws);

}  // namespace gml
