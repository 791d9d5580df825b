#pragma once

#include <cstdint>
#include <memory>

#include "gml/field_characters.hpp"
#include "gml/numeric.hpp"

namespace gml {

namespace detail {
struct WorkspaceImpl;
}

struct GaussSumRecord {
  std::int64_t p = 0;
  std::int64_t n = 0;
  std::int64_t k = 0;  // character index against the smallest primitive root
  ComplexValue value;
  double abs2 = 0.0;
};

// Per-prime scratch space: trig tables, discrete-log phase tables and other
// lazily built caches. One workspace is single-threaded; parallel sweeps use
// one workspace per worker.
class Workspace {
 public:
  Workspace(const PrimeContext& ctx, Precision prec);
  ~Workspace();
  Workspace(Workspace&&) noexcept;
  Workspace& operator=(Workspace&&) noexcept;

  const PrimeContext& context() const;
  Precision precision() const;

  detail::WorkspaceImpl& impl() const { return *impl_; }

 private:
  std::unique_ptr<detail::WorkspaceImpl> impl_;
};

// Full-period quadratic exponential sum: sum_{a=1}^{q} e(n a^2 / q), q >= 1.
ComplexValue classical_gauss(std::int64_t n, std::int64_t q, Precision prec = Precision::standard);

// Closed form of the n = 1 sum as a function of q mod 4:
// sqrt(q), 0, i sqrt(q), (1+i) sqrt(q) for q = 1, 2, 3, 0 mod 4.
ComplexValue gauss_closed(std::int64_t q, Precision prec = Precision::standard);

double gauss_identity_residual(std::int64_t q, Precision prec = Precision::standard);

// |G(n;p) - (n/p) G(1;p)| for p prime, gcd(n,p) = 1.
double twist_identity_residual(const PrimeContext& ctx, std::int64_t n,
                               Precision prec = Precision::standard);

// G(n,chi;p) = sum_{a=1}^{p-1} chi(a) e(n a^2 / p).
GaussSumRecord generalized_gauss(Workspace& ws, std::int64_t n, const Character& chi);

// W(chi) = sum_{a=1}^{p-1} chi(a) rho(a^2 - 1), rho the quadratic character.
ComplexValue w_sum(Workspace& ws, const Character& chi);

// Residual of |G(n,chi)|^2 = 2p + (n/p) G(1;p) W(chi), valid for even
// non-principal chi. Returns the complex modulus of LHS - RHS.
double gen1_residual(Workspace& ws, std::int64_t n, const Character& chi);

// |G_standard - G_extended| for one character; the standard error budget
// must dominate this.
double precision_deviation(const PrimeContext& ctx, std::int64_t n, const Character& chi);

}  // namespace gml
