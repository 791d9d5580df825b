#pragma once

#include <algorithm>
#include <cmath>

namespace gml {

enum class Precision { standard, extended };

// Complex number with an accumulated first-order error bound.
// err bounds |computed - exact| as a complex modulus; it never shrinks
// through arithmetic, so a chain of operations keeps an honest budget.
struct ComplexValue {
  double re = 0.0;
  double im = 0.0;
  double err = 0.0;

  double abs() const { return std::hypot(re, im); }
  double abs2() const { return re * re + im * im; }
  // bound on |computed_abs2 - exact_abs2| given err on the complex value
  double abs2_err() const { return err * (2.0 * abs() + err); }
  ComplexValue conj() const { return {re, -im, err}; }
};

namespace detail {
inline constexpr double kEps = 2.220446049250313e-16;  // 2^-52
}

inline ComplexValue operator+(const ComplexValue& a, const ComplexValue& b) {
  ComplexValue r{a.re + b.re, a.im + b.im, 0.0};
  r.err = a.err + b.err + detail::kEps * (r.abs() + 1e-300);
  return r;
}

inline ComplexValue operator-(const ComplexValue& a, const ComplexValue& b) {
  ComplexValue r{a.re - b.re, a.im - b.im, 0.0};
  r.err = a.err + b.err + detail::kEps * (r.abs() + 1e-300);
  return r;
}

// Multiplication keeps err >= each input err (max(1,|.|) factors) so the
// budget is conservative but monotone, matching the ComplexValue contract.
inline ComplexValue operator*(const ComplexValue& a, const ComplexValue& b) {
  const double aa = a.abs(), bb = b.abs();
  ComplexValue r{a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re, 0.0};
  r.err = a.err * std::max(1.0, bb) + b.err * std::max(1.0, aa) + a.err * b.err +
          4.0 * detail::kEps * (aa * bb + 1e-300);
  return r;
}

inline ComplexValue scale(const ComplexValue& a, double s) {
  return {a.re * s, a.im * s, a.err * std::max(1.0, std::fabs(s)) + 2.0 * detail::kEps * a.abs() * std::fabs(s)};
}

// Requires the divisor to be bounded away from zero relative to its own
// error; the quotient bound first-order expands (a + da) / (b + db).
inline ComplexValue operator/(const ComplexValue& a, const ComplexValue& b) {
  const double d = b.abs2();
  ComplexValue r{(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d, 0.0};
  const double qm = r.abs();
  const double denom = std::max(b.abs() - b.err, 0.5 * b.abs());
  r.err = (a.err + qm * b.err) / denom + 8.0 * detail::kEps * qm;
  return r;
}

}  // namespace gml
