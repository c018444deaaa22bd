#pragma once

#include <cmath>
#include <string>

#include "rma/errors.hpp"
#include "rma/ratfunc.hpp"  // coeffs::zero_like / one_like for every K used
#include "rma/rational.hpp"
#include "rma/upoly.hpp"

namespace rma {

// a + b*sqrt(d) with coefficients in K and a fixed radicand shared by all
// operands (mixing radicands throws).  K = ExactRational gives exact chart
// endpoints like -1 + sqrt(1+c); K = RatFunc gives symbolic branch algebra
// over function fields, e.g. coefficients in Q(y) with sqrt(-y).
template <class K>
struct QuadExt {
  K a, b, d;

  QuadExt(K a_, K b_, K d_) : a(std::move(a_)), b(std::move(b_)), d(std::move(d_)) {}

  static QuadExt base(K v, K d) {
    K z = coeffs::zero_like(d);
    return QuadExt(std::move(v), std::move(z), std::move(d));
  }
  static QuadExt root(K d) {
    return QuadExt(coeffs::zero_like(d), coeffs::one_like(d), d);
  }

  bool is_zero() const { return a.is_zero() && b.is_zero(); }
  QuadExt operator-() const {
    return QuadExt(coeffs::zero_like(a) - a, coeffs::zero_like(b) - b, d);
  }
  QuadExt conjugate() const { return QuadExt(a, coeffs::zero_like(b) - b, d); }
  K norm() const { return a * a - b * b * d; }  // product with the conjugate

  friend QuadExt operator+(const QuadExt& x, const QuadExt& y) {
    check(x, y);
    return QuadExt(x.a + y.a, x.b + y.b, x.d);
  }
  friend QuadExt operator-(const QuadExt& x, const QuadExt& y) {
    check(x, y);
    return QuadExt(x.a - y.a, x.b - y.b, x.d);
  }
  friend QuadExt operator*(const QuadExt& x, const QuadExt& y) {
    check(x, y);
    return QuadExt(x.a * y.a + x.b * y.b * x.d, x.a * y.b + x.b * y.a, x.d);
  }
  friend QuadExt operator*(const QuadExt& x, const ExactRational& s) {
    return QuadExt(x.a * s, x.b * s, x.d);
  }
  friend bool operator==(const QuadExt& x, const QuadExt& y) {
    check(x, y);
    return x.a == y.a && x.b == y.b;
  }

  // Multiply by conjugate/norm; requires K to support division.  The norm
  // vanishes exactly when the value is zero (or d is a square in K and the
  // value lies on the degenerate line a = -b*sqrt(d)).
  QuadExt inv() const {
    K n = norm();
    if (n.is_zero()) throw DomainError("inverse of a zero-norm quadratic value");
    return QuadExt(a / n, (coeffs::zero_like(b) - b) / n, d);
  }
  friend QuadExt operator/(const QuadExt& x, const QuadExt& y) {
    return x * y.inv();
  }

 private:
  static void check(const QuadExt& x, const QuadExt& y) {
    if (!(x.d == y.d)) throw StructuralError("mixed quadratic radicands");
  }
};

// Exact sign of a + b*sqrt(d) for rational coefficients (requires d >= 0).
inline int sign(const QuadExt<ExactRational>& x) {
  if (x.d.sign() < 0) throw DomainError("sign of a non-real quadratic value");
  if (x.d.is_zero() || x.b.is_zero()) return x.a.sign();
  if (x.a.is_zero()) return x.b.sign();
  if (x.a.sign() == x.b.sign()) return x.a.sign();
  // Opposite signs: compare a^2 against b^2 d, the sign of the larger wins.
  ExactRational diff = x.a * x.a - x.b * x.b * x.d;
  if (diff.is_zero()) return 0;
  return diff.sign() > 0 ? x.a.sign() : x.b.sign();
}

inline double to_double(const QuadExt<ExactRational>& x) {
  return x.a.to_double() + x.b.to_double() * std::sqrt(x.d.to_double());
}

// Folds b*sqrt(d) into the rational part when d is a perfect square, so that
// values that happen to be rational compare equal across different radicands.
inline QuadExt<ExactRational> normalize_quad(QuadExt<ExactRational> x) {
  if (x.b.is_zero()) return x;
  if (auto s = exact_sqrt(x.d)) {
    x.a += x.b * *s;
    x.b = ExactRational(0);
  }
  return x;
}

// Horner evaluation of a rational univariate at a quadratic value.
inline QuadExt<ExactRational> eval_quad(const UPolyQ& p,
                                        const QuadExt<ExactRational>& x) {
  auto acc = QuadExt<ExactRational>::base(ExactRational(0), x.d);
  for (int i = p.degree(); i >= 0; --i)
    acc = acc * x + QuadExt<ExactRational>::base(p[static_cast<std::size_t>(i)], x.d);
  return acc;
}

inline std::string quadext_str(const QuadExt<ExactRational>& x) {
  if (x.b.is_zero()) return x.a.str();
  std::string s = x.a.is_zero() ? "" : x.a.str() + " + ";
  return s + x.b.str() + "*sqrt(" + x.d.str() + ")";
}

}  // namespace rma
