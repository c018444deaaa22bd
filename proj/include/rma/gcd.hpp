#pragma once

#include <cstddef>
#include <utility>

#include "rma/mpoly.hpp"
#include "rma/upoly.hpp"

namespace rma {

MPoly mpoly_gcd(const MPoly& a, const MPoly& b);

// gcd of all coefficients of a univariate view; the content in the classical
// content * primitive-part factorization.  Zero polynomial has content 0.
inline MPoly upoly_content(const UPolyM& u, std::size_t arity) {
  MPoly c = MPoly::zero(arity);
  for (const auto& coef : u.coeffs()) c = mpoly_gcd(c, coef);
  return c;
}

inline UPolyM upoly_primitive_part(const UPolyM& u, std::size_t arity) {
  if (u.is_zero()) return u;
  return u.scale_divided(upoly_content(u, arity));
}

// Multivariate GCD over Q by primitive-part subresultant PRS.  Main variable
// is the one of highest degree across both inputs (lowest index on ties);
// contents recurse on the remaining variables.  The result is canonical:
// integer-primitive with positive leading coefficient, so gcd(a, 0) is the
// normalized form of a and the gcd of nonzero constants is 1.
inline MPoly mpoly_gcd(const MPoly& a, const MPoly& b) {
  if (a.arity() != b.arity()) throw StructuralError("gcd arity mismatch");
  const std::size_t arity = a.arity();
  if (a.is_zero()) return b.normalize_primitive();
  if (b.is_zero()) return a.normalize_primitive();
  if (a.is_constant() || b.is_constant())
    return MPoly::constant(arity, ExactRational(1));

  std::size_t v = 0;
  int best = -1;
  for (std::size_t i = 0; i < arity; ++i) {
    int d = std::max(a.degree_in(i), b.degree_in(i));
    if (d > best) {
      best = d;
      v = i;
    }
  }

  UPolyM ua = to_upoly_in(a, v);
  UPolyM ub = to_upoly_in(b, v);
  MPoly ca = upoly_content(ua, arity);
  MPoly cb = upoly_content(ub, arity);
  MPoly c = mpoly_gcd(ca, cb);
  UPolyM A = ua.scale_divided(ca);
  UPolyM B = ub.scale_divided(cb);
  if (A.degree() < B.degree()) std::swap(A, B);
  if (B.degree() == 0) return c;  // primitive parts are coprime in v

  // Subresultant PRS to keep the intermediate coefficients from exploding.
  MPoly g = MPoly::constant(arity, ExactRational(1));
  MPoly h = g;
  for (;;) {
    int delta = A.degree() - B.degree();
    UPolyM R = UPolyM::prem(A, B);
    if (R.is_zero()) break;
    if (R.degree() == 0) {
      // The PRS bottoms out in a nonzero constant: pp-gcd is trivial.
      return c;
    }
    A = B;
    B = R.scale_divided(g * h.pow(static_cast<unsigned>(delta)));
    g = A.lc();
    if (delta == 1) {
      h = g;
    } else if (delta > 1) {
      h = g.pow(static_cast<unsigned>(delta))
              .exact_divide(h.pow(static_cast<unsigned>(delta - 1)));
    }
  }
  MPoly pp = from_upoly_in(upoly_primitive_part(B, arity), v, arity);
  return (c * pp).normalize_primitive();
}

// --- univariate over Q ---------------------------------------------------

// Positive rational content relative to Z (gcd of numerators over lcm of
// denominators); dividing by it yields coprime integer coefficients.
inline ExactRational upoly_q_content(const UPolyQ& u) {
  if (u.is_zero()) return ExactRational(1);
  mpz_class g(0), l(1);
  for (const auto& c : u.coeffs()) {
    if (c.is_zero()) continue;
    g = integer_gcd(g, c.num());
    l = integer_lcm(l, c.den());
  }
  return ExactRational(mpq_class(g, l));
}

// Integer-primitive with positive leading coefficient.
inline UPolyQ upoly_q_primitive(const UPolyQ& u) {
  if (u.is_zero()) return u;
  ExactRational c = upoly_q_content(u);
  if (u.lc().sign() < 0) c = -c;
  return u.scale_divided(c);
}

// gcd over Q via primitive PRS, canonicalized like the multivariate case.
inline UPolyQ upoly_gcd(const UPolyQ& a, const UPolyQ& b) {
  UPolyQ A = upoly_q_primitive(a);
  UPolyQ B = upoly_q_primitive(b);
  if (A.is_zero()) return B;
  if (B.is_zero()) return A;
  if (A.degree() < B.degree()) std::swap(A, B);
  while (!B.is_zero()) {
    if (B.degree() == 0) return UPolyQ::constant(ExactRational(1));
    UPolyQ R = upoly_q_primitive(UPolyQ::prem(A, B));
    A = std::move(B);
    B = std::move(R);
  }
  return A;
}

inline UPolyQ squarefree_part(const UPolyQ& p) {
  if (p.is_zero() || p.degree() == 0) return upoly_q_primitive(p);
  UPolyQ g = upoly_gcd(p, p.derivative());
  if (g.degree() == 0) return upoly_q_primitive(p);
  return upoly_q_primitive(exact_divide(upoly_q_primitive(p), g));
}

}  // namespace rma
