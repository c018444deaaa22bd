#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rma/gcd.hpp"
#include "rma/resultant.hpp"
#include "rma/rmap.hpp"

namespace rma {

// R(T) with coefficients in Q[Y1..Yn], the Y's identified with the
// components of a map F.  Stored content-free: no nonconstant polynomial
// in Y divides every coefficient.
struct AnnihilatorPoly {
  std::size_t image_arity = 0;  // number of Y variables
  UPolyM poly;                  // coefficients have arity == image_arity
  bool primitive_flag = false;  // content across coefficients is constant
  bool minimality_risk = false; // true when minimality was not certified
  std::string provenance;       // which construction produced it

  int t_degree() const { return poly.degree(); }
};

inline int extension_degree(const AnnihilatorPoly& R) { return R.poly.degree(); }

// d - N parity cross-check between the extension degree and an observed
// fiber cardinality.
inline bool parity_check(int d, int N) {
  if (N < 1 || N > d) throw DomainError("fiber cardinality out of range");
  return (d - N) % 2 == 0;
}

namespace detail {

// Project onto the variables listed in `keep` (all others must be absent).
inline MPoly drop_vars(const MPoly& p, const std::vector<std::size_t>& keep) {
  MPoly r(keep.size());
  for (const auto& [m, c] : p.terms()) {
    Monomial nm(keep.size());
    std::uint32_t seen = 0;
    for (std::size_t i = 0; i < keep.size(); ++i) {
      nm.exps[i] = m.exps[keep[i]];
      seen += nm.exps[i];
    }
    if (seen != m.degree())
      throw InternalError("drop_vars would discard a live variable");
    r.add_term(std::move(nm), c);
  }
  return r;
}

// Fold the polynomial content out of the coefficient list and normalize
// the overall rational scale: integer coefficients, coprime, positive
// leading sign.
inline UPolyM canonicalize_annihilator(UPolyM u, std::size_t arity) {
  if (u.is_zero()) throw InternalError("canonicalize_annihilator on zero");
  MPoly content = upoly_content(u, arity);
  if (!content.is_constant()) {
    std::vector<MPoly> cs;
    for (int i = 0; i <= u.degree(); ++i)
      cs.push_back(u[static_cast<std::size_t>(i)].is_zero()
                       ? MPoly::zero(arity)
                       : u[static_cast<std::size_t>(i)].exact_divide(content));
    u = UPolyM(std::move(cs));
  }
  ExactRational scale(0);
  for (int i = 0; i <= u.degree(); ++i) {
    const MPoly& c = u[static_cast<std::size_t>(i)];
    if (c.is_zero()) continue;
    ExactRational ic = c.integer_content();
    scale = scale.is_zero() ? ic : rational_gcd(scale, ic);
  }
  if (u.lc().leading_coeff().sign() < 0) scale = -scale;
  std::vector<MPoly> cs;
  for (int i = 0; i <= u.degree(); ++i)
    cs.push_back(u[static_cast<std::size_t>(i)] * scale.inv());
  return UPolyM(std::move(cs));
}

}  // namespace detail

// Exact check that R vanishes identically under Y := F(x), T := t(x).
inline bool verify_annihilation(const AnnihilatorPoly& R, const RMap& F,
                                const RatFunc& t) {
  if (R.image_arity != F.image_arity())
    throw StructuralError("annihilator image arity does not match the map");
  if (t.arity() != F.domain_arity)
    throw StructuralError("annihilator element arity does not match the map");
  const std::size_t n = F.domain_arity;
  RatFunc acc(MPoly::zero(n));
  for (int i = R.poly.degree(); i >= 0; --i) {
    const MPoly& c = R.poly[static_cast<std::size_t>(i)];
    RatFunc ci = c.is_zero() ? RatFunc(MPoly::zero(n))
                             : substitute_rf(c, F.components);
    acc = acc * t + ci;
  }
  return acc.is_zero();
}

// Annihilator of t over Q(Y) by iterated resultants: clear denominators of
// the component equations and of t, then eliminate the domain variables one
// at a time (highest degree first), stripping content as it accumulates.
// The result is the squarefree part of the eliminant — an annihilator of
// minimal degree among the candidates this procedure sees, which is why
// minimality_risk stays set for nonlinear results.
inline AnnihilatorPoly eliminate_minimal_poly(const RMap& F, const RatFunc& t) {
  const std::size_t n = F.domain_arity;
  const std::size_t m = F.image_arity();
  if (t.arity() != n) throw StructuralError("element arity does not match the map");
  const std::size_t N = n + m + 1;  // x0..x_{n-1}, Y0..Y_{m-1}, T

  std::vector<MPoly> work;
  for (std::size_t i = 0; i < m; ++i) {
    MPoly yi = MPoly::variable(N, n + i);
    work.push_back(F.components[i].num().lift_arity(N) -
                   yi * F.components[i].den().lift_arity(N));
  }
  MPoly T = MPoly::variable(N, n + m);
  work.push_back(t.num().lift_arity(N) - T * t.den().lift_arity(N));

  for (;;) {
    // Highest-degree remaining domain variable, earliest index on ties.
    std::size_t var = N;
    int best = 0;
    for (std::size_t v = 0; v < n; ++v) {
      int dv = 0;
      for (const auto& p : work) dv = std::max(dv, p.degree_in(v));
      if (dv > best) {
        best = dv;
        var = v;
      }
    }
    if (var == N) break;  // no domain variable left

    std::size_t pivot = work.size();
    for (std::size_t i = 0; i < work.size(); ++i) {
      int d = work[i].degree_in(var);
      if (d > 0 && (pivot == work.size() || d < work[pivot].degree_in(var)))
        pivot = i;
    }
    std::vector<MPoly> next;
    for (std::size_t i = 0; i < work.size(); ++i) {
      if (i == pivot) continue;
      int d = work[i].degree_in(var);
      if (d == 0) {
        next.push_back(work[i]);
        continue;
      }
      int size = d + work[pivot].degree_in(var);
      if (size > 24)
        throw ResourceError(
            "elimination needs a " + std::to_string(size) + "x" +
            std::to_string(size) +
            " Sylvester matrix (budget 24x24); high-degree builtin maps go "
            "through their structured minimal-polynomial constructions");
      MPoly r = resultant_in(work[i], work[pivot], var);
      if (r.is_zero())
        throw InternalError("elimination produced the zero polynomial");
      // Strip accumulated content right away to keep later steps small.
      next.push_back(r.normalize_primitive());
    }
    work = std::move(next);
  }

  MPoly eliminant = MPoly::zero(N);
  bool found = false;
  for (const auto& p : work)
    if (p.degree_in(n + m) > 0) {
      eliminant = found ? eliminant * p : p;
      found = true;
    }
  if (!found) throw InternalError("elimination lost the T variable");

  // Squarefree part over Q(Y): divide by gcd with the T-derivative.
  MPoly dT = eliminant.partial_derivative(n + m);
  if (!dT.is_zero()) {
    MPoly g = mpoly_gcd(eliminant, dT);
    if (!g.is_constant()) eliminant = eliminant.exact_divide(g);
  }

  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < m + 1; ++i) keep.push_back(n + i);
  MPoly reduced = detail::drop_vars(eliminant, keep);

  AnnihilatorPoly R;
  R.image_arity = m;
  UPolyM u = to_upoly_in(reduced, m);
  std::vector<MPoly> cs;
  for (int i = 0; i <= u.degree(); ++i) {
    std::vector<std::size_t> ykeep;
    for (std::size_t k = 0; k < m; ++k) ykeep.push_back(k);
    cs.push_back(detail::drop_vars(u[static_cast<std::size_t>(i)], ykeep));
  }
  R.poly = detail::canonicalize_annihilator(UPolyM(std::move(cs)), m);
  R.primitive_flag = true;
  R.minimality_risk = R.poly.degree() > 1;
  R.provenance = "resultant-elimination";
  if (!verify_annihilation(R, F, t))
    throw InternalError("eliminant does not annihilate the element");
  return R;
}

// Monic rescue of an integral element: with a the leading coefficient of
// R, the element a(F)*t satisfies the monic polynomial
//   S(T) = T^d + sum_{i<d} a_i a^{d-1-i} T^i.
inline std::pair<RatFunc, AnnihilatorPoly> integralize(const RatFunc& t,
                                                       const AnnihilatorPoly& R,
                                                       const RMap& F) {
  const int d = R.poly.degree();
  if (d < 1) throw DomainError("integralize needs a nonconstant annihilator");
  const MPoly a = R.poly.lc();
  const std::size_t m = R.image_arity;
  std::vector<MPoly> cs(static_cast<std::size_t>(d) + 1, MPoly::zero(m));
  cs[static_cast<std::size_t>(d)] = MPoly::constant(m, ExactRational(1));
  for (int i = 0; i < d; ++i)
    cs[static_cast<std::size_t>(i)] =
        R.poly[static_cast<std::size_t>(i)] * a.pow(static_cast<unsigned>(d - 1 - i));
  AnnihilatorPoly S;
  S.image_arity = m;
  S.poly = UPolyM(std::move(cs));
  S.primitive_flag = true;  // monic: content is 1
  S.minimality_risk = R.minimality_risk;
  S.provenance = R.provenance + "+integralize";

  RatFunc t_new = substitute_rf(a, F.components) * t;
  if (!verify_annihilation(S, F, t_new))
    throw InternalError("integralized element fails its monic equation");
  return {t_new, S};
}

// The formal partials of R: the gradient in Y and the T-derivative, the
// data entering the companion vector field identity grad_R . M + R'(r) v = 0.
struct CompanionField {
  std::vector<UPolyM> grad_y;
  UPolyM r_prime;
};

inline CompanionField companion_vector_field(const AnnihilatorPoly& R) {
  CompanionField cf;
  const std::size_t m = R.image_arity;
  for (std::size_t v = 0; v < m; ++v) {
    std::vector<MPoly> cs;
    for (int i = 0; i <= R.poly.degree(); ++i)
      cs.push_back(R.poly[static_cast<std::size_t>(i)].partial_derivative(v));
    cf.grad_y.emplace_back(std::move(cs));
  }
  cf.r_prime = R.poly.derivative();
  return cf;
}

// Deterministic primitive-element search: try t = sum_j k^j x_j for
// k = 1..16 and accept the first whose annihilator degree matches the
// product of the per-variable degrees; otherwise return the k=1 candidate
// flagged unverified.
struct PrimitiveElementResult {
  RatFunc element;
  AnnihilatorPoly annihilator;
  bool verified = false;
  std::vector<int> per_variable_degrees;
  int expected_degree = 0;
};

inline PrimitiveElementResult find_primitive_element(const RMap& F) {
  const std::size_t n = F.domain_arity;
  PrimitiveElementResult out;
  out.expected_degree = 1;
  for (std::size_t j = 0; j < n; ++j) {
    AnnihilatorPoly Rj =
        eliminate_minimal_poly(F, RatFunc::variable(n, j));
    out.per_variable_degrees.push_back(Rj.poly.degree());
    out.expected_degree *= Rj.poly.degree();
  }
  bool have_fallback = false;
  for (long k = 1; k <= 16; ++k) {
    MPoly lin = MPoly::zero(n);
    ExactRational w(1);
    for (std::size_t j = 0; j < n; ++j) {
      lin += MPoly::variable(n, j) * w;
      w = w * ExactRational(k);
    }
    RatFunc t(lin);
    AnnihilatorPoly R = eliminate_minimal_poly(F, t);
    if (R.poly.degree() == out.expected_degree) {
      out.element = t;
      out.annihilator = R;
      out.annihilator.minimality_risk = false;
      out.verified = true;
      return out;
    }
    if (!have_fallback) {
      out.element = t;
      out.annihilator = R;
      have_fallback = true;
    }
  }
  out.verified = false;
  return out;
}

}  // namespace rma
