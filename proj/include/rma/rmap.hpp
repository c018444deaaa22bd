#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rma/positivity.hpp"
#include "rma/ratfunc.hpp"

namespace rma {

// A tuple of reduced rational functions in shared variables.  Most of the
// toolkit works with square maps (image arity = domain arity); curve
// parametrizations reuse the type with fewer variables than components.
struct RMap {
  std::size_t domain_arity = 0;
  std::vector<RatFunc> components;

  RMap() = default;
  RMap(std::size_t arity, std::vector<RatFunc> comps)
      : domain_arity(arity), components(std::move(comps)) {
    for (const auto& c : components)
      if (c.arity() != domain_arity)
        throw StructuralError("map component arity mismatch");
  }

  static RMap from_polys(const std::vector<MPoly>& ps) {
    if (ps.empty()) throw StructuralError("map needs at least one component");
    std::vector<RatFunc> cs;
    cs.reserve(ps.size());
    for (const auto& p : ps) cs.emplace_back(p);
    return RMap(ps.front().arity(), std::move(cs));
  }

  std::size_t image_arity() const { return components.size(); }
  bool is_square() const { return image_arity() == domain_arity; }
  bool is_polynomial() const {
    for (const auto& c : components)
      if (!c.is_polynomial()) return false;
    return true;
  }

  // Componentwise evaluation; nullopt when any component hits a pole.
  std::optional<Point> eval(const Point& x) const {
    Point y;
    y.reserve(components.size());
    for (const auto& c : components) {
      auto v = c.eval_opt(x);
      if (!v) return std::nullopt;
      y.push_back(std::move(*v));
    }
    return y;
  }
};

struct JacobianData {
  std::vector<std::vector<RatFunc>> matrix;  // rows = components, cols = variables
  RatFunc det;
};

// Determinant by subset dynamic programming over column sets (Laplace
// expansion with memoization): no division, O(n 2^n) ring operations, and
// zero entries short-circuit — which matters for the extended maps whose
// last column is almost entirely zero.
inline RatFunc dp_det(const std::vector<std::vector<RatFunc>>& m) {
  const std::size_t n = m.size();
  if (n == 0) throw DomainError("determinant of an empty matrix");
  for (const auto& row : m)
    if (row.size() != n) throw StructuralError("determinant of a non-square matrix");
  const std::size_t arity = m[0][0].arity();
  const RatFunc zero(MPoly::zero(arity));
  std::vector<RatFunc> f(std::size_t{1} << n, zero);
  f[0] = RatFunc::constant(arity, ExactRational(1));
  for (std::size_t s = 1; s < f.size(); ++s) {
    const int k = __builtin_popcountll(s);  // rows 0..k-1 against columns in s
    RatFunc acc = zero;
    int pos = 0;  // index of the column within s
    for (std::size_t j = 0; j < n; ++j) {
      if (!(s & (std::size_t{1} << j))) continue;
      const RatFunc& entry = m[static_cast<std::size_t>(k - 1)][j];
      if (!entry.is_zero()) {
        RatFunc term = entry * f[s ^ (std::size_t{1} << j)];
        acc = ((k - 1 + pos) % 2 == 0) ? acc + term : acc - term;
      }
      ++pos;
    }
    f[s] = std::move(acc);
  }
  return f.back();
}

inline JacobianData jacobian(const RMap& F) {
  if (!F.is_square() || F.domain_arity == 0)
    throw StructuralError("jacobian needs a square map of positive arity");
  const std::size_t n = F.domain_arity;
  JacobianData jd;
  jd.matrix.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    jd.matrix[i].reserve(n);
    for (std::size_t v = 0; v < n; ++v)
      jd.matrix[i].push_back(F.components[i].derivative(v));
  }
  jd.det = dp_det(jd.matrix);
  return jd;
}

// G after H, componentwise substitution with immediate normalization.
inline RMap compose(const RMap& G, const RMap& H) {
  if (G.domain_arity != H.image_arity())
    throw StructuralError("composition arity mismatch");
  std::vector<RatFunc> cs;
  cs.reserve(G.components.size());
  for (const auto& g : G.components) cs.push_back(substitute_rf(g, H.components));
  return RMap(H.domain_arity, std::move(cs));
}

// Every denominator must be certifiably zero-free on R^n.
inline PositivityReport is_everywhere_defined(const RMap& F) {
  PositivityReport out;
  out.verdict = Verdict::Yes;
  out.method = "denominator-scan";
  std::string notes;
  for (std::size_t i = 0; i < F.components.size(); ++i) {
    const MPoly& den = F.components[i].den();
    if (den.is_constant()) continue;
    PositivityReport r = is_nowhere_zero(den);
    if (r.verdict == Verdict::No) {
      r.detail = "denominator of component " + std::to_string(i) + " " + r.detail;
      r.method = "denominator-scan: " + r.method;
      return r;
    }
    if (r.verdict == Verdict::Unknown) {
      out.verdict = Verdict::Unknown;
      notes += (notes.empty() ? "" : "; ") + ("component " + std::to_string(i) +
               " undecided: " + r.detail);
    } else {
      notes += (notes.empty() ? "" : "; ") + ("component " + std::to_string(i) +
               " via " + r.method);
    }
  }
  out.detail = notes.empty() ? "all denominators constant" : notes;
  return out;
}

// Is the Jacobian determinant zero-free on R^n?  Certificates (e.g. an
// exact sum-of-squares decomposition of the determinant) sharpen the
// verdict; without one the generic recognizer runs on the numerator.
// A witness is only meaningful where the reduced fraction is defined,
// which is automatic: a reduced numerator and denominator share no zeros
// in dimension one, and the toolkit's certified maps have constant
// denominators — for anything else the report says what was checked.
inline PositivityReport nowhere_vanishing_det(
    const RMap& F, const std::vector<SosCertificate>& certs = {}) {
  JacobianData jd = jacobian(F);
  if (jd.det.is_zero())
    throw DomainError("jacobian determinant is identically zero");
  PositivityReport r = is_nowhere_zero(jd.det.num(), certs);
  r.detail = "jacobian determinant " + r.detail;
  return r;
}

// F+(x, z) = (F(x), z / j(x)) with j the Jacobian determinant of F: one
// dimension up, constant determinant 1.  The identity det J(F+) = 1 is
// recomputed symbolically and enforced.
inline RMap extend_plus(const RMap& F,
                        const std::vector<SosCertificate>& certs = {}) {
  RatFunc j = jacobian(F).det;
  if (j.is_zero())
    throw DomainError("jacobian determinant is identically zero");
  PositivityReport ok = is_nowhere_zero(j.num(), certs);
  if (ok.verdict != Verdict::Yes)
    throw DomainError("extend_plus requires a certified nowhere-vanishing determinant (got " +
                      std::string(to_string(ok.verdict)) + ": " + ok.detail + ")");
  const std::size_t n = F.domain_arity;
  std::vector<RatFunc> cs;
  cs.reserve(n + 1);
  for (const auto& c : F.components)
    cs.push_back(RatFunc::make(c.num().lift_arity(n + 1), c.den().lift_arity(n + 1)));
  MPoly z = MPoly::variable(n + 1, n);
  cs.push_back(RatFunc::make(z * j.den().lift_arity(n + 1), j.num().lift_arity(n + 1)));
  RMap plus(n + 1, std::move(cs));
  RatFunc det = jacobian(plus).det;
  if (!(det == RatFunc::constant(n + 1, ExactRational(1))))
    throw InternalError("extended map determinant is not 1");
  return plus;
}

}  // namespace rma
