#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rma/mpoly.hpp"
#include "rma/rational.hpp"

namespace rma {

namespace coeffs {

// The two coefficient rings UPoly is instantiated with.  exact_div must
// fail loudly when the quotient is not exact.
inline ExactRational zero_like(const ExactRational&) { return ExactRational(0); }
inline ExactRational one_like(const ExactRational&) { return ExactRational(1); }
inline ExactRational exact_div(const ExactRational& a, const ExactRational& b) {
  return a / b;
}

inline MPoly zero_like(const MPoly& p) { return MPoly::zero(p.arity()); }
inline MPoly one_like(const MPoly& p) {
  return MPoly::constant(p.arity(), ExactRational(1));
}
inline MPoly exact_div(const MPoly& a, const MPoly& b) { return a.exact_divide(b); }

}  // namespace coeffs

// Dense univariate polynomial with coefficients in C (ExactRational or
// MPoly), stored ascending by degree and always trimmed, so the zero
// polynomial is the empty vector and degree() returns -1 for it.
template <class C>
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<C> coeffs) : c_(std::move(coeffs)) { trim(); }

  static UPoly constant(C v) {
    UPoly p;
    if (!v.is_zero()) p.c_.push_back(std::move(v));
    return p;
  }

  static UPoly monomial(std::size_t deg, C v) {
    UPoly p;
    if (!v.is_zero()) {
      p.c_.resize(deg, coeffs::zero_like(v));
      p.c_.push_back(std::move(v));
    }
    return p;
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }

  const C& lc() const {
    if (c_.empty()) throw DomainError("leading coefficient of zero polynomial");
    return c_.back();
  }

  // Coefficient of T^i; requires an exemplar-free zero only when in range,
  // so out-of-range lookups on the zero polynomial need the caller to cope.
  const C& operator[](std::size_t i) const { return c_[i]; }
  std::size_t size() const { return c_.size(); }
  const std::vector<C>& coeffs() const { return c_; }

  UPoly operator-() const {
    UPoly r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
  }

  friend UPoly operator+(const UPoly& a, const UPoly& b) {
    UPoly r;
    r.c_.reserve(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < std::max(a.c_.size(), b.c_.size()); ++i) {
      if (i < a.c_.size() && i < b.c_.size()) {
        r.c_.push_back(a.c_[i] + b.c_[i]);
      } else if (i < a.c_.size()) {
        r.c_.push_back(a.c_[i]);
      } else {
        r.c_.push_back(b.c_[i]);
      }
    }
    r.trim();
    return r;
  }
  friend UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }

  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return UPoly();
    UPoly r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, coeffs::zero_like(a.c_.front()));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j)
        r.c_[i + j] = r.c_[i + j] + a.c_[i] * b.c_[j];
    r.trim();
    return r;
  }

  UPoly scaled(const C& s) const {
    if (s.is_zero()) return UPoly();
    UPoly r = *this;
    for (auto& v : r.c_) v = v * s;
    r.trim();  // zero divisors are impossible here, but stay defensive
    return r;
  }

  // Coefficient-wise exact division by a ring element.
  UPoly scale_divided(const C& s) const {
    UPoly r = *this;
    for (auto& v : r.c_) v = coeffs::exact_div(v, s);
    return r;
  }

  UPoly shifted_up(std::size_t k) const {  // multiply by T^k
    if (is_zero() || k == 0) return *this;
    UPoly r;
    r.c_.assign(k, coeffs::zero_like(c_.front()));
    r.c_.insert(r.c_.end(), c_.begin(), c_.end());
    return r;
  }

  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  UPoly derivative() const {
    UPoly r;
    for (std::size_t i = 1; i < c_.size(); ++i)
      r.c_.push_back(c_[i] * ExactRational(static_cast<long>(i)));
    r.trim();
    return r;
  }

  // Horner evaluation into any ring R reachable from C through `lift`.
  template <class R, class Lift>
  R eval_lifted(const R& x, Lift lift) const {
    if (c_.empty()) throw DomainError("eval_lifted needs explicit zero for zero polynomial");
    R acc = lift(c_.back());
    for (std::size_t i = c_.size() - 1; i-- > 0;) acc = acc * x + lift(c_[i]);
    return acc;
  }

  C eval(const C& x) const {
    if (c_.empty()) return coeffs::zero_like(x);
    C acc = c_.back();
    for (std::size_t i = c_.size() - 1; i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  // Pseudo-division: lc(b)^(deg a - deg b + 1) * a = q*b + r with
  // deg r < deg b.  Exact in any integral domain.
  struct PseudoDivision {
    UPoly quotient;
    UPoly remainder;
  };
  static PseudoDivision pseudo_divide(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw DomainError("pseudo-division by zero");
    if (a.degree() < b.degree()) return {UPoly(), a};
    const C lb = b.lc();
    UPoly q, r = a;
    int e = a.degree() - b.degree() + 1;
    while (!r.is_zero() && r.degree() >= b.degree()) {
      std::size_t shift = static_cast<std::size_t>(r.degree() - b.degree());
      C top = r.lc();
      q = q.scaled(lb) + UPoly::monomial(shift, top);
      r = r.scaled(lb) - b.shifted_up(shift).scaled(top);
      --e;
    }
    // Bring both up to the full lc(b)^(deg a - deg b + 1) multiplier.
    for (; e > 0; --e) {
      q = q.scaled(lb);
      r = r.scaled(lb);
    }
    return {q, r};
  }

  static UPoly prem(const UPoly& a, const UPoly& b) {
    return pseudo_divide(a, b).remainder;
  }

  // Exact polynomial division; throws if b does not divide a.
  friend UPoly exact_divide(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw DomainError("exact division by zero polynomial");
    if (a.is_zero()) return UPoly();
    UPoly q, r = a;
    while (!r.is_zero() && r.degree() >= b.degree()) {
      C top = coeffs::exact_div(r.lc(), b.lc());
      std::size_t shift = static_cast<std::size_t>(r.degree() - b.degree());
      q = q + UPoly::monomial(shift, top);
      r = r - b.shifted_up(shift).scaled(top);
    }
    if (!r.is_zero()) throw InternalError("univariate exact division left a remainder");
    return q;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  std::vector<C> c_;
};

using UPolyQ = UPoly<ExactRational>;
using UPolyM = UPoly<MPoly>;

// Field division with remainder for rational coefficients.
inline std::pair<UPolyQ, UPolyQ> divmod(const UPolyQ& a, const UPolyQ& b) {
  if (b.is_zero()) throw DomainError("division by zero polynomial");
  UPolyQ q, r = a;
  while (!r.is_zero() && r.degree() >= b.degree()) {
    ExactRational top = r.lc() / b.lc();
    std::size_t shift = static_cast<std::size_t>(r.degree() - b.degree());
    q = q + UPolyQ::monomial(shift, top);
    r = r - b.shifted_up(shift).scaled(top);
  }
  return {q, r};
}

// View an MPoly as univariate in `var`; coefficients keep the full arity
// with the exponent of `var` cleared.
inline UPolyM to_upoly_in(const MPoly& p, std::size_t var) {
  int d = p.degree_in(var);
  std::vector<MPoly> cs(static_cast<std::size_t>(d < 0 ? 0 : d + 1),
                        MPoly::zero(p.arity()));
  for (const auto& [m, c] : p.terms()) {
    Monomial rest = m;
    std::uint32_t e = rest.exps[var];
    rest.exps[var] = 0;
    cs[e].add_term(std::move(rest), c);
  }
  return UPolyM(std::move(cs));
}

inline MPoly from_upoly_in(const UPolyM& u, std::size_t var, std::size_t arity) {
  MPoly p = MPoly::zero(arity);
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i].is_zero()) continue;
    if (u[i].arity() != arity) throw StructuralError("from_upoly_in arity mismatch");
    if (u[i].degree_in(var) > 0)
      throw StructuralError("coefficient depends on the main variable");
    Monomial shift(arity);
    shift.exps[var] = static_cast<std::uint32_t>(i);
    MPoly scaled(arity);
    for (const auto& [m, c] : u[i].terms()) scaled.add_term(m * shift, c);
    p += scaled;
  }
  return p;
}

// Arity-1 MPoly <-> rational-coefficient UPoly.
inline UPolyQ to_upoly_q(const MPoly& p) {
  if (p.arity() != 1) throw StructuralError("to_upoly_q requires arity 1");
  std::vector<ExactRational> cs(static_cast<std::size_t>(
                                    p.total_degree() < 0 ? 0 : p.total_degree() + 1),
                                ExactRational(0));
  for (const auto& [m, c] : p.terms()) cs[m.exps[0]] = c;
  return UPolyQ(std::move(cs));
}

inline MPoly from_upoly_q(const UPolyQ& u) {
  MPoly p = MPoly::zero(1);
  for (std::size_t i = 0; i < u.size(); ++i) {
    // Beware Monomial({i}): a one-element braced list would pick the arity
    // constructor, so spell out the exponent vector.
    std::vector<std::uint32_t> e{static_cast<std::uint32_t>(i)};
    p.add_term(Monomial(std::move(e)), u[i]);
  }
  return p;
}

inline std::string upoly_str(const UPolyQ& u, const std::string& var = "T") {
  return from_upoly_q(u).str({var});
}

}  // namespace rma
