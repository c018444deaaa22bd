#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rma/gcd.hpp"
#include "rma/mpoly.hpp"

namespace rma {

// Reduced rational function num/den over Q in a fixed arity.  Canonical
// form: gcd(num, den) = 1 and den is integer-primitive with positive
// leading coefficient (so polynomials have den exactly 1, and equality is
// structural).
class RatFunc {
 public:
  RatFunc() : num_(MPoly::zero(0)), den_(MPoly::constant(0, ExactRational(1))) {}

  explicit RatFunc(MPoly p)
      : num_(std::move(p)), den_(MPoly::constant(num_.arity(), ExactRational(1))) {}

  static RatFunc make(MPoly num, MPoly den) {
    if (num.arity() != den.arity()) throw StructuralError("rational function arity mismatch");
    if (den.is_zero()) throw DomainError("rational function with zero denominator");
    if (num.is_zero()) return RatFunc(MPoly::zero(num.arity()));
    MPoly g = mpoly_gcd(num, den);
    if (!(g.is_constant() && g.constant_value().is_one())) {
      num = num.exact_divide(g);
      den = den.exact_divide(g);
    }
    // Push the scalar into the numerator: den integer-primitive, lead > 0.
    ExactRational c = den.integer_content();
    if (den.leading_coeff().sign() < 0) c = -c;
    RatFunc r;
    r.num_ = num * c.inv();
    r.den_ = den * c.inv();
    return r;
  }

  static RatFunc constant(std::size_t arity, ExactRational v) {
    return RatFunc(MPoly::constant(arity, std::move(v)));
  }
  static RatFunc variable(std::size_t arity, std::size_t i) {
    return RatFunc(MPoly::variable(arity, i));
  }

  const MPoly& num() const { return num_; }
  const MPoly& den() const { return den_; }
  std::size_t arity() const { return num_.arity(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }

  ExactRational constant_value() const {
    return num_.constant_value() / den_.constant_value();
  }

  RatFunc operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend RatFunc operator+(const RatFunc& x, const RatFunc& y) {
    return make(x.num_ * y.den_ + y.num_ * x.den_, x.den_ * y.den_);
  }
  friend RatFunc operator-(const RatFunc& x, const RatFunc& y) { return x + (-y); }
  friend RatFunc operator*(const RatFunc& x, const RatFunc& y) {
    // Cross-reduce before multiplying to keep the final gcd cheap.
    MPoly g1 = mpoly_gcd(x.num_, y.den_);
    MPoly g2 = mpoly_gcd(y.num_, x.den_);
    return make(x.num_.exact_divide(g1) * y.num_.exact_divide(g2),
                x.den_.exact_divide(g2) * y.den_.exact_divide(g1));
  }
  friend RatFunc operator/(const RatFunc& x, const RatFunc& y) {
    if (y.is_zero()) throw DomainError("division by zero rational function");
    return x * y.inv();
  }
  friend RatFunc operator*(const RatFunc& x, const ExactRational& s) {
    if (s.is_zero()) return RatFunc(MPoly::zero(x.arity()));
    RatFunc r = x;
    r.num_ = r.num_ * s;
    return r;
  }

  RatFunc inv() const {
    if (is_zero()) throw DomainError("inverse of zero rational function");
    return make(den_, num_);
  }

  RatFunc pow(unsigned e) const {
    RatFunc r = constant(arity(), ExactRational(1));
    RatFunc base = *this;
    while (e > 0) {
      if (e & 1u) r = r * base;
      if (e >>= 1) base = base * base;
    }
    return r;
  }

  RatFunc derivative(std::size_t var) const {
    return make(num_.partial_derivative(var) * den_ -
                    num_ * den_.partial_derivative(var),
                den_ * den_);
  }

  ExactRational eval(const std::vector<ExactRational>& point) const {
    ExactRational d = den_.eval(point);
    if (d.is_zero()) throw DomainError("evaluation at a pole");
    return num_.eval(point) / d;
  }

  // Pole-tolerant evaluation: nullopt marks an undefined value, so grid
  // scans can step over poles without exception plumbing.
  std::optional<ExactRational> eval_opt(const std::vector<ExactRational>& point) const {
    ExactRational d = den_.eval(point);
    if (d.is_zero()) return std::nullopt;
    return num_.eval(point) / d;
  }

  bool defined_at(const std::vector<ExactRational>& point) const {
    return !den_.eval(point).is_zero();
  }

  friend bool operator==(const RatFunc& x, const RatFunc& y) {
    return x.num_ == y.num_ && x.den_ == y.den_;
  }

  std::string str(const std::vector<std::string>& names = {}) const {
    if (is_polynomial()) return num_.str(names);
    return "(" + num_.str(names) + ") / (" + den_.str(names) + ")";
  }

 private:
  MPoly num_, den_;
};

namespace coeffs {
inline RatFunc zero_like(const RatFunc& f) {
  return RatFunc(MPoly::zero(f.arity()));
}
inline RatFunc one_like(const RatFunc& f) {
  return RatFunc::constant(f.arity(), ExactRational(1));
}
}  // namespace coeffs

// Composition p(vals[0], ..., vals[k-1]) over a common single denominator:
// much cheaper than folding RatFunc arithmetic term by term, and the one
// reduction happens at the end.
inline RatFunc substitute_rf(const MPoly& p, const std::vector<RatFunc>& vals) {
  if (vals.size() != p.arity())
    throw StructuralError("substitute_rf value count does not match arity");
  if (p.arity() == 0) return RatFunc(p);
  const std::size_t m = vals.front().arity();
  for (const auto& v : vals)
    if (v.arity() != m) throw StructuralError("substitute_rf mixed target arities");

  std::vector<int> dmax(p.arity(), 0);
  for (std::size_t i = 0; i < p.arity(); ++i) dmax[i] = std::max(0, p.degree_in(i));

  // Power caches for numerators and denominators.
  std::vector<std::vector<MPoly>> npow(p.arity()), dpow(p.arity());
  for (std::size_t i = 0; i < p.arity(); ++i) {
    npow[i].push_back(MPoly::constant(m, ExactRational(1)));
    dpow[i].push_back(MPoly::constant(m, ExactRational(1)));
    for (int k = 1; k <= dmax[i]; ++k) {
      npow[i].push_back(npow[i].back() * vals[i].num());
      dpow[i].push_back(dpow[i].back() * vals[i].den());
    }
  }

  MPoly numer = MPoly::zero(m);
  for (const auto& [mono, coef] : p.terms()) {
    MPoly t = MPoly::constant(m, coef);
    for (std::size_t i = 0; i < p.arity(); ++i) {
      std::uint32_t e = mono.exps[i];
      if (e > 0) t = t * npow[i][e];
      std::uint32_t co = static_cast<std::uint32_t>(dmax[i]) - e;
      if (co > 0) t = t * dpow[i][co];
    }
    numer += t;
  }
  MPoly denom = MPoly::constant(m, ExactRational(1));
  for (std::size_t i = 0; i < p.arity(); ++i)
    if (dmax[i] > 0) denom = denom * dpow[i][static_cast<std::size_t>(dmax[i])];
  return RatFunc::make(std::move(numer), std::move(denom));
}

// Full rational-function composition.
inline RatFunc substitute_rf(const RatFunc& f, const std::vector<RatFunc>& vals) {
  RatFunc n = substitute_rf(f.num(), vals);
  RatFunc d = substitute_rf(f.den(), vals);
  if (d.is_zero()) throw DomainError("composition lands in a pole");
  return n / d;
}

}  // namespace rma
