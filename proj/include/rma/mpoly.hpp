#pragma once

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rma/monomial.hpp"
#include "rma/rational.hpp"

namespace rma {

// Sparse multivariate polynomial over the rationals with a fixed arity.
// Terms live in a map ordered by graded lex, so the last entry is the
// leading term.  Invariants: no zero coefficients are stored, and every
// monomial has exactly `arity` exponents.  Mixed-arity arithmetic throws.
class MPoly {
 public:
  using TermMap = std::map<Monomial, ExactRational, GrlexLess>;

  MPoly() : arity_(0) {}
  explicit MPoly(std::size_t arity) : arity_(arity) {}

  static MPoly zero(std::size_t arity) { return MPoly(arity); }

  static MPoly constant(std::size_t arity, ExactRational c) {
    MPoly p(arity);
    if (!c.is_zero()) p.terms_.emplace(Monomial(arity), std::move(c));
    return p;
  }

  static MPoly variable(std::size_t arity, std::size_t idx) {
    if (idx >= arity) throw StructuralError("variable index out of range");
    Monomial m(arity);
    m.exps[idx] = 1;
    MPoly p(arity);
    p.terms_.emplace(std::move(m), ExactRational(1));
    return p;
  }

  static MPoly term(std::size_t arity, std::vector<std::uint32_t> exps,
                    ExactRational c) {
    if (exps.size() != arity) throw StructuralError("term exponent arity mismatch");
    MPoly p(arity);
    if (!c.is_zero()) p.terms_.emplace(Monomial(std::move(exps)), std::move(c));
    return p;
  }

  std::size_t arity() const { return arity_; }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_constant());
  }

  ExactRational constant_value() const {
    if (terms_.empty()) return ExactRational(0);
    if (!is_constant()) throw DomainError("constant_value on nonconstant polynomial");
    return terms_.begin()->second;
  }

  // Coefficient of an exact monomial (zero if absent).
  ExactRational coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? ExactRational(0) : it->second;
  }

  const Monomial& leading_monomial() const {
    if (terms_.empty()) throw DomainError("leading term of zero polynomial");
    return terms_.rbegin()->first;
  }

  const ExactRational& leading_coeff() const {
    if (terms_.empty()) throw DomainError("leading term of zero polynomial");
    return terms_.rbegin()->second;
  }

  int total_degree() const {
    if (terms_.empty()) return -1;
    return static_cast<int>(terms_.rbegin()->first.degree());
  }

  int degree_in(std::size_t var) const {
    check_var(var);
    int d = -1;
    for (const auto& [m, c] : terms_)
      d = std::max(d, static_cast<int>(m.exps[var]));
    return d;
  }

  MPoly operator-() const {
    MPoly r(arity_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
  }

  MPoly& operator+=(const MPoly& o) {
    check_arity(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  MPoly& operator-=(const MPoly& o) {
    check_arity(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }

  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }

  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    a.check_arity(b);
    MPoly r(a.arity_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
  }

  friend MPoly operator*(MPoly a, const ExactRational& s) {
    if (s.is_zero()) return MPoly(a.arity_);
    for (auto& [m, c] : a.terms_) c *= s;
    return a;
  }
  friend MPoly operator*(const ExactRational& s, MPoly a) { return std::move(a) * s; }

  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }
  MPoly& operator*=(const ExactRational& s) { return *this = *this * s; }

  friend MPoly operator+(MPoly a, const ExactRational& s) {
    a.add_term(Monomial(a.arity_), s);
    return a;
  }
  friend MPoly operator-(MPoly a, const ExactRational& s) {
    a.add_term(Monomial(a.arity_), -s);
    return a;
  }

  MPoly pow(unsigned e) const {
    MPoly r = MPoly::constant(arity_, ExactRational(1));
    MPoly base = *this;
    while (e > 0) {
      if (e & 1u) r = r * base;
      if (e >>= 1) base = base * base;
    }
    return r;
  }

  friend bool operator==(const MPoly& a, const MPoly& b) {
    return a.arity_ == b.arity_ && a.terms_ == b.terms_;
  }

  MPoly partial_derivative(std::size_t var) const {
    check_var(var);
    MPoly r(arity_);
    for (const auto& [m, c] : terms_) {
      if (m.exps[var] == 0) continue;
      Monomial dm = m;
      ExactRational dc = c * ExactRational(static_cast<long>(dm.exps[var]));
      dm.exps[var] -= 1;
      r.terms_.emplace(std::move(dm), std::move(dc));
    }
    return r;
  }

  // Exact quotient by d; throws InternalError if d does not divide *this.
  // Single-divisor division in graded lex: for an exact multiple the leading
  // term of the running remainder is always divisible, so hitting one that
  // is not proves non-divisibility.
  MPoly exact_divide(const MPoly& d) const {
    check_arity(d);
    if (d.is_zero()) throw DomainError("exact division by zero polynomial");
    if (d.is_constant()) return *this * d.constant_value().inv();
    MPoly q(arity_);
    MPoly r = *this;
    const Monomial& dm = d.leading_monomial();
    const ExactRational& dc = d.leading_coeff();
    while (!r.is_zero()) {
      const Monomial& rm = r.leading_monomial();
      if (!dm.divides(rm))
        throw InternalError("exact division left a remainder");
      Monomial qm = rm / dm;
      ExactRational qc = r.leading_coeff() / dc;
      MPoly t(arity_);
      t.terms_.emplace(qm, qc);
      q.terms_.emplace(std::move(qm), std::move(qc));
      r -= t * d;
    }
    return q;
  }

  bool divides(const MPoly& p) const {
    try {
      (void)p.exact_divide(*this);
      return true;
    } catch (const InternalError&) {
      return false;
    }
  }

  // Positive rational c with (*this)/c integer-primitive; zero poly gives 1.
  ExactRational integer_content() const {
    if (terms_.empty()) return ExactRational(1);
    mpz_class g(0), l(1);
    for (const auto& [m, c] : terms_) {
      g = integer_gcd(g, c.num());
      l = integer_lcm(l, c.den());
    }
    return ExactRational(mpq_class(g, l));  // canonicalized by ctor
  }

  // Canonical content-free form: integer coefficients with gcd 1 and the
  // graded-lex leading coefficient positive.
  MPoly normalize_primitive() const {
    if (terms_.empty()) return *this;
    ExactRational c = integer_content();
    if (leading_coeff().sign() < 0) c = -c;
    return *this * c.inv();
  }

  // Ring-homomorphic substitution: variable i goes to vals[i].  R needs
  // R+R, R*R and R*ExactRational; zero/one carry any context R requires
  // (arity, extension descriptor).  Powers are cached per variable.
  template <class R>
  R substitute(const std::vector<R>& vals, const R& zero, const R& one) const {
    if (vals.size() != arity_)
      throw StructuralError("substitution value count does not match arity");
    std::vector<std::vector<R>> pows(arity_);
    for (std::size_t i = 0; i < arity_; ++i) pows[i].push_back(one);
    R acc = zero;
    for (const auto& [m, c] : terms_) {
      R t = one;
      bool t_is_one = true;
      for (std::size_t i = 0; i < arity_; ++i) {
        std::uint32_t e = m.exps[i];
        if (e == 0) continue;
        auto& cache = pows[i];
        while (cache.size() <= e) cache.push_back(cache.back() * vals[i]);
        t = t_is_one ? cache[e] : t * cache[e];
        t_is_one = false;
      }
      acc = acc + t * c;
    }
    return acc;
  }

  ExactRational eval(const std::vector<ExactRational>& point) const {
    return substitute<ExactRational>(point, ExactRational(0), ExactRational(1));
  }

  MPoly substitute_poly(const std::vector<MPoly>& vals) const {
    if (vals.empty()) {
      if (arity_ != 0) throw StructuralError("substitution value count does not match arity");
      return *this;
    }
    std::size_t m = vals.front().arity();
    return substitute<MPoly>(vals, MPoly::zero(m), MPoly::constant(m, ExactRational(1)));
  }

  // Reinterpret in a larger ring keeping variable indices (append fresh
  // variables at the end).
  MPoly lift_arity(std::size_t new_arity) const {
    std::vector<std::size_t> var_map(arity_);
    for (std::size_t i = 0; i < arity_; ++i) var_map[i] = i;
    return lift_arity(new_arity, var_map);
  }

  // Reinterpret in a larger ring: old variable i becomes new variable
  // var_map[i].  Coefficients are untouched.
  MPoly lift_arity(std::size_t new_arity, const std::vector<std::size_t>& var_map) const {
    if (var_map.size() != arity_) throw StructuralError("lift_arity map size mismatch");
    MPoly r(new_arity);
    for (const auto& [m, c] : terms_) {
      Monomial nm(new_arity);
      for (std::size_t i = 0; i < arity_; ++i) {
        if (var_map[i] >= new_arity) throw StructuralError("lift_arity target out of range");
        nm.exps[var_map[i]] += m.exps[i];
      }
      r.add_term(std::move(nm), c);
    }
    return r;
  }

  static std::vector<std::string> default_names(std::size_t arity) {
    static const char* kShort[] = {"x", "y", "z", "w"};
    std::vector<std::string> names;
    for (std::size_t i = 0; i < arity; ++i) {
      if (arity <= 4) {
        names.emplace_back(kShort[i]);
      } else {
        names.push_back("x" + std::to_string(i + 1));
      }
    }
    return names;
  }

  std::string str(const std::vector<std::string>& names = {}) const {
    if (terms_.empty()) return "0";
    std::vector<std::string> nm = names.empty() ? default_names(arity_) : names;
    if (nm.size() != arity_) throw StructuralError("variable name count mismatch");
    std::ostringstream os;
    bool first = true;
    // Leading term first.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [m, c] = *it;
      ExactRational a = c.abs();
      if (first) {
        if (c.sign() < 0) os << "-";
        first = false;
      } else {
        os << (c.sign() < 0 ? " - " : " + ");
      }
      bool coeff_shown = !(a.is_one() && !m.is_constant());
      if (coeff_shown) os << a.str();
      bool any_var = false;
      for (std::size_t i = 0; i < arity_; ++i) {
        if (m.exps[i] == 0) continue;
        if (coeff_shown || any_var) os << "*";
        os << nm[i];
        if (m.exps[i] > 1) os << "^" << m.exps[i];
        any_var = true;
      }
    }
    return os.str();
  }

  // Internal accumulation entry point; keeps the no-zero-coefficient invariant.
  void add_term(Monomial m, const ExactRational& c) {
    if (c.is_zero()) return;
    if (m.arity() != arity_) throw StructuralError("term arity mismatch");
    auto [it, inserted] = terms_.try_emplace(std::move(m), c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

 private:
  void check_arity(const MPoly& o) const {
    if (arity_ != o.arity_) throw StructuralError("polynomial arity mismatch");
  }
  void check_var(std::size_t var) const {
    if (var >= arity_) throw StructuralError("variable index out of range");
  }

  std::size_t arity_;
  TermMap terms_;
};

}  // namespace rma
