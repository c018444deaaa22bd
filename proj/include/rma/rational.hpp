#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "rma/errors.hpp"

namespace rma {

// Arbitrary-precision rational, always kept canonical: gcd(num, den) = 1,
// den > 0.  Thin value wrapper over GMP's mpq_class; the wrapper exists so
// that construction validates (no zero denominators, parse errors are loud)
// and so the rest of the library never touches GMP directly.
class ExactRational {
 public:
  ExactRational() : v_(0) {}
  ExactRational(long n) : v_(n) {}                     // NOLINT(runtime/explicit)
  ExactRational(long n, long d) : v_(n, d) {
    if (d == 0) throw DomainError("rational with zero denominator");
    v_.canonicalize();
  }
  explicit ExactRational(const mpz_class& n) : v_(n) {}
  explicit ExactRational(mpq_class q) : v_(std::move(q)) {
    if (v_.get_den() == 0) throw DomainError("rational with zero denominator");
    v_.canonicalize();
  }

  // Accepts "123", "-7/4", with optional whitespace trimmed by GMP.
  static ExactRational parse(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0)
      throw StructuralError("cannot parse rational literal '" + s + "'");
    if (q.get_den() == 0)
      throw StructuralError("zero denominator in rational literal '" + s + "'");
    q.canonicalize();
    return ExactRational(std::move(q));
  }

  const mpz_class& num() const { return v_.get_num(); }
  const mpz_class& den() const { return v_.get_den(); }

  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  ExactRational operator-() const { return ExactRational(mpq_class(-v_)); }
  ExactRational abs() const { return ExactRational(mpq_class(::abs(v_))); }

  ExactRational& operator+=(const ExactRational& o) { v_ += o.v_; return *this; }
  ExactRational& operator-=(const ExactRational& o) { v_ -= o.v_; return *this; }
  ExactRational& operator*=(const ExactRational& o) { v_ *= o.v_; return *this; }
  ExactRational& operator/=(const ExactRational& o) {
    if (o.is_zero()) throw DomainError("rational division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend ExactRational operator+(ExactRational a, const ExactRational& b) { return a += b; }
  friend ExactRational operator-(ExactRational a, const ExactRational& b) { return a -= b; }
  friend ExactRational operator*(ExactRational a, const ExactRational& b) { return a *= b; }
  friend ExactRational operator/(ExactRational a, const ExactRational& b) { return a /= b; }

  friend bool operator==(const ExactRational& a, const ExactRational& b) {
    return a.v_ == b.v_;
  }
  friend std::strong_ordering operator<=>(const ExactRational& a,
                                          const ExactRational& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
         : c > 0 ? std::strong_ordering::greater
                 : std::strong_ordering::equal;
  }

  ExactRational pow(unsigned e) const {
    mpq_class r(1);
    mpq_class base = v_;
    unsigned k = e;
    while (k > 0) {
      if (k & 1u) r *= base;
      base *= base;
      k >>= 1;
    }
    return ExactRational(std::move(r));
  }

  ExactRational inv() const {
    if (is_zero()) throw DomainError("inverse of zero");
    return ExactRational(mpq_class(1 / v_));
  }

  // Exact reciprocal-free helpers for root bounds and bisection.
  mpz_class floor() const {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
    return q;
  }
  mpz_class ceil() const {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
    return q;
  }

  // Rounds toward zero, deterministic across platforms.
  double to_double() const { return v_.get_d(); }

  std::string str() const { return v_.get_str(); }

  friend std::ostream& operator<<(std::ostream& os, const ExactRational& q) {
    return os << q.v_;
  }

 private:
  mpq_class v_;
};

inline ExactRational rat(long n) { return ExactRational(n); }
inline ExactRational rat(long n, long d) { return ExactRational(n, d); }

// gcd of two rationals interpreted as integers; used by integer-content
// normalization.  Preconditions: both integral.
inline mpz_class integer_gcd(const mpz_class& a, const mpz_class& b) {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline mpz_class integer_lcm(const mpz_class& a, const mpz_class& b) {
  mpz_class l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

// Content-style gcd extended to rationals: gcd(p1/q1, p2/q2) =
// gcd(p1, p2) / lcm(q1, q2), always nonnegative.
inline ExactRational rational_gcd(const ExactRational& a, const ExactRational& b) {
  return ExactRational(mpq_class(integer_gcd(a.num(), b.num()),
                                 integer_lcm(a.den(), b.den())));
}

// Exact square root when one exists in the rationals (both numerator and
// denominator are perfect squares); nullopt otherwise.
inline std::optional<ExactRational> exact_sqrt(const ExactRational& r) {
  if (r.sign() < 0) return std::nullopt;
  const mpz_class& n = r.num();
  const mpz_class& d = r.den();
  if (mpz_perfect_square_p(n.get_mpz_t()) == 0 ||
      mpz_perfect_square_p(d.get_mpz_t()) == 0)
    return std::nullopt;
  mpz_class sn, sd;
  mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
  return ExactRational(mpq_class(sn, sd));
}

}  // namespace rma
