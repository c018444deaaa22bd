#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "rma/errors.hpp"

namespace rma {

// Exponent vector of fixed arity.  Compared in graded lexicographic order:
// total degree first, then lexicographic with the earlier variable winning
// ties (so with arity 2, x^2*y > x*y^2).
struct Monomial {
  std::vector<std::uint32_t> exps;

  Monomial() = default;
  explicit Monomial(std::size_t arity) : exps(arity, 0) {}
  explicit Monomial(std::vector<std::uint32_t> e) : exps(std::move(e)) {}

  std::size_t arity() const { return exps.size(); }

  std::uint32_t degree() const {
    std::uint32_t d = 0;
    for (auto e : exps) d += e;
    return d;
  }

  bool is_constant() const {
    for (auto e : exps)
      if (e != 0) return false;
    return true;
  }

  bool divides(const Monomial& m) const {
    for (std::size_t i = 0; i < exps.size(); ++i)
      if (exps[i] > m.exps[i]) return false;
    return true;
  }

  Monomial operator*(const Monomial& m) const {
    Monomial r(*this);
    for (std::size_t i = 0; i < exps.size(); ++i) r.exps[i] += m.exps[i];
    return r;
  }

  // Exact quotient; caller must have checked divisibility.
  Monomial operator/(const Monomial& m) const {
    Monomial r(*this);
    for (std::size_t i = 0; i < exps.size(); ++i) {
      if (r.exps[i] < m.exps[i]) throw InternalError("monomial quotient underflow");
      r.exps[i] -= m.exps[i];
    }
    return r;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.exps == b.exps;
  }
};

// strict-weak order: graded lex as described above.
struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    std::uint32_t da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    for (std::size_t i = 0; i < a.exps.size(); ++i) {
      if (a.exps[i] != b.exps[i]) return a.exps[i] < b.exps[i];
    }
    return false;
  }
};

}  // namespace rma
