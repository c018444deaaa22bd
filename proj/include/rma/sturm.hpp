#pragma once

#include <vector>

#include "rma/gcd.hpp"
#include "rma/upoly.hpp"

namespace rma {

// Sturm chain of the squarefree part: seq[0] = squarefree(p), seq[1] = its
// derivative, then negated remainders scaled by positive rationals (scaling
// by a positive constant never disturbs the sign pattern).
struct SturmChain {
  std::vector<UPolyQ> seq;

  static SturmChain build(const UPolyQ& p) {
    if (p.is_zero()) throw DomainError("Sturm chain of the zero polynomial");
    SturmChain ch;
    UPolyQ f = squarefree_part(p);
    ch.seq.push_back(f);
    if (f.degree() == 0) return ch;
    UPolyQ g = f.derivative();
    while (!g.is_zero()) {
      ch.seq.push_back(g);
      UPolyQ r = -divmod(f, g).second;
      if (!r.is_zero()) r = r.scale_divided(upoly_q_content(r));  // positive scale
      f = std::move(g);
      g = std::move(r);
    }
    return ch;
  }

  // Sign variations at a point, zeros dropped.
  int variations_at(const ExactRational& x) const {
    int var = 0, prev = 0;
    for (const auto& q : seq) {
      int s = q.is_zero() ? 0 : q.eval(x).sign();
      if (s == 0) continue;
      if (prev != 0 && s != prev) ++var;
      prev = s;
    }
    return var;
  }

  // Sign variations at -inf (dir < 0) or +inf (dir > 0).
  int variations_at_infinity(int dir) const {
    int var = 0, prev = 0;
    for (const auto& q : seq) {
      if (q.is_zero()) continue;
      int s = q.lc().sign();
      if (dir < 0 && q.degree() % 2 == 1) s = -s;
      if (s == 0) continue;
      if (prev != 0 && s != prev) ++var;
      prev = s;
    }
    return var;
  }
};

// Number of distinct real roots of p in the half-open interval (a, b].
inline int sturm_count(const UPolyQ& p, const ExactRational& a,
                       const ExactRational& b) {
  if (b < a) throw DomainError("sturm_count interval out of order");
  SturmChain ch = SturmChain::build(p);
  return ch.variations_at(a) - ch.variations_at(b);
}

// Number of distinct real roots on the whole line.
inline int sturm_count_all(const UPolyQ& p) {
  SturmChain ch = SturmChain::build(p);
  return ch.variations_at_infinity(-1) - ch.variations_at_infinity(+1);
}

// Distinct real roots in (a, +inf).
inline int sturm_count_above(const UPolyQ& p, const ExactRational& a) {
  SturmChain ch = SturmChain::build(p);
  return ch.variations_at(a) - ch.variations_at_infinity(+1);
}

}  // namespace rma
