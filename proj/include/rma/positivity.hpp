#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rma/gcd.hpp"
#include "rma/mpoly.hpp"
#include "rma/points.hpp"
#include "rma/resultant.hpp"
#include "rma/sturm.hpp"
#include "rma/upoly.hpp"

namespace rma {

enum class Verdict { Yes, No, Unknown };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    default: return "unknown";
  }
}

// Claim: p = constant + sum weights[i] * squares[i]^2, with every weight
// positive and the constant nonnegative.  Checked by exact expansion; a
// certificate that fails the expansion check is simply ignored upstream.
struct SosCertificate {
  ExactRational constant{0};
  std::vector<ExactRational> weights;
  std::vector<MPoly> squares;
};

struct PositivityReport {
  Verdict verdict = Verdict::Unknown;
  std::string method;                  // which recognizer fired
  std::string detail;
  std::optional<Point> witness;        // a rational zero, when verdict is No
};

inline std::string point_str(const Point& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ", ";
    s += p[i].str();
  }
  return s + ")";
}

inline bool sos_certificate_matches(const MPoly& p, const SosCertificate& cert) {
  if (cert.weights.size() != cert.squares.size()) return false;
  if (cert.constant.sign() < 0) return false;
  MPoly acc = MPoly::constant(p.arity(), cert.constant);
  for (std::size_t i = 0; i < cert.squares.size(); ++i) {
    if (cert.weights[i].sign() <= 0) return false;
    if (cert.squares[i].arity() != p.arity()) return false;
    acc += cert.squares[i] * cert.squares[i] * cert.weights[i];
  }
  return acc == p;
}

// --- rational roots -------------------------------------------------------

namespace detail {

// Positive divisors of |n|, or empty when n does not fit a machine word
// (divisor enumeration of a huge integer is not worth it — the caller then
// just fails to find rational roots and stays conservative).
inline std::vector<long> positive_divisors(const mpz_class& n) {
  mpz_class a = abs(n);
  if (!a.fits_slong_p()) return {};
  long v = a.get_si();
  std::vector<long> divs;
  for (long d = 1; d <= v / d; ++d) {
    if (v % d == 0) {
      divs.push_back(d);
      if (d != v / d) divs.push_back(v / d);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

}  // namespace detail

// Distinct rational roots of p, sorted ascending.  May be incomplete when
// the integer-primitive coefficients are too large to enumerate divisors;
// callers must compare against a Sturm count before trusting completeness.
inline std::vector<ExactRational> rational_roots(const UPolyQ& p) {
  if (p.is_zero()) throw DomainError("rational_roots of the zero polynomial");
  std::vector<ExactRational> roots;
  UPolyQ q = upoly_q_primitive(squarefree_part(p));
  if (q.degree() == 0) return roots;
  // Split off the root at zero.
  if (q[0].is_zero()) {
    roots.emplace_back(0);
    std::vector<ExactRational> cs;
    for (int i = 1; i <= q.degree(); ++i) cs.push_back(q[static_cast<std::size_t>(i)]);
    q = UPolyQ(std::move(cs));
    if (q.degree() == 0) return roots;
  }
  for (long dn : detail::positive_divisors(q[0].num()))
    for (long dd : detail::positive_divisors(q.lc().num()))
      for (int s : {1, -1}) {
        ExactRational cand(s * dn, dd);
        if (q.eval(cand).is_zero() &&
            std::find(roots.begin(), roots.end(), cand) == roots.end())
          roots.push_back(cand);
      }
  std::sort(roots.begin(), roots.end());
  return roots;
}

// A small interval (a, b] certified by Sturm counting to contain a real
// root of p.  Used only to describe irrational zeros in report details.
inline std::pair<ExactRational, ExactRational> isolate_one_root(const UPolyQ& p) {
  SturmChain ch = SturmChain::build(p);
  const UPolyQ& f = ch.seq.front();
  // Cauchy bound: all roots lie in [-B, B].
  ExactRational bound(1);
  for (int i = 0; i < f.degree(); ++i) {
    ExactRational r = f[static_cast<std::size_t>(i)] / f.lc();
    if (r.sign() < 0) r = -r;
    if (bound < r) bound = r;
  }
  bound = bound + ExactRational(1);
  ExactRational a = -bound, b = bound;
  if (ch.variations_at(a) - ch.variations_at(b) < 1)
    throw InternalError("isolate_one_root called without a real root");
  const ExactRational half(1, 2);
  ExactRational width = b - a;
  const ExactRational target = ExactRational(1, 1 << 20);
  while (target < width) {
    ExactRational m = (a + b) * half;
    if (ch.variations_at(a) - ch.variations_at(m) >= 1)
      b = m;
    else
      a = m;
    width = b - a;
  }
  return {a, b};
}

// --- common real zeros of a polynomial system ------------------------------

struct ZeroSetResult {
  Verdict verdict;                 // Yes = certified empty
  std::optional<Point> witness;    // common rational zero, when nonempty
  std::string detail;
};

namespace detail {

// View p as univariate in `var`; requires every other variable absent.
inline UPolyQ collapse_univariate(const MPoly& p, std::size_t var) {
  std::vector<ExactRational> cs(static_cast<std::size_t>(std::max(0, p.degree_in(var))) + 1,
                                ExactRational(0));
  for (const auto& [m, c] : p.terms()) {
    for (std::size_t i = 0; i < p.arity(); ++i)
      if (i != var && m.exps[i] != 0)
        throw InternalError("collapse_univariate on a multivariate polynomial");
    cs[m.exps[var]] = c;
  }
  return UPolyQ(std::move(cs));
}

// The variable p actually depends on, when there is at most one.
inline std::optional<std::size_t> single_variable(const MPoly& p) {
  std::optional<std::size_t> var;
  for (std::size_t i = 0; i < p.arity(); ++i)
    if (p.degree_in(i) > 0) {
      if (var) return std::nullopt;
      var = i;
    }
  return var ? var : std::optional<std::size_t>(0);
}

// Do the univariate systems share a real root?  Yes/No is exact; Unknown
// means a shared root exists over C with irrational real candidates we
// cannot pin down.
struct LineCheck {
  Verdict has_common_real_root;
  std::optional<ExactRational> rational_root;
  std::string detail;
};

inline LineCheck common_real_root(const std::vector<UPolyQ>& polys) {
  UPolyQ g;
  for (const auto& q : polys) {
    if (q.is_zero()) continue;
    if (q.degree() == 0) return {Verdict::No, std::nullopt, "a nonzero constant"};
    g = g.is_zero() ? q : upoly_gcd(g, q);
    if (g.degree() == 0) return {Verdict::No, std::nullopt, "coprime constraints"};
  }
  if (g.is_zero())
    // Every constraint vanished identically: the whole line is common zero.
    return {Verdict::Yes, ExactRational(0), "all constraints vanish identically"};
  int real = sturm_count_all(g);
  if (real == 0) return {Verdict::No, std::nullopt, "no real root of the common factor"};
  std::vector<ExactRational> rr = rational_roots(g);
  if (!rr.empty()) return {Verdict::Yes, rr.front(), "common rational root"};
  return {Verdict::Unknown, std::nullopt, "common real root is irrational"};
}

}  // namespace detail

// Is the common real zero set of the system empty?  Exact for arity <= 2
// (resultant projection plus line-by-line Sturm analysis); larger arities
// report Unknown unless a syntactic reason applies.
inline ZeroSetResult real_zero_set_empty(const std::vector<MPoly>& polys_in) {
  if (polys_in.empty()) throw DomainError("real_zero_set_empty needs at least one polynomial");
  const std::size_t arity = polys_in.front().arity();
  std::vector<MPoly> polys;
  for (const auto& p : polys_in) {
    if (p.arity() != arity) throw StructuralError("real_zero_set_empty arity mismatch");
    if (p.is_zero()) continue;  // vacuous constraint
    if (p.is_constant()) return {Verdict::Yes, std::nullopt, "a constraint is a nonzero constant"};
    polys.push_back(p);
  }
  if (polys.empty())
    return {Verdict::No, Point(arity, ExactRational(0)), "every constraint is identically zero"};

  if (arity == 1) {
    std::vector<UPolyQ> us;
    us.reserve(polys.size());
    for (const auto& p : polys) us.push_back(detail::collapse_univariate(p, 0));
    auto lc = detail::common_real_root(us);
    if (lc.has_common_real_root == Verdict::No) return {Verdict::Yes, std::nullopt, lc.detail};
    if (lc.has_common_real_root == Verdict::Yes && lc.rational_root)
      return {Verdict::No, Point{*lc.rational_root}, lc.detail};
    return {Verdict::Unknown, std::nullopt, lc.detail};
  }

  if (arity != 2)
    return {Verdict::Unknown, std::nullopt,
            "no emptiness procedure beyond two variables"};

  // Project out one variable: collect candidate values for the kept
  // variable from a pure-univariate constraint or a pairwise resultant,
  // then settle each candidate line exactly.
  for (std::size_t keep : {std::size_t{1}, std::size_t{0}}) {
    const std::size_t elim = 1 - keep;
    MPoly candidates = MPoly::zero(2);
    for (const auto& p : polys)
      if (p.degree_in(elim) == 0) {
        candidates = p;
        break;
      }
    if (candidates.is_zero()) {
      for (std::size_t i = 0; i < polys.size() && candidates.is_zero(); ++i)
        for (std::size_t j = i + 1; j < polys.size() && candidates.is_zero(); ++j) {
          if (polys[i].degree_in(elim) == 0 || polys[j].degree_in(elim) == 0) continue;
          MPoly r = resultant_in(polys[i], polys[j], elim);
          if (!r.is_zero()) candidates = r;
        }
    }
    if (candidates.is_zero()) continue;  // all pairs share factors; try other direction

    UPolyQ cand_u = detail::collapse_univariate(candidates, keep);
    if (cand_u.degree() == 0)
      return {Verdict::Yes, std::nullopt, "candidate projection is a nonzero constant"};
    int real = sturm_count_all(cand_u);
    if (real == 0)
      return {Verdict::Yes, std::nullopt,
              "projection eliminating variable " + std::to_string(elim) +
                  " has no real root"};
    std::vector<ExactRational> rr = rational_roots(cand_u);
    if (static_cast<int>(rr.size()) != real) continue;  // irrational candidates; try other direction

    bool all_clear = true;
    for (const ExactRational& v : rr) {
      std::vector<MPoly> sub(2);
      sub[keep] = MPoly::constant(1, v);
      sub[elim] = MPoly::variable(1, 0);
      std::vector<UPolyQ> us;
      bool constant_nonzero = false;
      for (const auto& p : polys) {
        MPoly s = p.substitute_poly(sub);
        if (s.is_constant() && !s.is_zero()) {
          constant_nonzero = true;
          break;
        }
        us.push_back(s.is_zero() ? UPolyQ() : detail::collapse_univariate(s, 0));
      }
      if (constant_nonzero) continue;  // this line is clear
      auto lc = detail::common_real_root(us);
      if (lc.has_common_real_root == Verdict::No) continue;
      if (lc.has_common_real_root == Verdict::Yes && lc.rational_root) {
        Point w(2, ExactRational(0));
        w[keep] = v;
        w[elim] = *lc.rational_root;
        return {Verdict::No, w, "common zero on the line variable_" +
                                    std::to_string(keep) + " = " + v.str()};
      }
      all_clear = false;  // real common zero exists or is undecidable here
      if (lc.has_common_real_root == Verdict::Yes)
        return {Verdict::No, std::nullopt,
                "a common real zero exists on the line variable_" +
                    std::to_string(keep) + " = " + v.str() + " (irrational)"};
    }
    if (all_clear)
      return {Verdict::Yes, std::nullopt,
              "every candidate line eliminating variable " +
                  std::to_string(elim) + " is clear"};
  }
  return {Verdict::Unknown, std::nullopt,
          "projections left irrational candidates undecided"};
}

// --- the positivity / nowhere-vanishing recognizer -------------------------

// Decides whether p has no real zero, via the pattern toolkit: nonzero
// constants; sums of even-exponent terms with uniform coefficient sign and
// a nonzero constant term (tried on p and -p); single-variable Sturm
// counting; supplied sum-of-squares certificates (with exact zero-set
// analysis when the certificate constant is zero).  Anything else falls
// through to deterministic falsification sampling, which can only ever
// upgrade the verdict to No.
inline PositivityReport is_nowhere_zero(const MPoly& p,
                                        const std::vector<SosCertificate>& certs = {}) {
  PositivityReport rep;
  const std::size_t arity = p.arity();
  if (p.is_zero()) {
    rep.verdict = Verdict::No;
    rep.method = "constant";
    rep.witness = Point(arity, ExactRational(0));
    rep.detail = "identically zero";
    return rep;
  }
  if (p.is_constant()) {
    rep.verdict = Verdict::Yes;
    rep.method = "constant";
    rep.detail = "nonzero constant " + p.constant_value().str();
    return rep;
  }

  // Sum of even powers with a matching-sign constant term: |p| >= |constant| > 0.
  for (int sign : {+1, -1}) {
    bool even_pattern = true;
    bool has_constant = false;
    for (const auto& [m, c] : p.terms()) {
      if (c.sign() != sign) {
        even_pattern = false;
        break;
      }
      if (m.is_constant()) has_constant = true;
      for (std::size_t i = 0; i < arity && even_pattern; ++i)
        if (m.exps[i] % 2 != 0) even_pattern = false;
      if (!even_pattern) break;
    }
    if (even_pattern && has_constant) {
      rep.verdict = Verdict::Yes;
      rep.method = "even-powers";
      rep.detail = std::string(sign > 0 ? "positive" : "negative") +
                   " combination of even powers with nonzero constant term";
      return rep;
    }
  }

  // Effectively univariate: Sturm count settles it outright.
  if (auto var = detail::single_variable(p)) {
    UPolyQ u = detail::collapse_univariate(p, *var);
    int real = sturm_count_all(u);
    if (real == 0) {
      rep.verdict = Verdict::Yes;
      rep.method = "univariate-sturm";
      rep.detail = "no real roots in variable " + std::to_string(*var);
      return rep;
    }
    rep.verdict = Verdict::No;
    rep.method = "univariate-sturm";
    std::vector<ExactRational> rr = rational_roots(u);
    if (!rr.empty()) {
      // Smallest-magnitude rational root, ties toward the nonnegative one.
      ExactRational best = rr.front();
      for (const auto& r : rr) {
        ExactRational ra = r.sign() < 0 ? -r : r;
        ExactRational ba = best.sign() < 0 ? -best : best;
        if (ra < ba || (ra == ba && best < r)) best = r;
      }
      Point w(arity, ExactRational(0));
      w[*var] = best;
      rep.witness = w;
      rep.detail = "vanishes at " + point_str(w);
    } else {
      auto [a, b] = isolate_one_root(u);
      rep.detail = "vanishes at an irrational point of variable " +
                   std::to_string(*var) + " in (" + a.str() + ", " + b.str() + "]";
    }
    return rep;
  }

  // Supplied sum-of-squares certificates.
  std::string cert_note;
  for (const auto& cert : certs) {
    if (!sos_certificate_matches(p, cert)) continue;
    if (cert.constant.sign() > 0) {
      rep.verdict = Verdict::Yes;
      rep.method = "sos-certificate";
      rep.detail = "sum of squares plus positive constant " + cert.constant.str();
      return rep;
    }
    ZeroSetResult z = real_zero_set_empty(cert.squares);
    if (z.verdict == Verdict::Yes) {
      rep.verdict = Verdict::Yes;
      rep.method = "sos-certificate";
      rep.detail = "sum of squares whose common real zero set is empty: " + z.detail;
      return rep;
    }
    if (z.verdict == Verdict::No) {
      rep.verdict = Verdict::No;
      rep.method = "sos-certificate";
      rep.witness = z.witness;
      rep.detail = "all certificate squares vanish together: " + z.detail;
      return rep;
    }
    cert_note = "; a certificate matched but its zero set was undecided (" + z.detail + ")";
  }

  // Deterministic falsification: small integer lattice in scan order, then
  // seeded rational points.  Only a genuine zero flips the verdict.
  Sampler sampler(kDefaultSeed);
  for (const Point& pt : falsification_points(arity, 8, 4096, sampler)) {
    if (p.eval(pt).is_zero()) {
      rep.verdict = Verdict::No;
      rep.method = "falsification";
      rep.witness = pt;
      rep.detail = "vanishes at sampled point " + point_str(pt);
      return rep;
    }
  }
  rep.verdict = Verdict::Unknown;
  rep.method = "none";
  rep.detail = "no pattern matched and falsification found no zero" + cert_note;
  return rep;
}

}  // namespace rma
