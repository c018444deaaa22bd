#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "rma/annihilator.hpp"
#include "rma/gcd.hpp"
#include "rma/points.hpp"
#include "rma/sturm.hpp"
#include "rma/upoly.hpp"

namespace rma {

// Yun decomposition: pairwise-coprime squarefree factors with their
// multiplicities, product of factor^mult equal to p up to a constant.
inline std::vector<std::pair<UPolyQ, int>> squarefree_decompose(const UPolyQ& p) {
  if (p.is_zero()) throw DomainError("squarefree decomposition of zero");
  std::vector<std::pair<UPolyQ, int>> factors;
  if (p.degree() == 0) return factors;
  UPolyQ dp = p.derivative();
  UPolyQ g = upoly_gcd(p, dp);
  if (g.degree() == 0) {
    factors.emplace_back(upoly_q_primitive(p), 1);
    return factors;
  }
  UPolyQ w = exact_divide(p, g);
  UPolyQ y = exact_divide(dp, g);
  for (int i = 1; w.degree() > 0; ++i) {
    UPolyQ z = y - w.derivative();
    UPolyQ f = upoly_gcd(w, z);
    if (f.degree() > 0) factors.emplace_back(f, i);
    w = exact_divide(w, f);
    y = exact_divide(z, f);
  }
  return factors;
}

// One distinct real root inside (lo, hi], counted `multiplicity` times in
// the original polynomial.  Width is at most 2^-40 unless lo == hi, which
// marks a root found exactly.
struct IsolatedRoot {
  ExactRational lo, hi;
  int multiplicity = 1;

  bool exact() const { return lo == hi; }
  double approx() const { return ((lo + hi) * ExactRational(1, 2)).to_double(); }
};

struct RootSummary {
  std::vector<IsolatedRoot> roots;  // ascending
  int degree = 0;
  int total_with_multiplicity = 0;  // real roots, counted with multiplicity
  int complex_pair_count = 0;
};

namespace detail {

struct FactorRoots {
  SturmChain chain;
  std::vector<std::pair<ExactRational, ExactRational>> intervals;
};

inline ExactRational cauchy_bound(const UPolyQ& f) {
  ExactRational bound(0);
  for (int i = 0; i < f.degree(); ++i) {
    ExactRational r = f[static_cast<std::size_t>(i)] / f.lc();
    if (r.sign() < 0) r = -r;
    if (bound < r) bound = r;
  }
  return bound + ExactRational(1);
}

// Halve (lo, hi] keeping its single root.
inline void refine_once(const SturmChain& ch, ExactRational& lo, ExactRational& hi) {
  ExactRational mid = (lo + hi) * ExactRational(1, 2);
  if (ch.variations_at(lo) - ch.variations_at(mid) >= 1)
    hi = mid;
  else
    lo = mid;
}

}  // namespace detail

// Certified isolation of all real roots with multiplicities: Sturm-guided
// bisection per squarefree factor, intervals refined to width <= 2^-40 and
// made pairwise disjoint across factors.
inline RootSummary isolate_roots(const UPolyQ& p) {
  if (p.is_zero()) throw DomainError("root isolation of zero");
  RootSummary out;
  out.degree = p.degree();
  if (p.degree() == 0) return out;

  const ExactRational width_target(1, 1099511627776L);  // 2^-40
  struct Entry {
    ExactRational lo, hi;
    int mult;
    const SturmChain* chain;
  };
  std::vector<std::pair<UPolyQ, int>> factors = squarefree_decompose(p);
  std::vector<SturmChain> chains;
  chains.reserve(factors.size());
  for (const auto& [f, mult] : factors) chains.push_back(SturmChain::build(f));

  std::vector<Entry> entries;
  for (std::size_t fi = 0; fi < factors.size(); ++fi) {
    const SturmChain& ch = chains[fi];
    ExactRational b = detail::cauchy_bound(factors[fi].first);
    ExactRational a = -b - ExactRational(1);
    std::vector<std::pair<ExactRational, ExactRational>> stack{{a, b}};
    while (!stack.empty()) {
      auto [lo, hi] = stack.back();
      stack.pop_back();
      int count = ch.variations_at(lo) - ch.variations_at(hi);
      if (count == 0) continue;
      if (count == 1) {
        while (width_target < hi - lo) detail::refine_once(ch, lo, hi);
        entries.push_back({lo, hi, factors[fi].second, &ch});
        continue;
      }
      ExactRational mid = (lo + hi) * ExactRational(1, 2);
      stack.push_back({lo, mid});
      stack.push_back({mid, hi});
    }
  }

  // Roots of coprime factors are distinct, but their isolating intervals
  // can still overlap; shrink until they separate.
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.lo < b.lo; });
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < entries.size(); ++i) {
      Entry& a = entries[i];
      Entry& b = entries[i + 1];
      if (a.lo < b.hi && b.lo < a.hi) {
        detail::refine_once(*a.chain, a.lo, a.hi);
        detail::refine_once(*b.chain, b.lo, b.hi);
        changed = true;
      }
    }
    if (changed)
      std::sort(entries.begin(), entries.end(),
                [](const Entry& a, const Entry& b) { return a.lo < b.lo; });
  }

  for (const Entry& e : entries) {
    out.roots.push_back({e.lo, e.hi, e.mult});
    out.total_with_multiplicity += e.mult;
  }
  int residue = out.degree - out.total_with_multiplicity;
  if (residue < 0 || residue % 2 != 0)
    throw InternalError("root multiplicities inconsistent with degree");
  out.complex_pair_count = residue / 2;
  return out;
}

// --- fibers of a map through its annihilator -------------------------------

enum class FiberStatus { FullDegree, DegreeDrop };

struct FiberReport {
  Point point;
  FiberStatus status = FiberStatus::FullDegree;
  UPolyQ specialized;
  RootSummary roots;
};

// Specialize R at a point of Y-space and isolate the real roots in T.
inline FiberReport fiber_count(const AnnihilatorPoly& R, const Point& y) {
  if (y.size() != R.image_arity)
    throw StructuralError("fiber point arity does not match the annihilator");
  FiberReport rep;
  rep.point = y;
  std::vector<ExactRational> cs;
  for (int i = 0; i <= R.poly.degree(); ++i)
    cs.push_back(R.poly[static_cast<std::size_t>(i)].eval(y));
  UPolyQ spec(std::move(cs));
  if (spec.is_zero())
    throw DomainError("annihilator specializes to zero at this point");
  rep.status = spec.degree() == R.poly.degree() ? FiberStatus::FullDegree
                                                : FiberStatus::DegreeDrop;
  rep.specialized = spec;
  rep.roots = isolate_roots(spec);
  return rep;
}

// Per-root multiplicity classification at a point (Simple = multiplicity 1).
inline std::vector<IsolatedRoot> classify_point_roots(const AnnihilatorPoly& R,
                                                      const Point& y) {
  return fiber_count(R, y).roots.roots;
}

// --- dense-image test -------------------------------------------------------

enum class DenseOutcome { DenseByOddDegree, NoCounterexampleFound, CounterexampleFound };

inline const char* to_string(DenseOutcome o) {
  switch (o) {
    case DenseOutcome::DenseByOddDegree: return "dense-by-odd-degree";
    case DenseOutcome::NoCounterexampleFound: return "no-counterexample-found";
    default: return "counterexample-found";
  }
}

struct DenseSampleSpec {
  long radius = 8;
  std::size_t random_count = 256;
  std::uint64_t seed = kDefaultSeed;
};

struct DenseImageReport {
  DenseOutcome outcome = DenseOutcome::NoCounterexampleFound;
  std::optional<Point> counterexample;
  std::size_t samples_checked = 0;
  std::size_t degree_drops_skipped = 0;
};

// A point of Y-space where the specialized annihilator has no real root is
// a certified hole in the image.  Odd T-degree with constant leading
// coefficient can never produce one, so that case short-circuits; degree
// drops are reported as skipped, never reinterpreted.
inline DenseImageReport dense_image_test(const AnnihilatorPoly& R,
                                         const DenseSampleSpec& spec = {}) {
  DenseImageReport rep;
  if (R.poly.degree() % 2 == 1 && R.poly.lc().is_constant()) {
    rep.outcome = DenseOutcome::DenseByOddDegree;
    return rep;
  }
  Sampler sampler(spec.seed);
  std::vector<Point> pts = lattice_points(R.image_arity, spec.radius);
  for (std::size_t i = 0; i < spec.random_count; ++i)
    pts.push_back(sampler.next_point(R.image_arity, 64, 64));
  for (const Point& y : pts) {
    std::vector<ExactRational> cs;
    for (int i = 0; i <= R.poly.degree(); ++i)
      cs.push_back(R.poly[static_cast<std::size_t>(i)].eval(y));
    UPolyQ s(std::move(cs));
    if (s.is_zero() || s.degree() != R.poly.degree()) {
      ++rep.degree_drops_skipped;
      continue;
    }
    ++rep.samples_checked;
    if (sturm_count_all(s) == 0) {
      rep.outcome = DenseOutcome::CounterexampleFound;
      rep.counterexample = y;
      return rep;
    }
  }
  rep.outcome = DenseOutcome::NoCounterexampleFound;
  return rep;
}

}  // namespace rma
