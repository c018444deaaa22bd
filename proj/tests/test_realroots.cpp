#include <catch2/catch_amalgamated.hpp>

#include "rma/realroots.hpp"
#include "rma/sturm.hpp"
#include "test_support.hpp"

using namespace rma;
using testsupport::random_upoly;

namespace {

UPolyQ upoly_from(std::initializer_list<ExactRational> asc) {
  return UPolyQ(std::vector<ExactRational>(asc));
}

UPolyQ upoly_long(std::initializer_list<long> asc) {
  std::vector<ExactRational> cs;
  for (long v : asc) cs.emplace_back(v);
  return UPolyQ(std::move(cs));
}

AnnihilatorPoly annihilator_1var(std::vector<MPoly> coeffs_ascending) {
  AnnihilatorPoly R;
  R.image_arity = 1;
  R.poly = UPolyM(std::move(coeffs_ascending));
  R.primitive_flag = true;
  return R;
}

const MPoly Y1 = MPoly::variable(1, 0);
const MPoly One1 = MPoly::constant(1, ExactRational(1));
const MPoly Zero1 = MPoly::zero(1);

}  // namespace

TEST_CASE("squarefree decomposition") {
  // T^2 (T - 1).
  UPolyQ p = upoly_long({0, 0, -1, 1});
  auto fs = squarefree_decompose(p);
  REQUIRE(fs.size() == 2);
  CHECK(fs[0].first == upoly_long({-1, 1}));  // T - 1, multiplicity 1
  CHECK(fs[0].second == 1);
  CHECK(fs[1].first == upoly_long({0, 1}));  // T, multiplicity 2
  CHECK(fs[1].second == 2);

  // Squarefree input comes back whole.
  UPolyQ q = upoly_long({-2, 0, 1});
  fs = squarefree_decompose(q);
  REQUIRE(fs.size() == 1);
  CHECK(fs[0].first == q);
  CHECK(fs[0].second == 1);

  // (197/4)T^6 + 104T^5 + 63T^4 + T^2 = T^2 ((197/4)T^4 + 104T^3 + 63T^2 + 1).
  UPolyQ r = upoly_from({ExactRational(0), ExactRational(0), ExactRational(1),
                         ExactRational(0), ExactRational(63), ExactRational(104),
                         ExactRational(197, 4)});
  fs = squarefree_decompose(r);
  REQUIRE(fs.size() == 2);
  CHECK(fs[0].second == 1);
  CHECK(fs[0].first == upoly_long({4, 0, 252, 416, 197}));  // primitive form
  CHECK(fs[1].second == 2);
  CHECK(fs[1].first == upoly_long({0, 1}));

  CHECK_THROWS_AS(squarefree_decompose(UPolyQ()), DomainError);
}

TEST_CASE("root isolation certifies count, multiplicity and width") {
  // T^3 + T - 1: one real root near 0.6823, one complex pair.
  UPolyQ p = upoly_long({-1, 1, 0, 1});
  RootSummary s = isolate_roots(p);
  REQUIRE(s.roots.size() == 1);
  CHECK(s.complex_pair_count == 1);
  CHECK(s.total_with_multiplicity == 1);
  const IsolatedRoot& r = s.roots[0];
  CHECK(r.multiplicity == 1);
  // The polynomial is increasing, so it changes sign across the interval.
  CHECK(p.eval(r.lo).sign() < 0);
  CHECK(p.eval(r.hi).sign() >= 0);
  CHECK(r.hi - r.lo <= ExactRational(1, 1099511627776L));
  CHECK(r.approx() == Catch::Approx(0.6823278).epsilon(1e-5));

  // (T-1)^2 (T+2): multiplicities 2 and 1, ascending order.
  UPolyQ q = upoly_long({2, -3, 0, 1});
  s = isolate_roots(q);
  REQUIRE(s.roots.size() == 2);
  CHECK(s.roots[0].multiplicity == 1);
  CHECK(s.roots[0].lo < ExactRational(-2));
  CHECK(ExactRational(-2) <= s.roots[0].hi);
  CHECK(s.roots[1].multiplicity == 2);
  CHECK(s.roots[1].lo < ExactRational(1));
  CHECK(ExactRational(1) <= s.roots[1].hi);
  CHECK(s.total_with_multiplicity == 3);
  CHECK(s.complex_pair_count == 0);

  // T^4 + 1: nothing real.
  s = isolate_roots(upoly_long({1, 0, 0, 0, 1}));
  CHECK(s.roots.empty());
  CHECK(s.complex_pair_count == 2);
}

TEST_CASE("isolation agrees with Sturm counting on random polynomials") {
  Sampler smp(23);
  int nontrivial = 0;
  for (int i = 0; i < 1000; ++i) {
    UPolyQ p = random_upoly(smp, 8);
    if (p.is_zero() || p.degree() == 0) continue;
    RootSummary s = isolate_roots(p);
    CHECK(static_cast<int>(s.roots.size()) == sturm_count_all(p));
    CHECK(s.total_with_multiplicity + 2 * s.complex_pair_count == p.degree());
    // Intervals pairwise disjoint and sorted.
    for (std::size_t k = 0; k + 1 < s.roots.size(); ++k)
      CHECK(s.roots[k].hi <= s.roots[k + 1].lo);
    if (!s.roots.empty()) ++nontrivial;
  }
  CHECK(nontrivial > 400);
}

TEST_CASE("roots of a product are the union with summed multiplicities") {
  Sampler smp(29);
  int checked = 0;
  for (int i = 0; i < 400; ++i) {
    UPolyQ p = random_upoly(smp, 4);
    UPolyQ q = random_upoly(smp, 4);
    if (p.is_zero() || q.is_zero() || p.degree() == 0 || q.degree() == 0) continue;
    RootSummary sp = isolate_roots(p);
    RootSummary sq = isolate_roots(q);
    RootSummary spq = isolate_roots(p * q);
    CHECK(spq.total_with_multiplicity ==
          sp.total_with_multiplicity + sq.total_with_multiplicity);
    int shared = sturm_count_all(upoly_gcd(p, q).degree() > 0 ? upoly_gcd(p, q)
                                                              : upoly_long({1}));
    CHECK(static_cast<int>(spq.roots.size()) ==
          static_cast<int>(sp.roots.size() + sq.roots.size()) - shared);
    ++checked;
  }
  CHECK(checked > 200);
}

TEST_CASE("fiber reports carry degree-drop status and root summaries") {
  // Y T^2 + (Y - 1), the annihilator of x over the image of 1/(x^2+1).
  AnnihilatorPoly R = annihilator_1var({Y1 - One1, Zero1, Y1});

  // At y = 0 the leading coefficient vanishes: degree drop, no roots.
  FiberReport rep = fiber_count(R, {ExactRational(0)});
  CHECK(rep.status == FiberStatus::DegreeDrop);
  CHECK(rep.specialized.degree() == 0);
  CHECK(rep.roots.roots.empty());

  // At y = 1/2: T^2 - 1 has two simple roots.
  rep = fiber_count(R, {ExactRational(1, 2)});
  CHECK(rep.status == FiberStatus::FullDegree);
  REQUIRE(rep.roots.roots.size() == 2);
  CHECK(rep.roots.roots[0].multiplicity == 1);
  CHECK(rep.roots.roots[1].multiplicity == 1);

  // At y = 2: 2T^2 + 1 has none.
  rep = fiber_count(R, {ExactRational(2)});
  CHECK(rep.status == FiberStatus::FullDegree);
  CHECK(rep.roots.roots.empty());
  CHECK(rep.roots.complex_pair_count == 1);

  // T^2 - Y at y = 0: the root 0 is repeated.
  AnnihilatorPoly sq = annihilator_1var({-Y1, Zero1, One1});
  auto cls = classify_point_roots(sq, {ExactRational(0)});
  REQUIRE(cls.size() == 1);
  CHECK(cls[0].multiplicity == 2);
  CHECK(cls[0].lo.sign() < 0);
  CHECK(cls[0].hi.sign() >= 0);

  // Zero specialization is a domain error: Y T at y = 0.
  AnnihilatorPoly degenerate = annihilator_1var({Zero1, Y1});
  CHECK_THROWS_AS(fiber_count(degenerate, {ExactRational(0)}), DomainError);
}

TEST_CASE("dense image test over annihilators") {
  // Monic odd degree never misses: T^3 + T - Y.
  AnnihilatorPoly cubic = annihilator_1var({-Y1, One1, Zero1, One1});
  DenseImageReport rep = dense_image_test(cubic);
  CHECK(rep.outcome == DenseOutcome::DenseByOddDegree);

  // T^2 - Y: first hole in scan order is y = -1 (0 is attained).
  AnnihilatorPoly square = annihilator_1var({-Y1, Zero1, One1});
  rep = dense_image_test(square);
  CHECK(rep.outcome == DenseOutcome::CounterexampleFound);
  REQUIRE(rep.counterexample.has_value());
  CHECK((*rep.counterexample)[0] == ExactRational(-1));

  // Y T^2 + (Y - 1): y = 0 is a degree drop (skipped), y = -1 certifies
  // the hole.
  AnnihilatorPoly uni = annihilator_1var({Y1 - One1, Zero1, Y1});
  rep = dense_image_test(uni);
  CHECK(rep.outcome == DenseOutcome::CounterexampleFound);
  REQUIRE(rep.counterexample.has_value());
  CHECK((*rep.counterexample)[0] == ExactRational(-1));
  CHECK(rep.degree_drops_skipped >= 1);
}

TEST_CASE("sturm counting spec values") {
  CHECK(sturm_count_all(upoly_long({-2, 0, 1})) == 2);  // T^2 - 2
  CHECK(sturm_count_all(upoly_long({1, 0, 1})) == 0);   // T^2 + 1

  // (197/4)T^2 + 104T + 63: discriminant 104^2 - 197*63 = 10816 - 12411 < 0,
  // so there are no real roots (and the quadratic is positive everywhere).
  CHECK(ExactRational(104).pow(2) - ExactRational(197) * ExactRational(63) ==
        ExactRational(-1595));
  UPolyQ inner = upoly_from({ExactRational(63), ExactRational(104), ExactRational(197, 4)});
  CHECK(sturm_count_all(inner) == 0);
  CHECK(inner.eval(ExactRational(0)).sign() > 0);
}
