#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <vector>

#include "rma/pinchuk.hpp"
#include "rma/realroots.hpp"
#include "rma/reductions.hpp"
#include "test_support.hpp"

using namespace rma;
using testsupport::random_mpoly;

namespace {

ExactRational q(long n, long d = 1) { return ExactRational(n, d); }

// F = (x + (x+y)^3, y - (x+y)^3): polynomial automorphism with constant
// Jacobian determinant 1, already in normalized cubic shape.
PolyMap cubic_demo() {
  MPoly x = MPoly::variable(2, 0), y = MPoly::variable(2, 1);
  MPoly s3 = (x + y).pow(3);
  return PolyMap(2, {x + s3, y - s3});
}

std::vector<std::vector<ExactRational>> jac_at(const PolyMap& F, const Point& p) {
  std::vector<std::vector<ExactRational>> J(
      F.arity, std::vector<ExactRational>(F.arity, ExactRational(0)));
  for (std::size_t i = 0; i < F.arity; ++i)
    for (std::size_t j = 0; j < F.arity; ++j)
      J[i][j] = F.components[i].partial_derivative(j).eval(p);
  return J;
}

bool is_identity_matrix(const std::vector<std::vector<ExactRational>>& J) {
  for (std::size_t i = 0; i < J.size(); ++i)
    for (std::size_t j = 0; j < J.size(); ++j)
      if (!(J[i][j] == ExactRational(i == j ? 1 : 0))) return false;
  return true;
}

// Dense homogeneous two-variable polynomial of degree d with small random
// coefficients.
MPoly random_homog2(Sampler& s, std::uint32_t d) {
  MPoly p = MPoly::zero(2);
  for (std::uint32_t i = 0; i <= d; ++i)
    p = p + MPoly::term(2, {i, d - i}, s.next_rational(5, 3));
  return p;
}

}  // namespace

TEST_CASE("polynomial map plumbing", "[reductions]") {
  MPoly x = MPoly::variable(2, 0), y = MPoly::variable(2, 1);
  PolyMap F(2, {x + y * y, y});
  CHECK(F.is_square());
  CHECK(F.max_degree() == 2);
  CHECK(F.eval({q(1), q(3)}) == Point{q(10), q(3)});
  CHECK(PolyMap::identity(3).components[2] == MPoly::variable(3, 2));

  RMap r = F.as_rmap();
  CHECK(PolyMap::from_rmap(r) == F);
  // A genuine denominator has no polynomial reduction.
  RMap bad(1, {RatFunc::make(MPoly::constant(1, q(1)),
                             MPoly::variable(1, 0).pow(2) + MPoly::constant(1, q(1)))});
  CHECK_THROWS_AS(PolyMap::from_rmap(bad), DomainError);
  CHECK_THROWS_AS(PolyMap(2, {MPoly::variable(3, 0)}), StructuralError);
}

TEST_CASE("degree lowering splits a quartic power into an exact cubic system",
          "[reductions]") {
  MPoly x1 = MPoly::variable(1, 0);
  PolyMap F(1, {x1.pow(4)});
  auto [G, tr] = lower_degree(F);

  REQUIRE(G.arity == 3);
  CHECK(G.max_degree() == 3);
  MPoly X = MPoly::variable(3, 0), Y = MPoly::variable(3, 1), Z = MPoly::variable(3, 2);
  // x^4 - (y + x^2)(z + x^2) with both halves of the split equal to x^2.
  CHECK(G.components[0] == MPoly::zero(3) - Y * Z - X * X * Y - X * X * Z);
  CHECK(G.components[1] == Y + X * X);
  CHECK(G.components[2] == Z + X * X);

  REQUIRE(tr.steps.size() == 1);
  CHECK(tr.steps[0].kind == "split-term");
  CHECK(tr.steps[0].introduced == std::vector<std::size_t>{1, 2});

  // Along the section the first component is the original quartic again.
  std::vector<MPoly> along = compose_components(G.components, tr.steps[0].section);
  CHECK(along[0] == x1.pow(4));
  CHECK(verify_trace(F, G, tr));

  Point up = tr.section_point({q(3)});
  CHECK(up == Point{q(3), q(-9), q(-9)});
  CHECK(G.eval(up) == tr.embed_target(F.eval({q(3)})));
  CHECK(tr.project_target(G.eval(up)) == F.eval({q(3)}));
}

TEST_CASE("degree lowering is the identity on already-cubic maps", "[reductions]") {
  MPoly x1 = MPoly::variable(1, 0);
  PolyMap F(1, {x1 + x1.pow(3)});
  auto [G, tr] = lower_degree(F);
  CHECK(G == F);
  CHECK(tr.steps.empty());

  auto [Gd, trd] = lower_degree(cubic_demo());
  CHECK(Gd == cubic_demo());
  CHECK(trd.steps.empty());
}

TEST_CASE("degree lowering of a sextic replays at a hundred points", "[reductions]") {
  MPoly x1 = MPoly::variable(1, 0);
  PolyMap F(1, {x1.pow(6)});
  auto [G, tr] = lower_degree(F);
  CHECK(G.arity == 7);
  CHECK(G.max_degree() <= 3);
  CHECK(tr.steps.size() == 3);
  CHECK(verify_trace(F, G, tr));

  Sampler s(411u);
  for (int k = 0; k < 100; ++k) {
    Point x = s.next_point(1);
    CHECK(tr.project_target(G.eval(tr.section_point(x))) == F.eval(x));
  }
}

TEST_CASE("degree lowering replays on random two-variable maps", "[reductions]") {
  Sampler s(2026u);
  for (int k = 0; k < 10; ++k) {
    PolyMap F(2, {random_mpoly(s, 2, 5, 4), random_mpoly(s, 2, 5, 4)});
    auto [G, tr] = lower_degree(F, kReductionDimensionCap);
    CHECK(G.max_degree() <= 3);
    CHECK(verify_trace(F, G, tr));
    for (int j = 0; j < 10; ++j) {
      Point x = s.next_point(2);
      CHECK(tr.project_target(G.eval(tr.section_point(x))) == F.eval(x));
    }
  }
}

TEST_CASE("degree lowering respects its dimension budget", "[reductions]") {
  MPoly x1 = MPoly::variable(1, 0);
  PolyMap F(1, {x1.pow(4)});
  CHECK_THROWS_AS(lower_degree(F, 2), ResourceError);
  CHECK(lower_degree(F, 3).first.arity == 3);
}

TEST_CASE("origin normalization: exact examples and the singular refusal",
          "[reductions]") {
  MPoly x1 = MPoly::variable(1, 0);
  PolyMap cube(1, {x1 + x1.pow(3)});

  SECTION("already normalized stays put") {
    CHECK(normalize(cube, {q(0)}) == cube);
    CHECK(normalize(cubic_demo(), {q(0), q(0)}) == cubic_demo());
  }
  SECTION("left multiplication divides out the derivative") {
    PolyMap F(1, {x1 * q(2) + x1.pow(3)});
    PolyMap G = normalize(F, {q(0)});
    CHECK(G.components[0] == x1 + x1.pow(3) * q(1, 2));
  }
  SECTION("constant terms get translated away") {
    PolyMap F(1, {x1 + MPoly::constant(1, q(1)) + x1.pow(3)});
    PolyMap G = normalize(F, {q(0)});
    CHECK(G.components[0] == x1 + x1.pow(3));
  }
  SECTION("a nonzero base point shifts and rescales") {
    // F = x + x^3 at x0 = 1: F(X+1) - F(1) = x^3 + 3x^2 + 4x, then divide by
    // F'(1) = 4.
    PolyMap G = normalize(cube, {q(1)});
    CHECK(G.components[0] ==
          x1.pow(3) * q(1, 4) + x1.pow(2) * q(3, 4) + x1);
    CHECK(G.eval({q(0)}) == Point{q(0)});
    CHECK(is_identity_matrix(jac_at(G, {q(0)})));
  }
  SECTION("a shear mixes components through the inverse jacobian") {
    MPoly x = MPoly::variable(2, 0), y = MPoly::variable(2, 1);
    PolyMap F(2, {x + y, y + x * x});
    PolyMap G = normalize(F, {q(0), q(0)});
    CHECK(G.components[0] == x - x * x);
    CHECK(G.components[1] == y + x * x);
  }
  SECTION("refusals") {
    PolyMap sq(1, {x1.pow(2)});
    CHECK_THROWS_WITH(normalize(sq, {q(0)}),
                      Catch::Matchers::ContainsSubstring("singular at the base point"));
    PolyMap quartic(1, {x1.pow(4)});
    CHECK_THROWS_AS(normalize(quartic, {q(0)}), DomainError);
    CHECK_THROWS_AS(normalize(cube, {q(0), q(0)}), StructuralError);
  }
}

TEST_CASE("origin normalization pins value and derivative at random base points",
          "[reductions]") {
  PolyMap F = cubic_demo();
  Sampler s(77u);
  const Point origin{q(0), q(0)};
  for (int k = 0; k < 50; ++k) {
    Point x0 = s.next_point(2);
    PolyMap G = normalize(F, x0);
    CHECK(G.eval(origin) == origin);
    CHECK(is_identity_matrix(jac_at(G, origin)));
  }
}

TEST_CASE("cubic replication: exact examples and the determinant identity",
          "[reductions]") {
  MPoly x1 = MPoly::variable(1, 0);

  SECTION("identity map just gains the scale variable") {
    PolyMap G = replicate(PolyMap::identity(2));
    CHECK(G.arity == 3);
    CHECK(G.components[0] == MPoly::variable(3, 0));
    CHECK(G.components[1] == MPoly::variable(3, 1));
    CHECK(G.components[2] == MPoly::variable(3, 2));
  }
  SECTION("cubic part picks up t^2") {
    PolyMap G = replicate(PolyMap(1, {x1 + x1.pow(3)}));
    MPoly X = MPoly::variable(2, 0), T = MPoly::variable(2, 1);
    REQUIRE(G.arity == 2);
    CHECK(G.components[0] == X + T * T * X.pow(3));
    CHECK(G.components[1] == T);
    // det J(G)(x, t) = 1 + 3 t^2 x^2 = det J(F)(t x).
    RatFunc jG = jacobian(G.as_rmap()).det;
    CHECK(jG.num() == MPoly::constant(2, q(1)) + X.pow(2) * T.pow(2) * q(3));
    RatFunc jF = jacobian(PolyMap(1, {x1 + x1.pow(3)}).as_rmap()).det;
    CHECK(jG.num() == jF.num().substitute_poly({X * T}));
  }
  SECTION("quadratic part picks up plain t") {
    PolyMap G = replicate(PolyMap(1, {x1 + x1.pow(2)}));
    MPoly X = MPoly::variable(2, 0), T = MPoly::variable(2, 1);
    CHECK(G.components[0] == X + T * X.pow(2));
    RatFunc jG = jacobian(G.as_rmap()).det;
    RatFunc jF = jacobian(PolyMap(1, {x1 + x1.pow(2)}).as_rmap()).det;
    CHECK(jG.num() == jF.num().substitute_poly({X * T}));
  }
  SECTION("keller demo keeps determinant one") {
    PolyMap G = replicate(cubic_demo());
    CHECK(jacobian(G.as_rmap()).det == RatFunc::constant(3, q(1)));
  }
  SECTION("the determinant identity holds for random normalized maps") {
    Sampler s(909u);
    std::vector<MPoly> tx = {MPoly::variable(3, 0) * MPoly::variable(3, 2),
                             MPoly::variable(3, 1) * MPoly::variable(3, 2)};
    for (int k = 0; k < 5; ++k) {
      PolyMap F(2, {MPoly::variable(2, 0) + random_homog2(s, 2) + random_homog2(s, 3),
                    MPoly::variable(2, 1) + random_homog2(s, 2) + random_homog2(s, 3)});
      PolyMap G = replicate(F);
      RatFunc jF = jacobian(F.as_rmap()).det;
      RatFunc jG = jacobian(G.as_rmap()).det;
      CHECK(jG.num() == jF.num().substitute_poly(tx));
    }
  }
  SECTION("hyperplanes of constant t map to themselves") {
    PolyMap G = replicate(cubic_demo());
    Sampler s(5u);
    for (int k = 0; k < 10; ++k) {
      Point p = s.next_point(3);
      CHECK(G.eval(p)[2] == p[2]);
    }
  }
  SECTION("shape refusals") {
    CHECK_THROWS_AS(replicate(PolyMap(1, {x1 + MPoly::constant(1, q(1))})), DomainError);
    CHECK_THROWS_AS(replicate(PolyMap(1, {x1 * q(2)})), DomainError);
    CHECK_THROWS_AS(
        replicate(PolyMap(2, {MPoly::variable(2, 1), MPoly::variable(2, 0)})),
        DomainError);
    CHECK_THROWS_AS(replicate(PolyMap(1, {x1 + x1.pow(4)})), DomainError);
  }
}

TEST_CASE("cubic homogenization: exact examples and term-by-term homogeneity",
          "[reductions]") {
  // Variables (x, t) in; (x, y, t) out.
  MPoly X2v = MPoly::variable(2, 0), T2 = MPoly::variable(2, 1);

  SECTION("the cubic-only map") {
    YagzhevForm yf = yagzhev_finalize(PolyMap(2, {X2v + T2 * T2 * X2v.pow(3), T2}));
    REQUIRE(yf.base.arity == 3);
    MPoly X = MPoly::variable(3, 0), Y = MPoly::variable(3, 1), T = MPoly::variable(3, 2);
    CHECK(yf.base.components[0] == X - T * T * Y);
    CHECK(yf.base.components[1] == Y + X.pow(3));
    CHECK(yf.base.components[2] == T);
    for (const MPoly& h : yf.cubic_part())
      for (const auto& [m, c] : h.terms()) CHECK(m.degree() == 3);
  }
  SECTION("the replicated identity") {
    YagzhevForm yf = yagzhev_finalize(PolyMap(2, {X2v, T2}));
    MPoly X = MPoly::variable(3, 0), Y = MPoly::variable(3, 1), T = MPoly::variable(3, 2);
    CHECK(yf.base.components[0] == X - T * T * Y);
    CHECK(yf.base.components[1] == Y);
    CHECK(yf.base.components[2] == T);
  }
  SECTION("a two-variable input lands in five variables") {
    YagzhevForm yf = yagzhev_finalize(replicate(cubic_demo()));
    REQUIRE(yf.base.arity == 5);
    MPoly x = MPoly::variable(5, 0), y = MPoly::variable(5, 1);
    MPoly y1 = MPoly::variable(5, 2), y2 = MPoly::variable(5, 3);
    MPoly t = MPoly::variable(5, 4);
    MPoly s3 = (x + y).pow(3);
    CHECK(yf.base.components[0] == x - t * t * y1);
    CHECK(yf.base.components[1] == y - t * t * y2);
    CHECK(yf.base.components[2] == y1 + s3);
    CHECK(yf.base.components[3] == y2 - s3);
    CHECK(yf.base.components[4] == t);
    for (const MPoly& h : yf.cubic_part())
      for (const auto& [m, c] : h.terms()) CHECK(m.degree() == 3);
  }
  SECTION("shape refusals") {
    // Last component must be the scale variable itself.
    CHECK_THROWS_AS(yagzhev_finalize(PolyMap(2, {X2v, T2 + X2v})), DomainError);
    // t-degree three has no slot.
    CHECK_THROWS_AS(
        yagzhev_finalize(PolyMap(2, {X2v + T2.pow(3) * X2v.pow(3), T2})),
        DomainError);
    // t Q needs Q quadratic, not cubic.
    CHECK_THROWS_AS(yagzhev_finalize(PolyMap(2, {X2v + T2 * X2v.pow(3), T2})),
                    DomainError);
    CHECK_THROWS_AS(yagzhev_finalize(PolyMap(1, {MPoly::variable(1, 0)})),
                    StructuralError);
  }
  SECTION("identity plus cubic validation stands alone") {
    MPoly X = MPoly::variable(2, 0), Y = MPoly::variable(2, 1);
    CHECK_NOTHROW(YagzhevForm::make(PolyMap(2, {X + Y.pow(3), Y})));
    CHECK_THROWS_AS(YagzhevForm::make(PolyMap(2, {X + Y * Y, Y})), StructuralError);
    CHECK_THROWS_AS(YagzhevForm::make(PolyMap(2, {X * q(2), Y})), StructuralError);
  }
}

TEST_CASE("full pipeline reaches cubic homogeneous form with a replayable trace",
          "[reductions]") {
  MPoly x1 = MPoly::variable(1, 0);

  SECTION("x + x^3 lands in dimension three") {
    PolyMap F(1, {x1 + x1.pow(3)});
    auto [yf, tr] = to_yagzhev(F, {q(0)});
    REQUIRE(yf.base.arity == 3);
    MPoly X = MPoly::variable(3, 0), Y = MPoly::variable(3, 1), T = MPoly::variable(3, 2);
    CHECK(yf.base.components[0] == X - T * T * Y);
    CHECK(yf.base.components[1] == Y + X.pow(3));
    CHECK(yf.base.components[2] == T);
    REQUIRE(tr.steps.size() == 3);
    CHECK(tr.steps[0].kind == "normalize-origin");
    CHECK(tr.steps[1].kind == "replicate");
    CHECK(tr.steps[2].kind == "cubic-homogenize");
    CHECK(verify_trace(F, yf.base, tr));
    bool has_replay = false, has_keller = false, has_transport = false;
    for (const auto& c : tr.checks) {
      has_replay |= c.find("trace-replay") == 0;
      has_keller |= c.find("keller-preserved") == 0;
      has_transport |= c.find("sampled-transport") == 0;
    }
    CHECK(has_replay);
    CHECK(has_transport);
    CHECK_FALSE(has_keller);  // det J = 1 + 3x^2 is not constant
  }
  SECTION("identity map reduces trivially") {
    auto [yf, tr] = to_yagzhev(PolyMap::identity(1), {q(0)});
    MPoly X = MPoly::variable(3, 0), Y = MPoly::variable(3, 1), T = MPoly::variable(3, 2);
    CHECK(yf.base.components[0] == X - T * T * Y);
    CHECK(yf.base.components[1] == Y);
    CHECK(yf.base.components[2] == T);
    bool has_keller = false;
    for (const auto& c : tr.checks) has_keller |= c.find("keller-preserved") == 0;
    CHECK(has_keller);
  }
  SECTION("a keller automorphism keeps determinant one") {
    auto [yf, tr] = to_yagzhev(cubic_demo(), {q(0), q(0)});
    CHECK(yf.base.arity == 5);
    CHECK(jacobian(yf.base.as_rmap()).det == RatFunc::constant(5, q(1)));
    bool has_keller = false;
    for (const auto& c : tr.checks) has_keller |= c.find("keller-preserved") == 0;
    CHECK(has_keller);
    CHECK(verify_trace(cubic_demo(), yf.base, tr));
  }
  SECTION("a quartic power needs the splitting stage") {
    PolyMap F(1, {x1.pow(4)});
    auto [yf, tr] = to_yagzhev(F, {q(1)});
    CHECK(yf.base.arity == 7);
    CHECK(tr.steps.size() == 4);
    CHECK(verify_trace(F, yf.base, tr));
    // The two points of the fiber over 16 stay distinct upstairs and land on
    // the same embedded target.
    Point up2 = tr.section_point({q(2)});
    Point upm2 = tr.section_point({q(-2)});
    CHECK_FALSE(up2 == upm2);
    CHECK(yf.base.eval(up2) == tr.embed_target({q(16)}));
    CHECK(yf.base.eval(upm2) == tr.embed_target({q(16)}));
    CHECK(tr.project_target(yf.base.eval(up2)) == Point{q(16)});
  }
  SECTION("refusals") {
    PolyMap F(1, {x1.pow(4)});
    CHECK_THROWS_AS(to_yagzhev(F, {q(0)}), DomainError);  // singular base point
    PolyMap degenerate(2, {MPoly::variable(2, 0), MPoly::variable(2, 0)});
    CHECK_THROWS_AS(to_yagzhev(degenerate, {q(0), q(0)}), DomainError);
    PolyMap cube(1, {x1 + x1.pow(3)});
    CHECK_THROWS_AS(to_yagzhev(cube, {q(0)}, 2), ResourceError);
    PolyMap sextic(1, {x1 + x1.pow(6)});
    CHECK_THROWS_AS(to_yagzhev(sextic, {q(0)}, 5), ResourceError);
  }
}

TEST_CASE("the pinchuk map overruns the reduction budget", "[reductions]") {
  PinchukBundle B = build_pinchuk();
  PolyMap F = PolyMap::from_rmap(pinchuk_map(B));
  CHECK_THROWS_AS(to_yagzhev(F, {q(0), q(0)}), ResourceError);
}

// The historical hand reduction of the Pinchuk map passed through roughly two
// hundred variables; per-term splitting overshoots even the hard ceiling, and
// the refusal below takes a couple hundred splits to reach.  Hidden behind a
// tag so plain runs stay fast.
TEST_CASE("the pinchuk map overruns even the dimension ceiling",
          "[.][expensive]") {
  PinchukBundle B = build_pinchuk();
  PolyMap F = PolyMap::from_rmap(pinchuk_map(B));
  CHECK_THROWS_AS(to_yagzhev(F, {q(0), q(0)}, kReductionDimensionCap),
                  ResourceError);
}

TEST_CASE("symmetric extension: exact low-dimensional oracles", "[reductions]") {
  MPoly x1 = MPoly::variable(1, 0);

  SECTION("the identity map flips coordinates") {
    RMap G = symmetric_extend(PolyMap(1, {x1}).as_rmap());
    REQUIRE(G.domain_arity == 2);
    CHECK(G.components[0] == RatFunc::variable(2, 1));
    CHECK(G.components[1] == RatFunc::variable(2, 0));
    JacobianData jd = jacobian(G);
    CHECK(jd.matrix[0][1] == RatFunc::constant(2, q(1)));
    CHECK(jd.matrix[1][0] == RatFunc::constant(2, q(1)));
    CHECK(jd.det == RatFunc::constant(2, q(-1)));
  }
  SECTION("x + x^3 squares its derivative, with a sign") {
    RMap G = symmetric_extend(PolyMap(1, {x1 + x1.pow(3)}).as_rmap());
    MPoly X = MPoly::variable(2, 1);
    MPoly fp = MPoly::constant(2, q(1)) + X.pow(2) * q(3);
    CHECK(jacobian(G).det == RatFunc(MPoly::zero(2) - fp * fp));
  }
  SECTION("entrywise symmetry for the keller demo") {
    RMap G = symmetric_extend(cubic_demo().as_rmap());
    REQUIRE(G.domain_arity == 4);
    JacobianData jd = jacobian(G);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) CHECK(jd.matrix[i][j] == jd.matrix[j][i]);
    // n = 2: det J(G) = (+1) * 1^2.
    CHECK(jd.det == RatFunc::constant(4, q(1)));
  }
  SECTION("rational maps extend too") {
    // F = x / (x^2 + 1), so F' = (1 - x^2) / (x^2 + 1)^2.
    RatFunc f = RatFunc::make(
        MPoly::variable(1, 0),
        MPoly::variable(1, 0).pow(2) + MPoly::constant(1, q(1)));
    RMap G = symmetric_extend(RMap(1, {f}));
    REQUIRE(G.domain_arity == 2);
    RatFunc fp = substitute_rf(f.derivative(0), {RatFunc::variable(2, 1)});
    CHECK(jacobian(G).det == RatFunc::constant(2, q(0)) - fp * fp);
  }
  SECTION("refusals") {
    RMap tall(1, {RatFunc::variable(1, 0), RatFunc::variable(1, 0)});
    CHECK_THROWS_AS(symmetric_extend(tall), StructuralError);
  }
}

TEST_CASE("symmetric extension preserves fibers at sampled targets", "[reductions]") {
  // F = x + x^3 is strictly increasing, so every fiber is one point; the
  // extension pairs it with the unique solution of v F'(x) = u.
  MPoly x1 = MPoly::variable(1, 0);
  PolyMap F(1, {x1 + x1.pow(3)});
  PolyMap G = symmetric_extend(F);
  Sampler s(31337u);
  for (int k = 0; k < 20; ++k) {
    ExactRational xs = s.next_rational();
    ExactRational u = s.next_rational();
    ExactRational w1 = F.components[0].eval({xs});
    // The downstairs fiber really is a single simple root at xs.
    UPolyQ fib = to_upoly_q(F.components[0] - MPoly::constant(1, w1));
    RootSummary roots = isolate_roots(fib);
    REQUIRE(roots.roots.size() == 1);
    CHECK(roots.roots[0].multiplicity == 1);
    CHECK(!(xs < roots.roots[0].lo));
    CHECK(!(roots.roots[0].hi < xs));
    // Upstairs: v is forced by the linear equation, and the pair hits the target.
    ExactRational fp = ExactRational(1) + xs * xs * ExactRational(3);
    ExactRational v = u / fp;
    CHECK(G.eval({v, xs}) == Point{w1, u});
  }
}

TEST_CASE("pinchuk symmetric extension is four-dimensional with squared determinant",
          "[reductions]") {
  PinchukBundle B = build_pinchuk();
  RMap F = pinchuk_map(B);
  RMap G = symmetric_extend(F);
  REQUIRE(G.domain_arity == 4);
  JacobianData jd = jacobian(G);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(jd.matrix[i][j] == jd.matrix[j][i]);
  RatFunc jF = jacobian(F).det;
  std::vector<RatFunc> into_x = {RatFunc::variable(4, 2), RatFunc::variable(4, 3)};
  CHECK(jd.det == substitute_rf(jF * jF, into_x));
}

TEST_CASE("the pairing down to cubic-linear form refuses loudly", "[reductions]") {
  MPoly x1 = MPoly::variable(1, 0);
  auto [yf, tr] = to_yagzhev(PolyMap(1, {x1 + x1.pow(3)}), {q(0)});
  CHECK_THROWS_WITH(gorni_zampieri_pairing(yf),
                    Catch::Matchers::ContainsSubstring("not implemented"));
}

