#include <catch2/catch_amalgamated.hpp>

#include "rma/mpoly.hpp"
#include "rma/prng.hpp"
#include "rma/rational.hpp"
#include "rma/upoly.hpp"
#include "test_support.hpp"

using namespace rma;
using testsupport::random_mpoly;

TEST_CASE("rational canonical form and arithmetic") {
  ExactRational a(6, -4);
  CHECK(a.num() == -3);
  CHECK(a.den() == 2);
  CHECK(ExactRational::parse("-7/4") == ExactRational(-7, 4));
  CHECK(ExactRational::parse("  12  ") == ExactRational(12));
  CHECK_THROWS_AS(ExactRational::parse("1/0"), StructuralError);
  CHECK_THROWS_AS(ExactRational::parse("abc"), StructuralError);
  CHECK_THROWS_AS(ExactRational(1, 0), DomainError);
  CHECK_THROWS_AS(ExactRational(1) / ExactRational(0), DomainError);

  ExactRational q(197, 4);
  CHECK(q.str() == "197/4");
  CHECK((q * ExactRational(4)).str() == "197");
  CHECK(q.pow(2) == ExactRational(38809, 16));
  CHECK(ExactRational(-5, 3).floor() == -2);
  CHECK(ExactRational(-5, 3).ceil() == -1);
  CHECK(ExactRational(-5, 3) < ExactRational(-1, 3));
}

TEST_CASE("graded lex order: degree first, then earlier variable wins") {
  GrlexLess less;
  Monomial x2y({2, 1}), xy2({1, 2}), x3({3, 0}), y2({0, 2});
  CHECK(less(xy2, x2y));   // same degree, x-power decides
  CHECK(less(y2, x3));     // lower total degree first
  CHECK(less(y2, xy2));
  CHECK(!less(x2y, x2y));
}

TEST_CASE("mpoly basics") {
  MPoly x = MPoly::variable(2, 0), y = MPoly::variable(2, 1);
  MPoly p = (x + y) * (x + y);
  MPoly expect = x.pow(2) + ExactRational(2) * x * y + y.pow(2);
  CHECK(p == expect);
  CHECK(p.total_degree() == 2);
  CHECK((p + MPoly::zero(2)) == p);
  CHECK(MPoly::zero(2).total_degree() == -1);
  CHECK_THROWS_AS(MPoly::variable(2, 0) + MPoly::variable(3, 0), StructuralError);

  CHECK((x.pow(2) * y).partial_derivative(0) == ExactRational(2) * x * y);
  CHECK(p.leading_monomial() == Monomial({2, 0}));
}

// h = t*(x*t+1) with t = xy-1.  Hand expansion:
// (xy-1)(x^2 y - x + 1) = x^3 y^2 - 2 x^2 y + x y + x - 1, total degree 5.
TEST_CASE("pinchuk h expansion against hand oracle") {
  MPoly x = MPoly::variable(2, 0), y = MPoly::variable(2, 1);
  MPoly t = x * y - ExactRational(1);
  MPoly h = t * (x * t + ExactRational(1));
  MPoly oracle = MPoly::term(2, {3, 2}, ExactRational(1)) +
                 MPoly::term(2, {2, 1}, ExactRational(-2)) +
                 MPoly::term(2, {1, 1}, ExactRational(1)) +
                 MPoly::term(2, {1, 0}, ExactRational(1)) +
                 MPoly::term(2, {0, 0}, ExactRational(-1));
  CHECK(h == oracle);
  CHECK(h.total_degree() == 5);
}

TEST_CASE("exact division is exact and fails loudly") {
  MPoly x = MPoly::variable(2, 0), y = MPoly::variable(2, 1);
  MPoly a = (x + y).pow(3) * (x - y + ExactRational(2));
  CHECK(a.exact_divide((x + y).pow(3)) == x - y + ExactRational(2));
  CHECK_THROWS_AS((x * y + ExactRational(1)).exact_divide(x + y), InternalError);
}

TEST_CASE("normalize_primitive gives integer-coprime coefficients, positive lead") {
  MPoly x = MPoly::variable(2, 0), y = MPoly::variable(2, 1);
  MPoly p = ExactRational(-3, 4) * x * y + ExactRational(3, 2) * y;
  MPoly n = p.normalize_primitive();
  CHECK(n == x * y - ExactRational(2) * y);
  CHECK(MPoly::zero(2).normalize_primitive() == MPoly::zero(2));
}

TEST_CASE("mpoly printing uses descending canonical order") {
  MPoly x = MPoly::variable(2, 0), y = MPoly::variable(2, 1);
  MPoly p = x.pow(2) - ExactRational(2) * x * y + ExactRational(197, 4);
  CHECK(p.str() == "x^2 - 2*x*y + 197/4");
}

TEST_CASE("property: ring axioms on 1000 random triples") {
  Sampler s(kDefaultSeed);
  for (int i = 0; i < 1000; ++i) {
    std::size_t arity = 1 + static_cast<std::size_t>(s.next_int(0, 2));
    MPoly a = random_mpoly(s, arity), b = random_mpoly(s, arity),
          c = random_mpoly(s, arity);
    REQUIRE((a + b) + c == a + (b + c));
    REQUIRE(a * b == b * a);
    REQUIRE(a * (b + c) == a * b + a * c);
    REQUIRE((a * b) * c == a * (b * c));
  }
}

TEST_CASE("property: Leibniz rule on 1000 random pairs") {
  Sampler s(kDefaultSeed + 1);
  for (int i = 0; i < 1000; ++i) {
    std::size_t arity = 1 + static_cast<std::size_t>(s.next_int(0, 2));
    std::size_t v = static_cast<std::size_t>(s.next_int(0, static_cast<long>(arity) - 1));
    MPoly p = random_mpoly(s, arity), q = random_mpoly(s, arity);
    REQUIRE((p * q).partial_derivative(v) ==
            p * q.partial_derivative(v) + q * p.partial_derivative(v));
  }
}

TEST_CASE("property: substitution is a ring homomorphism") {
  Sampler s(kDefaultSeed + 2);
  for (int i = 0; i < 1000; ++i) {
    MPoly p = random_mpoly(s, 2, 3, 4), q = random_mpoly(s, 2, 3, 4);
    std::vector<MPoly> vals = {random_mpoly(s, 2, 2, 3), random_mpoly(s, 2, 2, 3)};
    REQUIRE((p * q).substitute_poly(vals) ==
            p.substitute_poly(vals) * q.substitute_poly(vals));
    REQUIRE((p + q).substitute_poly(vals) ==
            p.substitute_poly(vals) + q.substitute_poly(vals));
  }
}

TEST_CASE("identity substitution returns the polynomial") {
  Sampler s(kDefaultSeed + 3);
  MPoly p = random_mpoly(s, 3, 4, 6);
  std::vector<MPoly> id = {MPoly::variable(3, 0), MPoly::variable(3, 1),
                           MPoly::variable(3, 2)};
  CHECK(p.substitute_poly(id) == p);
}

TEST_CASE("upoly pseudo-division identity") {
  Sampler s(kDefaultSeed + 4);
  for (int i = 0; i < 500; ++i) {
    rma::UPolyQ a = testsupport::random_upoly(s, 6);
    rma::UPolyQ b = testsupport::random_upoly(s, 4);
    if (b.is_zero() || a.degree() < b.degree()) continue;
    auto [q, r] = rma::UPolyQ::pseudo_divide(a, b);
    unsigned e = static_cast<unsigned>(a.degree() - b.degree() + 1);
    rma::UPolyQ lhs = a.scaled(b.lc().pow(e));
    REQUIRE(lhs == q * b + r);
    REQUIRE((r.is_zero() || r.degree() < b.degree()));
  }
}
