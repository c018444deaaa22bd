#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "rma/annihilator.hpp"
#include "rma/errors.hpp"
#include "rma/points.hpp"
#include "rma/positivity.hpp"
#include "rma/quadext.hpp"
#include "rma/rmap.hpp"

namespace rma {

// ---------------------------------------------------------------------------
// Extended real values: rationals, quadratic irrationals and the two
// infinities, compared exactly.  These are the endpoints of level-set
// components and of the image intervals of Q along them.

struct ExtReal {
  int inf = 0;  // -1 / +1 = the infinities, 0 = the finite value below
  QuadExt<ExactRational> value{ExactRational(0), ExactRational(0),
                               ExactRational(0)};

  static ExtReal minus_infinity() {
    ExtReal e;
    e.inf = -1;
    return e;
  }
  static ExtReal plus_infinity() {
    ExtReal e;
    e.inf = +1;
    return e;
  }
  static ExtReal finite(const ExactRational& r) {
    ExtReal e;
    e.value = QuadExt<ExactRational>(r, ExactRational(0), ExactRational(0));
    return e;
  }
  static ExtReal finite(const QuadExt<ExactRational>& q) {
    ExtReal e;
    e.value = normalize_quad(q);
    return e;
  }
};

// Total order.  Finite values may mix radicands only when at least one side
// is plain rational (b = 0); normalize_quad keeps perfect squares rational,
// so values that happen to be rational always compare across charts.
inline int ext_compare(const ExtReal& x, const ExtReal& y) {
  if (x.inf != y.inf) return x.inf < y.inf ? -1 : 1;
  if (x.inf != 0) return 0;
  const auto& a = x.value;
  const auto& b = y.value;
  if (!a.b.is_zero() && !b.b.is_zero() && !(a.d == b.d))
    throw StructuralError("comparing quadratic values over different radicands");
  ExactRational d = a.b.is_zero() ? b.d : a.d;
  return sign(QuadExt<ExactRational>(a.a - b.a, a.b - b.b, d));
}

inline bool operator==(const ExtReal& x, const ExtReal& y) {
  return ext_compare(x, y) == 0;
}
inline bool ext_less(const ExtReal& x, const ExtReal& y) {
  return ext_compare(x, y) < 0;
}

inline double ext_to_double(const ExtReal& e) {
  if (e.inf != 0)
    return e.inf > 0 ? std::numeric_limits<double>::infinity()
                     : -std::numeric_limits<double>::infinity();
  return to_double(e.value);
}

inline std::string ext_str(const ExtReal& e) {
  if (e.inf < 0) return "-inf";
  if (e.inf > 0) return "+inf";
  return quadext_str(e.value);
}

// ---------------------------------------------------------------------------
// Exact one-sided limits of univariate rational functions.  Endpoint values
// of image intervals are computed this way, never by floating point.

inline ExtReal limit_at_infinity(const RatFunc& g, int dir) {
  if (g.arity() != 1)
    throw StructuralError("limit of a non-univariate function");
  if (g.is_zero()) return ExtReal::finite(ExactRational(0));
  UPolyQ n = to_upoly_q(g.num());
  UPolyQ d = to_upoly_q(g.den());
  const int dn = n.degree(), dd = d.degree();
  if (dn < dd) return ExtReal::finite(ExactRational(0));
  ExactRational ratio = n.lc() / d.lc();
  if (dn == dd) return ExtReal::finite(ratio);
  int s = ratio.sign();
  if (dir < 0 && ((dn - dd) % 2 != 0)) s = -s;
  return s > 0 ? ExtReal::plus_infinity() : ExtReal::minus_infinity();
}

namespace detail {

// First nonvanishing derivative of u at p: the order of vanishing and the
// derivative's value there.  Order -1 means u is identically zero.
inline std::pair<int, QuadExt<ExactRational>> vanishing_order(
    UPolyQ u, const QuadExt<ExactRational>& p) {
  int k = 0;
  while (!u.is_zero()) {
    QuadExt<ExactRational> v = eval_quad(u, p);
    if (!v.is_zero()) return {k, v};
    u = u.derivative();
    ++k;
  }
  return {-1, QuadExt<ExactRational>::base(ExactRational(0), p.d)};
}

}  // namespace detail

// Limit of g as the variable approaches p from above (side > 0) or below
// (side < 0).  Exact: finite answers are quadratic values, infinite ones
// carry their sign from the orders of vanishing of numerator and
// denominator at p.
inline ExtReal one_sided_limit(const RatFunc& g,
                               const QuadExt<ExactRational>& p_in, int side) {
  if (g.arity() != 1)
    throw StructuralError("limit of a non-univariate function");
  if (g.is_zero()) return ExtReal::finite(ExactRational(0));
  QuadExt<ExactRational> p = normalize_quad(p_in);
  auto [a, nv] = detail::vanishing_order(to_upoly_q(g.num()), p);
  auto [b, dv] = detail::vanishing_order(to_upoly_q(g.den()), p);
  if (a < 0) return ExtReal::finite(ExactRational(0));
  if (b < 0) throw InternalError("rational function with zero denominator");
  if (a > b) return ExtReal::finite(ExactRational(0));
  if (a == b) return ExtReal::finite(nv / dv);  // equal factorials cancel
  int s = sign(nv) * sign(dv);
  if (side < 0 && ((b - a) % 2 != 0)) s = -s;
  return s > 0 ? ExtReal::plus_infinity() : ExtReal::minus_infinity();
}

// ---------------------------------------------------------------------------
// The Pinchuk construction: a polynomial map (P, Q) of the plane, everywhere
// positive Jacobian determinant, not injective.  From the building blocks
//   t = xy - 1,  h = t(xt + 1),  f = (xt + 1)^2 (t^2 + y),
// the first component is P = f + h; the second is Q = q - u with
// q = -t^2 - 6th(h + 1) and an auxiliary polynomial u given in (f, h).

namespace detail {

// The blocks that do not depend on the choice of u, built once.
struct PinchukCore {
  MPoly t, xt1, h, f, P;
};

inline const PinchukCore& pinchuk_core() {
  static const PinchukCore core = [] {
    MPoly x = MPoly::variable(2, 0), y = MPoly::variable(2, 1);
    MPoly one = MPoly::constant(2, ExactRational(1));
    PinchukCore k;
    k.t = x * y - one;
    k.xt1 = x * k.t + one;
    k.h = k.t * k.xt1;
    k.f = k.xt1 * k.xt1 * (k.t * k.t + y);
    k.P = k.f + k.h;
    return k;
  }();
  return core;
}

// Horner evaluation of a rational-coefficient univariate at a polynomial.
inline MPoly upoly_at(const UPolyQ& s, const MPoly& v) {
  MPoly acc = MPoly::zero(v.arity());
  for (int i = s.degree(); i >= 0; --i)
    acc = acc * v +
          MPoly::constant(v.arity(), s[static_cast<std::size_t>(i)]);
  return acc;
}

}  // namespace detail

// The published choice of u(f, h), variables 0 = f, 1 = h.  It is exactly
// the correction that turns the Jacobian determinant of (P, Q) into the sum
// of squares t^2 + (t + f(13 + 15h))^2 + f^2.
inline MPoly default_pinchuk_u() {
  MPoly f = MPoly::variable(2, 0), h = MPoly::variable(2, 1);
  return f * h * ExactRational(170) + h.pow(2) * ExactRational(91) +
         f * h.pow(2) * ExactRational(195) + h.pow(3) * ExactRational(69) +
         f * h.pow(3) * ExactRational(75) + h.pow(4) * ExactRational(75, 4);
}

// One member of the family: the blocks, the map components, the auxiliary
// polynomial both composed into (x, y) and in its (f, h) form, and - for
// the default u - the verified annihilator of h over the image coordinates.
struct PinchukBundle {
  MPoly t, h, f, P, q, u, Q;  // polynomials in (x, y)
  MPoly u_spec;               // u as a polynomial in (f, h)
  AnnihilatorPoly R;          // annihilator of h over (P, Q); see below
  bool has_minimal_poly() const { return !R.poly.is_zero(); }
};

// The degree-6 annihilator R(P, Q)(T) of h, built structurally instead of
// by resultant elimination: since f^2 Q is a polynomial in (f, h) and
// f = P - h, substituting f = P - T, h = T into f^2 q - f^2 u - f^2 Q and
// collecting powers of T gives a T-degree-6 polynomial with leading
// coefficient 197/4 and constant term -P^2 Q that vanishes at T = h.  The
// result is certified by direct substitution of (P(x,y), Q(x,y), h(x,y)).
inline AnnihilatorPoly pinchuk_minimal_poly(const PinchukBundle& B) {
  if (!(B.u_spec == default_pinchuk_u()))
    throw DomainError(
        "structured annihilator is derived for the default auxiliary "
        "polynomial only");
  MPoly p = MPoly::variable(3, 0);   // P
  MPoly qq = MPoly::variable(3, 1);  // Q
  MPoly tt = MPoly::variable(3, 2);  // T
  MPoly one = MPoly::constant(3, ExactRational(1));
  MPoly fp = p - tt;                      // f, rewritten on the fiber
  MPoly w = tt * (fp - tt * (tt + one));  // w = ft as a polynomial in (f, h)
  MPoly f2q = -(w * w) - w * fp * tt * (tt + one) * ExactRational(6);
  MPoly f2Q = f2q - fp * fp * B.u_spec.substitute_poly({fp, tt}) -
              fp * fp * qq;
  UPolyM in_t = to_upoly_in(f2Q, 2);
  std::vector<MPoly> cs;
  cs.reserve(static_cast<std::size_t>(in_t.degree()) + 1);
  for (int i = 0; i <= in_t.degree(); ++i)
    cs.push_back(detail::drop_vars(in_t[static_cast<std::size_t>(i)], {0, 1}));
  AnnihilatorPoly R;
  R.image_arity = 2;
  R.poly = UPolyM(std::move(cs));
  if (R.poly.degree() != 6)
    throw InternalError("structured annihilator does not have degree 6");
  if (!upoly_content(R.poly, 2).is_constant())
    throw InternalError("structured annihilator has nonconstant content");
  R.primitive_flag = true;
  R.minimality_risk = false;
  R.provenance = "structured-pinchuk";
  if (!verify_annihilation(R, RMap::from_polys({B.P, B.Q}), RatFunc(B.h)))
    throw InternalError("structured annihilator fails direct verification");
  return R;
}

inline PinchukBundle build_pinchuk(const MPoly& u_spec) {
  if (u_spec.arity() != 2)
    throw StructuralError("auxiliary polynomial must be given in (f, h)");
  const auto& k = detail::pinchuk_core();
  PinchukBundle B;
  B.t = k.t;
  B.h = k.h;
  B.f = k.f;
  B.P = k.P;
  MPoly one = MPoly::constant(2, ExactRational(1));
  B.q = -(B.t * B.t) - B.t * B.h * (B.h + one) * ExactRational(6);
  B.u_spec = u_spec;
  B.u = u_spec.substitute_poly({B.f, B.h});
  B.Q = B.q - B.u;
  if (u_spec == default_pinchuk_u()) {
    if (B.P.total_degree() != 10 || B.Q.total_degree() != 25)
      throw InternalError("component degrees (10, 25) not reproduced");
    B.R = pinchuk_minimal_poly(B);
  }
  return B;
}

inline PinchukBundle build_pinchuk() {
  return build_pinchuk(default_pinchuk_u());
}

inline RMap pinchuk_map(const PinchukBundle& B) {
  return RMap::from_polys({B.P, B.Q});
}

// Exact sum-of-squares form of the Jacobian determinant of the default map.
// The constant is zero, so positivity additionally needs the common real
// zero set of the three squares to be empty; is_nowhere_zero settles that
// by resultant projection (t and t + f(13 + 15h) only meet where y = 0,
// and t(x, 0) = -1).
inline SosCertificate pinchuk_jacobian_certificate(const PinchukBundle& B) {
  if (!(B.u_spec == default_pinchuk_u()))
    throw DomainError("jacobian certificate is specific to the default map");
  MPoly lin = MPoly::constant(2, ExactRational(13)) + B.h * ExactRational(15);
  SosCertificate c;
  c.constant = ExactRational(0);
  c.weights = {ExactRational(1), ExactRational(1), ExactRational(1)};
  c.squares = {B.t, B.t + B.f * lin, B.f};
  return c;
}

// f^2 Q collected by powers of f, coefficients univariate in h.  This is
// the expansion that makes the fiber substitution above legitimate; it is
// verified against the (x, y) side before being returned.
inline UPolyM pinchuk_q_in_fh(const PinchukBundle& B) {
  MPoly F = MPoly::variable(2, 0), H = MPoly::variable(2, 1);
  MPoly one = MPoly::constant(2, ExactRational(1));
  MPoly w = H * (F - H * (H + one));
  MPoly f2q = -(w * w) - w * F * H * (H + one) * ExactRational(6);
  MPoly f2Q = f2q - F * F * B.u_spec;
  if (!(f2Q.substitute_poly({B.f, B.h}) == B.f * B.f * B.Q))
    throw InternalError("f^2 Q expansion does not match the map");
  UPolyM in_f = to_upoly_in(f2Q, 0);
  std::vector<MPoly> cs;
  cs.reserve(static_cast<std::size_t>(in_f.degree()) + 1);
  for (int i = 0; i <= in_f.degree(); ++i)
    cs.push_back(detail::drop_vars(in_f[static_cast<std::size_t>(i)], {1}));
  return UPolyM(std::move(cs));
}

// On the image side, x and y are rational in (P, h):
//   x = (P - h)(h + 1) / (P - 2h - h^2)^2,
//   y = (P - 2h - h^2)^2 (P - h - h^2) / (P - h)^2.
// Checked as cleared polynomial identities in Q[x, y].
inline bool verify_xy_recoverable(const PinchukBundle& B) {
  MPoly x = MPoly::variable(2, 0), y = MPoly::variable(2, 1);
  MPoly one = MPoly::constant(2, ExactRational(1));
  MPoly disc = B.P - B.h * ExactRational(2) - B.h * B.h;
  bool xok = x * disc * disc == (B.P - B.h) * (B.h + one);
  bool yok = y * (B.P - B.h) * (B.P - B.h) ==
             disc * disc * (B.P - B.h - B.h * B.h);
  return xok && yok;
}

// ---------------------------------------------------------------------------
// Level sets P = c, parametrized by h.  The generic chart is the pair of
// rational functions above with P treated as the symbol c; special values
// of c get their own charts where the generic one degenerates.

struct GenericLevelSet {
  RatFunc x, y;  // arity 2, variables (c, h)
};

inline const GenericLevelSet& generic_level_set() {
  static const GenericLevelSet g = [] {
    MPoly c = MPoly::variable(2, 0), h = MPoly::variable(2, 1);
    MPoly one = MPoly::constant(2, ExactRational(1));
    MPoly disc = c - h * ExactRational(2) - h * h;
    GenericLevelSet ls{RatFunc::make((c - h) * (h + one), disc * disc),
                       RatFunc::make(disc * disc * (c - h - h * h),
                                     (c - h) * (c - h))};
    const auto& k = detail::pinchuk_core();
    if (!(substitute_rf(k.h, {ls.x, ls.y}) == RatFunc::variable(2, 1)))
      throw InternalError("generic level-set chart fails h o chart = h");
    if (!(substitute_rf(k.P, {ls.x, ls.y}) == RatFunc::variable(2, 0)))
      throw InternalError("generic level-set chart fails P o chart = c");
    return ls;
  }();
  return g;
}

// One parametrized piece of the level set P = c.  The chart is undefined at
// the boundary values; the open intervals between consecutive boundaries
// are its connected components.
struct LevelSetChart {
  std::string name;       // "h-chart", "t-chart" or "s-chart"
  std::string param;      // the letter of the parameter
  ExactRational c;        // the level
  RatFunc x, y;           // arity 1 in the parameter
  RatFunc h_on_chart;     // verified value of h along the chart
  std::vector<ExtReal> boundaries;  // sorted excluded parameter values
  std::size_t component_count() const { return boundaries.size() + 1; }
};

namespace detail {

inline void verify_chart(const LevelSetChart& ch) {
  const auto& k = pinchuk_core();
  if (!(substitute_rf(k.P, {ch.x, ch.y}) == RatFunc::constant(1, ch.c)))
    throw InternalError("level-set chart fails P = c on " + ch.name);
  if (!(substitute_rf(k.h, {ch.x, ch.y}) == ch.h_on_chart))
    throw InternalError("level-set chart fails its h identity on " + ch.name);
}

inline LevelSetChart specialized_generic_chart(const ExactRational& cv) {
  const GenericLevelSet& g = generic_level_set();
  RatFunc cc = RatFunc::constant(1, cv);
  RatFunc hh = RatFunc::variable(1, 0);
  LevelSetChart ch;
  ch.name = "h-chart";
  ch.param = "h";
  ch.c = cv;
  ch.x = substitute_rf(g.x, {cc, hh});
  ch.y = substitute_rf(g.y, {cc, hh});
  ch.h_on_chart = hh;
  // Boundaries: the pole of y at h = c and, when 1 + c > 0, the two poles
  // of x at h = -1 +- sqrt(1 + c).  Coincidences (c = 0) are deduplicated;
  // at c = 0 the y-pole cancels but h = 0 stays excluded through x.
  std::vector<ExtReal> bs{ExtReal::finite(cv)};
  ExactRational disc = cv + ExactRational(1);
  if (disc.sign() > 0) {
    auto root = QuadExt<ExactRational>::root(disc);
    auto minus1 = QuadExt<ExactRational>::base(ExactRational(-1), disc);
    bs.push_back(ExtReal::finite(minus1 + root));
    bs.push_back(ExtReal::finite(minus1 - root));
  }
  std::sort(bs.begin(), bs.end(), ext_less);
  bs.erase(std::unique(bs.begin(), bs.end(),
                       [](const ExtReal& a, const ExtReal& b) { return a == b; }),
           bs.end());
  ch.boundaries = std::move(bs);
  verify_chart(ch);
  return ch;
}

}  // namespace detail

// The charts covering the level set P = c.  Generic c: one h-chart with
// component count 4 (-1 < c, c != 0) or 2 (c < -1).  c = 0: the h-chart
// misses the branch xt + 1 = 0, which gets its own t-chart.  c = -1: the
// generic chart degenerates entirely; two explicit charts take over.
inline std::vector<LevelSetChart> level_set_param(const ExactRational& c) {
  std::vector<LevelSetChart> out;
  MPoly s = MPoly::variable(1, 0);
  MPoly one = MPoly::constant(1, ExactRational(1));
  if (c == ExactRational(-1)) {
    LevelSetChart t1;
    t1.name = "t-chart";
    t1.param = "t";
    t1.c = c;
    t1.x = RatFunc::make(-s - one, s * s);  // x = -1/t - 1/t^2
    t1.y = RatFunc(-(s * s));               // y = -t^2
    t1.h_on_chart = RatFunc::constant(1, ExactRational(-1));
    t1.boundaries = {ExtReal::finite(ExactRational(0))};
    detail::verify_chart(t1);
    out.push_back(std::move(t1));
    LevelSetChart s1;
    s1.name = "s-chart";
    s1.param = "s";
    s1.c = c;
    s1.x = RatFunc(-(s * s));                              // x = -s^2
    s1.y = RatFunc::make(-(s * s) + s - one, (s * s) * (s * s));
    s1.h_on_chart = RatFunc::make(one - s, s);             // h = (1 - s)/s
    s1.boundaries = {ExtReal::finite(ExactRational(0))};
    detail::verify_chart(s1);
    out.push_back(std::move(s1));
    return out;
  }
  if (c.is_zero()) {
    LevelSetChart t1;
    t1.name = "t-chart";
    t1.param = "t";
    t1.c = c;
    t1.x = RatFunc::make(-one, s);   // x = -1/t, the branch xt + 1 = 0
    t1.y = RatFunc(-s - s * s);      // y = -t - t^2
    t1.h_on_chart = RatFunc(MPoly::zero(1));
    t1.boundaries = {ExtReal::finite(ExactRational(0))};
    detail::verify_chart(t1);
    out.push_back(std::move(t1));
  }
  out.push_back(detail::specialized_generic_chart(c));
  return out;
}

// ---------------------------------------------------------------------------
// The asymptotic curve in the image plane: Q-values approached but not
// attained along the unbounded ends of level sets.  A rational curve
// parametrized by s (s = h + 1 at the ends), with implicit equation
//   (Q - (345/4) P^2 - 231 P - 104)^2 = (P + 1)^3 (75 P + 104)^2.
// The implicit curve carries one extra non-real-parameter point, at
// s^2 = -29/75.

struct AsymptoticCurve {
  UPolyQ P_of_s, Q_of_s;
  MPoly min_equation;  // arity 2, variables (P, Q)
  Point extra_zariski_point;
  ExactRational extra_point_s_squared;
};

inline const AsymptoticCurve& asymptotic_curve() {
  static const AsymptoticCurve curve = [] {
    AsymptoticCurve a;
    a.P_of_s = UPolyQ(std::vector<ExactRational>{
        ExactRational(-1), ExactRational(0), ExactRational(1)});
    a.Q_of_s = UPolyQ(std::vector<ExactRational>{
        ExactRational(-163, 4), ExactRational(0), ExactRational(117, 2),
        ExactRational(-29), ExactRational(345, 4), ExactRational(-75)});
    MPoly P = MPoly::variable(2, 0), Q = MPoly::variable(2, 1);
    MPoly root = Q - P * P * ExactRational(345, 4) - P * ExactRational(231) -
                 MPoly::constant(2, ExactRational(104));
    MPoly p1 = P + MPoly::constant(2, ExactRational(1));
    MPoly lin = P * ExactRational(75) + MPoly::constant(2, ExactRational(104));
    a.min_equation = root * root - p1.pow(3) * lin * lin;
    MPoly Ps = from_upoly_q(a.P_of_s), Qs = from_upoly_q(a.Q_of_s);
    if (!a.min_equation.substitute_poly({Ps, Qs}).is_zero())
      throw InternalError("asymptotic parametrization misses its equation");
    a.extra_zariski_point = {ExactRational(-104, 75), ExactRational(-18928, 375)};
    if (!a.min_equation.eval(a.extra_zariski_point).is_zero())
      throw InternalError("extra curve point is off the implicit equation");
    a.extra_point_s_squared = ExactRational(-29, 75);
    if (!(a.extra_zariski_point[0] + ExactRational(1) ==
          a.extra_point_s_squared))
      throw InternalError("extra curve point parameter mismatch");
    return a;
  }();
  return curve;
}

// The two asymptotic Q-values over the level P = c: Q_of_s at
// s = +-sqrt(1 + c).  Defined for c > -1 with c != 0 (at c = 0 the level
// set meets the curve and the two values 0 and 208 are attained, not
// asymptotic).  Always q_plus < q_minus.
struct QAsymptoticPair {
  QuadExt<ExactRational> q_plus, q_minus;
};

inline QAsymptoticPair q_asymptotic_values(const ExactRational& c) {
  if (!(ExactRational(-1) < c))
    throw DomainError("asymptotic Q-values need c > -1");
  if (c.is_zero())
    throw DomainError("asymptotic Q-values are not defined at c = 0");
  ExactRational d = c + ExactRational(1);
  const auto& curve = asymptotic_curve();
  auto sp = QuadExt<ExactRational>::root(d);
  auto sm = QuadExt<ExactRational>::base(ExactRational(0), d) - sp;
  QuadExt<ExactRational> qp = eval_quad(curve.Q_of_s, sp);
  QuadExt<ExactRational> qm = eval_quad(curve.Q_of_s, sm);
  if (sign(qm - qp) <= 0)
    throw InternalError("asymptotic ordering q_plus < q_minus violated");
  return {normalize_quad(qp), normalize_quad(qm)};
}

// ---------------------------------------------------------------------------
// Image geometry of the default map.

// Along the y-axis the map is affine: (P, Q)(0, y) = (y, 50y + 33/4), so
// the image contains the full line 4Q = 200P + 33.
inline bool verify_y_axis_image(const PinchukBundle& B) {
  std::vector<MPoly> axis{MPoly::zero(1), MPoly::variable(1, 0)};
  MPoly P0 = B.P.substitute_poly(axis);
  MPoly Q0 = B.Q.substitute_poly(axis);
  MPoly y = MPoly::variable(1, 0);
  return P0 == y &&
         Q0 == y * ExactRational(50) + MPoly::constant(1, ExactRational(33, 4)) &&
         (Q0 * ExactRational(4) - P0 * ExactRational(200) -
          MPoly::constant(1, ExactRational(33)))
             .is_zero();
}

// The two curves in the source plane where the h-parametrization of fibers
// degenerates: xt + 1 = 0 (then h = 0) and t^2 + y = 0 (then h = -1).
// Each splits into two branches; P, h and Q are verified along each.  The
// Q expressions depend on u only through u(0, 0) and u(0, -1).
struct SingularBranch {
  std::string name;
  int case_id;  // 1: xt + 1 = 0 (parameter x); 2: t^2 + y = 0 (parameter s)
  int side;     // 1 / -1: the x > 0 / x < 0 half for case 1; the sign in
                // x = 1/y +- 1/sqrt(-y) for case 2 (parameter s = sqrt(-y) > 0)
  RatFunc x, y;               // arity 1 in the branch parameter
  ExactRational p_value, h_value;  // constant values of P and h on the branch
  RatFunc q_on_branch;        // Q along the branch
};

inline std::vector<SingularBranch> singular_branches(const PinchukBundle& B) {
  MPoly s = MPoly::variable(1, 0);
  MPoly one = MPoly::constant(1, ExactRational(1));
  ExactRational u00 = B.u_spec.eval({ExactRational(0), ExactRational(0)});
  ExactRational u0m = B.u_spec.eval({ExactRational(0), ExactRational(-1)});
  std::vector<SingularBranch> out;
  auto push = [&](SingularBranch br) {
    if (!(substitute_rf(B.P, {br.x, br.y}) == RatFunc::constant(1, br.p_value)))
      throw InternalError("singular branch fails its P identity");
    if (!(substitute_rf(B.h, {br.x, br.y}) == RatFunc::constant(1, br.h_value)))
      throw InternalError("singular branch fails its h identity");
    if (!(substitute_rf(B.Q, {br.x, br.y}) == br.q_on_branch))
      throw InternalError("singular branch fails its Q identity");
    out.push_back(std::move(br));
  };
  // xt + 1 = 0 means y = (x - 1)/x^2; there P = h = 0 and Q = -1/x^2 - u(0,0).
  RatFunc cx = RatFunc::variable(1, 0);
  RatFunc cy = RatFunc::make(s - one, s * s);
  RatFunc cq = RatFunc::make(-one - s * s * u00, s * s);
  for (int side : {+1, -1})
    push({side > 0 ? "xt+1 = 0, x > 0" : "xt+1 = 0, x < 0", 1, side, cx, cy,
          ExactRational(0), ExactRational(0), cq});
  // t^2 + y = 0 means y < 0; with s = sqrt(-y) > 0 the two solutions in x
  // are x = (-1 +- s)/s^2; there P = h = -1 and Q = -s^2 - u(0,-1).
  for (int side : {+1, -1}) {
    RatFunc bx = RatFunc::make(s * ExactRational(side) - one, s * s);
    RatFunc by = RatFunc(-(s * s));
    RatFunc bq = RatFunc(-(s * s) - MPoly::constant(1, u0m));
    push({side > 0 ? "t^2+y = 0, x = 1/y + 1/sqrt(-y)"
                   : "t^2+y = 0, x = 1/y - 1/sqrt(-y)",
          2, side, bx, by, ExactRational(-1), ExactRational(-1), bq});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Scanning Q along level-set components: exact interval endpoints via
// one-sided limits, plus a sampled monotonicity check of dQ/dparam.

struct ComponentReport {
  ExtReal lo, hi;              // open parameter interval of the component
  ExtReal q_lo, q_hi;          // one-sided limits of Q at the two ends
  ExtReal range_lo, range_hi;  // the same pair, ordered
  int monotone_sign = 0;  // common sign of dQ/dparam at the samples; 0 = none
  int samples_used = 0;
  int pole_skips = 0;
};

struct QRangeReport {
  std::string chart_name;
  std::vector<ComponentReport> components;
};

namespace detail {

inline ExactRational rational_from_double(double v) {
  return ExactRational(mpq_class(v));
}

// A rational strictly on the given side of an exact finite bound,
// deterministically close to it.
inline ExactRational rational_beside(const ExtReal& bound, int dir) {
  if (bound.inf != 0) throw InternalError("rational_beside at infinity");
  ExactRational g = rational_from_double(ext_to_double(bound)) +
                    ExactRational(dir, 64);
  const ExactRational step(1, 64);
  for (int guard = 0; guard < 4096; ++guard) {
    ExtReal e = ExtReal::finite(g);
    if (dir > 0 ? ext_less(bound, e) : ext_less(e, bound)) return g;
    g += ExactRational(dir) * step;
  }
  throw InternalError("cannot step past an exact bound");
}

// A closed rational window [a, b] inside the open component (lo, hi);
// collapses to a single point when the component is very narrow.
inline std::pair<ExactRational, ExactRational> sample_window(
    const ExtReal& lo, const ExtReal& hi) {
  if (lo.inf != 0 && hi.inf != 0) return {ExactRational(-8), ExactRational(8)};
  if (lo.inf != 0) {
    ExactRational b = rational_beside(hi, -1);
    return {b - ExactRational(8), b};
  }
  if (hi.inf != 0) {
    ExactRational a = rational_beside(lo, +1);
    return {a, a + ExactRational(8)};
  }
  ExactRational a = rational_beside(lo, +1);
  ExactRational b = rational_beside(hi, -1);
  if (a < b && ext_less(ExtReal::finite(a), hi) &&
      ext_less(lo, ExtReal::finite(b)))
    return {a, b};
  // Fall back to a verified midpoint.
  ExactRational m =
      rational_from_double((ext_to_double(lo) + ext_to_double(hi)) / 2);
  ExactRational step(1, 128);
  for (int guard = 0; guard < 256; ++guard) {
    if (ext_less(lo, ExtReal::finite(m)) && ext_less(ExtReal::finite(m), hi))
      return {m, m};
    m += ext_less(lo, ExtReal::finite(m)) ? -step : step;
    step = step * ExactRational(1, 2);
  }
  throw InternalError("degenerate component window");
}

}  // namespace detail

inline QRangeReport scan_q_ranges(const PinchukBundle& B,
                                  const LevelSetChart& chart, int samples) {
  if (samples < 1) throw DomainError("scan needs at least one sample");
  RatFunc Qc = substitute_rf(B.Q, {chart.x, chart.y});
  RatFunc dQc = Qc.derivative(0);
  QRangeReport rep;
  rep.chart_name = chart.name;
  const auto& bs = chart.boundaries;
  for (std::size_t i = 0; i <= bs.size(); ++i) {
    ComponentReport cr;
    cr.lo = i == 0 ? ExtReal::minus_infinity() : bs[i - 1];
    cr.hi = i == bs.size() ? ExtReal::plus_infinity() : bs[i];
    cr.q_lo = cr.lo.inf != 0 ? limit_at_infinity(Qc, -1)
                             : one_sided_limit(Qc, cr.lo.value, +1);
    cr.q_hi = cr.hi.inf != 0 ? limit_at_infinity(Qc, +1)
                             : one_sided_limit(Qc, cr.hi.value, -1);
    bool ordered = !ext_less(cr.q_hi, cr.q_lo);
    cr.range_lo = ordered ? cr.q_lo : cr.q_hi;
    cr.range_hi = ordered ? cr.q_hi : cr.q_lo;
    auto [a, b] = detail::sample_window(cr.lo, cr.hi);
    std::vector<ExactRational> grid;
    if (samples == 1 || !(a < b)) {
      grid.push_back(a);
    } else {
      ExactRational width = b - a;
      for (int k = 0; k < samples; ++k)
        grid.push_back(a + width * ExactRational(k) / ExactRational(samples - 1));
    }
    int seen = 0;
    bool consistent = true;
    for (const ExactRational& v : grid) {
      auto dv = dQc.eval_opt({v});
      if (!dv) {
        ++cr.pole_skips;
        continue;
      }
      int sg = dv->sign();
      ++cr.samples_used;
      if (sg == 0) {
        consistent = false;
      } else if (seen == 0) {
        seen = sg;
      } else if (seen != sg) {
        consistent = false;
      }
    }
    cr.monotone_sign = consistent ? seen : 0;
    rep.components.push_back(std::move(cr));
  }
  return rep;
}

// All components of the level set P = c across its charts: the ordered
// (min, max) endpoint pairs of the Q-image intervals, sorted for multiset
// comparison, plus whether every component scanned monotone.
struct LevelSetRanges {
  std::vector<std::pair<ExtReal, ExtReal>> ranges;
  bool all_monotone = true;
  int total_components = 0;
};

inline bool range_pair_less(const std::pair<ExtReal, ExtReal>& a,
                            const std::pair<ExtReal, ExtReal>& b) {
  int c = ext_compare(a.first, b.first);
  if (c != 0) return c < 0;
  return ext_compare(a.second, b.second) < 0;
}

inline LevelSetRanges level_set_q_ranges(const PinchukBundle& B,
                                         const ExactRational& c, int samples) {
  LevelSetRanges out;
  for (const LevelSetChart& ch : level_set_param(c)) {
    QRangeReport rep = scan_q_ranges(B, ch, samples);
    for (const ComponentReport& cr : rep.components) {
      out.ranges.emplace_back(cr.range_lo, cr.range_hi);
      out.all_monotone = out.all_monotone && cr.monotone_sign != 0;
      ++out.total_components;
    }
  }
  std::sort(out.ranges.begin(), out.ranges.end(), range_pair_less);
  return out;
}

// The level-set image intervals implied by the asymptotic curve, by regime:
// c > 0, c = 0, -1 < c < 0, c = -1, c < -1.  Sorted the same way as
// level_set_q_ranges, so equal means the scanned geometry matches.
inline std::vector<std::pair<ExtReal, ExtReal>> predicted_q_ranges(
    const ExactRational& c) {
  std::vector<std::pair<ExtReal, ExtReal>> v;
  ExtReal ninf = ExtReal::minus_infinity();
  ExtReal pinf = ExtReal::plus_infinity();
  if (c.sign() > 0 || (ExactRational(-1) < c && c.sign() < 0)) {
    QAsymptoticPair qp = q_asymptotic_values(c);
    ExtReal lo = ExtReal::finite(qp.q_plus);
    ExtReal hi = ExtReal::finite(qp.q_minus);
    if (c.sign() > 0)
      v = {{ninf, lo}, {lo, hi}, {hi, pinf}, {ninf, pinf}};
    else
      v = {{ninf, lo}, {lo, pinf}, {ninf, hi}, {hi, pinf}};
  } else if (c.is_zero()) {
    ExtReal z = ExtReal::finite(ExactRational(0));
    ExtReal a = ExtReal::finite(ExactRational(208));
    v = {{z, a}, {ninf, z}, {z, pinf}, {ninf, z}, {a, pinf}};
  } else if (c == ExactRational(-1)) {
    ExtReal b = ExtReal::finite(ExactRational(-163, 4));
    v = {{ninf, b}, {ninf, b}, {b, pinf}, {b, pinf}};
  } else {
    v = {{ninf, pinf}, {ninf, pinf}};
  }
  std::sort(v.begin(), v.end(), range_pair_less);
  return v;
}

inline bool ranges_equal(const std::vector<std::pair<ExtReal, ExtReal>>& a,
                         const std::vector<std::pair<ExtReal, ExtReal>>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a[i].first == b[i].first && a[i].second == b[i].second))
      return false;
  return true;
}

// ---------------------------------------------------------------------------
// The one-parameter deformation Q -> Q + S(P).  Adding a function of the
// first component to the second is a row operation on the Jacobian matrix,
// so the determinant - and its sum-of-squares form - is untouched; the
// annihilator transports through the coefficient substitution
// Q -> Q - S(P), which also preserves content-freeness and T-degree.

inline PinchukBundle shift_family(const PinchukBundle& B, const UPolyQ& S) {
  if (S.is_zero()) return B;
  PinchukBundle out = B;
  MPoly SP = detail::upoly_at(S, B.P);
  out.Q = B.Q + SP;
  out.u = B.u - SP;
  MPoly F = MPoly::variable(2, 0), H = MPoly::variable(2, 1);
  out.u_spec = B.u_spec - detail::upoly_at(S, F + H);
  if (!(out.u_spec.substitute_poly({B.f, B.h}) == out.u))
    throw InternalError("shifted u fails its (f, h) form");
  if (B.has_minimal_poly()) {
    MPoly y1 = MPoly::variable(2, 0), y2 = MPoly::variable(2, 1);
    MPoly unshift = y2 - detail::upoly_at(S, y1);
    std::vector<MPoly> cs;
    cs.reserve(static_cast<std::size_t>(B.R.poly.degree()) + 1);
    for (int i = 0; i <= B.R.poly.degree(); ++i)
      cs.push_back(B.R.poly[static_cast<std::size_t>(i)].substitute_poly(
          {y1, unshift}));
    out.R.poly = UPolyM(std::move(cs));
    out.R.provenance = B.R.provenance + "+shift";
    if (!upoly_content(out.R.poly, 2).is_constant())
      throw InternalError("shifted annihilator lost primitivity");
    if (!verify_annihilation(out.R, RMap::from_polys({out.P, out.Q}),
                             RatFunc(out.h)))
      throw InternalError("shifted annihilator fails verification");
  }
  return out;
}

}  // namespace rma
