#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rma/annihilator.hpp"
#include "rma/mpoly.hpp"
#include "rma/pinchuk.hpp"
#include "rma/realroots.hpp"
#include "rma/reductions.hpp"
#include "rma/rmap.hpp"

namespace rma {

// Serialization layer.  Key order is insertion order, so every emitter here
// is byte-deterministic; content errors throw StructuralError (bad input,
// exit 2 at the CLI) while filesystem failures throw IoError (exit 4).
using Json = nlohmann::ordered_json;

// --- polynomial literals ------------------------------------------------------
//
// A polynomial is a list of [coefficient, exponent-vector] pairs with exact
// rational coefficient strings, leading term first:
//   [["197/4", [6]], ["-1", [0]]]
// The zero polynomial is the empty list.

inline Json poly_to_json(const MPoly& p) {
  Json out = Json::array();
  const auto& ts = p.terms();
  for (auto it = ts.rbegin(); it != ts.rend(); ++it) {
    Json exps = Json::array();
    for (auto e : it->first.exps) exps.push_back(e);
    out.push_back(Json::array({it->second.str(), exps}));
  }
  return out;
}

inline MPoly poly_from_json(const Json& j, std::size_t arity) {
  if (!j.is_array())
    throw StructuralError("polynomial literal must be an array of terms");
  MPoly p = MPoly::zero(arity);
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 2 || !t[0].is_string() || !t[1].is_array())
      throw StructuralError("polynomial term must be [\"p/q\", [exponents]]");
    if (t[1].size() != arity)
      throw StructuralError("exponent vector length does not match the variable count");
    std::vector<std::uint32_t> exps;
    exps.reserve(arity);
    for (const auto& e : t[1]) {
      if (!e.is_number_integer() || e.get<long long>() < 0)
        throw StructuralError("exponents must be nonnegative integers");
      exps.push_back(e.get<std::uint32_t>());
    }
    p = p + MPoly::term(arity, std::move(exps),
                        ExactRational::parse(t[0].get<std::string>()));
  }
  return p;
}

// --- maps ----------------------------------------------------------------------
//
// { "vars": ["x", "y"], "components": [ { "num": <poly>, "den": <poly> } ] }
// with "den" omitted when the component is a polynomial.

inline Json rmap_to_json(const RMap& F, std::vector<std::string> names = {}) {
  if (names.empty()) names = MPoly::default_names(F.domain_arity);
  if (names.size() != F.domain_arity)
    throw StructuralError("variable name count mismatch");
  Json out;
  out["vars"] = names;
  Json comps = Json::array();
  for (const auto& c : F.components) {
    Json jc;
    jc["num"] = poly_to_json(c.num());
    if (!(c.den().is_constant() && c.den().constant_value().is_one()))
      jc["den"] = poly_to_json(c.den());
    comps.push_back(std::move(jc));
  }
  out["components"] = std::move(comps);
  return out;
}

inline Json polymap_to_json(const PolyMap& F,
                            std::vector<std::string> names = {}) {
  return rmap_to_json(F.as_rmap(), std::move(names));
}

inline RMap rmap_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("vars") || !j.contains("components"))
    throw StructuralError("map object needs \"vars\" and \"components\"");
  if (!j["vars"].is_array() || j["vars"].empty())
    throw StructuralError("\"vars\" must be a nonempty array of names");
  const std::size_t arity = j["vars"].size();
  if (!j["components"].is_array() || j["components"].empty())
    throw StructuralError("\"components\" must be a nonempty array");
  std::vector<RatFunc> comps;
  for (const auto& jc : j["components"]) {
    if (!jc.is_object() || !jc.contains("num"))
      throw StructuralError("map component needs a \"num\" polynomial");
    MPoly num = poly_from_json(jc["num"], arity);
    MPoly den = jc.contains("den") ? poly_from_json(jc["den"], arity)
                                   : MPoly::constant(arity, ExactRational(1));
    comps.push_back(RatFunc::make(std::move(num), std::move(den)));
  }
  return RMap(arity, std::move(comps));
}

// --- annihilators ----------------------------------------------------------------
//
// { "T_degree": d, "coeffs": [ <poly literal in Y>, ... ] } by ascending
// T-degree; the Y-arity is read off the exponent vectors.

inline Json annihilator_to_json(const AnnihilatorPoly& R) {
  Json out;
  out["T_degree"] = R.t_degree();
  Json coeffs = Json::array();
  for (int i = 0; i <= R.poly.degree(); ++i)
    coeffs.push_back(poly_to_json(R.poly[static_cast<std::size_t>(i)]));
  out["coeffs"] = std::move(coeffs);
  return out;
}

inline AnnihilatorPoly annihilator_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("T_degree") || !j.contains("coeffs"))
    throw StructuralError("annihilator object needs \"T_degree\" and \"coeffs\"");
  if (!j["T_degree"].is_number_integer() || j["T_degree"].get<long long>() < 0)
    throw StructuralError("\"T_degree\" must be a nonnegative integer");
  const std::size_t d = j["T_degree"].get<std::size_t>();
  if (!j["coeffs"].is_array() || j["coeffs"].size() != d + 1)
    throw StructuralError("\"coeffs\" must list T_degree + 1 polynomials");
  std::size_t arity = 0;
  for (const auto& jc : j["coeffs"]) {
    if (!jc.is_array()) throw StructuralError("polynomial literal must be an array of terms");
    for (const auto& t : jc)
      if (t.is_array() && t.size() == 2 && t[1].is_array()) {
        arity = t[1].size();
        break;
      }
  }
  if (arity == 0)
    throw StructuralError("annihilator coefficients are all zero");
  std::vector<MPoly> cs;
  cs.reserve(d + 1);
  for (const auto& jc : j["coeffs"]) cs.push_back(poly_from_json(jc, arity));
  AnnihilatorPoly R;
  R.image_arity = arity;
  R.poly = UPolyM(std::move(cs));
  if (static_cast<std::size_t>(R.poly.degree()) != d)
    throw StructuralError("leading \"coeffs\" entry is zero; T_degree is inconsistent");
  R.provenance = "loaded";
  return R;
}

// --- fiber reports ----------------------------------------------------------------
//
// Interval endpoints stay exact rational strings; doubles are for plots, not
// for records.

inline Json fiber_report_to_json(const FiberReport& rep) {
  Json out;
  Json pt = Json::array();
  for (const auto& v : rep.point) pt.push_back(v.str());
  out["point"] = std::move(pt);
  out["status"] =
      rep.status == FiberStatus::FullDegree ? "full-degree" : "degree-drop";
  out["specialized_degree"] = rep.specialized.degree();
  Json roots = Json::array();
  for (const auto& r : rep.roots.roots) {
    Json jr;
    jr["lo"] = r.lo.str();
    jr["hi"] = r.hi.str();
    jr["multiplicity"] = r.multiplicity;
    roots.push_back(std::move(jr));
  }
  out["roots"] = std::move(roots);
  out["real_roots_with_multiplicity"] = rep.roots.total_with_multiplicity;
  out["complex_pairs"] = rep.roots.complex_pair_count;
  return out;
}

// --- reduction traces ----------------------------------------------------------------
//
// Steps in order, introduced variables named "w0", "w1", ... across the whole
// trace, each step carrying its three transport maps as polynomial literals.

inline Json trace_to_json(const ReductionTrace& tr) {
  Json out;
  Json steps = Json::array();
  std::size_t fresh = 0;
  for (const auto& st : tr.steps) {
    Json js;
    js["kind"] = st.kind;
    js["arity_in"] = st.arity_in;
    js["arity_out"] = st.arity_out;
    Json intro = Json::array();
    for (std::size_t k = 0; k < st.introduced.size(); ++k)
      intro.push_back("w" + std::to_string(fresh++));
    js["introduced"] = std::move(intro);
    Json sec = Json::array(), emb = Json::array(), prj = Json::array();
    for (const auto& p : st.section) sec.push_back(poly_to_json(p));
    for (const auto& p : st.embed) emb.push_back(poly_to_json(p));
    for (const auto& p : st.project) prj.push_back(poly_to_json(p));
    js["section"] = std::move(sec);
    js["embed"] = std::move(emb);
    js["project"] = std::move(prj);
    steps.push_back(std::move(js));
  }
  out["steps"] = std::move(steps);
  out["checks"] = tr.checks;
  return out;
}

// --- files ----------------------------------------------------------------------

inline Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw StructuralError(path + " is not valid JSON: " + e.what());
  }
}

inline void save_text(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << content;
  if (!out) throw IoError("write to " + path + " failed");
}

inline void save_json(const std::string& path, const Json& j) {
  save_text(path, j.dump(2) + "\n");
}

inline RMap load_rmap(const std::string& path) {
  return rmap_from_json(load_json(path));
}

inline AnnihilatorPoly load_annihilator(const std::string& path) {
  return annihilator_from_json(load_json(path));
}

// --- CSV -------------------------------------------------------------------------
//
// CSV consumers are numeric: exact rationals render as decimals with twelve
// significant digits.  Column sets are fixed per emitter.

inline std::string csv_number(const ExactRational& v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v.to_double());
  return buf;
}

namespace detail {

inline void csv_row(std::string& out, std::initializer_list<ExactRational> vs) {
  bool first = true;
  for (const auto& v : vs) {
    if (!first) out += ',';
    out += csv_number(v);
    first = false;
  }
  out += '\n';
}

}  // namespace detail

// Asymptotic curve samples: columns s,P,Q over an inclusive range.
inline std::string asymptotic_curve_csv(const ExactRational& lo,
                                        const ExactRational& hi,
                                        const ExactRational& step) {
  if (!(ExactRational(0) < step)) throw DomainError("step must be positive");
  const AsymptoticCurve& curve = asymptotic_curve();
  std::string out = "s,P,Q\n";
  for (ExactRational s = lo; !(hi < s); s += step)
    detail::csv_row(out, {s, curve.P_of_s.eval(s), curve.Q_of_s.eval(s)});
  return out;
}

// One singular branch: columns param,x,y; parameter values where the branch
// is undefined are skipped, not interpolated.
inline std::string singular_branch_csv(const SingularBranch& br,
                                       const ExactRational& lo,
                                       const ExactRational& hi,
                                       const ExactRational& step) {
  if (!(ExactRational(0) < step)) throw DomainError("step must be positive");
  std::string out = "param,x,y\n";
  for (ExactRational s = lo; !(hi < s); s += step) {
    auto x = br.x.eval_opt({s});
    auto y = br.y.eval_opt({s});
    if (!x || !y) continue;
    detail::csv_row(out, {s, *x, *y});
  }
  return out;
}

// Level-set samples across every chart of the level: columns h,x,y,Q.  Pole
// and boundary parameters leave gaps in the file, which is exactly how the
// component structure shows up in a plot.
inline std::string level_set_csv(const PinchukBundle& B, const ExactRational& c,
                                 const ExactRational& lo, const ExactRational& hi,
                                 const ExactRational& step) {
  if (!(ExactRational(0) < step)) throw DomainError("step must be positive");
  std::string out = "h,x,y,Q\n";
  for (const LevelSetChart& chart : level_set_param(c)) {
    RatFunc q_chart = substitute_rf(B.Q, {chart.x, chart.y});
    for (ExactRational s = lo; !(hi < s); s += step) {
      auto h = chart.h_on_chart.eval_opt({s});
      auto x = chart.x.eval_opt({s});
      auto y = chart.y.eval_opt({s});
      auto qv = q_chart.eval_opt({s});
      if (!h || !x || !y || !qv) continue;
      detail::csv_row(out, {*h, *x, *y, *qv});
    }
  }
  return out;
}

}  // namespace rma
