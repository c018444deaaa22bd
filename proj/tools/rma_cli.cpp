#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rma/rma.hpp"

using namespace rma;

namespace {

// Everything a run depends on.  Two runs with equal configuration produce
// byte-identical output: randomized scans draw from a Sampler seeded here and
// nowhere else.  Seed precedence: --seed, then RMA_SEED, then the default.
struct RunConfig {
  std::string command;
  std::optional<std::string> input_path;  // --map FILE
  std::string builtin;                    // --builtin NAME
  std::uint64_t seed = kDefaultSeed;
  std::size_t sample_budget = 512;
  std::string output_format = "text";  // text | json | csv
  std::vector<std::string> point_args;
  std::string out_path;
  std::string trace_path;
  std::string golden_path = "data/fullR.json";
  std::string which;   // emit-curves: asymptotic | singular | levelset
  std::string level = "0";
  std::string target;  // reduce: yagzhev | symmetric
  std::string range_lo, range_hi, range_step;
  bool expensive = false;
};

std::uint64_t seed_from_env() {
  const char* s = std::getenv("RMA_SEED");
  if (s == nullptr || *s == '\0') return kDefaultSeed;
  char* end = nullptr;
  unsigned long long v = std::strtoull(s, &end, 0);
  if (end == s || *end != '\0')
    throw StructuralError("RMA_SEED is not an integer: '" + std::string(s) + "'");
  return v;
}

RMap resolve_map(const RunConfig& cfg) {
  if (cfg.input_path) return load_rmap(*cfg.input_path);
  if (!cfg.builtin.empty()) return builtin_map(cfg.builtin);
  throw StructuralError("need --map FILE or --builtin NAME");
}

Point parse_point(const std::vector<std::string>& args) {
  Point p;
  p.reserve(args.size());
  for (const auto& a : args) p.push_back(ExactRational::parse(a));
  return p;
}

// Report text goes to stdout and, when requested, verbatim to a file.
void deliver(const RunConfig& cfg, const std::string& text) {
  std::cout << text;
  if (!cfg.out_path.empty()) save_text(cfg.out_path, text);
}

// --- verify-paper -----------------------------------------------------------

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;  // empty on a clean pass
};

// Each identity returns an empty string on success and the reason on failure;
// thrown errors fail the item instead of aborting the run.
std::vector<CheckResult> run_paper_checks(const RunConfig& cfg) {
  const PinchukBundle B = build_pinchuk();
  const RMap F = pinchuk_map(B);
  std::vector<CheckResult> out;
  auto add = [&](const std::string& name, auto&& fn) {
    CheckResult r{name, false, ""};
    try {
      r.detail = fn();
      r.pass = r.detail.empty();
    } catch (const Error& e) {
      r.detail = e.what();
    }
    out.push_back(std::move(r));
  };

  add("jacobian-sos", [&]() -> std::string {
    JacobianData jd = jacobian(F);
    MPoly lin = MPoly::constant(2, ExactRational(13)) + B.h * ExactRational(15);
    MPoly mid = B.t + B.f * lin;
    if (!(jd.det == RatFunc(B.t * B.t + mid * mid + B.f * B.f)))
      return "determinant is not t^2 + (t + f (13 + 15 h))^2 + f^2";
    SosCertificate cert = pinchuk_jacobian_certificate(B);
    if (!sos_certificate_matches(jd.det.num(), cert))
      return "sum-of-squares certificate does not expand to the determinant";
    if (nowhere_vanishing_det(F, {cert}).verdict != Verdict::Yes)
      return "positivity verdict is not Yes";
    return "";
  });

  add("component-degrees", [&]() -> std::string {
    if (B.P.total_degree() != 10)
      return "deg P = " + std::to_string(B.P.total_degree()) + ", expected 10";
    if (B.Q.total_degree() != 25)
      return "deg Q = " + std::to_string(B.Q.total_degree()) + ", expected 25";
    return "";
  });

  add("fullR-golden", [&]() -> std::string {
    std::ifstream in(cfg.golden_path, std::ios::binary);
    if (!in) return "cannot open " + cfg.golden_path;
    std::stringstream ss;
    ss << in.rdbuf();
    if (ss.str() != annihilator_to_json(B.R).dump(2) + "\n")
      return cfg.golden_path + " differs from the structured annihilator";
    return "";
  });

  add("annihilation", [&]() -> std::string {
    if (!verify_annihilation(B.R, F, RatFunc(B.h)))
      return "R(P, Q, h) does not vanish identically";
    return "";
  });

  add("extension-degree-parity", [&]() -> std::string {
    if (extension_degree(B.R) != 6)
      return "extension degree is " + std::to_string(extension_degree(B.R));
    if (!parity_check(6, 2)) return "6 - 2 is not even";
    return "";
  });

  add("xy-recoverable", [&]() -> std::string {
    if (!verify_xy_recoverable(B))
      return "x, y are not rational in (P, Q, h) by the recorded formulas";
    return "";
  });

  add("y-axis-line", [&]() -> std::string {
    if (!verify_y_axis_image(B))
      return "the image of the y-axis is not the line 4Q = 200P + 33";
    return "";
  });

  add("partials-of-R", [&]() -> std::string {
    MPoly P = MPoly::variable(2, 0);
    std::vector<MPoly> dq;
    for (int i = 0; i <= B.R.poly.degree(); ++i)
      dq.push_back(B.R.poly[static_cast<std::size_t>(i)].partial_derivative(1));
    std::vector<MPoly> want{-(P * P), P * ExactRational(2),
                            MPoly::constant(2, ExactRational(-1))};
    if (!(UPolyM(std::move(dq)) == UPolyM(std::move(want))))
      return "dR/dQ is not -(T - P)^2";
    // dR/dP with P renamed to T afterwards: both live in the same variable.
    MPoly acc = MPoly::zero(2);
    for (int i = 0; i <= B.R.poly.degree(); ++i)
      acc += B.R.poly[static_cast<std::size_t>(i)].partial_derivative(0) *
             P.pow(static_cast<unsigned>(i));
    MPoly expect = P.pow(3) * (P * P * ExactRational(6) + P * ExactRational(14) +
                               MPoly::constant(2, ExactRational(8)));
    if (!(acc == expect)) return "dR/dP at P = T is not T^3 (6 T^2 + 14 T + 8)";
    return "";
  });

  add("asymptotic-curve", [&]() -> std::string {
    const AsymptoticCurve& c = asymptotic_curve();
    MPoly Ps = from_upoly_q(c.P_of_s), Qs = from_upoly_q(c.Q_of_s);
    if (!c.min_equation.substitute_poly({Ps, Qs}).is_zero())
      return "parametrization does not satisfy the implicit equation";
    struct Probe {
      ExactRational s, p, q;
    } probes[] = {{ExactRational(1), ExactRational(0), ExactRational(0)},
                  {ExactRational(-1), ExactRational(0), ExactRational(208)},
                  {ExactRational(0), ExactRational(-1), ExactRational(-163, 4)}};
    for (const Probe& pr : probes)
      if (c.P_of_s.eval(pr.s) != pr.p || c.Q_of_s.eval(pr.s) != pr.q)
        return "curve misses (" + pr.p.str() + ", " + pr.q.str() + ") at s = " +
               pr.s.str();
    if (!c.min_equation.eval(c.extra_zariski_point).is_zero())
      return "extra Zariski point is off the curve";
    return "";
  });

  add("singular-branches", [&]() -> std::string {
    std::vector<SingularBranch> brs = singular_branches(B);
    if (brs.size() != 4)
      return "expected four branches, got " + std::to_string(brs.size());
    for (const SingularBranch& br : brs) {
      ExactRational want(br.case_id == 1 ? 0 : -1);
      if (br.p_value != want || br.h_value != want)
        return br.name + " has the wrong constant P or h";
    }
    return "";
  });

  add("level-set-charts", [&]() -> std::string {
    generic_level_set();  // throws if h o chart = h or P o chart = c fails
    struct Row {
      ExactRational c;
      std::size_t components;
    } rows[] = {{ExactRational(3), 4},
                {ExactRational(0), 5},
                {ExactRational(-1), 4},
                {ExactRational(-2), 2}};
    for (const Row& row : rows) {
      std::size_t found = 0;
      for (const LevelSetChart& ch : level_set_param(row.c))
        found += ch.component_count();
      if (found != row.components)
        return "level c = " + row.c.str() + " has " + std::to_string(found) +
               " components, expected " + std::to_string(row.components);
    }
    // At c = 3 the h-chart is excluded exactly at h = -3, 1, 3.
    std::vector<LevelSetChart> charts = level_set_param(ExactRational(3));
    const std::vector<ExtReal> want{ExtReal::finite(ExactRational(-3)),
                                    ExtReal::finite(ExactRational(1)),
                                    ExtReal::finite(ExactRational(3))};
    if (charts.size() != 1 || !(charts[0].boundaries == want))
      return "c = 3 chart gaps are not h = -3, 1, 3";
    // On the c = 0 h-chart, Q collapses to an explicit polynomial in h.
    for (const LevelSetChart& ch : level_set_param(ExactRational(0))) {
      if (ch.name != "h-chart") continue;
      MPoly h = MPoly::variable(1, 0);
      MPoly qh = h * h * (h * h * ExactRational(197, 4) + h * ExactRational(104) +
                          MPoly::constant(1, ExactRational(63)));
      if (!(substitute_rf(B.Q, {ch.x, ch.y}) == RatFunc(qh)))
        return "Q on the c = 0 h-chart is not h^2 ((197/4) h^2 + 104 h + 63)";
    }
    return "";
  });

  add("q-ranges-table", [&]() -> std::string {
    int samples = static_cast<int>(cfg.sample_budget);
    struct Row {
      ExactRational c;
      int components;
    } rows[] = {{ExactRational(3), 4},      {ExactRational(1), 4},
                {ExactRational(-3, 4), 4},  {ExactRational(0), 5},
                {ExactRational(-1), 4},     {ExactRational(-2), 2}};
    for (const Row& row : rows) {
      LevelSetRanges got = level_set_q_ranges(B, row.c, samples);
      if (got.total_components != row.components)
        return "level c = " + row.c.str() + " has the wrong component count";
      if (!got.all_monotone)
        return "a component at c = " + row.c.str() + " scanned non-monotone";
      if (!ranges_equal(got.ranges, predicted_q_ranges(row.c)))
        return "scanned Q-ranges at c = " + row.c.str() +
               " differ from the asymptotic prediction";
    }
    return "";
  });

  add("fiber-parity-scan", [&]() -> std::string {
    Sampler sampler(cfg.seed);
    const MPoly& curve = asymptotic_curve().min_equation;
    std::size_t accepted = 0, drawn = 0;
    while (accepted < cfg.sample_budget) {
      if (++drawn > cfg.sample_budget * 64 + 4096)
        return "rejection sampling stalled";
      Point w = sampler.next_point(2, 64, 64);
      // Skip the curve A(F) and the two branch lines P = 0, P = -1, where
      // the annihilator legitimately carries multiple roots.
      if (w[0].is_zero() || w[0] == ExactRational(-1)) continue;
      if (curve.eval(w).is_zero()) continue;
      ++accepted;
      FiberReport rep = fiber_count(B.R, w);
      if (rep.status != FiberStatus::FullDegree)
        return "degree drop at " + point_str(w);
      if (rep.roots.roots.size() != 2)
        return point_str(w) + " has " + std::to_string(rep.roots.roots.size()) +
               " real roots, expected 2";
      for (const IsolatedRoot& rt : rep.roots.roots)
        if (rt.multiplicity != 1)
          return point_str(w) + " has a multiple root";
    }
    return "";
  });

  return out;
}

int cmd_verify_paper(const RunConfig& cfg) {
  std::vector<CheckResult> results = run_paper_checks(cfg);
  std::string first_fail;
  for (const CheckResult& r : results)
    if (!r.pass && first_fail.empty()) first_fail = r.name;

  std::ostringstream os;
  if (cfg.output_format == "json") {
    Json j;
    j["command"] = "verify-paper";
    j["seed"] = cfg.seed;
    j["samples"] = cfg.sample_budget;
    Json items = Json::array();
    for (const CheckResult& r : results) {
      Json it;
      it["name"] = r.name;
      it["pass"] = r.pass;
      it["detail"] = r.detail;
      items.push_back(std::move(it));
    }
    j["items"] = std::move(items);
    j["all_pass"] = first_fail.empty();
    j["first_failure"] = first_fail.empty() ? Json(nullptr) : Json(first_fail);
    os << j.dump(2) << "\n";
  } else if (cfg.output_format == "csv") {
    os << "name,pass\n";
    for (const CheckResult& r : results)
      os << r.name << "," << (r.pass ? 1 : 0) << "\n";
  } else {
    for (const CheckResult& r : results)
      os << (r.pass ? "PASS " : "FAIL ") << r.name
         << (r.detail.empty() ? "" : "  (" + r.detail + ")") << "\n";
    if (first_fail.empty())
      os << "all " << results.size() << " identities hold\n";
    else
      os << "first failing identity: " << first_fail << "\n";
  }
  deliver(cfg, os.str());
  return first_fail.empty() ? 0 : 1;
}

// --- fiber ------------------------------------------------------------------

int cmd_fiber(const RunConfig& cfg) {
  AnnihilatorPoly R;
  std::string source;
  if (cfg.input_path) {
    R = annihilator_for(load_rmap(*cfg.input_path));
    source = *cfg.input_path;
  } else if (!cfg.builtin.empty()) {
    R = builtin_annihilator(cfg.builtin);
    source = cfg.builtin;
  } else {
    throw StructuralError("need --map FILE or --builtin NAME");
  }
  if (cfg.point_args.empty()) throw StructuralError("need --point v1 v2 ...");
  FiberReport rep = fiber_count(R, parse_point(cfg.point_args));

  std::ostringstream os;
  if (cfg.output_format == "json") {
    Json j = fiber_report_to_json(rep);
    j["source"] = source;
    os << j.dump(2) << "\n";
  } else if (cfg.output_format == "csv") {
    os << "lo,hi,multiplicity\n";
    for (const IsolatedRoot& r : rep.roots.roots)
      os << csv_number(r.lo) << "," << csv_number(r.hi) << ","
         << r.multiplicity << "\n";
  } else {
    os << "fiber of " << source << " at " << point_str(rep.point) << "\n";
    os << "  status: "
       << (rep.status == FiberStatus::FullDegree ? "full-degree" : "degree-drop")
       << " (specialized degree " << rep.specialized.degree() << ")\n";
    for (const IsolatedRoot& r : rep.roots.roots)
      os << "  root in [" << r.lo.str() << ", " << r.hi.str()
         << "]  multiplicity " << r.multiplicity << "\n";
    os << "  distinct real roots: " << rep.roots.roots.size()
       << ", with multiplicity: " << rep.roots.total_with_multiplicity
       << ", complex pairs: " << rep.roots.complex_pair_count << "\n";
  }
  deliver(cfg, os.str());
  return 0;
}

// --- emit-curves ------------------------------------------------------------

std::string branch_path(const std::string& out, int k) {
  const std::string suffix = "-" + std::to_string(k) + ".csv";
  if (out.size() > 4 && out.compare(out.size() - 4, 4, ".csv") == 0)
    return out.substr(0, out.size() - 4) + suffix;
  return out + suffix;
}

int cmd_emit_curves(const RunConfig& cfg) {
  if (cfg.out_path.empty()) throw StructuralError("emit-curves needs --out PATH");
  auto pick = [](const std::string& given, const char* fallback) {
    return ExactRational::parse(given.empty() ? fallback : given);
  };
  std::ostringstream os;
  if (cfg.which == "asymptotic") {
    ExactRational lo = pick(cfg.range_lo, "-3"), hi = pick(cfg.range_hi, "3"),
                  step = pick(cfg.range_step, "1/64");
    save_text(cfg.out_path, asymptotic_curve_csv(lo, hi, step));
    os << "wrote " << cfg.out_path << " (asymptotic curve, s in [" << lo.str()
       << ", " << hi.str() << "])\n";
  } else if (cfg.which == "singular") {
    ExactRational lo = pick(cfg.range_lo, "-3"), hi = pick(cfg.range_hi, "3"),
                  step = pick(cfg.range_step, "1/64");
    const PinchukBundle B = build_pinchuk();
    std::vector<SingularBranch> brs = singular_branches(B);
    int k = 0;
    for (const SingularBranch& br : brs) {
      ++k;
      // Respect the branch's half-line: the parameter is x with a fixed sign
      // for case 1 and s = sqrt(-y) > 0 for case 2.
      ExactRational blo = lo, bhi = hi;
      if (br.case_id == 1 && br.side < 0) {
        if (!(bhi < -step)) bhi = -step;
      } else {
        if (!(step < blo)) blo = step;
      }
      std::string path = branch_path(cfg.out_path, k);
      save_text(path, singular_branch_csv(br, blo, bhi, step));
      os << "wrote " << path << " (" << br.name << ")\n";
    }
  } else if (cfg.which == "levelset") {
    ExactRational lo = pick(cfg.range_lo, "-4"), hi = pick(cfg.range_hi, "4"),
                  step = pick(cfg.range_step, "1/64");
    ExactRational c = ExactRational::parse(cfg.level);
    const PinchukBundle B = build_pinchuk();
    save_text(cfg.out_path, level_set_csv(B, c, lo, hi, step));
    os << "wrote " << cfg.out_path << " (level set P = " << c.str() << ")\n";
  } else {
    throw StructuralError("unknown curve family '" + cfg.which +
                          "' (expected asymptotic, singular or levelset)");
  }
  std::cout << os.str();
  return 0;
}

// --- reduce -----------------------------------------------------------------

std::string derive_trace_path(const std::string& out) {
  if (out.size() > 5 && out.compare(out.size() - 5, 5, ".json") == 0)
    return out.substr(0, out.size() - 5) + ".trace.json";
  return out + ".trace.json";
}

int cmd_reduce(const RunConfig& cfg) {
  if (cfg.out_path.empty()) throw StructuralError("reduce needs --out PATH");
  const std::string trace_path =
      cfg.trace_path.empty() ? derive_trace_path(cfg.out_path) : cfg.trace_path;
  RMap F = resolve_map(cfg);
  std::ostringstream os;

  if (cfg.target == "symmetric") {
    RMap G = symmetric_extend(F);
    const std::size_t n = F.domain_arity, N = G.domain_arity;
    JacobianData jg = jacobian(G);
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = i + 1; j < N; ++j)
        if (!(jg.matrix[i][j] == jg.matrix[j][i]))
          throw InternalError("extended jacobian matrix is not symmetric");
    std::vector<RatFunc> shift;
    for (std::size_t j = 0; j < n; ++j) shift.push_back(RatFunc::variable(N, n + j));
    RatFunc jf = substitute_rf(jacobian(F).det, shift);
    RatFunc want = jf * jf * ExactRational(n % 2 == 0 ? 1 : -1);
    if (!(jg.det == want))
      throw InternalError("determinant of the extension is not (-1)^n j(F)^2");

    save_json(cfg.out_path, rmap_to_json(G));
    ReductionTrace trace;
    bool polynomial = true;
    for (const auto& c : F.components)
      polynomial = polynomial && c.is_polynomial();
    if (polynomial) {
      // Transports: G(0, x) = (F(x), 0), so sections pad with zeros and the
      // projection keeps the first n coordinates.
      ReductionStep st;
      st.kind = "symmetric-extend";
      st.arity_in = n;
      st.arity_out = N;
      for (std::size_t j = 0; j < n; ++j) st.introduced.push_back(j);
      for (std::size_t j = 0; j < n; ++j) st.section.push_back(MPoly::zero(n));
      for (std::size_t j = 0; j < n; ++j)
        st.section.push_back(MPoly::variable(n, j));
      for (std::size_t j = 0; j < n; ++j)
        st.embed.push_back(MPoly::variable(n, j));
      for (std::size_t j = 0; j < n; ++j) st.embed.push_back(MPoly::zero(n));
      for (std::size_t j = 0; j < n; ++j)
        st.project.push_back(MPoly::variable(N, j));
      st.output = PolyMap::from_rmap(G);
      trace.steps.push_back(std::move(st));
      if (!verify_trace(PolyMap::from_rmap(F), PolyMap::from_rmap(G), trace))
        throw InternalError("symmetric extension trace does not replay");
      trace.checks.push_back(
          "trace-replay: project o G o section = F holds symbolically");
    }
    trace.checks.push_back(
        "jacobian-symmetric: J(G) equals its transpose symbolically");
    trace.checks.push_back(
        "determinant-squared: det J(G) = (-1)^n (det J(F))^2 symbolically");
    save_json(trace_path, trace_to_json(trace));

    os << "symmetric extension: " << n << " -> " << N << " variables\n";
    for (const std::string& c : trace.checks) os << "  " << c << "\n";
  } else if (cfg.target == "yagzhev") {
    PolyMap pm = PolyMap::from_rmap(F);
    Point x0 = cfg.point_args.empty() ? Point(pm.arity, ExactRational(0))
                                      : parse_point(cfg.point_args);
    const std::size_t budget =
        cfg.expensive ? kReductionDimensionCap : kReductionDimensionDefault;
    auto [form, trace] = to_yagzhev(pm, x0, budget);
    save_json(cfg.out_path, polymap_to_json(form.base));
    save_json(trace_path, trace_to_json(trace));
    os << "cubic homogeneous form: " << pm.arity << " -> " << form.base.arity
       << " variables in " << trace.steps.size() << " steps\n";
    for (const std::string& c : trace.checks) os << "  " << c << "\n";
  } else {
    throw StructuralError("unknown reduction target '" + cfg.target +
                          "' (expected yagzhev or symmetric)");
  }
  os << "wrote " << cfg.out_path << " and " << trace_path << "\n";
  std::cout << os.str();
  return 0;
}

bool is_rational_literal(const std::string& s) {
  std::size_t i = s.empty() || (s[0] != '-' && s[0] != '+') ? 0 : 1;
  bool digits = false, slash = false, denom = false;
  for (; i < s.size(); ++i) {
    if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      (slash ? denom : digits) = true;
    } else if (s[i] == '/' && !slash && digits) {
      slash = true;
    } else {
      return false;
    }
  }
  return digits && (!slash || denom);
}

// Rewrite "--point a b ..." into repeated "--point=a" tokens so negative
// coordinates are not mistaken for flags.
std::vector<std::string> cook_args(int argc, char** argv) {
  std::vector<std::string> cooked;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--point") {
      while (i + 1 < argc && is_rational_literal(argv[i + 1]))
        cooked.push_back("--point=" + std::string(argv[++i]));
    } else {
      cooked.push_back(std::move(a));
    }
  }
  return cooked;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"exact toolkit for everywhere-defined real rational maps"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "seed for every randomized scan");
    sub->add_option("--samples", cfg.sample_budget, "sample budget per scan");
    sub->add_option("--format", cfg.output_format, "text, json or csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    sub->add_option("--out", cfg.out_path, "write the result to this file");
  };
  auto add_source = [&](CLI::App* sub) {
    sub->add_option("--map", cfg.input_path, "map as a JSON file");
    sub->add_option("--builtin", cfg.builtin,
                    "pinchuk, example-uni, cubic-demo or square");
  };

  CLI::App* vp = app.add_subcommand(
      "verify-paper", "replay the recorded identities of the worked example");
  add_common(vp);
  vp->add_option("--golden", cfg.golden_path, "golden annihilator file");

  CLI::App* fib = app.add_subcommand(
      "fiber", "count real preimages over a rational point");
  add_common(fib);
  add_source(fib);
  fib->add_option("--point", cfg.point_args, "target point, one rational per coordinate");

  CLI::App* ec = app.add_subcommand(
      "emit-curves", "sample the worked example's curves to CSV");
  add_common(ec);
  ec->add_option("--which", cfg.which, "asymptotic, singular or levelset")
      ->required();
  ec->add_option("--level", cfg.level, "level c for --which levelset");
  ec->add_option("--lo", cfg.range_lo, "lower end of the parameter range");
  ec->add_option("--hi", cfg.range_hi, "upper end of the parameter range");
  ec->add_option("--step", cfg.range_step, "parameter step");

  CLI::App* red = app.add_subcommand(
      "reduce", "rewrite a polynomial map in a normal form");
  add_common(red);
  add_source(red);
  red->add_option("--target", cfg.target, "yagzhev or symmetric")->required();
  red->add_option("--trace", cfg.trace_path, "trace file (default: OUT.trace.json)");
  red->add_option("--point", cfg.point_args, "base point for the reduction");
  red->add_flag("--expensive", cfg.expensive,
                "allow the large intermediate dimension budget");

  try {
    cfg.seed = seed_from_env();
    std::vector<std::string> args = cook_args(argc, argv);
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
    if (vp->parsed()) return cmd_verify_paper(cfg);
    if (fib->parsed()) return cmd_fiber(cfg);
    if (ec->parsed()) return cmd_emit_curves(cfg);
    if (red->parsed()) return cmd_reduce(cfg);
    throw StructuralError("no subcommand given");
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 3;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 4;
  } catch (const InternalError& e) {
    std::cerr << "internal invariant failed: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
