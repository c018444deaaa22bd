#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "rma/rma.hpp"
#include "test_support.hpp"

using namespace rma;
using Catch::Matchers::ContainsSubstring;

namespace {

ExactRational q(long n, long d = 1) { return ExactRational(n, d); }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::filesystem::path& scratch_dir() {
  static const std::filesystem::path dir = [] {
    std::filesystem::path d = std::filesystem::temp_directory_path() /
                              ("rma-io-cli-" + std::to_string(getpid()));
    std::filesystem::create_directories(d);
    return d;
  }();
  return dir;
}

// The hand-checked reduction trace of x + x^3 to cubic homogeneous form.
// Stage by stage: the origin is already normalized (identity transports),
// replication pins t = 1 on the section, and homogenization sends
// (x, t) to (x, -x^3, t) so that both replay identities hold at once.
Json golden_cubic_demo_trace() {
  return Json::parse(R"({
    "steps": [
      {"kind": "normalize-origin", "arity_in": 1, "arity_out": 1,
       "introduced": [],
       "section": [[["1", [1]]]],
       "embed": [[["1", [1]]]],
       "project": [[["1", [1]]]]},
      {"kind": "replicate", "arity_in": 1, "arity_out": 2,
       "introduced": ["w0"],
       "section": [[["1", [1]]], [["1", [0]]]],
       "embed": [[["1", [1]]], [["1", [0]]]],
       "project": [[["1", [1, 0]]]]},
      {"kind": "cubic-homogenize", "arity_in": 2, "arity_out": 3,
       "introduced": ["w1"],
       "section": [[["1", [1, 0]]], [["-1", [3, 0]]], [["1", [0, 1]]]],
       "embed": [[["1", [1, 0]]], [], [["1", [0, 1]]]],
       "project": [[["1", [0, 1, 2]], ["1", [1, 0, 0]]], [["1", [0, 0, 1]]]]}
    ],
    "checks": [
      "trace-replay: project o G o section = F holds symbolically",
      "sampled-transport: nonsingularity and fiber correspondence agree at 32 seeded points"
    ]
  })");
}

// The cubic homogeneous output map of the same reduction.
Json golden_cubic_demo_map() {
  return Json::parse(R"({
    "vars": ["x", "y", "z"],
    "components": [
      {"num": [["-1", [0, 1, 2]], ["1", [1, 0, 0]]]},
      {"num": [["1", [3, 0, 0]], ["1", [0, 1, 0]]]},
      {"num": [["1", [0, 0, 1]]]}
    ]
  })");
}

struct CliRun {
  int code = -1;
  std::string out, err;
};

// Run the installed binary through the shell, from `dir`, capturing both
// streams.  `env` is a prefix like "RMA_SEED=7".
CliRun run_cli(const std::string& args, const std::string& dir,
               const std::string& env = "") {
  static int counter = 0;
  std::string outf =
      (scratch_dir() / ("out" + std::to_string(counter) + ".txt")).string();
  std::string errf =
      (scratch_dir() / ("err" + std::to_string(counter) + ".txt")).string();
  ++counter;
  std::string cmd = "cd '" + dir + "' && " + (env.empty() ? "" : env + " ") +
                    "'" + RMA_CLI_PATH + "' " + args + " > '" + outf +
                    "' 2> '" + errf + "'";
  int rc = std::system(cmd.c_str());
  CliRun r;
  r.code = rc == -1 ? -1 : (WIFEXITED(rc) ? WEXITSTATUS(rc) : -1);
  r.out = slurp(outf);
  r.err = slurp(errf);
  return r;
}

CliRun run_cli_here(const std::string& args, const std::string& env = "") {
  return run_cli(args, scratch_dir().string(), env);
}

}  // namespace

TEST_CASE("polynomial literals round-trip and reject malformed shapes",
          "[io]") {
  MPoly P = MPoly::variable(2, 0), Q = MPoly::variable(2, 1);
  MPoly p = P * P * Q * q(-7, 3) + P * q(2) + MPoly::constant(2, q(5));

  Json j = poly_to_json(p);
  REQUIRE(j.is_array());
  // Leading term first under the graded order.
  CHECK(j[0] == Json::array({"-7/3", Json::array({2, 1})}));
  CHECK(poly_from_json(j, 2) == p);

  CHECK(poly_to_json(MPoly::zero(3)) == Json::array());
  CHECK(poly_from_json(Json::array(), 3) == MPoly::zero(3));

  Sampler sampler(41);
  for (int i = 0; i < 50; ++i) {
    MPoly r = testsupport::random_mpoly(sampler, 3);
    CHECK(poly_from_json(poly_to_json(r), 3) == r);
  }

  CHECK_THROWS_AS(poly_from_json(Json::parse("{}"), 2), StructuralError);
  CHECK_THROWS_AS(poly_from_json(Json::parse(R"([["1"]])"), 2), StructuralError);
  CHECK_THROWS_AS(poly_from_json(Json::parse(R"([["1",[0]]])"), 2),
                  StructuralError);
  CHECK_THROWS_AS(poly_from_json(Json::parse(R"([["1",[0,-1]]])"), 2),
                  StructuralError);
  CHECK_THROWS_AS(poly_from_json(Json::parse(R"([["1",[0,"a"]]])"), 2),
                  StructuralError);
  CHECK_THROWS_AS(poly_from_json(Json::parse(R"([["1.5",[0,0]]])"), 2),
                  StructuralError);
}

TEST_CASE("map JSON round-trips with optional denominators", "[io]") {
  SECTION("a polynomial map omits every denominator") {
    RMap F = builtin_map("pinchuk");
    Json j = rmap_to_json(F);
    CHECK(j["vars"] == Json::array({"x", "y"}));
    for (const auto& c : j["components"]) CHECK_FALSE(c.contains("den"));
    RMap back = rmap_from_json(j);
    REQUIRE(back.domain_arity == 2);
    for (std::size_t i = 0; i < 2; ++i)
      CHECK(back.components[i] == F.components[i]);
  }

  SECTION("a rational map keeps its denominator and normalizes on load") {
    RMap F = builtin_map("example-uni");
    Json j = rmap_to_json(F);
    REQUIRE(j["components"][0].contains("den"));
    RMap back = rmap_from_json(j);
    CHECK(back.components[0] == F.components[0]);

    // An unreduced fraction reduces on load: 2x / 2(x^2+1) = x / (x^2+1).
    Json raw = Json::parse(R"({
      "vars": ["x"],
      "components": [{"num": [["2", [1]]],
                      "den": [["2", [2]], ["2", [0]]]}]
    })");
    MPoly x = MPoly::variable(1, 0);
    CHECK(rmap_from_json(raw).components[0] ==
          RatFunc::make(x, x * x + MPoly::constant(1, q(1))));
  }

  SECTION("schema violations are structural errors") {
    CHECK_THROWS_AS(rmap_from_json(Json::parse("[]")), StructuralError);
    CHECK_THROWS_AS(rmap_from_json(Json::parse(R"({"vars": []})")),
                    StructuralError);
    CHECK_THROWS_AS(
        rmap_from_json(Json::parse(R"({"vars": ["x"], "components": []})")),
        StructuralError);
    CHECK_THROWS_AS(
        rmap_from_json(Json::parse(R"({"vars": ["x"], "components": [{}]})")),
        StructuralError);
    CHECK_THROWS_WITH(
        rmap_from_json(Json::parse(
            R"({"vars": ["x"], "components": [{"num": [["1", [0, 1]]]}]})")),
        ContainsSubstring("exponent vector length"));
  }

  SECTION("file loading separates i/o failures from content failures") {
    CHECK_THROWS_AS(load_rmap("/nonexistent/nowhere.json"), IoError);
    std::string bad = (scratch_dir() / "bad_map.json").string();
    save_text(bad, "this is not json\n");
    CHECK_THROWS_AS(load_rmap(bad), StructuralError);
  }
}

TEST_CASE("the golden annihilator file matches the structured construction",
          "[io]") {
  const PinchukBundle B = build_pinchuk();
  std::string path = std::string(RMA_SOURCE_DIR) + "/data/fullR.json";

  // Byte-for-byte: the file is exactly what the serializer emits today.
  CHECK(slurp(path) == annihilator_to_json(B.R).dump(2) + "\n");

  AnnihilatorPoly loaded = load_annihilator(path);
  CHECK(loaded.image_arity == 2);
  CHECK(loaded.t_degree() == 6);
  CHECK(loaded.poly == B.R.poly);
}

TEST_CASE("annihilator JSON validates its declared degree", "[io]") {
  const PinchukBundle B = build_pinchuk();
  Json j = annihilator_to_json(B.R);
  CHECK(j["T_degree"] == 6);
  REQUIRE(j["coeffs"].size() == 7);

  AnnihilatorPoly back = annihilator_from_json(j);
  CHECK(back.poly == B.R.poly);

  Json wrong = j;
  wrong["T_degree"] = 7;
  CHECK_THROWS_AS(annihilator_from_json(wrong), StructuralError);

  Json padded = j;
  padded["T_degree"] = 7;
  padded["coeffs"].push_back(Json::array());  // zero leading coefficient
  CHECK_THROWS_WITH(annihilator_from_json(padded),
                    ContainsSubstring("T_degree is inconsistent"));

  Json empty = Json::parse(R"({"T_degree": 0, "coeffs": [[]]})");
  CHECK_THROWS_WITH(annihilator_from_json(empty),
                    ContainsSubstring("all zero"));
}

TEST_CASE("fiber reports carry exact interval endpoints", "[io]") {
  const PinchukBundle B = build_pinchuk();
  Json j = fiber_report_to_json(fiber_count(B.R, {q(1), q(1)}));
  CHECK(j["point"] == Json::array({"1", "1"}));
  CHECK(j["status"] == "full-degree");
  CHECK(j["specialized_degree"] == 6);
  REQUIRE(j["roots"].size() == 2);
  for (const auto& r : j["roots"]) {
    CHECK(r["multiplicity"] == 1);
    ExactRational lo = ExactRational::parse(r["lo"].get<std::string>());
    ExactRational hi = ExactRational::parse(r["hi"].get<std::string>());
    CHECK(!(hi < lo));
  }
  CHECK(j["real_roots_with_multiplicity"] == 2);
  CHECK(j["complex_pairs"] == 2);

  Json drop = fiber_report_to_json(
      fiber_count(builtin_annihilator("example-uni"), {q(0)}));
  CHECK(drop["status"] == "degree-drop");
  CHECK(drop["roots"] == Json::array());
}

TEST_CASE("reduction trace JSON freezes the worked example", "[io]") {
  PolyMap F = PolyMap::from_rmap(builtin_map("cubic-demo"));
  auto [form, trace] = to_yagzhev(F, {q(0)});
  Json j = trace_to_json(trace);
  CHECK(j == golden_cubic_demo_trace());
  CHECK(polymap_to_json(form.base) == golden_cubic_demo_map());
  // Serialization itself is deterministic.
  CHECK(j.dump(2) == trace_to_json(trace).dump(2));
}

TEST_CASE("CSV renders twelve significant digits", "[io]") {
  CHECK(csv_number(q(1, 3)) == "0.333333333333");
  CHECK(csv_number(q(208)) == "208");
  CHECK(csv_number(q(-163, 4)) == "-40.75");
  CHECK(csv_number(q(32385, 4096)) == "7.90649414062");
  CHECK(csv_number(q(0)) == "0");
}

TEST_CASE("asymptotic curve CSV pins its anchor rows", "[io]") {
  std::string csv = asymptotic_curve_csv(q(-3), q(3), q(1, 64));
  std::istringstream in(csv);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  REQUIRE(lines.size() == 386);  // header + 6 * 64 + 1 samples
  CHECK(lines[0] == "s,P,Q");
  CHECK(lines[1] == "-3,8,26480");

  auto has_row = [&](const std::string& row) {
    return std::find(lines.begin(), lines.end(), row) != lines.end();
  };
  CHECK(has_row("1,0,0"));      // the curve crosses the origin at s = 1
  CHECK(has_row("-1,0,208"));   // and (0, 208) at s = -1
  CHECK(has_row("0,-1,-40.75"));
}

TEST_CASE("level-set CSV leaves gaps at the excluded parameters", "[io]") {
  const PinchukBundle B = build_pinchuk();
  std::string csv = level_set_csv(B, q(3), q(-4), q(4), q(1, 64));
  std::istringstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == "h,x,y,Q");
  std::vector<std::string> hs;
  for (std::string line; std::getline(in, line);)
    hs.push_back(line.substr(0, line.find(',')));
  // 513 grid points minus the three excluded values h = -3, 1, 3.
  CHECK(hs.size() == 510);
  for (const char* gap : {"-3", "1", "3"})
    CHECK(std::find(hs.begin(), hs.end(), gap) == hs.end());
  for (const char* kept : {"-4", "-2", "0", "2", "4"})
    CHECK(std::find(hs.begin(), hs.end(), kept) != hs.end());
}

TEST_CASE("singular branch CSV skips the pole of its parametrization",
          "[io]") {
  const PinchukBundle B = build_pinchuk();
  std::vector<SingularBranch> brs = singular_branches(B);
  REQUIRE(brs.size() == 4);
  std::string csv = singular_branch_csv(brs[0], q(-1), q(1), q(1, 4));
  // x = param, y = (param - 1)/param^2: the param = 0 row cannot exist.
  CHECK(csv == "param,x,y\n"
               "-1,-1,-2\n"
               "-0.75,-0.75,-3.11111111111\n"
               "-0.5,-0.5,-6\n"
               "-0.25,-0.25,-20\n"
               "0.25,0.25,-12\n"
               "0.5,0.5,-2\n"
               "0.75,0.75,-0.444444444444\n"
               "1,1,0\n");
}

TEST_CASE("verify-paper passes and its output is byte-deterministic",
          "[cli]") {
  CliRun a = run_cli("verify-paper --samples 64", RMA_SOURCE_DIR);
  CHECK(a.code == 0);
  CHECK_THAT(a.out, ContainsSubstring("all 13 identities hold"));
  CHECK_THAT(a.out, ContainsSubstring("PASS jacobian-sos"));
  CHECK_THAT(a.out, ContainsSubstring("PASS fullR-golden"));

  CliRun b = run_cli("verify-paper --samples 64", RMA_SOURCE_DIR);
  CHECK(a.out == b.out);
  CHECK(b.code == 0);
}

TEST_CASE("verify-paper names a corrupted golden file", "[cli]") {
  std::string good =
      slurp(std::string(RMA_SOURCE_DIR) + "/data/fullR.json");
  std::string corrupted = (scratch_dir() / "fullR_corrupt.json").string();
  std::size_t at = good.find("197/4");
  REQUIRE(at != std::string::npos);
  save_text(corrupted, good.replace(at, 5, "197/5"));

  CliRun r = run_cli_here("verify-paper --samples 16 --golden '" + corrupted +
                          "'");
  CHECK(r.code == 1);
  CHECK_THAT(r.out, ContainsSubstring("FAIL fullR-golden"));
  CHECK_THAT(r.out,
             ContainsSubstring("first failing identity: fullR-golden"));

  // A missing golden file is a named failure too, not an i/o abort.
  CliRun gone = run_cli_here("verify-paper --samples 16 --golden missing.json");
  CHECK(gone.code == 1);
  CHECK_THAT(gone.out, ContainsSubstring("FAIL fullR-golden"));
}

TEST_CASE("fiber subcommand reports the library's counts", "[cli]") {
  CliRun two = run_cli_here("fiber --builtin pinchuk --point 1 1");
  CHECK(two.code == 0);
  CHECK_THAT(two.out, ContainsSubstring("full-degree"));
  CHECK_THAT(two.out, ContainsSubstring("distinct real roots: 2"));

  CliRun dbl = run_cli_here("fiber --builtin pinchuk --point 0 -1");
  CHECK(dbl.code == 0);
  CHECK_THAT(dbl.out, ContainsSubstring("multiplicity 2"));
  CHECK_THAT(dbl.out, ContainsSubstring("distinct real roots: 1"));

  CliRun drop = run_cli_here("fiber --builtin example-uni --point 0");
  CHECK(drop.code == 0);
  CHECK_THAT(drop.out, ContainsSubstring("degree-drop"));

  CliRun js = run_cli_here("fiber --builtin pinchuk --point 1 1 --format json");
  CHECK(js.code == 0);
  Json parsed = Json::parse(js.out);
  CHECK(parsed["status"] == "full-degree");
  CHECK(parsed["roots"].size() == 2);
  CHECK(parsed["source"] == "pinchuk");

  CliRun csv =
      run_cli_here("fiber --builtin example-uni --point 1/2 --format csv");
  CHECK(csv.code == 0);
  CHECK_THAT(csv.out, ContainsSubstring("lo,hi,multiplicity\n"));
}

TEST_CASE("fiber input errors exit with code 2", "[cli]") {
  std::string bad = (scratch_dir() / "not_json.json").string();
  save_text(bad, "not json at all\n");
  CHECK(run_cli_here("fiber --map '" + bad + "' --point 1").code == 2);
  CHECK(run_cli_here("fiber --builtin pinchuk").code == 2);          // no point
  CHECK(run_cli_here("fiber --builtin pinchuk --point 1").code == 2);  // arity
  CHECK(run_cli_here("fiber --builtin nosuch --point 1").code == 2);
  CHECK(run_cli_here("fiber --point 1").code == 2);  // no source at all
  CHECK(run_cli_here("fiber --builtin pinchuk --point 1 bogus").code == 2);
}

TEST_CASE("an oversized elimination refuses with exit code 3", "[cli]") {
  // Eliminating x from (x + y^13, y + x^13) needs a 26 x 26 resultant,
  // past the configured 24-row ceiling.
  Json big;
  big["vars"] = Json::array({"x", "y"});
  Json c0, c1;
  c0["num"] = Json::parse(R"([["1", [0, 13]], ["1", [1, 0]]])");
  c1["num"] = Json::parse(R"([["1", [13, 0]], ["1", [0, 1]]])");
  big["components"] = Json::array({c0, c1});
  std::string path = (scratch_dir() / "big_map.json").string();
  save_json(path, big);

  CliRun r = run_cli_here("fiber --map '" + path + "' --point 0 0");
  CHECK(r.code == 3);
  CHECK_THAT(r.err, ContainsSubstring("resource limit"));
  CHECK_THAT(r.err, ContainsSubstring("Sylvester matrix"));
}

TEST_CASE("emit-curves writes the pinned anchor rows", "[cli]") {
  CliRun r = run_cli_here("emit-curves --which asymptotic --out asym.csv");
  CHECK(r.code == 0);
  std::string csv = slurp((scratch_dir() / "asym.csv").string());
  CHECK(csv == asymptotic_curve_csv(q(-3), q(3), q(1, 64)));
  CHECK_THAT(csv, ContainsSubstring("\n1,0,0\n"));
  CHECK_THAT(csv, ContainsSubstring("\n-1,0,208\n"));

  CliRun lv = run_cli_here(
      "emit-curves --which levelset --level 3 --out lvl.csv");
  CHECK(lv.code == 0);
  const PinchukBundle B = build_pinchuk();
  CHECK(slurp((scratch_dir() / "lvl.csv").string()) ==
        level_set_csv(B, q(3), q(-4), q(4), q(1, 64)));

  CliRun sg = run_cli_here("emit-curves --which singular --out sing.csv");
  CHECK(sg.code == 0);
  for (int k = 1; k <= 4; ++k)
    CHECK(std::filesystem::exists(scratch_dir() /
                                  ("sing-" + std::to_string(k) + ".csv")));

  CHECK(run_cli_here("emit-curves --which asymptotic").code == 2);  // no --out
  CHECK(run_cli_here("emit-curves --which nosuch --out x.csv").code == 2);
  CliRun io = run_cli_here(
      "emit-curves --which asymptotic --out /nonexistent-dir/x.csv");
  CHECK(io.code == 4);
}

TEST_CASE("reduce emits the output map, the trace, and a budget refusal",
          "[cli]") {
  CliRun ok = run_cli_here(
      "reduce --builtin cubic-demo --target yagzhev --out cd.json");
  CHECK(ok.code == 0);
  CHECK_THAT(ok.out, ContainsSubstring("1 -> 3 variables in 3 steps"));
  CHECK_THAT(ok.out, ContainsSubstring("trace-replay"));
  CHECK(load_json((scratch_dir() / "cd.json").string()) ==
        golden_cubic_demo_map());
  CHECK(load_json((scratch_dir() / "cd.trace.json").string()) ==
        golden_cubic_demo_trace());

  CliRun sym = run_cli_here(
      "reduce --builtin pinchuk --target symmetric --out psym.json");
  CHECK(sym.code == 0);
  CHECK_THAT(sym.out, ContainsSubstring("2 -> 4 variables"));
  CHECK_THAT(sym.out, ContainsSubstring("determinant-squared"));
  RMap G = rmap_from_json(load_json((scratch_dir() / "psym.json").string()));
  CHECK(G.domain_arity == 4);
  CHECK(G.components.size() == 4);

  CliRun budget = run_cli_here(
      "reduce --builtin pinchuk --target yagzhev --out py.json");
  CHECK(budget.code == 3);
  CHECK_THAT(budget.err, ContainsSubstring("64-variable budget"));

  CHECK(run_cli_here("reduce --builtin pinchuk --target nosuch --out x.json")
            .code == 2);
  CHECK(run_cli_here(
            "reduce --builtin example-uni --target yagzhev --out x.json")
            .code == 2);  // rational map has no polynomial reduction
}

TEST_CASE("the seed is taken from the environment and pins the output",
          "[cli]") {
  CliRun a = run_cli_here("verify-paper --samples 24 --format json --golden '" +
                              std::string(RMA_SOURCE_DIR) +
                              "/data/fullR.json'",
                          "RMA_SEED=99");
  CliRun b = run_cli_here("verify-paper --samples 24 --format json --golden '" +
                              std::string(RMA_SOURCE_DIR) +
                              "/data/fullR.json'",
                          "RMA_SEED=99");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(Json::parse(a.out)["seed"] == 99);

  // An explicit flag wins over the environment.
  CliRun c = run_cli_here("verify-paper --samples 24 --format json --golden '" +
                              std::string(RMA_SOURCE_DIR) +
                              "/data/fullR.json' --seed 7",
                          "RMA_SEED=99");
  CHECK(Json::parse(c.out)["seed"] == 7);

  CliRun bad = run_cli_here("verify-paper --samples 8", "RMA_SEED=pony");
  CHECK(bad.code == 2);
}
