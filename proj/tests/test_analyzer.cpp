#include <cstdio>
#include <fstream>
#include <sstream>

#include "../tools/cli.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "pfe/analyzer.hpp"
#include "pfe/instance_io.hpp"

using namespace pfe;

namespace {

template <class F>
Errc thrown_code(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a pfe::Error");
  return Errc::ParseError;
}

ProblemInstance make_instance(long p, Poly A, Poly B, std::vector<Rat> fjet,
                              std::vector<Rat> gjet) {
  return ProblemInstance{Prime(p), std::move(A),      std::move(B), Jet{std::move(fjet)},
                         Jet{std::move(gjet)}, std::nullopt, Int(0),       {},
                         200};
}

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = pfe::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = std::string("pfe_test_") + name;
  std::ofstream f(path);
  f << content;
  return path;
}

}  // namespace

TEST_CASE("parity check") {
  CHECK(parity_check(Poly::from_longs({1}), Poly::from_longs({-3, 1})));
  CHECK(!parity_check(Poly::from_longs({1}), Poly::from_longs({1})));
  CHECK(!parity_check(Poly::from_longs({1, 0, 1}), Poly::from_longs({1})));
  CHECK_EQ(thrown_code([] { parity_check(Poly(), Poly::from_longs({1})); }), Errc::ZeroInput);
}

TEST_CASE("instance validation") {
  ProblemInstance bad_zero = make_instance(5, Poly(), Poly::from_longs({1}), {Rat(0)}, {Rat(1)});
  CHECK_EQ(thrown_code([&] { validate_instance(bad_zero); }), Errc::ZeroInput);

  ProblemInstance bad_g =
      make_instance(5, Poly::from_longs({1}), Poly::from_longs({1}), {Rat(1)}, {Rat(0)});
  CHECK_EQ(thrown_code([&] { validate_instance(bad_g); }), Errc::GZeroAtOrigin);

  ProblemInstance bad_id =
      make_instance(5, Poly::from_longs({1}), Poly::from_longs({1}), {Rat(1)}, {Rat(1)});
  CHECK_EQ(thrown_code([&] { validate_instance(bad_id); }), Errc::JetMismatch);

  ProblemInstance ok =
      make_instance(5, Poly::from_longs({1}), Poly::from_longs({1}), {Rat(0)}, {Rat(1)});
  CHECK_NOTHROW(validate_instance(ok));
}

TEST_CASE("pipeline: constant coefficients force polynomial solutions") {
  ProblemInstance inst =
      make_instance(5, Poly::from_longs({1}), Poly::from_longs({1}), {Rat(0)}, {Rat(1)});
  Verdict v = analyze(inst);
  CHECK(std::holds_alternative<HZeroPolynomialOnly>(v));
}

TEST_CASE("pipeline: odd-degree mismatch is a parity obstruction") {
  ProblemInstance inst =
      make_instance(5, Poly::from_longs({1}), Poly::from_longs({-3, 1}), {Rat(1)}, {Rat(0)});
  // jets invalid here on purpose: parity must be decided before jets matter
  inst.f_jet.reset();
  inst.g_jet.reset();
  Verdict v = analyze(inst);
  CHECK(std::holds_alternative<ParityObstruction>(v));
}

TEST_CASE("pipeline: x^2 + 1 instance reaches the growth contradiction") {
  ProblemInstance inst =
      make_instance(5, Poly::from_longs({1, 0, 1}), Poly::from_longs({1}), {Rat(0), Rat(1)},
                    {Rat(1)});
  Verdict v = analyze(inst);
  REQUIRE(std::holds_alternative<GrowthContradiction>(v));
  const auto& gc = std::get<GrowthContradiction>(v);
  CHECK_EQ(gc.char_data.char_poly, Poly::from_longs({16, 16, 8}));
  CHECK_EQ(gc.char_data.char_number, 0);
  CHECK_EQ(gc.weight_limit, make_rat(1, 2));
  CHECK_EQ(gc.report.violations, 0);
  CHECK(!gc.report.entire_consistent);
  REQUIRE(gc.report.lambda_star.has_value());
  CHECK(*gc.report.lambda_star <= gc.weight_limit);
  bool embedded_note = false;
  for (const auto& n : gc.root_notes)
    embedded_note = embedded_note || n.find("digit vectors") != std::string::npos;
  CHECK(embedded_note);
}

TEST_CASE("pipeline: an instance with a genuine polynomial solution") {
  // A = 1 - x^2, B = 1, f = 2x, g = 1 - 2x^2
  ProblemInstance inst = make_instance(5, Poly(std::vector<Rat>{Rat(1), Rat(0), Rat(-1)}),
                                       Poly::from_longs({1}), {Rat(0), Rat(2)}, {Rat(1)});
  Verdict v = analyze(inst);
  REQUIRE(std::holds_alternative<GrowthContradiction>(v));
  const auto& gc = std::get<GrowthContradiction>(v);
  // P = -16 xi^2 - 32 xi + 48 with rational roots 1 and -3
  CHECK_EQ(gc.char_data.char_poly, Poly::from_longs({48, -32, -16}));
  CHECK_EQ(gc.weight_limit, make_rat(1, 2));  // ord_5(-16) + 1/4 + 1/4
  CHECK_EQ(gc.report.violations, 0);
  CHECK(gc.report.entire_consistent);  // the solved prefix is the polynomial 2x
}

TEST_CASE("pipeline: conjugate-pair characteristic roots") {
  // A = x^2 + 1, B = 1 over p = 7: the scaled characteristic polynomial is
  // 8 xi^2 + 16 xi + 16 with discriminant -256; -1 is a non-residue mod 7,
  // so the roots live in the unramified quadratic extension.
  ProblemInstance inst =
      make_instance(7, Poly::from_longs({1, 0, 1}), Poly::from_longs({1}), {Rat(0), Rat(1)},
                    {Rat(1)});
  Verdict v = analyze(inst);
  REQUIRE(std::holds_alternative<GrowthContradiction>(v));
  const auto& gc = std::get<GrowthContradiction>(v);
  // roots -1 +- i have r = 0: each weight is 0, L = ord_7(8) = 0
  CHECK_EQ(gc.weight_limit, Rat(0));
  CHECK_EQ(gc.report.violations, 0);
}

TEST_CASE("pipeline: ramified conjugate pair outside the unit disk") {
  // A = 3x^2 + 1 over p = 3: the scaled characteristic polynomial is
  // 24 xi^2 + 48 xi + 32 with discriminant -768 of odd 3-adic valuation;
  // the roots are -1 +- sqrt(-1/3), of valuation -1/2.
  ProblemInstance inst = make_instance(3, Poly::from_longs({1, 0, 3}), Poly::from_longs({1}),
                                       {Rat(0), Rat(1)}, {Rat(1)});
  Verdict v = analyze(inst);
  REQUIRE(std::holds_alternative<GrowthContradiction>(v));
  const auto& gc = std::get<GrowthContradiction>(v);
  CHECK_EQ(gc.char_data.char_poly, Poly::from_longs({32, 48, 24}));
  // L = ord_3(24) + 2 * (-1/2) = 0; cross-check: 24n^2+48n+32 = 8(3n^2+6n+4)
  // is never divisible by 3
  CHECK_EQ(gc.weight_limit, Rat(0));
  ScanReport scan = poly_weight_scan(Prime(3), gc.recurrence.P[0], Int(0), Int(2000), Rat(0));
  CHECK_EQ(scan.mean, Rat(0));
  bool ramified_note = false;
  for (const auto& n : gc.root_notes) ramified_note = ramified_note || n.find("ramified") == 0;
  CHECK(ramified_note);
}

TEST_CASE("pipeline: unsupported 2-adic root field is inconclusive") {
  ProblemInstance inst =
      make_instance(2, Poly::from_longs({1, 0, 1}), Poly::from_longs({1}), {Rat(0), Rat(1)},
                    {Rat(1)});
  Verdict v = analyze(inst);
  REQUIRE(std::holds_alternative<Inconclusive>(v));
  CHECK(std::get<Inconclusive>(v).reason.find("EvenPrimeUnsupported") != std::string::npos);
}

TEST_CASE("analyze is deterministic") {
  ProblemInstance inst =
      make_instance(5, Poly::from_longs({1, 0, 1}), Poly::from_longs({1}), {Rat(0), Rat(1)},
                    {Rat(1)});
  std::string r1 = render_verdict(inst, analyze(inst));
  std::string r2 = render_verdict(inst, analyze(inst));
  CHECK_EQ(r1, r2);
  CHECK(r1.find("GrowthContradiction") != std::string::npos);
}

TEST_CASE("instance JSON round-trip") {
  ProblemInstance inst =
      make_instance(5, Poly::from_longs({1, 0, 1}), Poly::from_longs({1}),
                    {Rat(0), make_rat(1, 3)}, {Rat(1)});
  inst.scan_N = Int(390625);
  inst.lambda_grid = {make_rat(-1, 2), Rat(0), make_rat(3, 4)};
  inst.prefix_len = 64;

  std::string text = serialize_instance(inst);
  ProblemInstance back = parse_instance(text);
  CHECK_EQ(back.p.value(), inst.p.value());
  CHECK_EQ(back.A, inst.A);
  CHECK_EQ(back.B, inst.B);
  CHECK_EQ(back.f_jet->coeffs, inst.f_jet->coeffs);
  CHECK_EQ(back.g_jet->coeffs, inst.g_jet->coeffs);
  CHECK_EQ(back.scan_N, inst.scan_N);
  CHECK_EQ(back.lambda_grid, inst.lambda_grid);
  CHECK_EQ(back.prefix_len, inst.prefix_len);
  // a second pass serializes identically
  CHECK_EQ(serialize_instance(back), text);
}

TEST_CASE("element spec round-trip") {
  Prime p(3);
  for (const char* spec : {"rat:5/2", "ram:0:3/2:1", "zp:1,2,0,2"}) {
    PAdicElement e = parse_element_spec(p, spec);
    CHECK_EQ(element_str(e), spec);
  }
  CHECK_EQ(thrown_code([&] { parse_element_spec(p, "nope:1"); }), Errc::ParseError);
}

TEST_CASE("norm slopes of a parity-obstructed instance have different parity") {
  Prime p(5);
  Poly A = Poly::from_longs({1});
  Poly B = Poly::from_longs({-3, 1});
  // jets with A(0) f0^2 + B(0) g0^2 = 4 - 3 = 1
  Poly f = Poly::from_longs({2}), g = Poly::from_longs({1});
  Poly F2 = A * f * f, G2 = B * g * g;
  SeriesPrefix sf{F2.coeffs(), p}, sg{G2.coeffs(), p};
  // slope over a long rho step equals the degree for large rho
  Rat lo(100), hi(101);
  Rat slope_f = lognorm(sf, hi) - lognorm(sf, lo);
  Rat slope_g = lognorm(sg, hi) - lognorm(sg, lo);
  CHECK_EQ(slope_f, Rat(*F2.degree()));
  CHECK_EQ(slope_g, Rat(*G2.degree()));
  Rat diff = slope_f - slope_g;
  CHECK((diff.get_num() % 2) != 0);
}

TEST_CASE("cli: scalar commands") {
  CliResult ord = run_cli({"ord", "--p", "3", "5/9"});
  CHECK_EQ(ord.code, 0);
  CHECK(ord.out.find("= -2") != std::string::npos);

  CliResult fact = run_cli({"factorial-ord", "--p", "2", "10"});
  CHECK_EQ(fact.code, 0);
  CHECK(fact.out.find("= 8") != std::string::npos);

  CliResult sumx = run_cli({"sumx", "--p", "2", "--s", "1", "--N", "1048576"});
  CHECK_EQ(sumx.code, 0);
  CHECK(sumx.out.find("closed form = 1/4") != std::string::npos);

  CliResult w = run_cli({"weight", "--p", "3", "--alpha", "ram:0:3/2:1", "--empirical", "6561",
                         "--show-paper-sign"});
  CHECK_EQ(w.code, 0);
  CHECK(w.out.find("7/18") != std::string::npos);
  CHECK(w.out.find("5/18") != std::string::npos);

  CliResult pw = run_cli({"poly-weight", "--p", "5", "--poly", "0,-1,1", "--roots",
                          "rat:0;rat:1"});
  CHECK_EQ(pw.code, 0);
  CHECK(pw.out.find("L = 1/2") != std::string::npos);

  CliResult liou = run_cli({"liouville-scan", "--p", "3", "--alpha", "rat:1/2", "--N", "1000"});
  CHECK_EQ(liou.code, 0);
  CHECK(liou.out.find("certified max") != std::string::npos);
}

TEST_CASE("cli: exit codes") {
  CHECK_EQ(run_cli({}).code, 2);  // a subcommand is required
  CHECK_EQ(run_cli({"--help"}).code, 0);
  CHECK_EQ(run_cli({"no-such-command"}).code, 2);
  CHECK_EQ(run_cli({"ord", "--p", "3"}).code, 2);  // missing operand
  CliResult nonres = run_cli({"weight", "--p", "4", "--alpha", "rat:1"});
  CHECK_EQ(nonres.code, 1);
  CHECK(nonres.err.find("NotPrime") != std::string::npos);
  CliResult missing = run_cli({"analyze", "no_such_file.json"});
  CHECK_EQ(missing.code, 1);
  CHECK(missing.err.find("ParseError") != std::string::npos);
}

TEST_CASE("cli: instance pipeline commands") {
  std::string path = write_temp(
      "growth_instance.json",
      R"({"p": 5, "A": ["1", "0", "1"], "B": ["1"], "f_jet": ["0", "1"], "g_jet": ["1"],
          "prefix_len": 120})");

  CliResult an = run_cli({"analyze", path});
  CHECK_EQ(an.code, 0);
  CHECK(an.out.find("GrowthContradiction") != std::string::npos);
  CHECK(an.out.find("8*xi^2 + 16*xi + 16") != std::string::npos);
  CHECK(an.out.find("L = 1/2") != std::string::npos);

  CliResult ode = run_cli({"ode-build", path});
  CHECK_EQ(ode.code, 0);
  CHECK(ode.out.find("Q2 = 8*x^2 + 8") != std::string::npos);

  CliResult cp = run_cli({"charpoly", path});
  CHECK_EQ(cp.code, 0);
  CHECK(cp.out.find("N(E) = 0") != std::string::npos);

  CliResult rec = run_cli({"recurrence", path});
  CHECK_EQ(rec.code, 0);
  CHECK(rec.out.find("span t = 2") != std::string::npos);

  CliResult solve = run_cli({"solve-series", path, "--N", "5"});
  CHECK_EQ(solve.code, 0);
  CHECK(solve.out.find("c_3 = -5/6") != std::string::npos);

  CliResult growth = run_cli({"growth", path});
  CHECK_EQ(growth.code, 0);
  CHECK(growth.out.find("violations = 0") != std::string::npos);

  std::remove(path.c_str());
}

TEST_CASE("cli: explicit h override drives the diagnostic commands") {
  std::string path = write_temp("explicit_h.json",
                                R"({"p": 5, "A": ["0", "1"], "B": ["0", "1"], "h": ["1"]})");
  CliResult ode = run_cli({"ode-build", path});
  CHECK_EQ(ode.code, 0);
  CHECK(ode.out.find("Q2 = 4*x^2") != std::string::npos);
  CHECK(ode.out.find("Q1 = 8*x") != std::string::npos);
  CHECK(ode.out.find("Q0 = 2") != std::string::npos);
  CliResult cp = run_cli({"charpoly", path});
  CHECK_EQ(cp.code, 0);
  CHECK(cp.out.find("4*xi^2 + 4*xi + 2") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("cli: parity fixture and norms diagnostic") {
  std::string path = write_temp(
      "parity_instance.json",
      R"({"p": 5, "A": ["1"], "B": ["-3", "1"], "f_jet": ["2"], "g_jet": ["1"]})");
  CliResult an = run_cli({"analyze", path});
  CHECK_EQ(an.code, 0);
  CHECK(an.out.find("ParityObstruction") != std::string::npos);

  CliResult norms = run_cli({"norms", path});
  CHECK_EQ(norms.code, 0);
  CHECK(norms.out.find("different parity") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("cli: polynomial-only fixture") {
  std::string path = write_temp(
      "hzero_instance.json",
      R"({"p": 5, "A": ["1"], "B": ["1"], "f_jet": ["0"], "g_jet": ["1"]})");
  CliResult an = run_cli({"analyze", path});
  CHECK_EQ(an.code, 0);
  CHECK(an.out.find("HZeroPolynomialOnly") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("cli: csv traces") {
  std::string csv = "pfe_test_trace.csv";
  CliResult w = run_cli({"sumx", "--p", "2", "--s", "1", "--N", "4096", "--out", csv});
  CHECK_EQ(w.code, 0);
  std::ifstream in(csv);
  REQUIRE(in.good());
  std::string header;
  std::getline(in, header);
  CHECK_EQ(header, "N,mean_num,mean_den,gap_decimal");
  int rows = 0;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) ++rows;
  CHECK(rows >= 2);
  in.close();
  std::remove(csv.c_str());
}
