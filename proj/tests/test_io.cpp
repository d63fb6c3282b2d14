#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "io.hpp"

using namespace cubetop;

TEST_CASE("labeling files") {
  Labeling lab = io::parse_labeling(R"({"n":2,"k":2,"labels":[1,1,2,2]})");
  CHECK(lab.spec.k == 2);
  CHECK(lab.colors == std::vector<int>{1, 1, 2, 2});
  CHECK_THROWS_AS(io::parse_labeling(R"({"n":2,"k":2,"labels":[0,1,2,2]})"), UsageError);
  CHECK_THROWS_AS(io::parse_labeling(R"({"n":2,"k":2})"), UsageError);
  CHECK_THROWS_AS(io::parse_labeling("not json"), UsageError);
}

TEST_CASE("cell set files") {
  CellSet s = io::parse_cellset(R"({"n":2,"k":3,"cells":[[1,2],[2,2],[3,2]]})");
  CHECK(s.size() == 3);
  CHECK(s.contains(Cell{2, 2}));
  CellSet again = io::parse_cellset(io::cellset_to_json(s));
  CHECK(again == s);
  CHECK_THROWS_AS(io::parse_cellset(R"({"n":2,"k":3,"cells":[[0,2]]})"), UsageError);
}

TEST_CASE("integer field files") {
  IntegerField f = io::parse_integer_field(R"({"n":2,"k":3,"values":[0,1,2,0,1,2,0,1,2]})");
  CHECK(f.values[4] == 1);
  CHECK_THROWS_AS(io::parse_integer_field(R"({"n":2,"k":2,"values":[0,2,0,0]})"), UsageError);
}

TEST_CASE("field files round-trip through serialization") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);

  ScalarField expr = ExprField{
      2, expr_add(expr_mul(expr_const(0.5), expr_coord(1)),
                  expr_pwl(expr_abs(expr_sub(expr_coord(2), expr_const(0.25))),
                           {{0.0, 1.0}, {0.5, 0.0}}))};
  ScalarField expr2 = io::parse_field(io::field_to_json(expr));
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> x{u(rng), u(rng)};
    CHECK(field_eval(expr, x) == field_eval(expr2, x));
  }

  VertexField vf{{2, 2}, {0, 0.5, 1, 0, 0.5, 1, 0, 0.5, 1}};
  ScalarField vf2 = io::parse_field(io::field_to_json(ScalarField{vf}));
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> x{u(rng), u(rng)};
    CHECK(field_eval(ScalarField{vf}, x) == field_eval(vf2, x));
  }

  CHECK_THROWS_AS(io::parse_field(R"({"type":"mystery","n":2})"), UsageError);
  CHECK_THROWS_AS(io::parse_field(R"({"type":"expr","n":1,"expr":{"op":"coord","axis":3}})"),
                  UsageError);
}

TEST_CASE("prescription files") {
  ConnSepSpec s = io::parse_conn_sep(R"({"n":3,"A":[null,0.5,[0.2,0.8]],"B":[[0.3,0.7],0.5,null]})");
  CHECK(s.conn[0].empty());
  CHECK(s.conn[1] == SetSpec::point(0.5));
  CHECK(s.conn[2] == SetSpec::interval(0.2, 0.8));
  CHECK(s.sep[0] == SetSpec::interval(0.3, 0.7));
  // Degenerate [a,a] collapses to the point.
  ConnSepSpec t = io::parse_conn_sep(R"({"n":2,"A":[[0.5,0.5],null],"B":[0.5,[0.2,0.4]]})");
  CHECK(t.conn[0] == SetSpec::point(0.5));
  CHECK_THROWS_AS(io::parse_conn_sep(R"({"n":2,"A":[null],"B":[null,null]})"), UsageError);
}

TEST_CASE("reports are byte-stable") {
  Labeling lab = io::parse_labeling(R"({"n":2,"k":2,"labels":[1,1,1,1]})");
  WitnessResult w = steinhaus_witness(lab, false);
  std::string r1 = io::witness_report("abc", false, w);
  std::string r2 = io::witness_report("abc", false, steinhaus_witness(lab, false));
  CHECK(r1 == r2);
  CHECK(r1.find("\"axis\": 1") != std::string::npos);

  VerifyReport vr = randomized_verify({2, 3}, VerifyMode::plain, 9, 50);
  CHECK(io::verify_report(vr) == io::verify_report(randomized_verify({2, 3}, VerifyMode::plain, 9, 50)));

  oracle::EquivalenceReport er = oracle::equivalence_check({2, 2}, true, 0, 0);
  std::string eq = io::equivalence_report(er);
  CHECK(eq.find("\"mismatches\": 0") != std::string::npos);
}

TEST_CASE("analysis report carries certified intervals as decimal strings") {
  VertexField vf = sample_vertex_field({2, expr_coord(1)}, 2);
  AnalysisOptions opts;
  opts.dp = 0.25;
  AnalysisResult res = bracket_sets(ScalarField{vf}, opts);
  std::string rep = io::analyze_report("deadbeef", res);
  CHECK(rep.find("\"sep_in\"") != std::string::npos);
  CHECK(rep.find("\"0.5\"") != std::string::npos);

  AnalysisResult undetermined =
      bracket_sets(ScalarField{ExprField{2, expr_coord(1)}}, AnalysisOptions{{}, {4}, 0.25, {}, 0});
  std::string rep2 = io::analyze_report("d", undetermined);
  CHECK(rep2.find("warnings") != std::string::npos);
}

TEST_CASE("synthesis reports") {
  ConnSepSpec bad;
  bad.n = 2;
  bad.conn = {SetSpec::point(0.5), SetSpec::interval(0.2, 0.8)};
  bad.sep = {SetSpec::point(0.4), SetSpec::none()};
  auto v = validate_conn_sep(bad);
  REQUIRE(v.has_value());
  std::string rep = io::violation_report("x", *v);
  CHECK(rep.find("\"condition\": 2") != std::string::npos);

  ConnSepSpec good;
  good.n = 2;
  good.conn = {SetSpec::none(), SetSpec::interval(0.2, 0.7)};
  good.sep = {SetSpec::interval(0.2, 0.7), SetSpec::none()};
  SynthesizedField f = build_function(good);
  std::string fj = io::synthesized_to_json(f);
  ScalarField parsed = io::parse_field(fj);  // provenance rides along, ignored
  CHECK(field_eval(parsed, {0.5, 0.9}) == doctest::Approx(0.45));
  CHECK(io::synthesize_report("x", f, "out.json").find("linear") != std::string::npos);
}
