#include "helpers.hpp"

#include "bclab/core/errors.hpp"
#include "bclab/experiments/experiments.hpp"
#include "bclab/experiments/output.hpp"
#include "bclab/experiments/sweep.hpp"

#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace bclab;
using bclab::test::Q;

TEST_CASE("output formats") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(1.0 / 3.0) == "0.3333333333333333");
  Series s = {{1, Q("1/3")}, {2, Q("2")}};
  CHECK(series_csv(s) == "n,value_num,value_den,value_float\n1,1,3,0.3333333333333333\n2,2,1,2\n");
  auto svg = series_svg(s, "t");
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("polyline") != std::string::npos);
  CHECK(dump_json(nlohmann::json{{"a", 1}}) == "{\n  \"a\": 1\n}\n");
  CHECK(parse_output_format("both") == OutputFormat::both);
  CHECK_THROWS_AS(parse_output_format("xml"), ConfigError);

  auto dir = std::filesystem::temp_directory_path() / "bclab_output_test";
  std::filesystem::remove_all(dir);
  auto written = write_outputs(dir.string(), "run", {{"ok", true}}, {{"mu", s}}, OutputFormat::both, true);
  REQUIRE(written.size() == 3);
  for (const auto& p : written) CHECK(std::filesystem::exists(p));
  std::ifstream in(dir / "run_mu.csv");
  std::stringstream text;
  text << in.rdbuf();
  CHECK(text.str() == series_csv(s));
  std::filesystem::remove_all(dir);
}

TEST_CASE("experiments certify their constructions") {
  ExperimentOptions o;
  o.seed = 5;
  CHECK(run_er_not_d(2000, o).ok());
  CHECK(run_d_not_er(40, o, {512, 1024, Rational(10)}).ok());
  CHECK(run_io_not_sub(1000, o).ok());
  CHECK(run_nop_implies_d_demo(o).ok());
  CHECK(run_bruss_demo(o).ok());
  CHECK_THROWS_AS(run_d_not_er(1, o), DomainError);
  CHECK_THROWS_AS(run_d_not_er(65, o), DomainError);
  CHECK_THROWS_AS(run_io_not_sub(3, o), HorizonError);
  CHECK_THROWS_AS(run_experiment("nope", o), ConfigError);
  auto names = experiment_names();
  CHECK(std::find(names.begin(), names.end(), "diagram-sweep") != names.end());
}

TEST_CASE("d-not-er growth series") {
  auto r = run_d_not_er(30, {}, {256, 256, Rational(10)});
  CHECK(r.report["first_exponent_above_bar"] == 27);
  CHECK(r.report["ex2_power_increasing_from"] == 2);
}

TEST_CASE("experiments are deterministic") {
  ExperimentOptions a;
  a.seed = 9;
  a.workers = 1;
  ExperimentOptions b = a;
  b.workers = 4;
  CHECK(run_io_not_sub(200, a).report == run_io_not_sub(200, b).report);
  CHECK(run_bruss_demo(a).report == run_bruss_demo(b).report);
}

TEST_CASE("diagram closure") {
  auto pairs = implied_pairs();
  auto has = [&](Condition f, Condition t) {
    return std::any_of(pairs.begin(), pairs.end(), [&](const Implication& i) { return i.from == f && i.to == t; });
  };
  CHECK(has(Condition::IND, Condition::B));
  CHECK(has(Condition::KS, Condition::SUB));
  CHECK(has(Condition::B, Condition::IO));
  CHECK_FALSE(has(Condition::D, Condition::ER));
  CHECK_FALSE(has(Condition::SUB, Condition::D));
  CHECK_FALSE(has(Condition::IO, Condition::SUB));
}

TEST_CASE("check_diagram flags contradictions") {
  SweepResult r;
  SweepRow row;
  row.model = "fake";
  for (Condition c : all_conditions) {
    ConditionReport rep;
    rep.condition = c;
    rep.verdict = Verdict::holds;
    row.reports.push_back(rep);
  }
  row.reports[static_cast<int>(Condition::SUB)].verdict = Verdict::fails;
  r.rows.push_back(row);
  check_diagram(r);
  CHECK_FALSE(r.sound());
  r.contradictions.clear();
  r.warnings.clear();
  r.rows[0].reports[static_cast<int>(Condition::D)].method = Method::monte_carlo;
  r.rows[0].reports[static_cast<int>(Condition::D)].verdict = Verdict::inconclusive;
  r.rows[0].reports[static_cast<int>(Condition::IO)].method = Method::monte_carlo;
  r.rows[0].reports[static_cast<int>(Condition::IO)].verdict = Verdict::fails;
  r.rows[0].reports[static_cast<int>(Condition::SUB)].verdict = Verdict::holds;
  check_diagram(r);
  CHECK(r.sound());
  CHECK_FALSE(r.warnings.empty());
}

TEST_CASE("default zoo sweep is sound") {
  SweepOptions o;
  o.seed = 1;
  auto zoo = default_zoo();
  auto result = run_diagram_sweep(zoo, o);
  CHECK(result.sound());
  REQUIRE(result.rows.size() == zoo.size());
  for (const auto& row : result.rows) {
    if (row.model == "galton-logarithmic") {
      CHECK(row.at(Condition::ER).verdict == Verdict::fails);
      CHECK(row.at(Condition::D).verdict == Verdict::holds);
    }
    if (row.model == "interval-period-2") {
      // Under the sweep's eps = 1/2, |X_n - 1| <= 1/3 keeps SUB alive while D fails.
      CHECK(row.at(Condition::D).verdict == Verdict::fails);
      CHECK(row.at(Condition::SUB).verdict == Verdict::holds);
      CHECK(row.at(Condition::IO).verdict == Verdict::holds);
    }
    if (row.model == "bernoulli-half") CHECK(row.at(Condition::IND).verdict == Verdict::holds);
  }
  auto j = result.to_json();
  CHECK(j["ok"] == true);
  CHECK(j["matrix"].size() == zoo.size());
}
