#include "helpers.hpp"

#include "bclab/conditions/evaluators.hpp"
#include "bclab/conditions/machinery.hpp"
#include "bclab/core/errors.hpp"
#include "bclab/galton/closed_form.hpp"
#include "bclab/models/runs.hpp"

#include <doctest.h>

using namespace bclab;
using bclab::test::model;
using bclab::test::Q;

namespace {

const char* kSure = R"({"type": "bernoulli", "probs": ["1"]})";
const char* kHalf = R"({"type": "bernoulli", "probs": ["1/2"]})";
const char* kIntervalHalf = R"({"type": "interval", "thresholds": ["1/2"]})";
const char* kPeriod2 = R"({"type": "interval", "tail": {"rule": "cycle", "values": ["1", "1/2"]}})";
const char* kGalton = R"({"type": "galton"})";

MonteCarloOptions mc(std::uint64_t paths = 2000) {
  MonteCarloOptions o;
  o.paths = paths;
  o.seed = 17;
  return o;
}

}  // namespace

TEST_CASE("report naming") {
  CHECK(to_string(Condition::SUB) == "SUB");
  CHECK(parse_condition("IO") == Condition::IO);
  CHECK_THROWS_AS(parse_condition("XX"), ConfigError);
  CHECK(to_string(Verdict::holds) == "holds-at-horizon");
  CHECK(to_string(Method::monte_carlo) == "monte-carlo");
  ConditionReport r;
  r.diagnostics.push_back(exact_diagnostic(3, Q("1/3")));
  r.diagnostics.push_back(float_diagnostic(4, 0.5));
  auto j = to_json(r);
  CHECK(j["diagnostics"][0]["value"] == "1/3");
  CHECK(j["diagnostics"][1]["value"] == 0.5);
}

TEST_CASE("ER and KS") {
  auto sure = moment_series(*model(kSure), 64);
  auto er = eval_er(sure, 32);
  CHECK(er.verdict == Verdict::holds);
  CHECK(er.details["min_ex2"] == "1/1");
  CHECK(eval_ks(sure, 32).verdict == Verdict::holds);

  auto galton = moment_series(*model(kGalton), 4096);
  auto ger = eval_er(galton, 2048);
  CHECK(ger.verdict == Verdict::fails);
  CHECK(parse_rational(ger.details["min_ex2"].get<std::string>()) > Q("101/100"));
  auto gks = eval_ks(galton, 2048);
  CHECK(gks.verdict == Verdict::fails);
  CHECK(parse_rational(gks.details["max_ratio"].get<std::string>()) < Q("99/100"));

  // Bernoulli 1/2 at 1024: E[X_n^2] - 1 = 1/n, inconclusive under the strict default.
  auto half = moment_series(*model(kHalf), 1024);
  CHECK(eval_er(half, 512).verdict == Verdict::inconclusive);
  CHECK(eval_er(half, 512, {Q("1/100"), Q("1/100")}).verdict == Verdict::holds);

  auto runs = RunPattern{select_run_lengths(8).run_lengths}.model();
  auto rs = moment_series(*runs, 500);
  CHECK(eval_er(rs, 250, {Q("1/100"), Q("1/100")}).verdict == Verdict::holds);

  for (const auto* s : {&sure, &galton, &half, &rs}) {
    for (const auto& t : {MomentThresholds{}, MomentThresholds{Q("1/100"), Q("1/100")},
                          MomentThresholds{Q("1/1000"), Q("1/10")}}) {
      std::uint64_t start = s->records.back().n / 2;
      CHECK(eval_er(*s, start, t).verdict == eval_ks(*s, start, t).verdict);
    }
  }
  CHECK_THROWS_AS(eval_er(sure, 65), HorizonError);
}

TEST_CASE("D by Monte Carlo") {
  auto sure = eval_d(*model(kSure), 64, Q("1/4"), {8, 32}, mc());
  CHECK(sure.verdict == Verdict::holds);
  for (const auto& d : sure.diagnostics) CHECK(d.value == 0.0);

  auto period = eval_d(*model(kPeriod2), 256, Q("1/4"), {16, 128}, mc());
  CHECK(period.verdict == Verdict::fails);
  CHECK(period.diagnostics.back().value == 1.0);

  auto galton = eval_d(*model(kGalton), 4096, Q("1/4"), {1024, 4096}, mc());
  CHECK(galton.details["exact_non_absorbed"][1]["non_absorbed"] == "1/81");
  CHECK(galton.diagnostics.back().value < 0.05);

  CHECK_THROWS_AS(eval_d(*model(kSure), 64, Q("1/4"), {8}, mc(999)), DomainError);
  CHECK_THROWS_AS(eval_d(*model(kSure), 64, Q("1/4"), {32, 8}, mc()), HorizonError);
  CHECK_THROWS_AS(eval_d(*model(kSure), 64, Q("1/4"), {65}, mc()), HorizonError);

  // Same seed, same answer, whatever the worker count.
  auto o1 = mc();
  o1.workers = 1;
  auto o2 = mc();
  o2.workers = 5;
  auto a = eval_d(*model(kHalf), 300, Q("1/4"), {30, 150}, o1);
  auto b = eval_d(*model(kHalf), 300, Q("1/4"), {30, 150}, o2);
  CHECK(to_json(a) == to_json(b));
}

TEST_CASE("SUB") {
  auto sure = eval_sub(*model(kSure), 40, Q("1/4"));
  CHECK(sure.verdict == Verdict::holds);
  for (const auto& d : sure.diagnostics) CHECK(*d.exact == 0);
  CHECK(sure.details["candidate_count"] == 21);

  auto period = eval_sub(*model(kPeriod2), 200, Q("1/4"));
  CHECK(period.verdict == Verdict::fails);
  for (const auto& d : period.diagnostics) {
    if (d.n % 2 == 0 || d.n >= 7) CHECK(*d.exact == 1);
  }

  auto runs = RunPattern{select_run_lengths(8).run_lengths};
  auto rm = runs.model();
  auto rs = eval_sub(*rm, 2000, Q("1/4"));
  CHECK(rs.verdict == Verdict::holds);
  // Once E[X_n^2] - 1 < 1/16 at a high-run end, both atoms of X_n are within 1/4 of 1.
  std::size_t checked = 0;
  for (const auto& c : select_run_lengths(8).checkpoints) {
    if (c.n > 2000 || c.ex2 - 1 >= Q("1/16")) continue;
    CHECK(*rs.diagnostics[c.n - 1].exact == 0);
    ++checked;
  }
  CHECK(checked > 0);
}

TEST_CASE("Bruss sums") {
  auto sure = bruss_sum(*model(R"({"type": "interval", "thresholds": ["1"]})"), 3, 20);
  for (std::size_t k = 0; k < sure.partial_sums.size(); ++k) CHECK(sure.partial_sums[k] == Rational(k + 1));

  auto half = bruss_sum(*model(kIntervalHalf), 0, 20);
  for (const auto& t : half.terms) CHECK(t == 0);
  CHECK(half.partial_sums.back() == 0);

  auto coin = bruss_sum(*model(kHalf), 2, 20);
  for (const auto& t : coin.terms) CHECK(t == Q("1/2"));
  CHECK(coin.partial_sums.back() == make_rational(static_cast<std::int64_t>(coin.terms.size()), 2));

  CHECK_THROWS_AS(bruss_sum(*model(kHalf), 20, 20), HorizonError);
}

TEST_CASE("B and IO") {
  CHECK(eval_b(*model(kHalf), 256, {64, 128}).verdict == Verdict::holds);
  auto hb = eval_b(*model(kIntervalHalf), 256, {64, 128});
  CHECK(hb.verdict == Verdict::fails);
  CHECK(hb.details["per_m"][0]["no_occurrence"] == "1/2");
  CHECK(hb.details["per_m"][0]["product_identity"] == true);
  CHECK(eval_b(*model(kPeriod2), 256, {64, 128}).verdict == Verdict::holds);

  auto io = eval_io(*model(kIntervalHalf), 256, mc());
  CHECK(io.verdict == Verdict::fails);
  CHECK(io.diagnostics[0].value == doctest::Approx(0.5).epsilon(0.1));
  CHECK(io.details["exact_window_occurrence"] == "1/2");
  CHECK(eval_io(*model(kHalf), 256, mc()).verdict == Verdict::holds);
  auto p2 = eval_io(*model(kPeriod2), 256, mc());
  CHECK(p2.verdict == Verdict::holds);
  CHECK(p2.diagnostics[0].value == 1.0);
}

TEST_CASE("covariance scans") {
  auto coin = eval_cov(*model(kHalf), 0, 30);
  CHECK(coin.nop.verdict == Verdict::holds);
  CHECK(coin.pwi.verdict == Verdict::holds);
  CHECK(eval_ind(*model(kHalf), coin.pwi).verdict == Verdict::holds);

  auto pair = eval_cov(*model(R"({"type": "interval", "thresholds": ["1/2", "1/2"]})"), 0, 2);
  CHECK(pair.nop.verdict == Verdict::fails);
  CHECK(pair.nop.details["max_covariance"] == "1/4");
  CHECK(eval_ind(*model(kIntervalHalf), pair.pwi).verdict == Verdict::fails);

  auto g = eval_cov(*model(kGalton), 0, 2);
  CHECK(g.pwi.verdict == Verdict::holds);  // Cov(I_0, I_1) = 1/3 - 1 * 1/3
  auto g_ind = eval_ind(*model(kGalton), g.pwi);
  CHECK(g_ind.verdict == Verdict::inconclusive);

  auto eventually = eval_cov(*model(R"({"type": "interval", "thresholds": ["1/2", "1/2", "1/2", "1"]})"), 0, 20);
  CHECK(eventually.nop.verdict == Verdict::fails);
  CHECK(eventually.nop_clean_from == 2);
  CHECK(eval_cov(*model(R"({"type": "interval", "thresholds": ["1/2", "1/2", "1/2", "1"]})"), 2, 20)
            .nop.verdict == Verdict::holds);
  CHECK_THROWS_AS(eval_cov(*model(kHalf), 5, 6), HorizonError);
}

TEST_CASE("variance bound") {
  auto coin = variance_bound_check(*model(kHalf), 10);
  CHECK(coin.back().var == Q("5/2"));
  CHECK(coin.back().holds);
  auto pair = variance_bound_check(*model(R"({"type": "interval", "thresholds": ["1/2", "1/2"]})"), 2);
  CHECK(pair.back().var == 1);
  CHECK(pair.back().mu == 1);
  CHECK(pair.back().holds);
  for (const auto& v : variance_bound_check(*model(kSure), 20)) {
    CHECK(v.var == 0);
    CHECK(v.holds);
  }
  // Positively correlated events break it.
  auto big = variance_bound_check(*model(kIntervalHalf), 8);
  CHECK_FALSE(big.back().holds);
}

TEST_CASE("chebyshev check") {
  auto checks = chebyshev_check(*model(R"({"type": "bernoulli", "probs": ["1/3"]})"), 60,
                                {Q("1/4"), Q("1/2"), Q("1")});
  CHECK(checks.size() == 180);
  for (const auto& c : checks) CHECK(c.holds);
  CHECK_THROWS_AS(chebyshev_check(*model(kHalf), 4, {Q("0")}), DomainError);
}

TEST_CASE("n_k subsequence") {
  auto sure = build_nk_subsequence(moment_series(*model(kSure), 100));
  REQUIRE(sure.size() == 10);
  for (const auto& e : sure) {
    CHECK(e.n_k == e.k * e.k);
    CHECK(e.nu_k == Rational(e.k * e.k));
  }
  auto coin = build_nk_subsequence(moment_series(*model(kHalf), 200));
  REQUIRE(coin.size() == 10);
  for (const auto& e : coin) {
    CHECK(e.n_k == 2 * e.k * e.k);
    CHECK(e.nu_k == Rational(e.k * e.k));
    CHECK(e.lower_ok);
    CHECK(e.upper_ok);
  }
  CHECK_THROWS_AS(build_nk_subsequence(moment_series(*model(R"({"type": "bernoulli", "probs": ["1/10"]})"), 5)),
                  HorizonError);
}

TEST_CASE("fast subsequence") {
  auto sure = extract_fast_subsequence(*model(kSure), 30, 10);
  CHECK(sure.complete);
  CHECK(sure.indices == std::vector<std::uint64_t>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10});

  auto coin = extract_fast_subsequence(*model(kHalf), 300, 20);
  REQUIRE(coin.complete);
  for (std::size_t l = 0; l < coin.indices.size(); ++l) {
    CHECK(coin.bound_series[l] < inverse_power(2, static_cast<unsigned>(l + 1)));
    CHECK(coin.lower_tails[l] <= coin.bound_series[l]);
    if (l) CHECK(coin.indices[l] > coin.indices[l - 1]);
  }
  auto partial = extract_fast_subsequence(*model(kHalf), 40, 20);
  CHECK_FALSE(partial.complete);

  // |X_n - 1| is 1/3 at even n, never above 1/2: the witness completes with zero bounds.
  auto period = extract_fast_subsequence(*model(kPeriod2), 60, 12);
  CHECK(period.complete);
  auto tail_half = extract_fast_subsequence(*model(kIntervalHalf), 60, 12);
  CHECK(tail_half.indices.empty());
}

TEST_CASE("prefix sandwich") {
  auto r = prefix_sandwich_check(model(kGalton), 5, 200, 2000, 1);
  CHECK(r.pathwise_violations == 0);
  CHECK(r.mean_bounds_hold);
  auto i = prefix_sandwich_check(model(kPeriod2), 7, 100, 2000, 1);
  CHECK(i.pathwise_violations == 0);
  CHECK(i.mean_bounds_hold);
}
