#include "helpers.hpp"

#include "bclab/core/errors.hpp"
#include "bclab/core/moments.hpp"
#include "bclab/models/bernoulli.hpp"
#include "bclab/models/interval.hpp"
#include "bclab/models/runs.hpp"

#include <doctest.h>

#include <random>

using namespace bclab;
using bclab::test::pmf;
using bclab::test::Q;

TEST_CASE("prob sequence tail rules") {
  ProbSequence rep({Q("1/2"), Q("1/3")}, RepeatLast{});
  CHECK(rep.at(0) == Q("1/2"));
  CHECK(rep.at(1) == Q("1/3"));
  CHECK(rep.at(1000) == Q("1/3"));
  CHECK(rep.at_double(7) == doctest::Approx(1.0 / 3.0));

  ProbSequence cyc({Q("1/5")}, Cycle{{Q("1"), Q("1/2")}});
  CHECK(cyc.at(0) == Q("1/5"));
  CHECK(cyc.at(1) == 1);
  CHECK(cyc.at(2) == Q("1/2"));
  CHECK(cyc.at(3) == 1);

  ProbSequence runs({}, Runs{{1, 2}, Q("1"), Q("1/2")});
  // 1 | 1/2 | 1 1 | 1/2 1/2 | then length 2 repeats: 1 1 | 1/2 1/2 | ...
  const char* expected[] = {"1", "1/2", "1", "1", "1/2", "1/2", "1", "1", "1/2", "1/2", "1"};
  for (std::size_t i = 0; i < std::size(expected); ++i) CHECK(runs.at(i) == Q(expected[i]));

  auto counts = cyc.value_counts(0, 7);
  REQUIRE(counts.size() == 3);
  CHECK(counts[0] == std::pair{Q("1/5"), std::uint64_t{1}});
  CHECK(counts[1] == std::pair{Q("1/2"), std::uint64_t{3}});
  CHECK(counts[2] == std::pair{Q("1"), std::uint64_t{3}});

  auto rc = runs.value_counts(1, 9);
  REQUIRE(rc.size() == 2);
  CHECK(rc[0].second == 4);
  CHECK(rc[1].second == 4);

  CHECK_THROWS_AS(ProbSequence({}, RepeatLast{}), ConfigError);
  CHECK_THROWS_AS(ProbSequence({Q("1/2")}, Cycle{{}}), ConfigError);
  CHECK_THROWS_AS(ProbSequence({Q("3/2")}, RepeatLast{}), ConfigError);
  CHECK_THROWS_AS(ProbSequence({}, Runs{{0}, Q("1"), Q("1/2")}), ConfigError);
}

TEST_CASE("value counts agree with pointwise evaluation on random sequences") {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Prob> prefix;
    for (int i = 0; i < static_cast<int>(gen() % 4); ++i) prefix.push_back(make_rational(1 + gen() % 5, 5));
    TailRule tail;
    switch (gen() % 3) {
      case 0: prefix.push_back(make_rational(1 + gen() % 3, 3)); tail = RepeatLast{}; break;
      case 1: tail = Cycle{{make_rational(1 + gen() % 4, 4), make_rational(1 + gen() % 4, 4)}}; break;
      default: tail = Runs{{1 + gen() % 3, 1 + gen() % 3}, Rational(1), make_rational(1 + gen() % 3, 4)};
    }
    ProbSequence seq(prefix, tail);
    std::uint64_t from = gen() % 10;
    std::uint64_t to = from + gen() % 30;
    std::map<Prob, std::uint64_t> brute;
    for (std::uint64_t i = from; i < to; ++i) brute[seq.at(i)] += 1;
    auto fast = seq.value_counts(from, to);
    std::map<Prob, std::uint64_t> got(fast.begin(), fast.end());
    CHECK(got == brute);
    for (std::size_t k = 1; k < fast.size(); ++k) CHECK(fast[k - 1].first < fast[k].first);
  }
}

TEST_CASE("interval exact pmf examples") {
  IntervalModel a(ProbSequence({Q("1"), Q("1/2")}, RepeatLast{}));
  CHECK(interval_exact_pmf(a, 2) == pmf({{1, "1/2"}, {2, "1/2"}}));
  IntervalModel b(ProbSequence::constant(1));
  CHECK(b.exact_pmf(3) == SparsePmf::point(3));
  RunPattern r{{1, 1}};
  CHECK(r.model()->exact_pmf(4) == pmf({{2, "1/2"}, {4, "1/2"}}));
  CHECK_THROWS_AS(interval_exact_pmf(a, 0), DomainError);
  CHECK_THROWS_AS(IntervalModel(ProbSequence::constant(0)), ConfigError);
}

TEST_CASE("interval pairwise is the minimum threshold") {
  IntervalModel m(ProbSequence({Q("1/3"), Q("3/4"), Q("1/2")}, Cycle{{Q("1"), Q("1/5")}}));
  for (std::uint64_t i = 0; i < 8; ++i) {
    for (std::uint64_t j = i + 1; j < 8; ++j) {
      Prob ti = m.marginal(i);
      Prob tj = m.marginal(j);
      CHECK(m.pairwise(i, j) == std::min(ti, tj));
      CHECK(m.pairwise(i, j) - ti * tj >= 0);
    }
  }
  auto u = m.union_series(1, 6);
  CHECK(u == std::vector<Prob>{Q("3/4"), Q("3/4"), Q("1"), Q("1"), Q("1")});
}

TEST_CASE("interval sampling is nested") {
  IntervalModel m(ProbSequence({Q("1/2"), Q("1"), Q("1/4")}, RepeatLast{}));
  for (std::uint64_t p = 0; p < 200; ++p) {
    auto path = m.sample_path(6, {3, p});
    CHECK(path[1] == 1);
    if (path[2]) CHECK(path[0] == 1);
    CHECK(path[3] == path[2]);
  }
}

TEST_CASE("bernoulli model") {
  BernoulliModel m(ProbSequence({Q("1/2"), Q("1/3")}, Cycle{{Q("1/4")}}));
  CHECK(m.exact_pmf(2) == pmf({{0, "1/3"}, {1, "1/2"}, {2, "1/6"}}));
  CHECK(m.pairwise(0, 3) == Q("1/8"));
  CHECK(m.union_series(0, 2) == std::vector<Prob>{Q("1/2"), Q("2/3")});
  CHECK(m.independent_by_construction());
  std::uint64_t n = 0;
  m.for_each_pmf(6, [&](std::uint64_t k, const SparsePmf& p) {
    CHECK(k == ++n + 2);
    CHECK(p == m.exact_pmf(k));
  }, 3);
  CHECK(n == 4);
  auto primed = m.with_prefix_nullified(1);
  CHECK(primed->marginal(0) == 0);
  CHECK(primed->exact_pmf(2) == pmf({{0, "2/3"}, {1, "1/3"}}));
}

TEST_CASE("run second moment ratio") {
  CHECK(run_second_moment_ratio(0, 1) == 1);
  CHECK(run_second_moment_ratio(0, 17) == 1);
  CHECK(run_second_moment_ratio(1, 1) == Q("26/25"));
  CHECK(run_second_moment_ratio(2, 1) == Q("17/16"));
  Rational prev = run_second_moment_ratio(5, 1);
  for (std::uint64_t a : {2, 10, 100, 1000, 100000}) {
    Rational v = run_second_moment_ratio(5, a);
    CHECK(v < prev);
    CHECK(v > 1);
    prev = v;
  }
  CHECK_THROWS_AS(run_second_moment_ratio(1, 0), DomainError);
}

TEST_CASE("run pattern ends") {
  RunPattern r{{1, 1, 1, 2, 7}};
  CHECK(r.high_run_end(1) == 1);
  CHECK(r.low_run_end(1) == 2);
  CHECK(r.high_run_end(3) == 5);
  CHECK(r.high_run_end(5) == 17);
  CHECK(r.low_run_end(5) == 24);
  CHECK_THROWS_AS(r.high_run_end(0), DomainError);
  CHECK_THROWS_AS(r.low_run_end(6), DomainError);
}

TEST_CASE("select run lengths, block-index target") {
  CHECK(select_run_lengths(1).run_lengths == std::vector<std::uint64_t>{1});
  auto sel = select_run_lengths(11);
  CHECK(sel.run_lengths ==
        std::vector<std::uint64_t>{1, 1, 1, 2, 7, 31, 179, 1444, 16350, 261233, 5899811});
  CHECK(sel.stop == RunStop::count_reached);
  RunPattern pattern{sel.run_lengths};
  auto model = pattern.model();
  std::uint64_t prefix = 0;
  for (const auto& c : sel.checkpoints) {
    CHECK(c.bound == inverse_power(2, static_cast<unsigned>(c.block)));
    CHECK(c.ex2 - 1 < c.bound);
    std::uint64_t a = sel.run_lengths[c.block - 1];
    CHECK(c.n == pattern.high_run_end(c.block));
    // Minimality: one shorter run misses the bound.
    if (a > 1) CHECK(run_second_moment_ratio(prefix, a - 1) - 1 >= c.bound);
    if (c.n < 20000) {
      auto m = pmf_moments(model->exact_pmf(c.n));
      CHECK(second_moment_ratio(m.mean, m.second_moment) == c.ex2);
    }
    prefix += a;
  }
  auto capped = select_run_lengths(11, RunTarget::block_index, 1000);
  CHECK(capped.stop == RunStop::cap_reached);
  CHECK(capped.run_lengths.size() < 11);
}

TEST_CASE("select run lengths, event-index target is infeasible from block three") {
  auto sel = select_run_lengths(8, RunTarget::event_index);
  CHECK(sel.run_lengths == std::vector<std::uint64_t>{1, 1});
  CHECK(sel.stop == RunStop::infeasible);
  REQUIRE(sel.checkpoints.size() == 2);
  CHECK(sel.checkpoints[0].n == 1);
  CHECK(sel.checkpoints[1].n == 3);
  CHECK(sel.checkpoints[1].ex2 == Q("26/25"));
  for (const auto& c : sel.checkpoints) CHECK(c.ex2 - 1 < inverse_power(2, static_cast<unsigned>(c.n)));
  // Block three: no length works (the gap times 2^n only grows with a).
  for (std::uint64_t a = 1; a < 200; ++a) {
    CHECK(run_second_moment_ratio(2, a) - 1 >= inverse_power(2, static_cast<unsigned>(4 + a)));
  }
  CHECK(parse_run_target("event_index") == RunTarget::event_index);
  CHECK(to_string(RunStop::infeasible) == "infeasible");
  CHECK_THROWS_AS(parse_run_target("x"), ConfigError);
}

TEST_CASE("low run ends carry the two-point law") {
  RunPattern pattern{select_run_lengths(7).run_lengths};
  auto model = pattern.model();
  for (std::size_t i = 1; i <= 7; ++i) {
    std::uint64_t n = pattern.low_run_end(i);
    auto p = model->exact_pmf(n);
    REQUIRE(p.support_size() == 2);
    Rational mu = pmf_moments(p).mean;
    CHECK(Rational(from_u64(p.entries()[0].count)) / mu == Q("2/3"));
    CHECK(Rational(from_u64(p.entries()[1].count)) / mu == Q("4/3"));
    CHECK(p.entries()[0].mass == Q("1/2"));
    CHECK(relative_tail_mass(p, mu, Q("1/4"), TailKind::at_least) == 1);
  }
}

TEST_CASE("runs and galton configs") {
  auto m = test::model(R"({"type": "runs", "run_lengths": [1, 2]})");
  CHECK(m->marginal(1) == Q("1/2"));
  CHECK(m->marginal(2) == 1);
  auto s = test::model(R"({"type": "runs", "select": {"count": 3}})");
  CHECK(s->name().find("runs") != std::string::npos);
  auto g = test::model(R"({"type": "galton", "coefficients": {"table": [{"n": 0, "k": 0, "p": "1/2"}], "default": "1"}})");
  CHECK(g->marginal(0) == Q("1/2"));
  CHECK(g->marginal(1) == 1);
  auto n = test::model(R"({"type": "bernoulli", "probs": ["1"], "nullify_prefix": 2})");
  CHECK(n->mean_series(4).back() == 2);
}
