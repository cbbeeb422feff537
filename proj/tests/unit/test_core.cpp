#include "helpers.hpp"

#include "bclab/conditions/monte_carlo.hpp"
#include "bclab/core/errors.hpp"
#include "bclab/core/event_model.hpp"
#include "bclab/core/moments.hpp"
#include "bclab/core/rng.hpp"
#include "bclab/models/bernoulli.hpp"
#include "bclab/models/interval.hpp"

#include <doctest.h>

#include <set>

using namespace bclab;
using bclab::test::pmf;
using bclab::test::Q;

TEST_CASE("rational parsing and printing") {
  CHECK(to_string(Q("2/4")) == "1/2");
  CHECK(to_string(Q("3")) == "3/1");
  CHECK(to_string(Q("-6/8")) == "-3/4");
  CHECK_THROWS_AS(parse_rational("1/0"), ConfigError);
  CHECK_THROWS_AS(parse_rational("abc"), ConfigError);
  CHECK_THROWS_AS(parse_rational(""), ConfigError);
  CHECK_THROWS_AS(parse_prob("3/2"), ConfigError);
  CHECK_THROWS_AS(parse_prob("-1/2"), ConfigError);
  CHECK(parse_prob("1") == 1);
  CHECK(inverse_power(2, 10) == Rational(1, 1024));
  CHECK(decimal_tolerance(2) == Rational(1, 100));
  CHECK(from_u64(~std::uint64_t{0}) == Rational(mpz_class("18446744073709551615")));
  CHECK(to_double(Q("1/3")) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("sparse pmf normalisation") {
  SparsePmf p(std::vector<PmfEntry>{{2, Q("1/4")}, {0, Q("1/2")}, {2, Q("1/4")}, {5, Q("0")}});
  REQUIRE(p.support_size() == 2);
  CHECK(p.entries()[0].count == 0);
  CHECK(p.mass_at(2) == Q("1/2"));
  CHECK(p.mass_at(5) == 0);
  CHECK(p.min_count() == 0);
  CHECK(p.max_count() == 2);
  CHECK(SparsePmf() == SparsePmf::point(0));
  CHECK_THROWS_AS(SparsePmf(std::vector<PmfEntry>{{0, Q("1/2")}}), DomainError);
  CHECK_THROWS_AS(SparsePmf(std::vector<PmfEntry>{{0, Q("3/2")}, {1, Q("-1/2")}}), DomainError);
  CHECK_THROWS_AS(SparsePmf::from_normalized({{1, Q("1/2")}, {0, Q("1/2")}}), DomainError);
  CHECK_THROWS_AS(SparsePmf::from_normalized({{0, Q("0")}, {1, Q("1")}}), DomainError);
}

TEST_CASE("pmf moments") {
  auto m = pmf_moments(SparsePmf::point(0));
  CHECK(m.mean == 0);
  CHECK(m.second_moment == 0);
  m = pmf_moments(pmf({{0, "1/2"}, {2, "1/2"}}));
  CHECK(m.mean == 1);
  CHECK(m.second_moment == 2);
  m = pmf_moments(pmf({{1, "2/3"}, {2, "2/9"}, {3, "1/9"}}));
  CHECK(m.mean == Q("13/9"));
  CHECK(m.second_moment == Q("23/9"));
  CHECK(second_moment_ratio(0, 0) == 1);
}

TEST_CASE("moment series examples") {
  auto sure = test::model(R"({"type": "bernoulli", "probs": ["1"]})");
  auto s = moment_series(*sure, 5);
  CHECK(s.at(5).mu == 5);
  CHECK(s.at(5).s2 == 25);
  CHECK(s.at(5).ex2 == 1);

  auto interval = test::model(R"({"type": "interval", "thresholds": ["1", "1/2"]})");
  s = moment_series(*interval, 2);
  CHECK(s.route == MomentRoute::pmf);
  CHECK(s.at(2).mu == Q("3/2"));
  CHECK(s.at(2).s2 == Q("5/2"));
  CHECK(s.at(2).ex2 == Q("10/9"));

  auto galton = test::model(R"({"type": "galton"})");
  s = moment_series(*galton, 4);
  CHECK(s.at(4).mu == Q("20/9"));
  CHECK(s.at(4).ex2 == Q("27/25"));
  CHECK_THROWS_AS(s.at(5), HorizonError);
  CHECK_THROWS_AS(s.at(0), HorizonError);
}

namespace {

// Only marginals and pairwise probabilities: forces the pairwise route.
class PairwiseOnly final : public EventModel {
 public:
  explicit PairwiseOnly(ModelPtr base) : base_(std::move(base)) {}
  std::string name() const override { return "pairwise-only"; }
  Path sample_path(std::uint64_t h, RngState s) const override { return base_->sample_path(h, s); }
  Prob marginal(std::uint64_t i) const override { return base_->marginal(i); }
  bool has_pairwise() const override { return true; }
  Prob pairwise(std::uint64_t i, std::uint64_t j) const override { return base_->pairwise(i, j); }

 private:
  ModelPtr base_;
};

class SamplingOnly final : public EventModel {
 public:
  std::string name() const override { return "sampling-only"; }
  Path sample_path(std::uint64_t h, RngState) const override { return Path(h, 1); }
  Prob marginal(std::uint64_t) const override { return 1; }
};

}  // namespace

TEST_CASE("moment routes agree") {
  const char* configs[] = {
      R"({"type": "interval", "thresholds": ["1/3", "1", "1/2"], "tail": {"rule": "cycle", "values": ["2/5", "1"]}})",
      R"({"type": "galton"})",
      R"({"type": "bernoulli", "probs": ["1/2", "1/7"], "tail": {"rule": "cycle", "values": ["1/3", "0", "1"]}})",
  };
  for (const char* cfg : configs) {
    auto m = test::model(cfg);
    auto a = moment_series(*m, 40);
    auto b = moment_series(PairwiseOnly(m), 40);
    CHECK(b.route == MomentRoute::pairwise);
    for (std::uint64_t n = 1; n <= 40; ++n) {
      CHECK(a.at(n).mu == b.at(n).mu);
      CHECK(a.at(n).s2 == b.at(n).s2);
    }
  }
  auto bern = test::model(R"({"type": "bernoulli", "probs": ["1/2", "1/7", "2/3"]})");
  CHECK(moment_series(*bern, 10).route == MomentRoute::independent);
  CHECK_THROWS_AS(moment_series(SamplingOnly(), 3), CapabilityError);
}

TEST_CASE("second moment ratio is at least one, with equality iff S_n is constant") {
  auto m = test::model(
      R"({"type": "interval", "thresholds": ["1", "1", "1/2", "1"], "tail": {"rule": "cycle", "values": ["1/4", "1"]}})");
  for (std::uint64_t n = 1; n <= 30; ++n) {
    auto p = m->exact_pmf(n);
    auto mom = pmf_moments(p);
    Rational r = second_moment_ratio(mom.mean, mom.second_moment);
    CHECK(r >= 1);
    CHECK((r == 1) == (p.support_size() == 1));
  }
}

TEST_CASE("zero mean prefix") {
  CHECK(zero_mean_prefix({Q("0"), Q("0"), Q("1/2")}) == 2);
  CHECK(zero_mean_prefix({Q("1/2")}) == 0);
  auto m = test::model(R"({"type": "bernoulli", "probs": ["0", "0", "0", "1/2"]})");
  CHECK(moment_series(*m, 6).zero_mean_prefix == 3);
}

TEST_CASE("chebyshev bound") {
  CHECK(chebyshev_bound(100, 1) == Q("1/100"));
  CHECK(chebyshev_bound(1, Q("1/2")) == 4);
  CHECK(chebyshev_bound(25, 1) == Q("1/25"));
  CHECK_THROWS_AS(chebyshev_bound(0, 1), DomainError);
  CHECK_THROWS_AS(chebyshev_bound(1, 0), DomainError);
}

TEST_CASE("relative and lower tails") {
  auto p = pmf({{0, "1/4"}, {1, "1/2"}, {2, "1/4"}});
  CHECK(relative_tail_mass(p, 1, 1, TailKind::at_least) == Q("1/2"));
  CHECK(relative_tail_mass(p, 1, 1, TailKind::greater_than) == 0);
  CHECK(relative_tail_mass(p, 1, Q("1/2"), TailKind::greater_than) == Q("1/2"));
  CHECK(lower_tail_mass(p, 1, Q("1/2")) == Q("1/4"));
  CHECK(lower_tail_mass(p, 1, 2) == Q("3/4"));
}

TEST_CASE("rng streams are deterministic and distinct") {
  Rng a({7, 3});
  Rng b({7, 3});
  Rng c({7, 4});
  Rng d({8, 3});
  std::uint64_t xa = a.next_u64();
  CHECK(xa == b.next_u64());
  CHECK(xa != c.next_u64());
  CHECK(xa != d.next_u64());
  Rng u({1, 1});
  for (int i = 0; i < 1000; ++i) {
    double x = u.uniform();
    CHECK((x >= 0.0 && x < 1.0));
    double y = u.uniform_open_closed();
    CHECK((y > 0.0 && y <= 1.0));
  }
  CHECK(splitmix64(0) != splitmix64(1));
}

TEST_CASE("map_paths is independent of the worker count") {
  auto fn = [](std::uint64_t p) {
    Rng r({42, p});
    return r.next_u64();
  };
  auto one = map_paths<std::uint64_t>(257, 1, fn);
  auto many = map_paths<std::uint64_t>(257, 7, fn);
  CHECK(one == many);
  CHECK_THROWS_AS(map_paths<int>(10, 3, [](std::uint64_t p) -> int {
                    if (p == 5) throw DomainError("boom");
                    return 0;
                  }),
                  DomainError);
  CHECK(binomial_radius(0.0, 100, 1.96) == 0.0);
  CHECK(binomial_radius(0.5, 100, 2.0) == doctest::Approx(0.1));
}

TEST_CASE("nullify prefix") {
  auto sure = test::model(R"({"type": "bernoulli", "probs": ["1"]})");
  CHECK(nullify_prefix(sure, 0)->mean_series(5) == sure->mean_series(5));
  CHECK(nullify_prefix(sure, 2)->mean_series(5).back() == 3);
  auto interval = test::model(R"({"type": "interval", "thresholds": ["1", "1/2", "1"]})");
  auto primed = nullify_prefix(interval, 1);
  CHECK(primed->mean_series(3).back() == Q("3/2"));
  CHECK(primed->exact_pmf(3) == pmf({{1, "1/2"}, {2, "1/2"}}));
  auto galton = test::model(R"({"type": "galton"})");
  auto g2 = nullify_prefix(galton, 2);
  CHECK(g2->marginal(0) == 0);
  CHECK(g2->marginal(2) == galton->marginal(2));
  // Generic wrapper keeps sampling, marginals and pairwise only.
  auto wrapped = nullify_prefix(std::make_shared<PairwiseOnly>(interval), 1);
  CHECK(wrapped->marginal(0) == 0);
  CHECK(wrapped->pairwise(0, 1) == 0);
  CHECK(wrapped->pairwise(1, 2) == Q("1/2"));
  CHECK_FALSE(wrapped->has_exact_pmf());
  CHECK(wrapped->sample_path(3, {1, 1})[0] == 0);
}

TEST_CASE("config parsing errors") {
  CHECK_THROWS_AS(test::model(R"({"probs": ["1/2"]})"), ConfigError);
  CHECK_THROWS_AS(test::model(R"({"type": "bernoulli", "probs": ["3/2"]})"), ConfigError);
  CHECK_THROWS_AS(test::model(R"({"type": "bernoulli", "probs": [1]})"), ConfigError);
  CHECK_THROWS_AS(test::model(R"({"type": "interval", "thresholds": ["0"]})"), ConfigError);
  CHECK_THROWS_AS(test::model(R"({"type": "nope"})"), ConfigError);
  CHECK_THROWS_AS(test::model(R"({"type": "galton", "coefficients": "other"})"), ConfigError);
  CHECK_THROWS_AS(test::model(R"({"type": "runs"})"), ConfigError);
  CHECK_THROWS_AS(load_model("/nonexistent/model.json"), ConfigError);
  CHECK_THROWS_AS(load_model("{not json"), ConfigError);
  CHECK(load_model(R"({"type": "bernoulli", "probs": ["1/2"]})")->marginal(3) == Q("1/2"));
}

TEST_CASE("capability errors") {
  SamplingOnly m;
  CHECK_THROWS_AS(m.exact_pmf(3), CapabilityError);
  CHECK_THROWS_AS(m.pairwise(0, 1), CapabilityError);
  CHECK_THROWS_AS(m.union_series(0, 3), CapabilityError);
  CHECK(m.mean_series(3).back() == 3);
}
