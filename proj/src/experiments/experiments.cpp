#include "bclab/experiments/experiments.hpp"

#include "bclab/conditions/evaluators.hpp"
#include "bclab/conditions/machinery.hpp"
#include "bclab/core/errors.hpp"
#include "bclab/experiments/sweep.hpp"
#include "bclab/galton/closed_form.hpp"
#include "bclab/galton/galton_model.hpp"
#include "bclab/models/bernoulli.hpp"
#include "bclab/models/config.hpp"
#include "bclab/models/interval.hpp"
#include "bclab/models/runs.hpp"

#include <algorithm>
#include <map>

namespace bclab {

using nlohmann::json;

namespace {

MonteCarloOptions mc_options(const ExperimentOptions& o) {
  MonteCarloOptions mc;
  mc.paths = o.paths;
  mc.seed = o.seed;
  mc.workers = o.workers;
  return mc;
}

std::uint64_t or_default(std::uint64_t value, std::uint64_t fallback) { return value == 0 ? fallback : value; }

Series ex2_series(const MomentSeries& s) {
  Series out;
  out.reserve(s.records.size());
  for (const auto& r : s.records) out.push_back({r.n, r.ex2});
  return out;
}

Series exact_diagnostics(const ConditionReport& r) {
  Series out;
  for (const auto& d : r.diagnostics) {
    if (d.exact) out.push_back({d.n, *d.exact});
  }
  return out;
}

json verdict_json(const ConditionReport& r) {
  json j = to_json(r);
  j.erase("diagnostics");
  return j;
}

/// Law of X_n = S_n / mu_n as value -> mass.
std::map<Rational, Prob> x_law(const SparsePmf& pmf, const Rational& mu) {
  std::map<Rational, Prob> law;
  for (const auto& e : pmf.entries()) law[Rational(from_u64(e.count)) / mu] += e.mass;
  return law;
}

json checkpoints_json(const std::vector<RunCheckpoint>& cps, std::uint64_t horizon) {
  json out = json::array();
  for (const auto& c : cps) {
    if (c.n > horizon) break;
    out.push_back({{"block", c.block},
                   {"n", c.n},
                   {"ex2", to_string(c.ex2)},
                   {"gap", to_string(c.ex2 - 1)},
                   {"bound", to_string(c.bound)},
                   {"certified", c.ex2 - 1 < c.bound}});
  }
  return out;
}

}  // namespace

ExperimentResult run_er_not_d(std::uint64_t horizon, const ExperimentOptions& options) {
  if (horizon < 2) throw HorizonError("horizon shorter than the first certified block (2 events)");

  // Selection runs past the horizon so the pattern inside it follows the construction.
  constexpr std::uint64_t cap = std::uint64_t{1} << 60;
  RunSelection literal = select_run_lengths(64, RunTarget::event_index, cap);
  RunSelection block = select_run_lengths(64, RunTarget::block_index, cap);
  RunPattern pattern{block.run_lengths};
  auto model = pattern.model();
  MomentSeries series = moment_series(*model, horizon);

  // (a) literal 2^{-n} target, recomputed from the literal pattern's own p.m.f.
  bool literal_ok = true;
  {
    auto literal_model = RunPattern{literal.run_lengths}.model();
    for (const auto& c : literal.checkpoints) {
      if (c.n > horizon) break;
      auto pmf = literal_model->exact_pmf(c.n);
      auto m = pmf_moments(pmf);
      Rational ex2 = second_moment_ratio(m.mean, m.second_moment);
      literal_ok = literal_ok && ex2 == c.ex2 && ex2 - 1 < c.bound;
    }
  }
  // Block-index target against the moment series of the model actually run.
  bool block_ok = true;
  for (const auto& c : block.checkpoints) {
    if (c.n > horizon) break;
    block_ok = block_ok && series.at(c.n).ex2 == c.ex2 && c.ex2 - 1 < c.bound;
  }
  // (b) two-point law of X_n at every low-run end.
  const std::map<Rational, Prob> two_point = {{Rational(2, 3), Prob(1, 2)}, {Rational(4, 3), Prob(1, 2)}};
  bool low_ok = true;
  json low_ends = json::array();
  std::vector<std::uint64_t> m_grid;
  for (std::size_t i = 1; i <= pattern.run_lengths.size(); ++i) {
    std::uint64_t n = pattern.low_run_end(i);
    if (n > horizon) break;
    auto pmf = model->exact_pmf(n);
    auto mu = pmf_moments(pmf).mean;
    bool law_ok = x_law(pmf, mu) == two_point;
    Prob tail = relative_tail_mass(pmf, mu, Rational(1, 4), TailKind::at_least);
    low_ok = low_ok && law_ok && tail == 1;
    low_ends.push_back({{"block", i}, {"n", n}, {"law_ok", law_ok}, {"tail_quarter", to_string(tail)}});
    m_grid.push_back(n);
  }

  ConditionReport er = eval_er(series, horizon / 2, {Rational(1, 100), Rational(1, 100)});
  ConditionReport d = eval_d(*model, horizon, Rational(1, 4), m_grid, mc_options(options));

  json report = {{"experiment", "er-not-d"},
                 {"horizon", horizon},
                 {"run_lengths", pattern.run_lengths},
                 {"literal_target",
                  {{"run_lengths", literal.run_lengths},
                   {"stop", to_string(literal.stop)},
                   {"checkpoints", checkpoints_json(literal.checkpoints, horizon)},
                   {"certified", literal_ok}}},
                 {"block_target",
                  {{"stop", to_string(block.stop)},
                   {"checkpoints", checkpoints_json(block.checkpoints, horizon)},
                   {"certified", block_ok}}},
                 {"low_run_ends", low_ends},
                 {"low_run_laws_ok", low_ok},
                 {"ER", verdict_json(er)},
                 {"D", verdict_json(d)}};
  if (literal.stop == RunStop::infeasible) {
    report["literal_target"]["note"] =
        "no run length meets E[X_n^2] - 1 < 2^-n beyond the certified blocks: with A the events before "
        "the run, (E[X_n^2] - 1) 2^n = A^2 2^(2A+a) / (3A+2a)^2 is increasing in a and already >= 1 at a = 1";
  }
  report["ok"] = literal_ok && block_ok && low_ok && er.verdict == Verdict::holds && d.verdict == Verdict::fails;
  return {report, {{"ex2", ex2_series(series)}}};
}

ExperimentResult run_d_not_er(unsigned max_exponent, const ExperimentOptions& options,
                              const DNotErOptions& extra) {
  if (max_exponent < 2 || max_exponent > 64) throw DomainError("max_exponent must be in [2, 64]");
  const auto coeffs = GaltonCoefficients::logarithmic();

  // Closed form against the recursion, plus the moment facts along the way.
  std::uint64_t mismatches = 0;
  std::uint64_t first_mismatch = 0;
  bool lower_ok = true;
  std::uint64_t n0 = 2;
  bool monotone_ok = true;
  std::vector<std::uint64_t> strict_drops;
  Rational prev_ex2;
  SparsePmf pmf;
  for (std::uint64_t n = 0; n < extra.agreement_horizon; ++n) {
    pmf = pmf_step(pmf, n, coeffs);
    const std::uint64_t m = n + 1;
    auto mom = pmf_moments(pmf);
    Rational ex2 = second_moment_ratio(mom.mean, mom.second_moment);
    if (m >= 2) {
      if (!(closed_form_pmf(m) == pmf)) {
        if (mismatches++ == 0) first_mismatch = m;
      }
      if (mom.mean < floor_log2(m)) lower_ok = false;
      if (mom.mean > floor_log2(m) + 1) n0 = m + 1;
    }
    if (m >= 3) {
      if (!is_power_of_two(m) && ex2 < prev_ex2) monotone_ok = false;
      if (is_power_of_two(m) && ex2 < prev_ex2) strict_drops.push_back(m);
    }
    prev_ex2 = ex2;
  }
  auto p4 = closed_form_moments(mpz_class(4));

  // Absorption mass at powers of two.
  Series absorption;
  bool absorption_monotone = true;
  for (unsigned j = 1; j <= std::min(max_exponent, 63U); ++j) {
    Prob a = absorption_probability(std::uint64_t{1} << j);
    if (!absorption.empty() && a < absorption.back().value) absorption_monotone = false;
    absorption.push_back({j, a});
  }
  Prob a4096 = absorption_probability(4096);

  // E[X_{2^j}^2] from the closed form.
  Series growth;
  for (unsigned j = 1; j <= max_exponent; ++j) {
    mpz_class n = mpz_class(1);
    n <<= j;
    growth.push_back({j, closed_form_moments(n).ex2});
  }
  std::uint64_t j0 = growth.back().n;
  while (j0 > 1 && growth[j0 - 2].value < growth[j0 - 1].value) --j0;
  std::uint64_t crossing = 0;
  for (const auto& g : growth) {
    if (g.value > extra.bar) {
      crossing = g.n;
      break;
    }
  }

  GaltonModel model(coeffs);
  const std::uint64_t h = extra.galton_horizon;
  MomentSeries series = moment_series(model, h);
  ConditionReport er = eval_er(series, h / 2, {Rational(1, 100), Rational(1, 100)});
  ConditionReport d = eval_d(model, h, Rational(1, 4), {h / 4, h / 2}, mc_options(options));

  json report = {{"experiment", "d-not-er"},
                 {"max_exponent", max_exponent},
                 {"agreement",
                  {{"horizon", extra.agreement_horizon},
                   {"mismatches", mismatches},
                   {"first_mismatch", first_mismatch}}},
                 {"mu_4", to_string(p4.mu)},
                 {"ex2_4", to_string(p4.ex2)},
                 {"mu_lower_bound_holds", lower_ok},
                 {"mu_upper_bound_from", n0},
                 {"ex2_monotone_off_powers_of_two", monotone_ok},
                 {"ex2_strict_drops", strict_drops},
                 {"absorption_4096", to_string(a4096)},
                 {"absorption_monotone", absorption_monotone},
                 {"ex2_power_increasing_from", j0},
                 {"bar", to_string(extra.bar)},
                 {"first_exponent_above_bar", crossing},
                 {"ER", verdict_json(er)},
                 {"D", verdict_json(d)}};
  report["ok"] = mismatches == 0 && lower_ok && monotone_ok && a4096 == Prob(80, 81) && absorption_monotone &&
                 crossing != 0 && er.verdict == Verdict::fails && d.verdict == Verdict::holds;
  return {report,
          {{"ex2", ex2_series(series)}, {"ex2_by_exponent", growth}, {"absorption_by_exponent", absorption}}};
}

ExperimentResult run_io_not_sub(std::uint64_t horizon, const ExperimentOptions& options) {
  if (horizon < 4) throw HorizonError("io-not-sub needs horizon >= 4");
  IntervalModel model(ProbSequence({}, Cycle{{Prob(1), Prob(1, 2)}}), 0, "period-2");

  SubOptions sub_options;
  sub_options.tail_start = 1;
  ConditionReport sub = eval_sub(model, horizon, Rational(1, 4), sub_options);
  Series d = exact_diagnostics(sub);

  bool even_ok = true;
  bool odd_monotone = true;
  Rational last_odd = -1;
  for (const auto& p : d) {
    if (p.n % 2 == 0) {
      even_ok = even_ok && p.value == 1;
    } else {
      if (p.value < last_odd) odd_monotone = false;
      last_odd = p.value;
    }
  }
  bool odd_to_one = odd_monotone && last_odd == 1;
  // Sub-window verdict at the horizon tail; the diagnostics above cover all n.
  ConditionReport sub_tail = eval_sub(model, horizon, Rational(1, 4));

  bool bruss_ok = true;
  std::vector<NamedSeries> out_series = {{"d", d}};
  json bruss = json::array();
  for (std::uint64_t m : {0, 1}) {
    BrussSeries b = bruss_sum(model, m, horizon);
    Series partial;
    for (std::size_t k = 0; k < b.partial_sums.size(); ++k) {
      std::uint64_t n = m + k;
      partial.push_back({n, b.partial_sums[k]});
      bruss_ok = bruss_ok && b.partial_sums[k] == Rational(static_cast<long>(n - m + 1));
    }
    bruss.push_back({{"m", m},
                     {"terms", b.terms.size()},
                     {"last_partial_sum", b.partial_sums.empty() ? "0/1" : to_string(b.partial_sums.back())}});
    out_series.push_back({"bruss_m" + std::to_string(m), std::move(partial)});
  }

  bool sure_ok = true;
  for (std::uint64_t i = 0; i < horizon; i += 2) sure_ok = sure_ok && model.marginal(i) == 1;

  ConditionReport io = eval_io(model, horizon, mc_options(options));
  ConditionReport b = eval_b(model, horizon, {horizon / 4, horizon / 2});

  json report = {{"experiment", "io-not-sub"},
                 {"horizon", horizon},
                 {"eps", "1/4"},
                 {"even_n_deviation_one", even_ok},
                 {"odd_n_deviation_to_one", odd_to_one},
                 {"last_odd_deviation", to_string(last_odd)},
                 {"bruss", bruss},
                 {"bruss_partial_sums_exact", bruss_ok},
                 {"even_index_events_sure", sure_ok},
                 {"SUB", verdict_json(sub_tail)},
                 {"IO", verdict_json(io)},
                 {"B", verdict_json(b)}};
  report["ok"] = even_ok && odd_to_one && bruss_ok && sure_ok && sub_tail.verdict == Verdict::fails &&
                 io.verdict == Verdict::holds && b.verdict == Verdict::holds;
  return {report, out_series};
}

ExperimentResult run_nop_implies_d_demo(const ExperimentOptions& options) {
  const std::uint64_t h = or_default(options.horizon, 1024);
  if (h < 16) throw HorizonError("nop-implies-d-demo needs horizon >= 16");
  auto model = std::make_shared<BernoulliModel>(
      ProbSequence({Prob(1, 2), Prob(1, 3), Prob(1, 4)}, Cycle{{Prob(1, 2), Prob(1, 3)}}));

  CovarianceReports cov = eval_cov(*model, h / 2, h);
  MomentSeries series = moment_series(*model, h);
  auto variance = variance_bound_check(series);
  bool variance_ok = std::all_of(variance.begin(), variance.end(), [](const auto& v) { return v.holds; });
  auto cheb = chebyshev_check(*model, h, {Rational(1, 4), Rational(1, 2), Rational(1)});
  bool cheb_ok = std::all_of(cheb.begin(), cheb.end(), [](const auto& c) { return c.holds; });
  auto nk = build_nk_subsequence(series);
  bool nk_ok = std::all_of(nk.begin(), nk.end(), [](const auto& e) { return e.lower_ok && e.upper_ok; });
  json nk_json = json::array();
  for (const auto& e : nk) nk_json.push_back({{"k", e.k}, {"n_k", e.n_k}, {"nu_k", to_string(e.nu_k)}});
  auto sandwich = prefix_sandwich_check(model, 16, h, options.paths, options.seed);
  ConditionReport d = eval_d(*model, h, Rational(1, 4), {h / 4, h / 2}, mc_options(options));

  // "Eventually": positive correlation confined to a prefix, removed by nullification.
  ModelPtr early = model_from_json(json::parse(R"({"type": "interval", "thresholds": ["1/2", "1/2", "1/2", "1/2", "1"]})"));
  CovarianceReports early_cov = eval_cov(*early, 0, 64);
  CovarianceReports primed_cov = eval_cov(*nullify_prefix(early, early_cov.nop_clean_from), 0, 64);

  Series var_ratio;
  for (const auto& v : variance) {
    if (v.mu > 0) var_ratio.push_back({v.n, v.var / v.mu});
  }

  json report = {{"experiment", "nop-implies-d-demo"},
                 {"horizon", h},
                 {"NOP", verdict_json(cov.nop)},
                 {"variance_bound_holds", variance_ok},
                 {"chebyshev_holds", cheb_ok},
                 {"chebyshev_checks", cheb.size()},
                 {"nk_bounds_hold", nk_ok},
                 {"nk", nk_json},
                 {"sandwich",
                  {{"nullified", sandwich.nullified},
                   {"paths", sandwich.paths},
                   {"pathwise_violations", sandwich.pathwise_violations},
                   {"mean_bounds_hold", sandwich.mean_bounds_hold}}},
                 {"eventual_nop",
                  {{"violations", early_cov.nop_violations},
                   {"clean_from", early_cov.nop_clean_from},
                   {"nullified_violations", primed_cov.nop_violations}}},
                 {"D", verdict_json(d)}};
  report["ok"] = cov.nop.verdict == Verdict::holds && variance_ok && cheb_ok && nk_ok &&
                 sandwich.pathwise_violations == 0 && sandwich.mean_bounds_hold &&
                 early_cov.nop_violations > 0 && primed_cov.nop_violations == 0 && d.verdict == Verdict::holds;
  return {report, {{"ex2", ex2_series(series)}, {"var_over_mu", var_ratio}}};
}

ExperimentResult run_bruss_demo(const ExperimentOptions& options) {
  const std::uint64_t h = or_default(options.horizon, 256);
  if (h < 8) throw HorizonError("bruss-demo needs horizon >= 8");
  struct Case {
    std::string name;
    const char* config;
    Verdict expected;
  };
  const std::vector<Case> cases = {
      {"bernoulli-half", R"({"type": "bernoulli", "probs": ["1/2"]})", Verdict::holds},
      {"interval-half", R"({"type": "interval", "thresholds": ["1/2"]})", Verdict::fails},
      {"interval-period-2", R"({"type": "interval", "tail": {"rule": "cycle", "values": ["1", "1/2"]}})",
       Verdict::holds},
  };
  bool ok = true;
  json rows = json::array();
  std::vector<NamedSeries> out_series;
  for (const auto& c : cases) {
    ModelPtr model = model_from_json(json::parse(c.config));
    BrussSeries s = bruss_sum(*model, 0, h);
    Series partial;
    for (std::size_t k = 0; k < s.partial_sums.size(); ++k) partial.push_back({k, s.partial_sums[k]});
    out_series.push_back({c.name, std::move(partial)});
    ConditionReport b = eval_b(*model, h, {h / 4, h / 2});
    ConditionReport io = eval_io(*model, h, mc_options(options));
    bool identity = true;
    for (const auto& per_m : b.details["per_m"]) identity = identity && per_m["product_identity"].get<bool>();
    bool coherent = io.verdict == Verdict::inconclusive || io.verdict == b.verdict;
    ok = ok && identity && coherent && b.verdict == c.expected;
    rows.push_back({{"model", c.name},
                    {"partial_sum", s.partial_sums.empty() ? "0/1" : to_string(s.partial_sums.back())},
                    {"product_identity", identity},
                    {"B", verdict_json(b)},
                    {"IO", verdict_json(io)},
                    {"coherent", coherent}});
  }
  json report = {{"experiment", "bruss-demo"}, {"horizon", h}, {"models", rows}, {"ok", ok}};
  return {report, out_series};
}

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {"er-not-d",           "d-not-er",   "io-not-sub",
                                                 "nop-implies-d-demo", "bruss-demo", "diagram-sweep"};
  return names;
}

ExperimentResult run_experiment(const std::string& name, const ExperimentOptions& options,
                                unsigned max_exponent) {
  if (name == "er-not-d") return run_er_not_d(or_default(options.horizon, 2000), options);
  if (name == "d-not-er") return run_d_not_er(max_exponent, options);
  if (name == "io-not-sub") return run_io_not_sub(or_default(options.horizon, 1000), options);
  if (name == "nop-implies-d-demo") return run_nop_implies_d_demo(options);
  if (name == "bruss-demo") return run_bruss_demo(options);
  if (name == "diagram-sweep") {
    SweepOptions s{options.horizon, options.paths, options.seed, options.workers};
    SweepResult result = run_diagram_sweep(default_zoo(), s);
    return {result.to_json(), {}};
  }
  throw ConfigError("unknown experiment '" + name + "'");
}

}  // namespace bclab
