#include "bclab/conditions/evaluators.hpp"

#include "bclab/conditions/monte_carlo.hpp"
#include "bclab/core/errors.hpp"
#include "bclab/galton/closed_form.hpp"
#include "bclab/galton/galton_model.hpp"

#include <algorithm>
#include <cmath>

namespace bclab {
namespace {

std::vector<const MomentRecord*> tail_records(const MomentSeries& series, std::uint64_t tail_start) {
  std::uint64_t start = std::max(tail_start, series.zero_mean_prefix + 1);
  std::vector<const MomentRecord*> tail;
  for (const auto& r : series.records) {
    if (r.n >= start) tail.push_back(&r);
  }
  if (tail.empty()) throw HorizonError("empty tail window");
  return tail;
}

std::uint64_t series_horizon(const MomentSeries& series) {
  return series.records.empty() ? 0 : series.records.back().n;
}

nlohmann::json moment_details(const MomentThresholds& t, std::uint64_t start, std::uint64_t horizon) {
  return {{"tail_window", {start, horizon}},
          {"hold_tol", to_string(t.hold_tol)},
          {"fail_gap", to_string(t.fail_gap)}};
}

}  // namespace

ConditionReport eval_er(const MomentSeries& series, std::uint64_t tail_start,
                        const MomentThresholds& thresholds) {
  auto tail = tail_records(series, tail_start);
  ConditionReport report;
  report.condition = Condition::ER;
  report.horizon = series_horizon(series);
  report.method = Method::exact;
  const Rational* running = nullptr;
  std::uint64_t argmin = 0;
  for (const auto* r : tail) {
    if (running == nullptr || r->ex2 < *running) {
      running = &r->ex2;
      argmin = r->n;
    }
    report.diagnostics.push_back(exact_diagnostic(r->n, *running));
  }
  const Rational& min = *running;
  if (min <= 1 + thresholds.hold_tol) {
    report.verdict = Verdict::holds;
  } else if (min > 1 + thresholds.fail_gap) {
    report.verdict = Verdict::fails;
  } else {
    report.verdict = Verdict::inconclusive;
  }
  report.details = moment_details(thresholds, tail.front()->n, report.horizon);
  report.details["min_ex2"] = to_string(min);
  report.details["argmin"] = argmin;
  report.details["exactly_one"] = min == 1;
  return report;
}

ConditionReport eval_ks(const MomentSeries& series, std::uint64_t tail_start,
                        const MomentThresholds& thresholds) {
  auto tail = tail_records(series, tail_start);
  ConditionReport report;
  report.condition = Condition::KS;
  report.horizon = series_horizon(series);
  report.method = Method::exact;
  Rational running;
  bool first = true;
  for (const auto* r : tail) {
    // mu^2 / E[S^2]; with mu = 0 the X_n = 1 convention gives 1.
    Rational ratio = r->mu == 0 ? Rational(1) : r->mu * r->mu / r->s2;
    if (first || ratio > running) running = ratio;
    first = false;
    report.diagnostics.push_back(exact_diagnostic(r->n, running));
  }
  if (running >= 1 / (1 + thresholds.hold_tol)) {
    report.verdict = Verdict::holds;
  } else if (running < 1 / (1 + thresholds.fail_gap)) {
    report.verdict = Verdict::fails;
  } else {
    report.verdict = Verdict::inconclusive;
  }
  report.details = moment_details(thresholds, tail.front()->n, report.horizon);
  report.details["max_ratio"] = to_string(running);
  report.details["exactly_one"] = running == 1;
  return report;
}

namespace {

std::vector<double> x_denominators(const EventModel& model, std::uint64_t horizon) {
  auto means = model.mean_series(horizon);
  std::vector<double> out;
  out.reserve(means.size());
  for (const auto& mu : means) out.push_back(to_double(mu));
  return out;
}

Verdict low_is_good(double estimate, double radius, double threshold) {
  if (estimate + radius < threshold) return Verdict::holds;
  if (estimate - radius > threshold) return Verdict::fails;
  return Verdict::inconclusive;
}

}  // namespace

ConditionReport eval_d(const EventModel& model, std::uint64_t horizon, const Rational& eps,
                       const std::vector<std::uint64_t>& m_grid, const MonteCarloOptions& options) {
  if (options.paths < 1000) throw DomainError("eval_d needs at least 10^3 paths");
  if (eps <= 0) throw DomainError("eval_d needs eps > 0");
  if (m_grid.empty()) throw HorizonError("eval_d needs a non-empty m grid");
  for (std::size_t k = 0; k < m_grid.size(); ++k) {
    if (m_grid[k] == 0 || m_grid[k] > horizon || (k > 0 && m_grid[k] < m_grid[k - 1])) {
      throw HorizonError("m grid must be nondecreasing within [1, horizon]");
    }
  }
  const auto mu = x_denominators(model, horizon);
  const double eps_d = to_double(eps);

  // Per path: the last n in [1, horizon] with |X_n - 1| > eps (0 if none).
  auto last_bad = map_paths<std::uint64_t>(options.paths, options.workers, [&](std::uint64_t p) {
    Path path = model.sample_path(horizon, {options.seed, p});
    std::uint64_t s = 0;
    std::uint64_t last = 0;
    for (std::uint64_t n = 1; n <= horizon; ++n) {
      s += path[n - 1];
      double x = mu[n - 1] == 0.0 ? 1.0 : static_cast<double>(s) / mu[n - 1];
      if (std::abs(x - 1.0) > eps_d) last = n;
    }
    return last;
  });

  ConditionReport report;
  report.condition = Condition::D;
  report.horizon = horizon;
  report.method = Method::monte_carlo;
  nlohmann::json radii = nlohmann::json::array();
  double estimate = 0.0;
  double radius = 0.0;
  for (std::uint64_t m : m_grid) {
    auto bad = std::count_if(last_bad.begin(), last_bad.end(), [&](std::uint64_t l) { return l >= m; });
    estimate = static_cast<double>(bad) / static_cast<double>(options.paths);
    radius = binomial_radius(estimate, options.paths, options.z);
    report.diagnostics.push_back(float_diagnostic(m, estimate));
    radii.push_back(radius);
  }
  report.verdict = low_is_good(estimate, radius, options.threshold);
  report.details = {{"eps", to_string(eps)},
                    {"paths", options.paths},
                    {"seed", options.seed},
                    {"threshold", options.threshold},
                    {"z", options.z},
                    {"radii", radii}};
  if (const auto* g = dynamic_cast<const GaltonModel*>(&model);
      g != nullptr && g->coefficients().kind() == GaltonCoefficients::Kind::logarithmic) {
    nlohmann::json exact = nlohmann::json::array();
    for (std::uint64_t m : m_grid) {
      if (m < 2) continue;
      exact.push_back({{"m", m}, {"non_absorbed", to_string(1 - absorption_probability(m))}});
    }
    report.details["exact_non_absorbed"] = exact;
  }
  return report;
}

ConditionReport eval_sub(const EventModel& model, std::uint64_t horizon, const Rational& eps,
                         const SubOptions& options) {
  if (!model.has_exact_pmf()) throw CapabilityError("eval_sub needs exact p.m.f.s");
  if (horizon == 0) throw HorizonError("eval_sub needs horizon >= 1");
  const std::uint64_t tail_start = options.tail_start == 0 ? std::max<std::uint64_t>(1, horizon / 2)
                                                           : options.tail_start;
  ConditionReport report;
  report.condition = Condition::SUB;
  report.horizon = horizon;
  report.method = Method::exact;
  std::vector<std::uint64_t> candidates;
  Rational tail_min;
  std::uint64_t argmin = 0;
  bool seen = false;
  model.for_each_pmf(horizon, [&](std::uint64_t n, const SparsePmf& pmf) {
    auto m = pmf_moments(pmf);
    Prob d = m.mean == 0 ? Prob(0) : relative_tail_mass(pmf, m.mean, eps, TailKind::greater_than);
    report.diagnostics.push_back(exact_diagnostic(n, d));
    if (n >= tail_start && m.mean != 0) {
      if (!seen || d < tail_min) {
        tail_min = d;
        argmin = n;
      }
      seen = true;
      if (d < options.threshold) candidates.push_back(n);
    }
  }, std::min(options.record_from, tail_start));
  if (!seen) throw HorizonError("empty tail window for eval_sub");
  report.verdict = tail_min < options.threshold ? Verdict::holds : Verdict::fails;
  std::vector<std::uint64_t> shown(candidates.begin(),
                                   candidates.begin() + std::min<std::size_t>(candidates.size(), 64));
  report.details = {{"eps", to_string(eps)},
                    {"threshold", to_string(options.threshold)},
                    {"tail_window", {tail_start, horizon}},
                    {"tail_min", to_string(tail_min)},
                    {"argmin", argmin},
                    {"candidate_count", candidates.size()},
                    {"candidate_subsequence", shown}};
  return report;
}

BrussSeries bruss_sum(const EventModel& model, std::uint64_t m, std::uint64_t horizon) {
  if (!model.has_exact_unions()) throw CapabilityError("bruss_sum needs exact union probabilities");
  if (m >= horizon) throw HorizonError("bruss_sum needs m < horizon");
  BrussSeries out;
  out.m = m;
  out.union_probs = model.union_series(m, horizon);
  Rational running = 0;
  for (std::size_t k = 0; k + 1 < out.union_probs.size(); ++k) {
    const Prob& now = out.union_probs[k];
    Prob term = now == 1 ? Prob(1) : (out.union_probs[k + 1] - now) / (1 - now);
    running += term;
    out.terms.push_back(term);
    out.partial_sums.push_back(running);
  }
  return out;
}

ConditionReport eval_b(const EventModel& model, std::uint64_t horizon,
                       const std::vector<std::uint64_t>& m_grid, const Rational& threshold) {
  if (m_grid.empty()) throw HorizonError("eval_b needs a non-empty m grid");
  ConditionReport report;
  report.condition = Condition::B;
  report.horizon = horizon;
  report.method = Method::exact;
  bool all_small = true;
  nlohmann::json per_m = nlohmann::json::array();
  for (std::uint64_t m : m_grid) {
    BrussSeries s = bruss_sum(model, m, horizon);
    Prob none_end = 1 - s.union_probs.back();
    Prob product = 1 - s.union_probs.front();
    for (const auto& t : s.terms) product *= 1 - t;
    report.diagnostics.push_back(exact_diagnostic(m, none_end));
    all_small = all_small && none_end < threshold;
    per_m.push_back({{"m", m},
                     {"partial_sum", s.partial_sums.empty() ? "0/1" : to_string(s.partial_sums.back())},
                     {"no_occurrence", to_string(none_end)},
                     {"product_identity", product == none_end}});
  }
  report.verdict = all_small ? Verdict::holds : Verdict::fails;
  report.details = {{"threshold", to_string(threshold)}, {"per_m", per_m}};
  return report;
}

ConditionReport eval_io(const EventModel& model, std::uint64_t horizon, const MonteCarloOptions& options) {
  if (options.paths < 1000) throw DomainError("eval_io needs at least 10^3 paths");
  if (horizon < 2) throw HorizonError("eval_io needs horizon >= 2");
  const std::uint64_t window = horizon / 2;
  struct PathSummary {
    std::uint64_t last = 0;  // 1 + index of last occurrence, 0 if none
    std::uint64_t total = 0;
  };
  auto summaries = map_paths<PathSummary>(options.paths, options.workers, [&](std::uint64_t p) {
    Path path = model.sample_path(horizon, {options.seed, p});
    PathSummary s;
    for (std::uint64_t i = 0; i < horizon; ++i) {
      if (path[i]) {
        s.last = i + 1;
        ++s.total;
      }
    }
    return s;
  });
  std::uint64_t hit = 0;
  double mean_total = 0.0;
  double mean_last = 0.0;
  for (const auto& s : summaries) {
    if (s.last > window) ++hit;
    mean_total += static_cast<double>(s.total);
    mean_last += static_cast<double>(s.last);
  }
  const double n = static_cast<double>(options.paths);
  const double fraction = static_cast<double>(hit) / n;
  const double radius = binomial_radius(fraction, options.paths, options.z);

  ConditionReport report;
  report.condition = Condition::IO;
  report.horizon = horizon;
  report.method = Method::monte_carlo;
  report.diagnostics.push_back(float_diagnostic(window, fraction));
  const double target = 1.0 - options.threshold;
  if (fraction - radius > target) {
    report.verdict = Verdict::holds;
  } else if (fraction + radius < target) {
    report.verdict = Verdict::fails;
  } else {
    report.verdict = Verdict::inconclusive;
  }
  report.details = {{"window", {window, horizon}},
                    {"paths", options.paths},
                    {"seed", options.seed},
                    {"threshold", options.threshold},
                    {"radius", radius},
                    {"mean_occurrences", mean_total / n},
                    {"mean_last_occurrence", mean_last / n}};
  if (model.has_exact_unions()) {
    Prob exact = model.union_series(window, horizon).back();
    report.details["exact_window_occurrence"] = to_string(exact);
    report.details["exact_window_occurrence_float"] = to_double(exact);
  }
  return report;
}

CovarianceReports eval_cov(const EventModel& model, std::uint64_t window_start, std::uint64_t horizon) {
  if (!model.has_pairwise()) throw CapabilityError("eval_cov needs pairwise probabilities");
  if (window_start + 1 >= horizon) throw HorizonError("covariance window needs at least two events");
  auto means = model.mean_series(horizon);
  std::vector<Prob> p(horizon);
  for (std::uint64_t i = 0; i < horizon; ++i) p[i] = i == 0 ? means[0] : means[i] - means[i - 1];

  CovarianceReports out;
  out.nop.condition = Condition::NOP;
  out.pwi.condition = Condition::PWI;
  for (auto* r : {&out.nop, &out.pwi}) {
    r->horizon = horizon;
    r->method = Method::exact;
  }
  std::uint64_t last_nop_bad = 0;
  std::uint64_t last_pwi_bad = 0;
  bool any_nop = false;
  bool any_pwi = false;
  Rational worst_positive = 0;
  for (std::uint64_t i = window_start; i + 1 < horizon; ++i) {
    auto row = model.pairwise_row(i, horizon);
    Rational row_max;
    Rational row_abs = 0;
    bool first = true;
    for (std::uint64_t j = i + 1; j < horizon; ++j) {
      Rational cov = row[j - i - 1] - p[i] * p[j];
      if (first || cov > row_max) row_max = cov;
      first = false;
      Rational a = cov < 0 ? Rational(-cov) : cov;
      if (a > row_abs) row_abs = a;
      if (cov > 0) {
        ++out.nop_violations;
        last_nop_bad = i;
        any_nop = true;
        if (cov > worst_positive) worst_positive = cov;
      }
      if (cov != 0) {
        ++out.pwi_violations;
        last_pwi_bad = i;
        any_pwi = true;
      }
    }
    out.nop.diagnostics.push_back(exact_diagnostic(i, row_max));
    out.pwi.diagnostics.push_back(exact_diagnostic(i, row_abs));
  }
  out.nop_clean_from = any_nop ? last_nop_bad + 1 : window_start;
  out.pwi_clean_from = any_pwi ? last_pwi_bad + 1 : window_start;
  out.nop.verdict = any_nop ? Verdict::fails : Verdict::holds;
  out.pwi.verdict = any_pwi ? Verdict::fails : Verdict::holds;
  out.nop.details = {{"window", {window_start, horizon}},
                     {"violating_pairs", out.nop_violations},
                     {"clean_from", out.nop_clean_from},
                     {"max_covariance", to_string(worst_positive)}};
  out.pwi.details = {{"window", {window_start, horizon}},
                     {"violating_pairs", out.pwi_violations},
                     {"clean_from", out.pwi_clean_from}};
  return out;
}

ConditionReport eval_ind(const EventModel& model, const ConditionReport& pwi) {
  ConditionReport report;
  report.condition = Condition::IND;
  report.horizon = pwi.horizon;
  report.method = Method::exact;
  if (model.independent_by_construction()) {
    report.verdict = Verdict::holds;
    report.details = {{"basis", "independent by construction"}};
  } else if (pwi.verdict == Verdict::fails) {
    report.verdict = Verdict::fails;
    report.details = {{"basis", "pairwise independence fails on the window"}};
  } else {
    report.verdict = Verdict::inconclusive;
    report.details = {{"basis", "mutual independence is not decidable from pairwise data"}};
  }
  return report;
}

}  // namespace bclab
