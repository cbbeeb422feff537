#pragma once

#include "bclab/conditions/report.hpp"
#include "bclab/core/event_model.hpp"
#include "bclab/core/moments.hpp"

#include <cstdint>
#include <vector>

namespace bclab {

/// ER / KS verdict thresholds on the tail extremum of E[X_n^2]: holds when
/// min <= 1 + hold_tol, fails when min > 1 + fail_gap, inconclusive between.
struct MomentThresholds {
  Rational hold_tol = decimal_tolerance(6);
  Rational fail_gap = decimal_tolerance(2);
};

/// Running minimum of E[X_n^2] over n in [tail_start, horizon].
/// Throws HorizonError when the tail window is empty.
ConditionReport eval_er(const MomentSeries& series, std::uint64_t tail_start,
                        const MomentThresholds& thresholds = {});

/// Running maximum of mu_n^2 / E[S_n^2], the reciprocal of E[X_n^2]; the
/// verdict equals eval_er's on the same series.
ConditionReport eval_ks(const MomentSeries& series, std::uint64_t tail_start,
                        const MomentThresholds& thresholds = {});

struct MonteCarloOptions {
  std::uint64_t paths = 1000;
  std::uint64_t seed = 0;
  double threshold = 0.05;
  double z = 1.96;
  unsigned workers = 0;  // 0: hardware concurrency
};

/// Estimates P(sup_{m <= n <= horizon} |X_n - 1| > eps) for each m in m_grid.
/// Holds when the last estimate plus its radius is below the threshold, fails
/// when the estimate minus its radius is above it. For the logarithmic Galton model
/// the exact non-absorbed mass 1 - absorption_probability(m) is attached.
/// Throws DomainError when paths < 1000, HorizonError on an inconsistent grid.
ConditionReport eval_d(const EventModel& model, std::uint64_t horizon, const Rational& eps,
                       const std::vector<std::uint64_t>& m_grid, const MonteCarloOptions& options);

struct SubOptions {
  Rational threshold = Rational(1, 20);
  std::uint64_t tail_start = 0;  // 0: horizon / 2
  std::uint64_t record_from = 1;  // diagnostics cover n >= min(record_from, tail_start)
};

/// d(n) = P(|X_n - 1| > eps) exactly for n up to horizon; holds when some
/// d(n) in the tail window is below the threshold. Those indices are the
/// candidate subsequence.
ConditionReport eval_sub(const EventModel& model, std::uint64_t horizon, const Rational& eps,
                         const SubOptions& options = {});

struct BrussSeries {
  std::uint64_t m = 0;
  std::vector<Prob> union_probs;       // P(E_m^i), i = m .. horizon-1
  std::vector<Prob> terms;             // P(E_m^{i+1} | not E_m^i), i = m .. horizon-2
  std::vector<Rational> partial_sums;  // sum_{i=m}^{n} terms, n = m .. horizon-2
};

/// Conditional terms use the convention P(. | not E) = 1 once P(E) = 1.
BrussSeries bruss_sum(const EventModel& model, std::uint64_t m, std::uint64_t horizon);

/// Finite-horizon Bruss condition: for each m in the grid the exact mass of
/// "no event in [m, horizon)" must fall below the threshold. That mass equals
/// P(not E_m^m) * prod (1 - term_i), which is checked and reported.
ConditionReport eval_b(const EventModel& model, std::uint64_t horizon,
                       const std::vector<std::uint64_t>& m_grid,
                       const Rational& threshold = Rational(1, 20));

/// Fraction of sampled paths with an occurrence in [horizon/2, horizon);
/// holds when it exceeds 1 - threshold by more than its radius.
ConditionReport eval_io(const EventModel& model, std::uint64_t horizon,
                        const MonteCarloOptions& options);

struct CovarianceReports {
  ConditionReport nop;
  ConditionReport pwi;
  std::uint64_t nop_violations = 0;
  std::uint64_t pwi_violations = 0;
  std::uint64_t nop_clean_from = 0;  // least N in the window with no NOP violation at i, j >= N
  std::uint64_t pwi_clean_from = 0;
};

/// Exact Cov(I_i, I_j) for window_start <= i < j < horizon.
CovarianceReports eval_cov(const EventModel& model, std::uint64_t window_start,
                           std::uint64_t horizon);

/// Independence is only certified by construction; a PWI failure refutes it.
ConditionReport eval_ind(const EventModel& model, const ConditionReport& pwi);

}  // namespace bclab
