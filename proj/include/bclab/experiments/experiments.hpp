#pragma once

#include "bclab/experiments/output.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace bclab {

/// Report plus the exact series behind it. `report["ok"]` is true when every
/// exact certificate passed and every verdict came out as the construction
/// predicts.
struct ExperimentResult {
  nlohmann::json report;
  std::vector<NamedSeries> series;

  bool ok() const { return report.value("ok", false); }
};

struct ExperimentOptions {
  std::uint64_t horizon = 0;  // 0: per-experiment default
  std::uint64_t paths = 1000;
  std::uint64_t seed = 0;
  unsigned workers = 0;
};

/// Runs model from select_run_lengths. Certifies the literal 2^{-n} target on
/// every block the literal selector accepts, the 2^{-i} target on the
/// block-index selection, and the two-point law {2/3, 4/3} of X_n at every
/// low-run end within the horizon; then evaluates ER (exact) and D (Monte
/// Carlo, m ranging over low-run ends). Throws HorizonError for horizon < 2.
ExperimentResult run_er_not_d(std::uint64_t horizon, const ExperimentOptions& options = {});

struct DNotErOptions {
  std::uint64_t agreement_horizon = 4096;  // closed form vs recursion, 2 <= n <= this
  std::uint64_t galton_horizon = 4096;     // Monte Carlo D and exact ER window
  Rational bar = Rational(10);
};

/// logarithmic Galton model. Closed-form/recursion agreement, the absorption series
/// at powers of two, Monte Carlo D, and E[X_{2^j}^2] for j <= max_exponent
/// with the first j crossing the bar. Throws DomainError for max_exponent
/// outside [2, 64].
ExperimentResult run_d_not_er(unsigned max_exponent, const ExperimentOptions& options = {},
                              const DNotErOptions& extra = {});

/// Period-2 interval model (0,1], (0,1/2], ... with eps = 1/4: exact d(n),
/// Bruss partial sums from m = 0 and m = 1, occurrence of every even-indexed
/// event, and the SUB / IO / B verdicts. Throws HorizonError for horizon < 4.
ExperimentResult run_io_not_sub(std::uint64_t horizon, const ExperimentOptions& options = {});

/// Negatively-or-un-correlated Bernoulli model: NOP on a window, the variance
/// bound, Chebyshev tails, the n_k subsequence, the nullified-prefix sandwich
/// and Monte Carlo D.
ExperimentResult run_nop_implies_d_demo(const ExperimentOptions& options = {});

/// Bruss sums, product identity, B and IO on models where B holds and fails.
ExperimentResult run_bruss_demo(const ExperimentOptions& options = {});

const std::vector<std::string>& experiment_names();

/// Dispatches on the experiment name (including "diagram-sweep" over the
/// default zoo). `max_exponent` only applies to d-not-er. Throws ConfigError
/// for an unknown name.
ExperimentResult run_experiment(const std::string& name, const ExperimentOptions& options,
                                unsigned max_exponent = 64);

}  // namespace bclab
