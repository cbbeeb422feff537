#pragma once

#include "bclab/core/event_model.hpp"
#include "bclab/core/moments.hpp"

#include <cstdint>
#include <vector>

namespace bclab {

struct VarianceCheck {
  std::uint64_t n = 0;
  Rational var;
  Rational mu;
  bool holds = false;  // Var(S_n) <= mu_n
};

std::vector<VarianceCheck> variance_bound_check(const EventModel& model, std::uint64_t horizon);
std::vector<VarianceCheck> variance_bound_check(const MomentSeries& series);

struct ChebyshevCheck {
  std::uint64_t n = 0;
  Rational eps;
  Prob tail;       // exact P(|S_n - mu_n| >= eps mu_n)
  Rational bound;  // 1 / (eps^2 mu_n)
  bool holds = false;
};

/// Exact tail mass against the Chebyshev bound for each eps and n with mu_n > 0.
std::vector<ChebyshevCheck> chebyshev_check(const EventModel& model, std::uint64_t horizon,
                                            const std::vector<Rational>& eps_list);

struct NkEntry {
  std::uint64_t k = 0;
  std::uint64_t n_k = 0;
  Rational nu_k;  // mu_{n_k}
  bool lower_ok = false;  // k^2 <= nu_k
  bool upper_ok = false;  // nu_k <= k^2 + 1
};

/// n_k = min{n : mu_n >= k^2} for every k with k^2 <= mu_horizon.
/// Throws HorizonError when mu_horizon < 1.
std::vector<NkEntry> build_nk_subsequence(const MomentSeries& series);

struct SubsequenceWitness {
  std::vector<std::uint64_t> indices;  // n_1 < n_2 < ...
  std::vector<Prob> bound_series;      // exact P(|X_{n_l} - 1| > 1/2)
  std::vector<Prob> lower_tails;       // exact P(S_{n_l} < mu/2), never above bound_series
  bool complete = false;               // max_terms reached before the horizon ran out
};

/// Greedy: n_l is the least n > n_{l-1} with P(|X_n - 1| > 1/2) < 2^{-l}.
/// A partial witness is returned when the horizon is exhausted.
SubsequenceWitness extract_fast_subsequence(const EventModel& model, std::uint64_t horizon,
                                            std::size_t max_terms = 64);

struct SandwichReport {
  std::uint64_t nullified = 0;
  std::uint64_t paths = 0;
  std::uint64_t pathwise_violations = 0;  // n with S_n - N > S'_n or S'_n > S_n
  bool mean_bounds_hold = false;          // mu_n - N <= mu'_n <= mu_n for all n
};

/// Compares a model with its nullified copy on shared rng states and on exact
/// means over n in [1, horizon].
SandwichReport prefix_sandwich_check(const ModelPtr& model, std::uint64_t nullified,
                                     std::uint64_t horizon, std::uint64_t paths, std::uint64_t seed);

}  // namespace bclab
