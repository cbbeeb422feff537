#pragma once

#include "bclab/core/rational.hpp"
#include "bclab/models/interval.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace bclab {

/// Alternating runs of (0,1] and (0,1/2]; the i-th low run has the same
/// length a_i as the i-th high run.
struct RunPattern {
  std::vector<std::uint64_t> run_lengths;
  Prob high = Prob(1);
  Prob low = Prob(1, 2);

  ProbSequence thresholds() const;
  std::shared_ptr<IntervalModel> model() const;

  /// Events through the end of the i-th high run (i >= 1):
  /// 2(a_1+..+a_{i-1}) + a_i.
  std::uint64_t high_run_end(std::size_t block) const;
  /// Events through the end of the i-th low run: 2(a_1+..+a_i).
  std::uint64_t low_run_end(std::size_t block) const;
};

/// E[X_n^2] at the end of a high run of length a_i preceded by runs summing
/// to prefix_sum, from the two-point law of S_n. Requires a_i >= 1.
Rational run_second_moment_ratio(const mpz_class& prefix_sum, const mpz_class& run_length);
Rational run_second_moment_ratio(std::uint64_t prefix_sum, std::uint64_t run_length);

/// Which bound each selected run must meet at the end of its high run.
enum class RunTarget {
  event_index,  // E[X_n^2] - 1 < 2^{-n}, n = number of events so far
  block_index   // E[X_n^2] - 1 < 2^{-i}, i = run index
};

enum class RunStop {
  count_reached,
  infeasible,  // no run length can meet the target (event_index, i >= 3)
  cap_reached  // next run would push the pattern past max_events
};

struct RunCheckpoint {
  std::size_t block = 0;   // 1-based run index
  std::uint64_t n = 0;     // events through the end of the high run
  Rational ex2;            // E[X_n^2] there
  Rational bound;          // 2^{-n} or 2^{-i}
};

struct RunSelection {
  std::vector<std::uint64_t> run_lengths;
  std::vector<RunCheckpoint> checkpoints;
  RunTarget target = RunTarget::block_index;
  RunStop stop = RunStop::count_reached;
};

/// Minimal a_1, a_2, ... meeting the target, found by exponential then binary
/// search. Stops early (without error) when the target is infeasible or the
/// pattern would exceed max_events events.
RunSelection select_run_lengths(std::size_t count, RunTarget target = RunTarget::block_index,
                                std::uint64_t max_events = std::uint64_t{1} << 62);

std::string to_string(RunTarget target);
std::string to_string(RunStop stop);
RunTarget parse_run_target(const std::string& text);

}  // namespace bclab
