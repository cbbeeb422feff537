#pragma once

#include "bclab/core/rational.hpp"

#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

namespace bclab {

/// Tail rules extending a finite explicit prefix to an infinite sequence.
struct RepeatLast {};

struct Cycle {
  std::vector<Prob> values;
};

/// Alternating blocks: `high` repeated a_1 times, `low` repeated a_1 times,
/// `high` repeated a_2 times, ... Once the listed lengths run out the last
/// length repeats forever.
struct Runs {
  std::vector<std::uint64_t> run_lengths;
  Prob high = Prob(1);
  Prob low = Prob(1, 2);
};

using TailRule = std::variant<RepeatLast, Cycle, Runs>;

/// Infinite sequence of probabilities: explicit prefix, then a tail rule.
class ProbSequence {
 public:
  ProbSequence(std::vector<Prob> prefix, TailRule tail);

  static ProbSequence constant(const Prob& value) { return ProbSequence({value}, RepeatLast{}); }

  Prob at(std::uint64_t i) const;
  double at_double(std::uint64_t i) const;

  /// Distinct values among indices [from, to) with their multiplicities,
  /// ordered by increasing value. O(prefix + distinct + log blocks).
  std::vector<std::pair<Prob, std::uint64_t>> value_counts(std::uint64_t from,
                                                            std::uint64_t to) const;

  /// All values the sequence can take.
  std::vector<Prob> value_set() const;

  const std::vector<Prob>& prefix() const { return prefix_; }
  const TailRule& tail() const { return tail_; }

 private:
  // Tail position t (index minus prefix length).
  const Prob& tail_at(std::uint64_t t) const;
  bool runs_high(std::uint64_t t) const;

  std::vector<Prob> prefix_;
  TailRule tail_;
  std::vector<double> prefix_d_;
  std::vector<double> cycle_d_;
  double high_d_ = 0.0;
  double low_d_ = 0.0;
  std::vector<std::uint64_t> block_ends_;  // cumulative 2*(a_1 + .. + a_i)
};

}  // namespace bclab
