#pragma once

#include "bclab/core/event_model.hpp"
#include "bclab/models/prob_sequence.hpp"

namespace bclab {

/// Nested events A_i = (0, t_i] on ((0,1], Borel, Lebesgue).
///
/// S_n(omega) = #{i < n : omega <= t_i} is a right-continuous step function
/// of omega, so every exact quantity reduces to sorting distinct thresholds.
/// Thresholds must lie in (0, 1]; events below `nullified_prefix` are empty.
class IntervalModel final : public EventModel {
 public:
  explicit IntervalModel(ProbSequence thresholds, std::uint64_t nullified_prefix = 0,
                         std::string label = "interval");

  std::string name() const override;
  Path sample_path(std::uint64_t horizon, RngState state) const override;
  Prob marginal(std::uint64_t i) const override;
  std::vector<Rational> mean_series(std::uint64_t horizon) const override;

  /// min(t_i, t_j).
  bool has_pairwise() const override { return true; }
  Prob pairwise(std::uint64_t i, std::uint64_t j) const override;

  bool has_exact_pmf() const override { return true; }
  SparsePmf exact_pmf(std::uint64_t n) const override;

  /// Running maximum of thresholds.
  bool has_exact_unions() const override { return true; }
  std::vector<Prob> union_series(std::uint64_t m, std::uint64_t horizon) const override;

  std::shared_ptr<const EventModel> with_prefix_nullified(std::uint64_t count) const override;

  const ProbSequence& thresholds() const { return thresholds_; }
  std::uint64_t nullified_prefix() const { return nullified_; }

 private:
  ProbSequence thresholds_;
  std::uint64_t nullified_;
  std::string label_;
};

/// Exact p.m.f. of S_n for an interval model.
SparsePmf interval_exact_pmf(const IntervalModel& model, std::uint64_t n);

}  // namespace bclab
