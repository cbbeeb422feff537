#pragma once

#include "bclab/core/event_model.hpp"
#include "bclab/models/prob_sequence.hpp"

namespace bclab {

/// Mutually independent events with P(A_i) = probs.at(i).
class BernoulliModel final : public EventModel {
 public:
  explicit BernoulliModel(ProbSequence probs, std::uint64_t nullified_prefix = 0);

  std::string name() const override;
  Path sample_path(std::uint64_t horizon, RngState state) const override;
  Prob marginal(std::uint64_t i) const override;

  bool has_pairwise() const override { return true; }
  Prob pairwise(std::uint64_t i, std::uint64_t j) const override;

  /// Poisson-binomial convolution ladder.
  bool has_exact_pmf() const override { return true; }
  SparsePmf exact_pmf(std::uint64_t n) const override;
  void for_each_pmf(std::uint64_t horizon, const PmfVisitor& visit,
                    std::uint64_t from = 1) const override;

  /// 1 - prod (1 - p_j).
  bool has_exact_unions() const override { return true; }
  std::vector<Prob> union_series(std::uint64_t m, std::uint64_t horizon) const override;

  bool independent_by_construction() const override { return true; }
  std::shared_ptr<const EventModel> with_prefix_nullified(std::uint64_t count) const override;

  const ProbSequence& probs() const { return probs_; }

 private:
  double prob_double(std::uint64_t i) const;

  ProbSequence probs_;
  std::uint64_t nullified_;
};

}  // namespace bclab
