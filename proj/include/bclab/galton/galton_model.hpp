#pragma once

#include "bclab/core/event_model.hpp"
#include "bclab/galton/coefficients.hpp"

namespace bclab {

/// Galton sequence: A_i occurs with probability [i, k] where k = S_i is the
/// number of occurrences among A_0 .. A_{i-1}. The count process is Markov,
/// so every exact quantity comes from forward propagation of sparse laws.
///
/// Events below `nullified_prefix` are replaced by the impossible event; the
/// underlying count (which drives the coefficients) is unaffected.
class GaltonModel final : public EventModel {
 public:
  explicit GaltonModel(GaltonCoefficients coefficients, std::uint64_t nullified_prefix = 0);

  std::string name() const override;
  Path sample_path(std::uint64_t horizon, RngState state) const override;
  Prob marginal(std::uint64_t i) const override;
  std::vector<Rational> mean_series(std::uint64_t horizon) const override;

  bool has_pairwise() const override { return true; }
  Prob pairwise(std::uint64_t i, std::uint64_t j) const override;
  std::vector<Prob> pairwise_row(std::uint64_t i, std::uint64_t horizon) const override;

  bool has_exact_pmf() const override { return true; }
  SparsePmf exact_pmf(std::uint64_t n) const override;
  void for_each_pmf(std::uint64_t horizon, const PmfVisitor& visit,
                    std::uint64_t from = 1) const override;

  bool has_exact_unions() const override { return true; }
  std::vector<Prob> union_series(std::uint64_t m, std::uint64_t horizon) const override;

  bool independent_by_construction() const override {
    return coefficients_.kind() == GaltonCoefficients::Kind::constant;
  }
  std::shared_ptr<const EventModel> with_prefix_nullified(std::uint64_t count) const override;

  const GaltonCoefficients& coefficients() const { return coefficients_; }
  std::uint64_t nullified_prefix() const { return nullified_; }

 private:
  GaltonCoefficients coefficients_;
  std::uint64_t nullified_;
};

/// Exact P(A_i and A_j), i < j, by propagating the joint law of (S_n, I_i).
/// Throws DomainError for i >= j, ResourceError past the support cap.
Prob galton_pairwise(const GaltonModel& model, std::uint64_t i, std::uint64_t j);

}  // namespace bclab
