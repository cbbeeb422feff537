#pragma once

#include "bclab/core/event_model.hpp"
#include "bclab/core/rational.hpp"
#include "bclab/core/sparse_pmf.hpp"
#include "bclab/galton/coefficients.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace bclab {

/// Brute-force ground truth: finitely many atoms with exact positive weights
/// summing to one, and events given as atom subsets.
class FiniteSpace {
 public:
  struct Atom {
    std::string label;
    Prob weight;
  };

  /// Events list atom labels. Throws ConfigError on nonpositive weights, a
  /// total other than 1, duplicate labels, unknown labels, or more than
  /// max_atoms atoms.
  FiniteSpace(std::vector<Atom> atoms, const std::vector<std::vector<std::string>>& events);

  static FiniteSpace from_json(const nlohmann::json& config);

  static constexpr std::size_t max_atoms = std::size_t{1} << 20;

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t event_count() const { return membership_.size(); }
  /// membership(i)[a] is true when atom a lies in event i.
  const std::vector<bool>& membership(std::size_t event) const { return membership_.at(event); }

 private:
  FiniteSpace() = default;

  std::vector<Atom> atoms_;
  std::vector<std::vector<bool>> membership_;
};

/// P.m.f. of S_n (events 0 .. n-1) by summing atom weights.
SparsePmf enumerate_pmf(const FiniteSpace& space, std::size_t n);

Prob enumerate_probability(const FiniteSpace& space, std::size_t i);
Prob enumerate_joint(const FiniteSpace& space, std::size_t i, std::size_t j);
/// Cov(I_i, I_j) = P(A_i A_j) - P(A_i) P(A_j).
Rational enumerate_cov(const FiniteSpace& space, std::size_t i, std::size_t j);

/// Atoms (t_{(r+1)}, t_{(r)}] between sorted distinct positive thresholds; a zero
/// threshold gives the empty event.
FiniteSpace interval_space(const std::vector<Prob>& thresholds);

/// All 0-1 paths of length n with their product-of-coefficients weights
/// (zero-weight paths dropped); event i is "digit i is 1", and empty for
/// i < nullified.
FiniteSpace galton_path_space(const GaltonCoefficients& coeffs, std::size_t n,
                              std::size_t nullified = 0);

/// Independent events with the given probabilities on {0,1}^n.
FiniteSpace product_space(const std::vector<Prob>& probs);

/// Finite space of the first n events of an interval, Bernoulli or Galton
/// model. Throws CapabilityError for any other model.
FiniteSpace model_space(const EventModel& model, std::size_t n);

struct PatternCheck {
  std::string pattern;    // occurrence bits of all events, e.g. "101"
  Prob exact;
  double empirical = 0.0;
  double standard_error = 0.0;
  double z = 0.0;
  bool within = true;
};

struct SamplingReport {
  std::uint64_t paths = 0;
  std::uint64_t seed = 0;
  double tolerance_se = 4.0;
  std::vector<PatternCheck> patterns;
  bool passed = true;
};

/// Samples atoms by weight and compares the empirical frequency of every
/// event pattern against enumeration; a pattern fails when its deviation
/// exceeds tolerance_se standard errors (zero-variance patterns must match
/// exactly). Throws DomainError when paths < 10^4.
SamplingReport sampling_validation(const FiniteSpace& space, std::uint64_t paths, std::uint64_t seed,
                                   double tolerance_se = 4.0);

/// Same comparison, but paths come from the engine's own sampler: the model's
/// first event_count() events against the enumerated space.
SamplingReport model_sampling_validation(const EventModel& model, const FiniteSpace& space,
                                         std::uint64_t paths, std::uint64_t seed,
                                         double tolerance_se = 4.0);

nlohmann::json to_json(const SamplingReport& report);

}  // namespace bclab
