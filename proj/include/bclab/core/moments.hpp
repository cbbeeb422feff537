#pragma once

#include "bclab/core/event_model.hpp"
#include "bclab/core/rational.hpp"
#include "bclab/core/sparse_pmf.hpp"

#include <cstdint>
#include <vector>

namespace bclab {

struct PmfMoments {
  Rational mean;
  Rational second_moment;
};

PmfMoments pmf_moments(const SparsePmf& pmf);

/// E[X_n^2] = s2 / mu^2, or 1 when mu = 0 (X_n := 1 convention).
Rational second_moment_ratio(const Rational& mu, const Rational& s2);

struct MomentRecord {
  std::uint64_t n = 0;
  Rational mu;   // E[S_n]
  Rational s2;   // E[S_n^2]
  Rational ex2;  // E[X_n^2]
};

enum class MomentRoute { independent, pmf, pairwise };

struct MomentSeries {
  std::vector<MomentRecord> records;
  MomentRoute route = MomentRoute::pmf;
  std::uint64_t zero_mean_prefix = 0;

  const MomentRecord& at(std::uint64_t n) const;
};

/// One record per n in [1, horizon]. Independent-by-construction models use
/// Var(S_n) = sum p_i (1 - p_i); otherwise the exact p.m.f. ladder when the
/// model has one, else s2 = mu_n + 2 * sum_{i<j<n} P(A_i A_j).
/// Throws CapabilityError when neither route is available.
MomentSeries moment_series(const EventModel& model, std::uint64_t horizon);

/// 1 / (eps^2 mu). Throws DomainError unless mu > 0 and eps > 0.
Rational chebyshev_bound(const Rational& mu, const Rational& eps);

enum class TailKind {
  at_least,     // |S - mu| >= eps * mu
  greater_than  // |S - mu| >  eps * mu
};

/// Exact mass of the two-sided relative tail of S around mu.
Prob relative_tail_mass(const SparsePmf& pmf, const Rational& mu, const Rational& eps,
                        TailKind kind);

/// Exact P(S < mu * fraction).
Prob lower_tail_mass(const SparsePmf& pmf, const Rational& mu, const Rational& fraction);

}  // namespace bclab
