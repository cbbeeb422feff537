#pragma once

#include "bclab/core/rational.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace bclab {

using Count = std::uint64_t;

struct PmfEntry {
  Count count = 0;
  Prob mass;

  friend bool operator==(const PmfEntry& a, const PmfEntry& b) {
    return a.count == b.count && a.mass == b.mass;
  }
};

/// Finite-support probability mass function over nonnegative counts.
///
/// Entries are sorted by strictly increasing count, carry no zero masses and
/// sum to exactly one; every constructor enforces this and throws
/// DomainError otherwise.
/// Cap on p.m.f. support size for propagation ladders: BC_LAB_MAX_SUPPORT,
/// default 10^6. Ladders throw ResourceError past it.
std::size_t max_support();

class SparsePmf {
 public:
  /// Point mass at zero.
  SparsePmf();

  /// Merges duplicate counts and drops zero masses before validating.
  explicit SparsePmf(std::vector<PmfEntry> entries);
  explicit SparsePmf(const std::map<Count, Prob>& masses);

  static SparsePmf point(Count count);

  /// For ladders that conserve mass by construction: entries must already be
  /// sorted by strictly increasing count with positive masses (checked); the
  /// sum-to-one check is skipped.
  static SparsePmf from_normalized(std::vector<PmfEntry> entries);

  const std::vector<PmfEntry>& entries() const { return entries_; }
  std::size_t support_size() const { return entries_.size(); }
  Count min_count() const { return entries_.front().count; }
  Count max_count() const { return entries_.back().count; }

  /// Zero for counts outside the support.
  Prob mass_at(Count count) const;

  friend bool operator==(const SparsePmf& a, const SparsePmf& b) {
    return a.entries_ == b.entries_;
  }

 private:
  std::vector<PmfEntry> entries_;
};

}  // namespace bclab
