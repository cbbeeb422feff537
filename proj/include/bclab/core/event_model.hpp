#pragma once

#include "bclab/core/rational.hpp"
#include "bclab/core/rng.hpp"
#include "bclab/core/sparse_pmf.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace bclab {

/// Occurrence bits of events 0 .. horizon-1 along one sample path.
using Path = std::vector<std::uint8_t>;

using PmfVisitor = std::function<void(std::uint64_t n, const SparsePmf& pmf)>;

/// A sequence of events A_0, A_1, ... over some probability space.
///
/// Events are 0-based and S_n counts occurrences among the first n events
/// (indices < n). Models are immutable after construction; every method is
/// safe to call concurrently. Optional capabilities are advertised by the
/// has_* queries; calling an unsupported one throws CapabilityError.
class EventModel : public std::enable_shared_from_this<EventModel> {
 public:
  virtual ~EventModel() = default;

  virtual std::string name() const = 0;

  /// Pure function of (horizon, state).
  virtual Path sample_path(std::uint64_t horizon, RngState state) const = 0;

  virtual Prob marginal(std::uint64_t i) const = 0;

  /// mu_1 .. mu_horizon (element n-1 is E[S_n]).
  virtual std::vector<Rational> mean_series(std::uint64_t horizon) const;

  virtual bool has_pairwise() const { return false; }
  /// P(A_i and A_j) for i < j.
  virtual Prob pairwise(std::uint64_t i, std::uint64_t j) const;
  /// P(A_i and A_j) for j = i+1 .. horizon-1.
  virtual std::vector<Prob> pairwise_row(std::uint64_t i, std::uint64_t horizon) const;

  virtual bool has_exact_pmf() const { return false; }
  virtual SparsePmf exact_pmf(std::uint64_t n) const;
  /// Calls visit(n, pmf of S_n) for n = from .. horizon in order.
  virtual void for_each_pmf(std::uint64_t horizon, const PmfVisitor& visit,
                            std::uint64_t from = 1) const;

  virtual bool has_exact_unions() const { return false; }
  /// P(E_m^i) = P(A_m or ... or A_i) for i = m .. horizon-1.
  virtual std::vector<Prob> union_series(std::uint64_t m, std::uint64_t horizon) const;

  virtual bool independent_by_construction() const { return false; }

  /// Same model with A_i replaced by the impossible event for i < count.
  /// Models override this to keep their exact capabilities; the default
  /// wrapper keeps sampling, marginals and pairwise probabilities only.
  virtual std::shared_ptr<const EventModel> with_prefix_nullified(std::uint64_t count) const;

 protected:
  [[noreturn]] void missing(const char* capability) const;
};

using ModelPtr = std::shared_ptr<const EventModel>;

/// Largest n0 <= horizon with mu_{n0} = 0 (0 when mu_1 > 0).
std::uint64_t zero_mean_prefix(const std::vector<Rational>& means);

/// Returns the model with its first `count` events made impossible. The
/// sandwich S_n - count <= S'_n <= S_n holds path-wise for a shared rng state.
ModelPtr nullify_prefix(const ModelPtr& model, std::uint64_t count);

}  // namespace bclab
