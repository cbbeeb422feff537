#include "bclab/models/interval.hpp"

#include "bclab/core/errors.hpp"

#include <algorithm>

namespace bclab {

IntervalModel::IntervalModel(ProbSequence thresholds, std::uint64_t nullified_prefix,
                             std::string label)
    : thresholds_(std::move(thresholds)), nullified_(nullified_prefix), label_(std::move(label)) {
  for (const auto& t : thresholds_.value_set()) {
    if (t <= 0) throw ConfigError("interval thresholds must lie in (0,1]");
  }
}

std::string IntervalModel::name() const {
  if (nullified_ == 0) return label_;
  return label_ + " [nullified<" + std::to_string(nullified_) + "]";
}

Path IntervalModel::sample_path(std::uint64_t horizon, RngState state) const {
  Rng rng(state);
  double omega = rng.uniform_open_closed();
  Path path(horizon, 0);
  for (std::uint64_t i = nullified_; i < horizon; ++i) {
    path[i] = omega <= thresholds_.at_double(i) ? 1 : 0;
  }
  return path;
}

Prob IntervalModel::marginal(std::uint64_t i) const {
  return i < nullified_ ? Prob(0) : thresholds_.at(i);
}

std::vector<Rational> IntervalModel::mean_series(std::uint64_t horizon) const {
  std::vector<Rational> means;
  means.reserve(horizon);
  Rational running = 0;
  for (std::uint64_t i = 0; i < horizon; ++i) {
    if (i >= nullified_) running += thresholds_.at(i);
    means.push_back(running);
  }
  return means;
}

Prob IntervalModel::pairwise(std::uint64_t i, std::uint64_t j) const {
  if (i == j) throw DomainError("pairwise needs i != j");
  if (i < nullified_ || j < nullified_) return Prob(0);
  const Prob ti = thresholds_.at(i);
  const Prob tj = thresholds_.at(j);
  return ti < tj ? ti : tj;
}

SparsePmf IntervalModel::exact_pmf(std::uint64_t n) const {
  if (n <= nullified_) return SparsePmf::point(0);
  // Distinct thresholds in decreasing order v_1 > v_2 > ...; on (v_{j+1}, v_j]
  // the count is c_1 + ... + c_j, and on (v_1, 1] it is zero.
  auto counts = thresholds_.value_counts(nullified_, n);
  std::reverse(counts.begin(), counts.end());
  std::vector<PmfEntry> entries;
  entries.push_back({0, 1 - counts.front().first});
  std::uint64_t running = 0;
  for (std::size_t j = 0; j < counts.size(); ++j) {
    running += counts[j].second;
    Prob below = j + 1 < counts.size() ? counts[j + 1].first : Prob(0);
    entries.push_back({running, counts[j].first - below});
  }
  return SparsePmf(std::move(entries));
}

std::vector<Prob> IntervalModel::union_series(std::uint64_t m, std::uint64_t horizon) const {
  std::vector<Prob> out;
  Prob running = 0;
  for (std::uint64_t i = m; i < horizon; ++i) {
    if (i >= nullified_) {
      Prob t = thresholds_.at(i);
      if (t > running) running = t;
    }
    out.push_back(running);
  }
  return out;
}

std::shared_ptr<const EventModel> IntervalModel::with_prefix_nullified(std::uint64_t count) const {
  return std::make_shared<IntervalModel>(thresholds_, std::max(count, nullified_), label_);
}

SparsePmf interval_exact_pmf(const IntervalModel& model, std::uint64_t n) {
  if (n == 0) throw DomainError("interval_exact_pmf needs n >= 1");
  return model.exact_pmf(n);
}

}  // namespace bclab
