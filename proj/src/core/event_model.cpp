#include "bclab/core/event_model.hpp"

#include "bclab/core/errors.hpp"

namespace bclab {

void EventModel::missing(const char* capability) const {
  throw CapabilityError("model '" + name() + "' does not provide " + capability);
}

std::vector<Rational> EventModel::mean_series(std::uint64_t horizon) const {
  std::vector<Rational> means;
  means.reserve(horizon);
  Rational running = 0;
  for (std::uint64_t i = 0; i < horizon; ++i) {
    running += marginal(i);
    means.push_back(running);
  }
  return means;
}

Prob EventModel::pairwise(std::uint64_t, std::uint64_t) const { missing("pairwise probabilities"); }

std::vector<Prob> EventModel::pairwise_row(std::uint64_t i, std::uint64_t horizon) const {
  std::vector<Prob> row;
  for (std::uint64_t j = i + 1; j < horizon; ++j) row.push_back(pairwise(i, j));
  return row;
}

SparsePmf EventModel::exact_pmf(std::uint64_t) const { missing("exact p.m.f.s"); }

void EventModel::for_each_pmf(std::uint64_t horizon, const PmfVisitor& visit, std::uint64_t from) const {
  for (std::uint64_t n = std::max<std::uint64_t>(from, 1); n <= horizon; ++n) visit(n, exact_pmf(n));
}

std::vector<Prob> EventModel::union_series(std::uint64_t, std::uint64_t) const {
  missing("exact union probabilities");
}

namespace {

// Generic A'_i = empty for i < count. Exact p.m.f.s of S'_n are not derivable
// from the p.m.f.s of S_n alone, so only the pointwise capabilities survive.
class NullifiedModel final : public EventModel {
 public:
  NullifiedModel(ModelPtr base, std::uint64_t count) : base_(std::move(base)), count_(count) {}

  std::string name() const override {
    return base_->name() + " [nullified<" + std::to_string(count_) + "]";
  }

  Path sample_path(std::uint64_t horizon, RngState state) const override {
    Path path = base_->sample_path(horizon, state);
    for (std::uint64_t i = 0; i < count_ && i < horizon; ++i) path[i] = 0;
    return path;
  }

  Prob marginal(std::uint64_t i) const override {
    return i < count_ ? Prob(0) : base_->marginal(i);
  }

  bool has_pairwise() const override { return base_->has_pairwise(); }

  Prob pairwise(std::uint64_t i, std::uint64_t j) const override {
    if (i < count_ || j < count_) return Prob(0);
    return base_->pairwise(i, j);
  }

  bool independent_by_construction() const override {
    return base_->independent_by_construction();
  }

 private:
  ModelPtr base_;
  std::uint64_t count_;
};

}  // namespace

std::shared_ptr<const EventModel> EventModel::with_prefix_nullified(std::uint64_t count) const {
  if (count == 0) return shared_from_this();
  return std::make_shared<NullifiedModel>(shared_from_this(), count);
}

std::uint64_t zero_mean_prefix(const std::vector<Rational>& means) {
  std::uint64_t n0 = 0;
  for (std::size_t k = 0; k < means.size() && means[k] == 0; ++k) n0 = k + 1;
  return n0;
}

ModelPtr nullify_prefix(const ModelPtr& model, std::uint64_t count) {
  return model->with_prefix_nullified(count);
}

}  // namespace bclab
