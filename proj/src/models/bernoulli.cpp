#include "bclab/models/bernoulli.hpp"

#include "bclab/core/errors.hpp"

namespace bclab {

BernoulliModel::BernoulliModel(ProbSequence probs, std::uint64_t nullified_prefix)
    : probs_(std::move(probs)), nullified_(nullified_prefix) {}

std::string BernoulliModel::name() const {
  std::string base = "bernoulli";
  if (nullified_ > 0) base += " [nullified<" + std::to_string(nullified_) + "]";
  return base;
}

double BernoulliModel::prob_double(std::uint64_t i) const {
  return i < nullified_ ? 0.0 : probs_.at_double(i);
}

Path BernoulliModel::sample_path(std::uint64_t horizon, RngState state) const {
  Rng rng(state);
  Path path(horizon, 0);
  for (std::uint64_t i = 0; i < horizon; ++i) {
    // Draw for every index, nullified or not, so the coupling with the
    // un-nullified model is path-wise.
    double u = rng.uniform();
    path[i] = u < prob_double(i) ? 1 : 0;
  }
  return path;
}

Prob BernoulliModel::marginal(std::uint64_t i) const {
  return i < nullified_ ? Prob(0) : probs_.at(i);
}

Prob BernoulliModel::pairwise(std::uint64_t i, std::uint64_t j) const {
  if (i == j) throw DomainError("pairwise needs i != j");
  return marginal(i) * marginal(j);
}

void BernoulliModel::for_each_pmf(std::uint64_t horizon, const PmfVisitor& visit, std::uint64_t from) const {
  // Integer numerators over the common denominator prod(den p_i): no gcd work
  // until a p.m.f. is actually handed out.
  std::vector<mpz_class> num{mpz_class(1)};
  mpz_class den = 1;
  for (std::uint64_t n = 0; n < horizon; ++n) {
    Prob q = marginal(n);
    const mpz_class& up = q.get_num();
    const mpz_class& d = q.get_den();
    mpz_class stay = d - up;
    num.emplace_back(0);
    for (std::size_t k = num.size() - 1; k > 0; --k) {
      num[k] *= stay;
      num[k] += num[k - 1] * up;
    }
    num[0] *= stay;
    den *= d;
    while (num.size() > 1 && num.back() == 0) num.pop_back();
    if (num.size() > max_support()) throw ResourceError("p.m.f. support exceeds cap");
    if (n + 1 < from) continue;
    std::vector<PmfEntry> entries;
    for (std::size_t k = 0; k < num.size(); ++k) {
      if (num[k] == 0) continue;
      Prob mass(num[k], den);
      mass.canonicalize();
      entries.push_back({k, std::move(mass)});
    }
    visit(n + 1, SparsePmf::from_normalized(std::move(entries)));
  }
}

SparsePmf BernoulliModel::exact_pmf(std::uint64_t n) const {
  if (n == 0) return SparsePmf::point(0);
  SparsePmf out;
  for_each_pmf(n, [&](std::uint64_t, const SparsePmf& pmf) { out = pmf; }, n);
  return out;
}

std::vector<Prob> BernoulliModel::union_series(std::uint64_t m, std::uint64_t horizon) const {
  std::vector<Prob> out;
  Prob none = 1;
  for (std::uint64_t i = m; i < horizon; ++i) {
    none *= 1 - marginal(i);
    out.push_back(1 - none);
  }
  return out;
}

std::shared_ptr<const EventModel> BernoulliModel::with_prefix_nullified(std::uint64_t count) const {
  return std::make_shared<BernoulliModel>(probs_, std::max(count, nullified_));
}

}  // namespace bclab
