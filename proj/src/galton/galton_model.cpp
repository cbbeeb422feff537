#include "bclab/galton/galton_model.hpp"

#include "bclab/core/errors.hpp"
#include "bclab/galton/closed_form.hpp"

#include <cstdlib>
#include <map>

namespace bclab {

namespace {

// Sub-probability measure over counts, sorted by count.
using Measure = std::map<Count, Prob>;

enum class Branch { both, occurred, not_occurred };

Measure step(const Measure& m, std::uint64_t n, const GaltonCoefficients& coeffs,
             Branch keep = Branch::both) {
  Measure next;
  for (const auto& [count, mass] : m) {
    Prob up = coeffs.entry(n, count);
    if (up != 0 && keep != Branch::not_occurred) next[count + 1] += mass * up;
    if (up != 1 && keep != Branch::occurred) next[count] += mass * (1 - up);
  }
  std::erase_if(next, [](const auto& kv) { return kv.second == 0; });
  if (next.size() > max_support()) throw ResourceError("Galton support exceeds cap");
  return next;
}

Prob occurrence_mass(const Measure& m, std::uint64_t n, const GaltonCoefficients& coeffs) {
  Prob total = 0;
  for (const auto& [count, mass] : m) total += mass * coeffs.entry(n, count);
  return total;
}

Measure law_at(std::uint64_t n, const GaltonCoefficients& coeffs) {
  Measure m{{0, Prob(1)}};
  for (std::uint64_t i = 0; i < n; ++i) m = step(m, i, coeffs);
  return m;
}

SparsePmf to_pmf(const Measure& m) { return SparsePmf(m); }

}  // namespace

GaltonModel::GaltonModel(GaltonCoefficients coefficients, std::uint64_t nullified_prefix)
    : coefficients_(std::move(coefficients)), nullified_(nullified_prefix) {}

std::string GaltonModel::name() const {
  std::string base;
  switch (coefficients_.kind()) {
    case GaltonCoefficients::Kind::logarithmic: base = "galton-logarithmic"; break;
    case GaltonCoefficients::Kind::constant: base = "galton-constant"; break;
    case GaltonCoefficients::Kind::table: base = "galton-table"; break;
  }
  if (nullified_ > 0) base += " [nullified<" + std::to_string(nullified_) + "]";
  return base;
}

Path GaltonModel::sample_path(std::uint64_t horizon, RngState state) const {
  Rng rng(state);
  Path path(horizon, 0);
  std::uint64_t count = 0;
  for (std::uint64_t i = 0; i < horizon; ++i) {
    bool occurred = rng.uniform() < coefficients_.entry_double(i, count);
    if (occurred) ++count;
    path[i] = (occurred && i >= nullified_) ? 1 : 0;
  }
  return path;
}

Prob GaltonModel::marginal(std::uint64_t i) const {
  if (i < nullified_) return Prob(0);
  // A count-free coefficient makes every event independent of the past.
  if (coefficients_.kind() == GaltonCoefficients::Kind::constant) return coefficients_.entry(i, 0);
  return occurrence_mass(law_at(i, coefficients_), i, coefficients_);
}

std::vector<Rational> GaltonModel::mean_series(std::uint64_t horizon) const {
  std::vector<Rational> means;
  means.reserve(horizon);
  Measure m{{0, Prob(1)}};
  Rational running = 0;
  for (std::uint64_t i = 0; i < horizon; ++i) {
    if (i >= nullified_) running += occurrence_mass(m, i, coefficients_);
    means.push_back(running);
    m = step(m, i, coefficients_);
  }
  return means;
}

std::vector<Prob> GaltonModel::pairwise_row(std::uint64_t i, std::uint64_t horizon) const {
  std::vector<Prob> row;
  if (horizon <= i + 1) return row;
  row.reserve(horizon - i - 1);
  if (i < nullified_) {
    row.assign(horizon - i - 1, Prob(0));
    return row;
  }
  if (coefficients_.kind() == GaltonCoefficients::Kind::constant) {
    Prob p = marginal(i);
    for (std::uint64_t j = i + 1; j < horizon; ++j) row.push_back(p * marginal(j));
    return row;
  }
  // Law of S_{i+1} restricted to {A_i occurred}, pushed forward one event at
  // a time; P(A_i A_j) is the occurrence mass of A_j under it.
  Measure joint = step(law_at(i, coefficients_), i, coefficients_, Branch::occurred);
  for (std::uint64_t j = i + 1; j < horizon; ++j) {
    row.push_back(j < nullified_ ? Prob(0) : occurrence_mass(joint, j, coefficients_));
    if (j + 1 < horizon) joint = step(joint, j, coefficients_);
  }
  return row;
}

Prob GaltonModel::pairwise(std::uint64_t i, std::uint64_t j) const {
  if (i >= j) throw DomainError("galton pairwise needs i < j");
  return pairwise_row(i, j + 1).back();
}

void GaltonModel::for_each_pmf(std::uint64_t horizon, const PmfVisitor& visit, std::uint64_t from) const {
  if (nullified_ == 0) {
    Measure m{{0, Prob(1)}};
    for (std::uint64_t n = 0; n < horizon; ++n) {
      m = step(m, n, coefficients_);
      if (n + 1 >= from) visit(n + 1, to_pmf(m));
    }
    return;
  }
  // Joint law of (S_n, S'_n) where S' ignores the nullified events.
  std::map<std::pair<Count, Count>, Prob> joint{{{0, 0}, Prob(1)}};
  for (std::uint64_t n = 0; n < horizon; ++n) {
    std::map<std::pair<Count, Count>, Prob> next;
    for (const auto& [state, mass] : joint) {
      Prob up = coefficients_.entry(n, state.first);
      Count bump = n >= nullified_ ? 1 : 0;
      if (up != 0) next[{state.first + 1, state.second + bump}] += mass * up;
      if (up != 1) next[state] += mass * (1 - up);
    }
    if (next.size() > max_support()) throw ResourceError("Galton support exceeds cap");
    joint = std::move(next);
    if (n + 1 < from) continue;
    Measure marginal_law;
    for (const auto& [state, mass] : joint) marginal_law[state.second] += mass;
    visit(n + 1, to_pmf(marginal_law));
  }
}

SparsePmf GaltonModel::exact_pmf(std::uint64_t n) const {
  if (n == 0) return SparsePmf::point(0);
  SparsePmf out;
  for_each_pmf(n, [&](std::uint64_t, const SparsePmf& pmf) { out = pmf; }, n);
  return out;
}

std::vector<Prob> GaltonModel::union_series(std::uint64_t m, std::uint64_t horizon) const {
  std::vector<Prob> out;
  if (horizon <= m) return out;
  // Law of S_{i+1} restricted to "no counted event among A_m .. A_i".
  Measure none = law_at(m, coefficients_);
  for (std::uint64_t i = m; i < horizon; ++i) {
    none = step(none, i, coefficients_, i < nullified_ ? Branch::both : Branch::not_occurred);
    Prob total = 0;
    for (const auto& [count, mass] : none) total += mass;
    out.push_back(1 - total);
  }
  return out;
}

std::shared_ptr<const EventModel> GaltonModel::with_prefix_nullified(std::uint64_t count) const {
  return std::make_shared<GaltonModel>(coefficients_, std::max(count, nullified_));
}

Prob galton_pairwise(const GaltonModel& model, std::uint64_t i, std::uint64_t j) {
  return model.pairwise(i, j);
}

}  // namespace bclab
