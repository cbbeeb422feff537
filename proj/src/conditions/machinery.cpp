#include "bclab/conditions/machinery.hpp"

#include "bclab/conditions/monte_carlo.hpp"
#include "bclab/core/errors.hpp"

#include <algorithm>

namespace bclab {

std::vector<VarianceCheck> variance_bound_check(const MomentSeries& series) {
  std::vector<VarianceCheck> out;
  out.reserve(series.records.size());
  for (const auto& r : series.records) {
    Rational var = r.s2 - r.mu * r.mu;
    out.push_back({r.n, var, r.mu, var <= r.mu});
  }
  return out;
}

std::vector<VarianceCheck> variance_bound_check(const EventModel& model, std::uint64_t horizon) {
  return variance_bound_check(moment_series(model, horizon));
}

std::vector<ChebyshevCheck> chebyshev_check(const EventModel& model, std::uint64_t horizon,
                                            const std::vector<Rational>& eps_list) {
  if (!model.has_exact_pmf()) throw CapabilityError("chebyshev_check needs exact p.m.f.s");
  for (const auto& eps : eps_list) {
    if (eps <= 0) throw DomainError("chebyshev_check needs eps > 0");
  }
  std::vector<ChebyshevCheck> out;
  model.for_each_pmf(horizon, [&](std::uint64_t n, const SparsePmf& pmf) {
    auto m = pmf_moments(pmf);
    if (m.mean == 0) return;
    for (const auto& eps : eps_list) {
      Prob tail = relative_tail_mass(pmf, m.mean, eps, TailKind::at_least);
      Rational bound = chebyshev_bound(m.mean, eps);
      out.push_back({n, eps, tail, bound, tail <= bound});
    }
  });
  return out;
}

std::vector<NkEntry> build_nk_subsequence(const MomentSeries& series) {
  if (series.records.empty() || series.records.back().mu < 1) {
    throw HorizonError("n_k subsequence needs mu_horizon >= 1");
  }
  std::vector<NkEntry> out;
  std::uint64_t k = 1;
  for (const auto& r : series.records) {
    while (r.mu >= Rational(k * k)) {
      out.push_back({k, r.n, r.mu, Rational(k * k) <= r.mu, r.mu <= Rational(k * k + 1)});
      ++k;
    }
  }
  return out;
}

SubsequenceWitness extract_fast_subsequence(const EventModel& model, std::uint64_t horizon,
                                            std::size_t max_terms) {
  if (!model.has_exact_pmf()) throw CapabilityError("extract_fast_subsequence needs exact p.m.f.s");
  SubsequenceWitness w;
  if (max_terms == 0) {
    w.complete = true;
    return w;
  }
  const Rational half(1, 2);
  Rational bound(1, 2);  // 2^{-l} for the next term l
  // for_each_pmf cannot be interrupted; collect terms until max_terms is hit.
  model.for_each_pmf(horizon, [&](std::uint64_t n, const SparsePmf& pmf) {
    if (w.indices.size() >= max_terms) return;
    auto m = pmf_moments(pmf);
    if (m.mean == 0) return;
    Prob d = relative_tail_mass(pmf, m.mean, half, TailKind::greater_than);
    if (d < bound) {
      w.indices.push_back(n);
      w.bound_series.push_back(d);
      w.lower_tails.push_back(lower_tail_mass(pmf, m.mean, half));
      bound /= 2;
    }
  });
  w.complete = w.indices.size() >= max_terms;
  return w;
}

SandwichReport prefix_sandwich_check(const ModelPtr& model, std::uint64_t nullified,
                                     std::uint64_t horizon, std::uint64_t paths, std::uint64_t seed) {
  ModelPtr reduced = nullify_prefix(model, nullified);
  SandwichReport report;
  report.nullified = nullified;
  report.paths = paths;
  auto violations = map_paths<std::uint64_t>(paths, 0, [&](std::uint64_t p) {
    RngState state{seed, p};
    Path full = model->sample_path(horizon, state);
    Path cut = reduced->sample_path(horizon, state);
    std::uint64_t s = 0;
    std::uint64_t s_cut = 0;
    std::uint64_t bad = 0;
    for (std::uint64_t i = 0; i < horizon; ++i) {
      s += full[i];
      s_cut += cut[i];
      if (s_cut > s || s > s_cut + nullified) ++bad;
    }
    return bad;
  });
  for (auto v : violations) report.pathwise_violations += v;
  auto mu = model->mean_series(horizon);
  auto mu_cut = reduced->mean_series(horizon);
  report.mean_bounds_hold = true;
  for (std::uint64_t i = 0; i < horizon; ++i) {
    if (mu_cut[i] > mu[i] || mu[i] - Rational(static_cast<long>(nullified)) > mu_cut[i]) {
      report.mean_bounds_hold = false;
    }
  }
  return report;
}

}  // namespace bclab
