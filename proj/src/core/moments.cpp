#include "bclab/core/moments.hpp"

#include "bclab/core/errors.hpp"

namespace bclab {
namespace {

// Sums weight(count) * mass over selected entries on a common denominator.
// Ladder masses share denominators that divide one another, so this avoids a
// gcd per addition.
template <class Select, class Weight>
Rational weighted_sum(const SparsePmf& pmf, Select select, Weight weight) {
  const auto& entries = pmf.entries();
  std::vector<bool> chosen(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) chosen[i] = select(entries[i].count);
  mpz_class den = 1;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!chosen[i]) continue;
    const auto& e = entries[i];
    if (!mpz_divisible_p(den.get_mpz_t(), e.mass.get_den().get_mpz_t())) {
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), e.mass.get_den().get_mpz_t());
    }
  }
  mpz_class num = 0;
  mpz_class scaled;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!chosen[i]) continue;
    const auto& e = entries[i];
    mpz_divexact(scaled.get_mpz_t(), den.get_mpz_t(), e.mass.get_den().get_mpz_t());
    scaled *= e.mass.get_num();
    scaled *= weight(e.count);
    num += scaled;
  }
  Rational out(num, den);
  out.canonicalize();
  return out;
}

bool any_count(Count) { return true; }

}  // namespace

PmfMoments pmf_moments(const SparsePmf& pmf) {
  return {weighted_sum(pmf, any_count, [](Count c) { return to_mpz(c); }),
          weighted_sum(pmf, any_count, [](Count c) {
            mpz_class z = to_mpz(c);
            return mpz_class(z * z);
          })};
}

Rational second_moment_ratio(const Rational& mu, const Rational& s2) {
  if (mu == 0) return Rational(1);
  return s2 / (mu * mu);
}

const MomentRecord& MomentSeries::at(std::uint64_t n) const {
  if (n == 0 || records.empty() || n < records.front().n || n > records.back().n) {
    throw HorizonError("moment series has no record for n=" + std::to_string(n));
  }
  const auto& r = records[n - records.front().n];
  if (r.n != n) throw HorizonError("moment series is not dense");
  return r;
}

MomentSeries moment_series(const EventModel& model, std::uint64_t horizon) {
  MomentSeries series;
  series.records.reserve(horizon);
  if (model.independent_by_construction()) {
    series.route = MomentRoute::independent;
    auto means = model.mean_series(horizon);
    Rational mu = 0;
    Rational var = 0;
    for (std::uint64_t n = 0; n < horizon; ++n) {
      Prob p = means[n] - mu;
      mu = means[n];
      var += p * (1 - p);
      Rational s2 = var + mu * mu;
      series.records.push_back({n + 1, mu, s2, second_moment_ratio(mu, s2)});
    }
  } else if (model.has_exact_pmf()) {
    series.route = MomentRoute::pmf;
    model.for_each_pmf(horizon, [&](std::uint64_t n, const SparsePmf& pmf) {
      auto m = pmf_moments(pmf);
      series.records.push_back({n, m.mean, m.second_moment,
                                second_moment_ratio(m.mean, m.second_moment)});
    });
  } else if (model.has_pairwise()) {
    series.route = MomentRoute::pairwise;
    // s2(n+1) = s2(n) + p_n + 2 sum_{i<n} P(A_i A_n); rows are accumulated
    // into a column buffer so each pairwise_row call is made once.
    std::vector<Rational> cross(horizon, Rational(0));
    for (std::uint64_t i = 0; i + 1 < horizon; ++i) {
      auto row = model.pairwise_row(i, horizon);
      for (std::uint64_t j = i + 1; j < horizon; ++j) cross[j] += row[j - i - 1];
    }
    Rational mu = 0;
    Rational s2 = 0;
    for (std::uint64_t n = 0; n < horizon; ++n) {
      Prob p = model.marginal(n);
      mu += p;
      s2 += p + 2 * cross[n];
      series.records.push_back({n + 1, mu, s2, second_moment_ratio(mu, s2)});
    }
  } else {
    throw CapabilityError("model '" + model.name() +
                          "' has neither exact p.m.f.s nor pairwise probabilities");
  }
  std::uint64_t n0 = 0;
  for (const auto& r : series.records) {
    if (r.mu != 0) break;
    n0 = r.n;
  }
  series.zero_mean_prefix = n0;
  return series;
}

Rational chebyshev_bound(const Rational& mu, const Rational& eps) {
  if (mu <= 0) throw DomainError("chebyshev_bound needs mu > 0");
  if (eps <= 0) throw DomainError("chebyshev_bound needs eps > 0");
  return Rational(1) / (eps * eps * mu);
}

Prob relative_tail_mass(const SparsePmf& pmf, const Rational& mu, const Rational& eps,
                        TailKind kind) {
  Rational radius = eps * mu;
  auto in_tail = [&](Count c) {
    Rational dev = from_u64(c) - mu;
    if (dev < 0) dev = -dev;
    return kind == TailKind::at_least ? dev >= radius : dev > radius;
  };
  return weighted_sum(pmf, in_tail, [](Count) { return mpz_class(1); });
}

Prob lower_tail_mass(const SparsePmf& pmf, const Rational& mu, const Rational& fraction) {
  Rational cut = mu * fraction;
  return weighted_sum(pmf, [&](Count c) { return from_u64(c) < cut; },
                      [](Count) { return mpz_class(1); });
}

}  // namespace bclab
