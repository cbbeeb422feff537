#include "bclab/galton/closed_form.hpp"

#include "bclab/core/errors.hpp"
#include "bclab/galton/galton_model.hpp"

#include <map>

namespace bclab {

SparsePmf pmf_step(const SparsePmf& pmf, std::uint64_t n, const GaltonCoefficients& coeffs) {
  std::map<Count, Prob> next;
  for (const auto& e : pmf.entries()) {
    Prob up = coeffs.entry(n, e.count);
    if (up != 0) next[e.count + 1] += e.mass * up;
    if (up != 1) next[e.count] += e.mass * (1 - up);
  }
  if (next.size() > max_support()) throw ResourceError("p.m.f. support exceeds cap");
  return SparsePmf(next);
}

std::vector<std::pair<mpz_class, Prob>> closed_form_terms(const mpz_class& n) {
  if (n < 2) throw DomainError("closed-form p.m.f. needs n >= 2");
  const auto bits = static_cast<unsigned>(mpz_sizeinbase(n.get_mpz_t(), 2));
  const unsigned k = bits - 1;
  const bool pow2 = mpz_popcount(n.get_mpz_t()) == 1;
  const unsigned m = pow2 ? k : k + 1;
  const unsigned log_l = floor_log2(k) + 1;  // l = 2^log_l is the least power of 2 above k
  if (m < log_l) throw DomainError("closed form undefined at this n");

  std::vector<std::pair<mpz_class, Prob>> terms;
  terms.emplace_back(mpz_class(k), 1 - inverse_power(3, log_l));
  for (unsigned j = 1; j + log_l <= m; ++j) {
    mpz_class count;
    mpz_ui_pow_ui(count.get_mpz_t(), 2, j - 1 + log_l);
    terms.emplace_back(count, 2 * inverse_power(3, j + log_l));
  }
  terms.emplace_back(n, inverse_power(3, m));
  return terms;
}

SparsePmf closed_form_pmf(std::uint64_t n) {
  std::vector<PmfEntry> entries;
  for (auto& [count, mass] : closed_form_terms(to_mpz(n))) {
    entries.push_back({count.get_ui(), std::move(mass)});
  }
  return SparsePmf(std::move(entries));
}

ClosedFormMoments closed_form_moments(const mpz_class& n) {
  ClosedFormMoments out{Rational(0), Rational(0), Rational(0)};
  for (const auto& [count, mass] : closed_form_terms(n)) {
    Rational c(count);
    out.mu += c * mass;
    out.s2 += c * c * mass;
  }
  out.ex2 = out.s2 / (out.mu * out.mu);
  return out;
}

MuBounds galton_mu_bounds(std::uint64_t n) {
  MuBounds b;
  b.mu = closed_form_moments(to_mpz(n)).mu;
  b.lower = floor_log2(n);
  b.upper_holds = b.mu <= from_u64(b.lower + 1);
  return b;
}

Prob absorption_probability(std::uint64_t n) {
  if (n < 2) throw DomainError("absorption_probability needs n >= 2");
  return 1 - inverse_power(3, floor_log2(floor_log2(n)) + 1);
}

}  // namespace bclab
