#pragma once

#include "bclab/core/rational.hpp"
#include "bclab/core/sparse_pmf.hpp"
#include "bclab/galton/coefficients.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace bclab {

/// p_{n+1}(i) = p_n(i-1) [n, i-1] + p_n(i) (1 - [n, i]), zero masses pruned.
SparsePmf pmf_step(const SparsePmf& pmf, std::uint64_t n, const GaltonCoefficients& coeffs);

/// Closed-form p.m.f. of S_n under the logarithmic coefficients as (count, mass)
/// pairs over arbitrary-precision counts, for n >= 2. With k = floor(log2 n),
/// m = ceil(log2 n) and l the least power of 2 above k:
///   p(k) = 1 - 3^{-log l},  p(2^{j-1} l) = 2 / 3^{j + log l} (j = 1 .. m - log l),
///   p(n) = 3^{-m}.
std::vector<std::pair<mpz_class, Prob>> closed_form_terms(const mpz_class& n);

/// closed_form_terms for a 64-bit n. Throws DomainError for n < 2.
SparsePmf closed_form_pmf(std::uint64_t n);

struct ClosedFormMoments {
  Rational mu;
  Rational s2;
  Rational ex2;
};

ClosedFormMoments closed_form_moments(const mpz_class& n);

struct MuBounds {
  std::uint64_t lower = 0;    // floor(log2 n), always <= mu
  bool upper_holds = false;   // mu <= floor(log2 n) + 1 at this n
  Rational mu;
};

MuBounds galton_mu_bounds(std::uint64_t n);

/// p_n(floor(log2 n)) = 1 - 3^{-log l}: mass already on the logarithmic curve.
Prob absorption_probability(std::uint64_t n);

}  // namespace bclab
