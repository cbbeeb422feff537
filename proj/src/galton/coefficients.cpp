#include "bclab/galton/coefficients.hpp"

#include "bclab/core/errors.hpp"

#include <bit>

namespace bclab {

bool is_power_of_two(std::uint64_t n) { return std::has_single_bit(n); }

unsigned floor_log2(std::uint64_t n) {
  if (n == 0) throw DomainError("log2 of zero");
  return static_cast<unsigned>(std::bit_width(n) - 1);
}

unsigned ceil_log2(std::uint64_t n) {
  unsigned f = floor_log2(n);
  return is_power_of_two(n) ? f : f + 1;
}

namespace {

enum class CurveValue { zero, third, one };

CurveValue curve_value(std::uint64_t n, std::uint64_t k) {
  if (k > n) throw DomainError("Galton coefficient needs k <= n");
  // floor(log2 0) is undefined, so (0, 0) skips the first case.
  if (n >= 1 && n < UINT64_MAX && is_power_of_two(n + 1) && k == floor_log2(n)) {
    return CurveValue::one;
  }
  if (is_power_of_two(n) && k == n) return CurveValue::third;
  if (!is_power_of_two(n) && k == n) return CurveValue::one;
  return CurveValue::zero;
}

}  // namespace

Prob galton_coefficient(std::uint64_t n, std::uint64_t k) {
  switch (curve_value(n, k)) {
    case CurveValue::one: return Prob(1);
    case CurveValue::third: return Prob(1, 3);
    case CurveValue::zero: break;
  }
  return Prob(0);
}

GaltonCoefficients GaltonCoefficients::logarithmic() { return GaltonCoefficients(); }

GaltonCoefficients GaltonCoefficients::constant(Prob p) {
  if (!is_probability(p)) throw ConfigError("Galton coefficient outside [0,1]");
  GaltonCoefficients c;
  c.kind_ = Kind::constant;
  c.constant_d_ = to_double(p);
  c.constant_ = std::move(p);
  return c;
}

GaltonCoefficients GaltonCoefficients::table(
    std::map<std::pair<std::uint64_t, std::uint64_t>, Prob> entries, Prob fallback) {
  if (!is_probability(fallback)) throw ConfigError("Galton default coefficient outside [0,1]");
  for (const auto& [key, p] : entries) {
    if (key.second > key.first) throw ConfigError("Galton table entry with k > n");
    if (!is_probability(p)) throw ConfigError("Galton coefficient outside [0,1]");
  }
  GaltonCoefficients c;
  c.kind_ = Kind::table;
  c.table_ = std::move(entries);
  c.fallback_ = std::move(fallback);
  return c;
}

Prob GaltonCoefficients::entry(std::uint64_t n, std::uint64_t k) const {
  if (k > n) throw DomainError("Galton coefficient needs k <= n");
  switch (kind_) {
    case Kind::logarithmic: return galton_coefficient(n, k);
    case Kind::constant: return constant_;
    case Kind::table: {
      auto it = table_.find({n, k});
      return it == table_.end() ? fallback_ : it->second;
    }
  }
  return Prob(0);
}

double GaltonCoefficients::entry_double(std::uint64_t n, std::uint64_t k) const {
  switch (kind_) {
    case Kind::logarithmic:
      switch (curve_value(n, k)) {
        case CurveValue::one: return 1.0;
        case CurveValue::third: return 1.0 / 3.0;
        case CurveValue::zero: return 0.0;
      }
      return 0.0;
    case Kind::constant: return constant_d_;
    case Kind::table: return to_double(entry(n, k));
  }
  return 0.0;
}

}  // namespace bclab
