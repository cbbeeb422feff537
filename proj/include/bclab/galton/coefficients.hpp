#pragma once

#include "bclab/core/rational.hpp"

#include <cstdint>
#include <map>
#include <utility>

namespace bclab {

bool is_power_of_two(std::uint64_t n);
/// floor(log2 n) for n >= 1.
unsigned floor_log2(std::uint64_t n);
/// ceil(log2 n) for n >= 1.
unsigned ceil_log2(std::uint64_t n);

/// The four-case coefficient driving the logarithmic-curve construction:
///   1   if n+1 is a power of 2 and k = floor(log2 n),
///   1/3 if n is a power of 2 and k = n,
///   1   if n is not a power of 2 and k = n,
///   0   otherwise.
/// Powers of two include 1; (0, 0) falls under the third case and gives 1.
/// Throws DomainError unless 0 <= k <= n.
Prob galton_coefficient(std::uint64_t n, std::uint64_t k);

/// Function (n, k) -> [0, 1], 0 <= k <= n, giving P(A_n | S_n = k).
class GaltonCoefficients {
 public:
  enum class Kind { logarithmic, constant, table };

  static GaltonCoefficients logarithmic();
  static GaltonCoefficients constant(Prob p);
  /// Listed entries override `fallback`.
  static GaltonCoefficients table(std::map<std::pair<std::uint64_t, std::uint64_t>, Prob> entries,
                                  Prob fallback);

  Kind kind() const { return kind_; }
  Prob entry(std::uint64_t n, std::uint64_t k) const;
  double entry_double(std::uint64_t n, std::uint64_t k) const;

 private:
  GaltonCoefficients() = default;

  Kind kind_ = Kind::logarithmic;
  Prob constant_;
  double constant_d_ = 0.0;
  std::map<std::pair<std::uint64_t, std::uint64_t>, Prob> table_;
  Prob fallback_;
};

}  // namespace bclab
