#pragma once

#include "bclab/core/rational.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bclab {

enum class Condition { IND, PWI, NOP, ER, KS, D, SUB, B, IO };
enum class Verdict { holds, fails, inconclusive };
enum class Method { exact, monte_carlo };

inline constexpr Condition all_conditions[] = {Condition::IND, Condition::PWI, Condition::NOP,
                                               Condition::ER,  Condition::KS,  Condition::D,
                                               Condition::SUB, Condition::B,   Condition::IO};

struct Diagnostic {
  std::uint64_t n = 0;
  std::optional<Rational> exact;  // always set for exact-method reports
  double value = 0.0;
};

Diagnostic exact_diagnostic(std::uint64_t n, const Rational& value);
Diagnostic float_diagnostic(std::uint64_t n, double value);

/// Finite-horizon verdict for one condition. Verdicts are "-at-horizon": the
/// thresholds and windows that produced them are recorded in `details`.
struct ConditionReport {
  Condition condition = Condition::IND;
  std::uint64_t horizon = 0;
  std::vector<Diagnostic> diagnostics;
  Verdict verdict = Verdict::inconclusive;
  Method method = Method::exact;
  nlohmann::json details = nlohmann::json::object();
};

std::string to_string(Condition c);
std::string to_string(Verdict v);
std::string to_string(Method m);
Condition parse_condition(const std::string& text);

/// Rationals as "num/den" strings, floats as shortest round-trip decimals.
nlohmann::json to_json(const ConditionReport& report);

}  // namespace bclab
