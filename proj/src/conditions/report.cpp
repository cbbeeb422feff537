#include "bclab/conditions/report.hpp"

#include "bclab/core/errors.hpp"

namespace bclab {

Diagnostic exact_diagnostic(std::uint64_t n, const Rational& value) {
  return Diagnostic{n, value, to_double(value)};
}

Diagnostic float_diagnostic(std::uint64_t n, double value) { return Diagnostic{n, std::nullopt, value}; }

std::string to_string(Condition c) {
  switch (c) {
    case Condition::IND: return "IND";
    case Condition::PWI: return "PWI";
    case Condition::NOP: return "NOP";
    case Condition::ER: return "ER";
    case Condition::KS: return "KS";
    case Condition::D: return "D";
    case Condition::SUB: return "SUB";
    case Condition::B: return "B";
    case Condition::IO: return "IO";
  }
  return "?";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds-at-horizon";
    case Verdict::fails: return "fails-at-horizon";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

std::string to_string(Method m) { return m == Method::exact ? "exact" : "monte-carlo"; }

Condition parse_condition(const std::string& text) {
  for (Condition c : all_conditions) {
    if (to_string(c) == text) return c;
  }
  throw ConfigError("unknown condition '" + text + "'");
}

nlohmann::json to_json(const ConditionReport& report) {
  nlohmann::json diags = nlohmann::json::array();
  for (const auto& d : report.diagnostics) {
    nlohmann::json item{{"n", d.n}};
    if (d.exact) {
      item["value"] = to_string(*d.exact);
      item["float"] = d.value;
    } else {
      item["value"] = d.value;
    }
    diags.push_back(std::move(item));
  }
  return {{"condition", to_string(report.condition)},
          {"horizon", report.horizon},
          {"verdict", to_string(report.verdict)},
          {"method", to_string(report.method)},
          {"diagnostics", diags},
          {"details", report.details}};
}

}  // namespace bclab
