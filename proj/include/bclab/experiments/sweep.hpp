#pragma once

#include "bclab/conditions/report.hpp"
#include "bclab/core/event_model.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace bclab {

struct ZooEntry {
  std::string name;
  nlohmann::json config;
  std::uint64_t horizon = 0;
};

/// Shipped models with their evaluation horizons: constant Bernoulli rows,
/// nested interval models, the runs construction and the logarithmic Galton model.
std::vector<ZooEntry> default_zoo();

struct SweepOptions {
  std::uint64_t horizon = 0;  // nonzero overrides every entry
  std::uint64_t paths = 1000;
  std::uint64_t seed = 0;
  unsigned workers = 0;
};

/// Edges of the implication diagram; equivalences appear in both directions.
struct Implication {
  Condition from;
  Condition to;
};

const std::vector<Implication>& diagram_edges();

/// Transitive closure of diagram_edges().
std::vector<Implication> implied_pairs();

struct SweepRow {
  std::string model;
  std::uint64_t horizon = 0;
  std::vector<ConditionReport> reports;  // in all_conditions order, diagnostics dropped

  const ConditionReport& at(Condition c) const;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<std::string> contradictions;  // both verdicts exact
  std::vector<std::string> warnings;        // a Monte Carlo verdict is involved

  bool sound() const { return contradictions.empty(); }
  nlohmann::json to_json() const;
};

/// Evaluates the nine conditions on every entry. Fixed settings: ER/KS tail
/// [H/2, H] with tolerance 1/100, NOP/PWI window [H/2, H), D with eps 1/4 and
/// m in {H/4, H/2}, SUB with eps 1/2 and threshold 1/20, B on m in {H/4, H/2}.
SweepRow evaluate_row(const ZooEntry& entry, const SweepOptions& options);

SweepResult run_diagram_sweep(const std::vector<ZooEntry>& zoo, const SweepOptions& options);

/// Checks a finished matrix against implied_pairs(): "from" holds while "to"
/// fails. Appends to result.contradictions / result.warnings.
void check_diagram(SweepResult& result);

}  // namespace bclab
