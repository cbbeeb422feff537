#include "bclab/experiments/sweep.hpp"

#include "bclab/conditions/evaluators.hpp"
#include "bclab/core/errors.hpp"
#include "bclab/models/config.hpp"

#include <algorithm>
#include <set>

namespace bclab {

using nlohmann::json;

std::vector<ZooEntry> default_zoo() {
  return {
      {"bernoulli-one", json::parse(R"({"type": "bernoulli", "probs": ["1"]})"), 256},
      {"bernoulli-half", json::parse(R"({"type": "bernoulli", "probs": ["1/2"]})"), 1024},
      {"bernoulli-third", json::parse(R"({"type": "bernoulli", "probs": ["1/3"]})"), 1024},
      {"galton-constant-half", json::parse(R"({"type": "galton", "coefficients": {"constant": "1/2"}})"), 512},
      {"interval-half", json::parse(R"({"type": "interval", "thresholds": ["1/2"]})"), 256},
      {"interval-period-2",
       json::parse(R"({"type": "interval", "tail": {"rule": "cycle", "values": ["1", "1/2"]}})"), 1024},
      {"interval-prefix-half", json::parse(R"({"type": "interval", "thresholds": ["1/2", "1/2", "1"]})"), 256},
      {"runs", json::parse(R"({"type": "runs", "select": {"count": 8}})"), 500},
      {"galton-logarithmic", json::parse(R"({"type": "galton", "coefficients": "logarithmic"})"), 1024},
  };
}

const std::vector<Implication>& diagram_edges() {
  using C = Condition;
  static const std::vector<Implication> edges = {
      {C::IND, C::PWI}, {C::PWI, C::NOP}, {C::NOP, C::ER}, {C::NOP, C::D},  {C::ER, C::KS},
      {C::KS, C::ER},   {C::ER, C::SUB},  {C::D, C::SUB},  {C::SUB, C::IO}, {C::IO, C::B},
      {C::B, C::IO},
  };
  return edges;
}

std::vector<Implication> implied_pairs() {
  constexpr std::size_t k = std::size(all_conditions);
  bool reach[k][k] = {};
  for (const auto& e : diagram_edges()) reach[static_cast<int>(e.from)][static_cast<int>(e.to)] = true;
  for (std::size_t m = 0; m < k; ++m) {
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) reach[i][j] = reach[i][j] || (reach[i][m] && reach[m][j]);
    }
  }
  std::vector<Implication> out;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (i != j && reach[i][j]) out.push_back({all_conditions[i], all_conditions[j]});
    }
  }
  return out;
}

const ConditionReport& SweepRow::at(Condition c) const {
  for (const auto& r : reports) {
    if (r.condition == c) return r;
  }
  throw DomainError("sweep row lacks condition " + to_string(c));
}

SweepRow evaluate_row(const ZooEntry& entry, const SweepOptions& options) {
  const std::uint64_t h = options.horizon != 0 ? options.horizon : entry.horizon;
  if (h < 8) throw HorizonError("sweep horizon must be at least 8");
  ModelPtr model = model_from_json(entry.config);

  MomentThresholds moment{Rational(1, 100), Rational(1, 100)};
  MonteCarloOptions mc;
  mc.paths = options.paths;
  mc.seed = options.seed;
  mc.workers = options.workers;
  const std::vector<std::uint64_t> grid = {h / 4, h / 2};

  MomentSeries series = moment_series(*model, h);
  CovarianceReports cov = eval_cov(*model, h / 2, h);

  std::vector<ConditionReport> reports;
  reports.push_back(eval_ind(*model, cov.pwi));
  reports.push_back(cov.pwi);
  reports.push_back(cov.nop);
  reports.push_back(eval_er(series, h / 2, moment));
  reports.push_back(eval_ks(series, h / 2, moment));
  reports.push_back(eval_d(*model, h, Rational(1, 4), grid, mc));
  SubOptions sub;
  sub.record_from = h / 2;
  reports.push_back(eval_sub(*model, h, Rational(1, 2), sub));
  reports.push_back(eval_b(*model, h, grid));
  reports.push_back(eval_io(*model, h, mc));
  for (auto& r : reports) r.diagnostics.clear();
  return SweepRow{entry.name, h, std::move(reports)};
}

void check_diagram(SweepResult& result) {
  for (const auto& row : result.rows) {
    for (const auto& [from, to] : implied_pairs()) {
      const auto& a = row.at(from);
      const auto& b = row.at(to);
      if (a.verdict != Verdict::holds || b.verdict != Verdict::fails) continue;
      std::string msg = row.model + ": " + to_string(from) + " holds (" + to_string(a.method) + ") but " +
                        to_string(to) + " fails (" + to_string(b.method) + ") at horizon " +
                        std::to_string(row.horizon);
      if (a.method == Method::exact && b.method == Method::exact) {
        result.contradictions.push_back(msg);
      } else {
        result.warnings.push_back(msg);
      }
    }
  }
}

SweepResult run_diagram_sweep(const std::vector<ZooEntry>& zoo, const SweepOptions& options) {
  SweepResult result;
  for (const auto& entry : zoo) result.rows.push_back(evaluate_row(entry, options));
  check_diagram(result);
  return result;
}

json SweepResult::to_json() const {
  json columns = json::array();
  for (Condition c : all_conditions) columns.push_back(bclab::to_string(c));
  json matrix = json::array();
  json models = json::array();
  for (const auto& row : rows) {
    json verdicts = json::array();
    json reports = json::object();
    for (Condition c : all_conditions) {
      const auto& r = row.at(c);
      verdicts.push_back(bclab::to_string(r.verdict));
      reports[bclab::to_string(c)] = bclab::to_json(r);
    }
    matrix.push_back({{"model", row.model}, {"horizon", row.horizon}, {"verdicts", verdicts}});
    models.push_back({{"model", row.model}, {"reports", reports}});
  }
  return {{"experiment", "diagram-sweep"},
          {"conditions", columns},
          {"matrix", matrix},
          {"contradictions", contradictions},
          {"warnings", warnings},
          {"ok", contradictions.empty()},
          {"models", models}};
}

}  // namespace bclab
