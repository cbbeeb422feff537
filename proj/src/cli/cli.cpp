#include "bclab/cli.hpp"

#include "bclab/conditions/evaluators.hpp"
#include "bclab/core/errors.hpp"
#include "bclab/experiments/experiments.hpp"
#include "bclab/experiments/output.hpp"
#include "bclab/experiments/sweep.hpp"
#include "bclab/models/config.hpp"
#include "bclab/oracle/finite_space.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>

namespace bclab {
namespace {

using nlohmann::json;

struct Args {
  std::string model;
  std::uint64_t horizon = 0;
  std::uint64_t n = 0;
  std::uint64_t paths = 1000;
  std::uint64_t validate_paths = 100000;
  std::uint64_t seed = 0;
  std::string eps;
  std::string out;
  std::string format = "both";
  std::string series = "ex2";
  std::string name;
  std::string space;
  std::vector<std::string> models;
  std::vector<std::string> conditions;
  unsigned max_exponent = 64;
  unsigned workers = 0;
  bool svg = false;
};

void add_output_flags(CLI::App* app, Args& a) {
  app->add_option("--out", a.out, "Directory for CSV/JSON (and SVG) files");
  app->add_option("--format", a.format, "Files to write under --out")
      ->check(CLI::IsMember({"csv", "json", "both"}))
      ->capture_default_str();
  app->add_flag("--svg", a.svg, "Also write an SVG line chart per series under --out");
}

void add_mc_flags(CLI::App* app, Args& a) {
  app->add_option("--paths", a.paths, "Monte Carlo sample paths")->capture_default_str();
  app->add_option("--seed", a.seed, "Base seed; path p uses rng stream (seed, p)")->capture_default_str();
  app->add_option("--workers", a.workers, "Worker threads (0: hardware concurrency); results do not depend on it");
}

void emit(const Args& a, const std::string& stem, const json& report, const std::vector<NamedSeries>& series) {
  if (a.out.empty()) return;
  for (const auto& path : write_outputs(a.out, stem, report, series, parse_output_format(a.format), a.svg)) {
    std::cerr << "wrote " << path << "\n";
  }
}

Series pmf_series(const SparsePmf& pmf) {
  Series s;
  for (const auto& e : pmf.entries()) s.push_back({e.count, e.mass});
  return s;
}

int cmd_pmf(const Args& a) {
  if (a.n == 0) throw ConfigError("--n must be >= 1");
  ModelPtr model = load_model(a.model);
  SparsePmf pmf = model->exact_pmf(a.n);
  Series s = pmf_series(pmf);
  std::cout << series_csv(s);
  auto m = pmf_moments(pmf);
  json report = {{"model", model->name()},
                 {"n", a.n},
                 {"support", pmf.support_size()},
                 {"mean", to_string(m.mean)},
                 {"second_moment", to_string(m.second_moment)}};
  emit(a, "pmf_n" + std::to_string(a.n), report, {{"mass", s}});
  return 0;
}

int cmd_moments(const Args& a) {
  if (a.horizon == 0) throw ConfigError("--horizon must be >= 1");
  ModelPtr model = load_model(a.model);
  MomentSeries ms = moment_series(*model, a.horizon);
  Series mu, s2, ex2;
  for (const auto& r : ms.records) {
    mu.push_back({r.n, r.mu});
    s2.push_back({r.n, r.s2});
    ex2.push_back({r.n, r.ex2});
  }
  const Series& chosen = a.series == "mu" ? mu : a.series == "s2" ? s2 : ex2;
  std::cout << series_csv(chosen);
  json report = {{"model", model->name()},
                 {"horizon", a.horizon},
                 {"route", ms.route == MomentRoute::pmf ? "pmf" : "pairwise"},
                 {"zero_mean_prefix", ms.zero_mean_prefix},
                 {"final", {{"mu", to_string(mu.back().value)},
                            {"s2", to_string(s2.back().value)},
                            {"ex2", to_string(ex2.back().value)}}}};
  emit(a, "moments", report, {{"mu", mu}, {"s2", s2}, {"ex2", ex2}});
  return 0;
}

int cmd_conditions(const Args& a) {
  if (a.horizon < 8) throw ConfigError("--horizon must be >= 8");
  ModelPtr model = load_model(a.model);
  std::set<Condition> wanted;
  for (const auto& c : a.conditions) wanted.insert(parse_condition(c));
  if (wanted.empty()) wanted.insert(std::begin(all_conditions), std::end(all_conditions));
  const std::uint64_t h = a.horizon;
  MonteCarloOptions mc;
  mc.paths = a.paths;
  mc.seed = a.seed;
  mc.workers = a.workers;
  const std::vector<std::uint64_t> grid = {h / 4, h / 2};
  const MomentThresholds moment{Rational(1, 100), Rational(1, 100)};
  const std::optional<Rational> eps = a.eps.empty() ? std::nullopt : std::optional(parse_rational(a.eps));

  std::vector<ConditionReport> reports;
  std::optional<CovarianceReports> cov;
  std::optional<MomentSeries> series;
  auto need_cov = [&]() -> CovarianceReports& {
    if (!cov) cov = eval_cov(*model, h / 2, h);
    return *cov;
  };
  auto need_series = [&]() -> MomentSeries& {
    if (!series) series = moment_series(*model, h);
    return *series;
  };
  for (Condition c : all_conditions) {
    if (wanted.count(c) == 0) continue;
    switch (c) {
      case Condition::IND: reports.push_back(eval_ind(*model, need_cov().pwi)); break;
      case Condition::PWI: reports.push_back(need_cov().pwi); break;
      case Condition::NOP: reports.push_back(need_cov().nop); break;
      case Condition::ER: reports.push_back(eval_er(need_series(), h / 2, moment)); break;
      case Condition::KS: reports.push_back(eval_ks(need_series(), h / 2, moment)); break;
      case Condition::D: reports.push_back(eval_d(*model, h, eps.value_or(Rational(1, 4)), grid, mc)); break;
      case Condition::SUB: reports.push_back(eval_sub(*model, h, eps.value_or(Rational(1, 2)))); break;
      case Condition::B: reports.push_back(eval_b(*model, h, grid)); break;
      case Condition::IO: reports.push_back(eval_io(*model, h, mc)); break;
    }
  }
  json list = json::array();
  std::vector<NamedSeries> out_series;
  for (const auto& r : reports) {
    Series s;
    for (const auto& d : r.diagnostics) {
      if (d.exact) s.push_back({d.n, *d.exact});
    }
    if (!s.empty()) out_series.push_back({to_string(r.condition), std::move(s)});
    json j = to_json(r);
    j.erase("diagnostics");
    list.push_back(std::move(j));
  }
  json report = {{"model", model->name()}, {"horizon", h}, {"reports", list}};
  std::cout << dump_json(report);
  emit(a, "conditions", report, out_series);
  return 0;
}

int cmd_experiment(const Args& a) {
  ExperimentOptions o;
  o.horizon = a.horizon;
  o.paths = a.paths;
  o.seed = a.seed;
  o.workers = a.workers;
  ExperimentResult result = run_experiment(a.name, o, a.max_exponent);
  std::cout << dump_json(result.report);
  emit(a, a.name, result.report, result.series);
  if (a.name == "diagram-sweep" && !result.ok()) return 3;
  return 0;
}

int cmd_sweep(const Args& a) {
  std::vector<ZooEntry> zoo;
  if (a.models.empty()) {
    zoo = default_zoo();
  } else {
    for (const auto& path : a.models) {
      std::ifstream in(path);
      if (!in) throw ConfigError("cannot open model config '" + path + "'");
      json cfg;
      try {
        cfg = json::parse(in);
      } catch (const json::parse_error& e) {
        throw ConfigError(std::string("invalid JSON in ") + path + ": " + e.what());
      }
      std::uint64_t h = cfg.value("horizon", std::uint64_t{1024});
      zoo.push_back({std::filesystem::path(path).stem().string(), cfg, h});
    }
  }
  SweepOptions s{a.horizon, a.paths, a.seed, a.workers};
  SweepResult result = run_diagram_sweep(zoo, s);
  json report = result.to_json();
  std::cout << dump_json(report);
  emit(a, "sweep", report, {});
  for (const auto& c : result.contradictions) std::cerr << "contradiction: " << c << "\n";
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
  return result.sound() ? 0 : 3;
}

int cmd_validate(const Args& a) {
  json report;
  if (!a.space.empty()) {
    std::ifstream in(a.space);
    if (!in) throw ConfigError("cannot open space '" + a.space + "'");
    json cfg;
    try {
      cfg = json::parse(in);
    } catch (const json::parse_error& e) {
      throw ConfigError(std::string("invalid JSON in ") + a.space + ": " + e.what());
    }
    FiniteSpace space = FiniteSpace::from_json(cfg);
    json pmfs = json::array();
    for (std::size_t n = 1; n <= space.event_count(); ++n) {
      json entries = json::array();
      SparsePmf p = enumerate_pmf(space, n);
      for (const auto& e : p.entries()) entries.push_back({e.count, to_string(e.mass)});
      pmfs.push_back({{"n", n}, {"pmf", entries}});
    }
    report = {{"space", a.space}, {"pmfs", pmfs}, {"sampling", to_json(sampling_validation(space, a.validate_paths, a.seed))}};
    std::cout << dump_json(report);
    emit(a, "validate", report, {});
    return report["sampling"]["passed"].get<bool>() ? 0 : 3;
  }
  if (a.model.empty()) throw ConfigError("validate needs --space or --model");
  if (a.n == 0 || a.n > 12) throw ConfigError("validate --model needs 1 <= --n <= 12");
  ModelPtr model = load_model(a.model);
  FiniteSpace space = model_space(*model, a.n);
  bool exact_ok = true;
  json mismatches = json::array();
  for (std::size_t n = 1; n <= a.n; ++n) {
    if (!(model->exact_pmf(n) == enumerate_pmf(space, n))) {
      exact_ok = false;
      mismatches.push_back(n);
    }
  }
  SamplingReport sampling = model_sampling_validation(*model, space, a.validate_paths, a.seed);
  report = {{"model", model->name()},
            {"n", a.n},
            {"exact_match", exact_ok},
            {"mismatched_n", mismatches},
            {"sampling", to_json(sampling)}};
  std::cout << dump_json(report);
  emit(a, "validate", report, {});
  return exact_ok && sampling.passed ? 0 : 3;
}

}  // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{"Exact and Monte Carlo laboratory for second Borel-Cantelli type conditions"};
  app.require_subcommand(1);
  Args a;

  auto* pmf = app.add_subcommand("pmf", "Exact p.m.f. of S_n as CSV (n = count)");
  pmf->add_option("--model", a.model, "Model config: JSON file or inline JSON")->required();
  pmf->add_option("--n", a.n, "Number of events counted")->required();
  add_output_flags(pmf, a);

  auto* moments = app.add_subcommand("moments", "Exact mu_n, E[S_n^2], E[X_n^2] for n = 1..horizon");
  moments->add_option("--model", a.model, "Model config: JSON file or inline JSON")->required();
  moments->add_option("--horizon", a.horizon, "Last n")->required();
  moments->add_option("--series", a.series, "Series printed to stdout")
      ->check(CLI::IsMember({"mu", "s2", "ex2"}))
      ->capture_default_str();
  add_output_flags(moments, a);

  auto* conditions = app.add_subcommand("conditions", "Finite-horizon verdicts for the nine conditions");
  conditions->add_option("--model", a.model, "Model config: JSON file or inline JSON")->required();
  conditions->add_option("--horizon", a.horizon, "Horizon H (>= 8)")->required();
  conditions->add_option("--condition", a.conditions, "Restrict to these conditions (repeatable)");
  conditions->add_option("--eps", a.eps, "eps as num/den for D and SUB (defaults 1/4 and 1/2)");
  add_mc_flags(conditions, a);
  add_output_flags(conditions, a);

  auto* experiment = app.add_subcommand("experiment", "Run a counterexample reproducer or demonstration");
  experiment->add_option("--name", a.name, "Experiment name")
      ->required()
      ->check(CLI::IsMember(experiment_names()));
  experiment->add_option("--horizon", a.horizon, "Horizon (0: experiment default)");
  experiment->add_option("--max-exponent", a.max_exponent, "d-not-er: largest j in E[X_{2^j}^2]")
      ->capture_default_str();
  add_mc_flags(experiment, a);
  add_output_flags(experiment, a);

  auto* sweep = app.add_subcommand("sweep", "Model x condition verdict matrix against the implication diagram");
  sweep->add_option("--model", a.models, "Model config files (repeatable; default: built-in zoo)");
  sweep->add_option("--horizon", a.horizon, "Horizon overriding every model's own (0: keep)");
  add_mc_flags(sweep, a);
  add_output_flags(sweep, a);

  auto* validate = app.add_subcommand("validate", "Compare engines against full enumeration");
  validate->add_option("--space", a.space, "Finite space JSON {\"atoms\": [...], \"events\": [...]}");
  validate->add_option("--model", a.model, "Model config (interval, bernoulli or galton)");
  validate->add_option("--n", a.n, "Events to enumerate with --model (<= 12)");
  validate->add_option("--paths", a.validate_paths, "Sampled paths (>= 10^4)")->capture_default_str();
  validate->add_option("--seed", a.seed, "Base seed")->capture_default_str();
  add_output_flags(validate, a);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*pmf) return cmd_pmf(a);
    if (*moments) return cmd_moments(a);
    if (*conditions) return cmd_conditions(a);
    if (*experiment) return cmd_experiment(a);
    if (*sweep) return cmd_sweep(a);
    if (*validate) return cmd_validate(a);
  } catch (const CapabilityError& e) {
    std::cerr << "capability error: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return 1;
  } catch (const DomainError& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return 1;
  } catch (const HorizonError& e) {
    std::cerr << "invalid horizon: " << e.what() << "\n";
    return 1;
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 1;
}

}  // namespace bclab
