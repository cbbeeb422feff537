#include "bclab/models/config.hpp"

#include "bclab/core/errors.hpp"
#include "bclab/galton/galton_model.hpp"
#include "bclab/models/bernoulli.hpp"
#include "bclab/models/interval.hpp"
#include "bclab/models/runs.hpp"

#include <fstream>
#include <sstream>

namespace bclab {
namespace {

using nlohmann::json;

Prob prob_field(const json& v) {
  if (!v.is_string()) throw ConfigError("probabilities must be \"num/den\" strings");
  return parse_prob(v.get<std::string>());
}

std::vector<Prob> prob_list(const json& v) {
  if (!v.is_array()) throw ConfigError("expected an array of probabilities");
  std::vector<Prob> out;
  for (const auto& item : v) out.push_back(prob_field(item));
  return out;
}

std::vector<std::uint64_t> length_list(const json& v) {
  if (!v.is_array()) throw ConfigError("run_lengths must be an array");
  std::vector<std::uint64_t> out;
  for (const auto& item : v) {
    if (!item.is_number_unsigned() || item.get<std::uint64_t>() == 0) {
      throw ConfigError("run lengths must be positive integers");
    }
    out.push_back(item.get<std::uint64_t>());
  }
  return out;
}

TailRule tail_from_json(const json& cfg) {
  if (!cfg.contains("tail")) return RepeatLast{};
  const json& tail = cfg.at("tail");
  std::string rule = tail.value("rule", "repeat-last");
  if (rule == "repeat-last") return RepeatLast{};
  if (rule == "cycle") return Cycle{prob_list(tail.at("values"))};
  if (rule == "runs") {
    Runs r;
    r.run_lengths = length_list(tail.at("run_lengths"));
    if (tail.contains("high")) r.high = prob_field(tail.at("high"));
    if (tail.contains("low")) r.low = prob_field(tail.at("low"));
    return r;
  }
  throw ConfigError("unknown tail rule '" + rule + "'");
}

std::uint64_t unsigned_field(const json& cfg, const char* key, std::uint64_t fallback) {
  if (!cfg.contains(key)) return fallback;
  if (!cfg.at(key).is_number_unsigned()) throw ConfigError(std::string(key) + " must be a nonnegative integer");
  return cfg.at(key).get<std::uint64_t>();
}

GaltonCoefficients coefficients_from_json(const json& v) {
  if (v.is_string()) {
    if (v.get<std::string>() == "logarithmic") return GaltonCoefficients::logarithmic();
    throw ConfigError("unknown coefficient kind '" + v.get<std::string>() + "'");
  }
  if (v.is_object() && v.contains("constant")) return GaltonCoefficients::constant(prob_field(v.at("constant")));
  if (v.is_object() && v.contains("table")) {
    std::map<std::pair<std::uint64_t, std::uint64_t>, Prob> entries;
    for (const auto& e : v.at("table")) {
      if (!e.contains("n") || !e.contains("k") || !e.contains("p")) {
        throw ConfigError("table entries need n, k and p");
      }
      entries[{e.at("n").get<std::uint64_t>(), e.at("k").get<std::uint64_t>()}] = prob_field(e.at("p"));
    }
    Prob fallback = v.contains("default") ? prob_field(v.at("default")) : Prob(0);
    return GaltonCoefficients::table(std::move(entries), std::move(fallback));
  }
  throw ConfigError("coefficients must be \"logarithmic\", {\"constant\": p} or {\"table\": [...]}");
}

ModelPtr build(const json& cfg) {
  if (!cfg.is_object() || !cfg.contains("type")) throw ConfigError("model config needs a \"type\"");
  const std::string type = cfg.at("type").get<std::string>();
  if (type == "bernoulli") {
    return std::make_shared<BernoulliModel>(ProbSequence(prob_list(cfg.at("probs")), tail_from_json(cfg)));
  }
  if (type == "interval") {
    std::vector<Prob> prefix = cfg.contains("thresholds") ? prob_list(cfg.at("thresholds")) : std::vector<Prob>{};
    return std::make_shared<IntervalModel>(ProbSequence(std::move(prefix), tail_from_json(cfg)), 0,
                                           cfg.value("label", std::string("interval")));
  }
  if (type == "runs") {
    RunPattern pattern;
    if (cfg.contains("run_lengths")) {
      pattern.run_lengths = length_list(cfg.at("run_lengths"));
    } else if (cfg.contains("select")) {
      const json& sel = cfg.at("select");
      auto count = unsigned_field(sel, "count", 8);
      auto target = parse_run_target(sel.value("target", std::string("block_index")));
      auto max_events = unsigned_field(sel, "max_events", std::uint64_t{1} << 62);
      pattern.run_lengths = select_run_lengths(count, target, max_events).run_lengths;
    } else {
      throw ConfigError("runs model needs run_lengths or select");
    }
    if (cfg.contains("high")) pattern.high = prob_field(cfg.at("high"));
    if (cfg.contains("low")) pattern.low = prob_field(cfg.at("low"));
    return pattern.model();
  }
  if (type == "galton") {
    return std::make_shared<GaltonModel>(coefficients_from_json(cfg.value("coefficients", json("logarithmic"))));
  }
  throw ConfigError("unknown model type '" + type + "'");
}

}  // namespace

ModelPtr model_from_json(const json& config) {
  try {
    ModelPtr model = build(config);
    std::uint64_t nullified = unsigned_field(config, "nullify_prefix", 0);
    return nullified > 0 ? nullify_prefix(model, nullified) : model;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid model config: ") + e.what());
  }
}

ModelPtr load_model(const std::string& path_or_inline) {
  json cfg;
  try {
    auto first = path_or_inline.find_first_not_of(" \t\n");
    if (first != std::string::npos && path_or_inline[first] == '{') {
      cfg = json::parse(path_or_inline);
    } else {
      std::ifstream in(path_or_inline);
      if (!in) throw ConfigError("cannot open model config '" + path_or_inline + "'");
      cfg = json::parse(in);
    }
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  return model_from_json(cfg);
}

}  // namespace bclab
