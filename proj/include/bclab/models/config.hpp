#pragma once

#include "bclab/core/event_model.hpp"

#include <json.hpp>
#include <string>

namespace bclab {

/// Builds a model from its JSON configuration:
///
///   {"type": "bernoulli", "probs": ["1/2"], "tail": {"rule": "repeat-last"}}
///   {"type": "interval", "thresholds": ["1", "1/2"], "tail": {"rule": "cycle", "values": [...]}}
///   {"type": "runs", "run_lengths": [1, 1, 2]}  or  {"type": "runs", "select": {"count": 8}}
///   {"type": "galton", "coefficients": "logarithmic" | {"constant": "1/2"} |
///                                      {"table": [{"n":0,"k":0,"p":"1"}], "default": "0"}}
///
/// Probabilities are "num/den" strings parsed exactly; anything outside
/// [0,1] throws ConfigError. An optional "nullify_prefix": N applies
/// nullify_prefix to the built model.
ModelPtr model_from_json(const nlohmann::json& config);

ModelPtr load_model(const std::string& path_or_inline);

}  // namespace bclab
