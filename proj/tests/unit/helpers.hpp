#pragma once

#include "bclab/core/rational.hpp"
#include "bclab/core/sparse_pmf.hpp"
#include "bclab/models/config.hpp"

#include <initializer_list>
#include <string>
#include <utility>

namespace bclab::test {

inline Rational Q(const char* text) { return parse_rational(text); }

inline SparsePmf pmf(std::initializer_list<std::pair<Count, const char*>> entries) {
  std::vector<PmfEntry> v;
  for (const auto& [c, m] : entries) v.push_back({c, parse_rational(m)});
  return SparsePmf(std::move(v));
}

inline ModelPtr model(const char* json_text) { return model_from_json(nlohmann::json::parse(json_text)); }

}  // namespace bclab::test
