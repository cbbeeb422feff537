#include "bclab/oracle/finite_space.hpp"

#include "bclab/core/errors.hpp"
#include "bclab/core/rng.hpp"
#include "bclab/galton/galton_model.hpp"
#include "bclab/models/bernoulli.hpp"
#include "bclab/models/interval.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

namespace bclab {

FiniteSpace::FiniteSpace(std::vector<Atom> atoms, const std::vector<std::vector<std::string>>& events)
    : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw ConfigError("finite space needs at least one atom");
  if (atoms_.size() > max_atoms) throw ResourceError("finite space exceeds the atom cap");
  std::unordered_map<std::string, std::size_t> index;
  Prob total = 0;
  for (std::size_t a = 0; a < atoms_.size(); ++a) {
    if (atoms_[a].weight <= 0) throw ConfigError("atom weights must be positive");
    if (!index.emplace(atoms_[a].label, a).second) {
      throw ConfigError("duplicate atom label '" + atoms_[a].label + "'");
    }
    total += atoms_[a].weight;
  }
  if (total != 1) throw ConfigError("atom weights sum to " + to_string(total) + ", not 1");
  for (const auto& event : events) {
    std::vector<bool> member(atoms_.size(), false);
    for (const auto& label : event) {
      auto it = index.find(label);
      if (it == index.end()) throw ConfigError("event refers to unknown atom '" + label + "'");
      member[it->second] = true;
    }
    membership_.push_back(std::move(member));
  }
}

FiniteSpace FiniteSpace::from_json(const nlohmann::json& config) {
  try {
    std::vector<Atom> atoms;
    for (const auto& a : config.at("atoms")) {
      atoms.push_back({a.at(0).get<std::string>(), parse_prob(a.at(1).get<std::string>())});
    }
    std::vector<std::vector<std::string>> events;
    for (const auto& e : config.at("events")) events.push_back(e.get<std::vector<std::string>>());
    return FiniteSpace(std::move(atoms), events);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid finite space: ") + e.what());
  }
}

SparsePmf enumerate_pmf(const FiniteSpace& space, std::size_t n) {
  if (n > space.event_count()) throw DomainError("enumerate_pmf: n exceeds the number of events");
  std::map<Count, Prob> masses;
  for (std::size_t a = 0; a < space.atoms().size(); ++a) {
    Count s = 0;
    for (std::size_t i = 0; i < n; ++i) s += space.membership(i)[a] ? 1 : 0;
    masses[s] += space.atoms()[a].weight;
  }
  return SparsePmf(masses);
}

Prob enumerate_probability(const FiniteSpace& space, std::size_t i) {
  Prob p = 0;
  const auto& member = space.membership(i);
  for (std::size_t a = 0; a < space.atoms().size(); ++a) {
    if (member[a]) p += space.atoms()[a].weight;
  }
  return p;
}

Prob enumerate_joint(const FiniteSpace& space, std::size_t i, std::size_t j) {
  Prob p = 0;
  const auto& mi = space.membership(i);
  const auto& mj = space.membership(j);
  for (std::size_t a = 0; a < space.atoms().size(); ++a) {
    if (mi[a] && mj[a]) p += space.atoms()[a].weight;
  }
  return p;
}

Rational enumerate_cov(const FiniteSpace& space, std::size_t i, std::size_t j) {
  if (i >= space.event_count() || j >= space.event_count()) {
    throw DomainError("enumerate_cov: event index out of range");
  }
  return enumerate_joint(space, i, j) - enumerate_probability(space, i) * enumerate_probability(space, j);
}

FiniteSpace interval_space(const std::vector<Prob>& thresholds) {
  std::vector<Prob> cuts;
  for (const auto& t : thresholds) {
    if (t < 0 || t > 1) throw ConfigError("interval thresholds must lie in [0,1]");
    if (t > 0) cuts.push_back(t);
  }
  cuts.push_back(Prob(1));
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<FiniteSpace::Atom> atoms;
  Prob lower = 0;
  for (const auto& upper : cuts) {
    atoms.push_back({"(" + to_string(lower) + "," + to_string(upper) + "]", upper - lower});
    lower = upper;
  }
  std::vector<std::vector<std::string>> events;
  for (const auto& t : thresholds) {
    std::vector<std::string> labels;
    Prob lo = 0;
    for (const auto& upper : cuts) {
      if (upper <= t) labels.push_back("(" + to_string(lo) + "," + to_string(upper) + "]");
      lo = upper;
    }
    events.push_back(std::move(labels));
  }
  return FiniteSpace(std::move(atoms), events);
}

FiniteSpace product_space(const std::vector<Prob>& probs) {
  const std::size_t n = probs.size();
  if (n > 20) throw ResourceError("product_space is capped at 20 events");
  std::vector<FiniteSpace::Atom> atoms;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    Prob w = 1;
    std::string label;
    for (std::size_t i = 0; i < n && w != 0; ++i) {
      bool occurs = (bits >> i) & 1U;
      w *= occurs ? probs[i] : 1 - probs[i];
      label.push_back(occurs ? '1' : '0');
    }
    if (w != 0) atoms.push_back({label, w});
  }
  std::vector<std::vector<std::string>> events(n);
  for (const auto& atom : atoms) {
    for (std::size_t i = 0; i < n; ++i) {
      if (atom.label[i] == '1') events[i].push_back(atom.label);
    }
  }
  return FiniteSpace(std::move(atoms), events);
}

FiniteSpace galton_path_space(const GaltonCoefficients& coeffs, std::size_t n, std::size_t nullified) {
  if (n > 20) throw ResourceError("galton_path_space is capped at 20 events");
  std::vector<FiniteSpace::Atom> atoms;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    Prob w = 1;
    std::uint64_t count = 0;
    std::string label;
    for (std::size_t i = 0; i < n && w != 0; ++i) {
      bool occurs = (bits >> i) & 1U;
      Prob up = coeffs.entry(i, count);
      w *= occurs ? up : 1 - up;
      label.push_back(occurs ? '1' : '0');
      count += occurs ? 1 : 0;
    }
    if (w != 0) atoms.push_back({label, w});
  }
  std::vector<std::vector<std::string>> events(n);
  for (const auto& atom : atoms) {
    for (std::size_t i = nullified; i < n; ++i) {
      if (atom.label[i] == '1') events[i].push_back(atom.label);
    }
  }
  return FiniteSpace(std::move(atoms), events);
}

FiniteSpace model_space(const EventModel& model, std::size_t n) {
  if (const auto* m = dynamic_cast<const IntervalModel*>(&model)) {
    std::vector<Prob> t;
    for (std::size_t i = 0; i < n; ++i) t.push_back(m->marginal(i));
    return interval_space(t);
  }
  if (const auto* m = dynamic_cast<const BernoulliModel*>(&model)) {
    std::vector<Prob> p;
    for (std::size_t i = 0; i < n; ++i) p.push_back(m->marginal(i));
    return product_space(p);
  }
  if (const auto* m = dynamic_cast<const GaltonModel*>(&model)) {
    return galton_path_space(m->coefficients(), n, m->nullified_prefix());
  }
  throw CapabilityError("no finite-space construction for model " + model.name());
}

namespace {

std::string atom_pattern(const FiniteSpace& space, std::size_t a) {
  std::string p;
  for (std::size_t i = 0; i < space.event_count(); ++i) p.push_back(space.membership(i)[a] ? '1' : '0');
  return p;
}

SamplingReport compare_patterns(const FiniteSpace& space, const std::map<std::string, std::uint64_t>& hits,
                                std::uint64_t paths, std::uint64_t seed, double tolerance_se) {
  std::map<std::string, Prob> exact;
  for (std::size_t a = 0; a < space.atoms().size(); ++a) exact[atom_pattern(space, a)] += space.atoms()[a].weight;

  SamplingReport report;
  report.paths = paths;
  report.seed = seed;
  report.tolerance_se = tolerance_se;
  auto check = [&](const std::string& pattern, const Prob& p) {
    PatternCheck c;
    c.pattern = pattern;
    c.exact = p;
    double pd = to_double(p);
    auto hit = hits.find(pattern);
    c.empirical = hit == hits.end() ? 0.0 : static_cast<double>(hit->second) / static_cast<double>(paths);
    c.standard_error = std::sqrt(pd * (1.0 - pd) / static_cast<double>(paths));
    double dev = std::abs(c.empirical - pd);
    if (c.standard_error == 0.0) {
      c.within = dev == 0.0;
    } else {
      c.z = dev / c.standard_error;
      c.within = c.z <= tolerance_se;
    }
    report.passed = report.passed && c.within;
    report.patterns.push_back(std::move(c));
  };
  for (const auto& [pattern, p] : exact) check(pattern, p);
  // Sampled patterns that enumeration gives zero mass are failures too.
  for (const auto& [pattern, count] : hits) {
    if (exact.count(pattern) == 0 && count > 0) check(pattern, Prob(0));
  }
  return report;
}

}  // namespace

SamplingReport sampling_validation(const FiniteSpace& space, std::uint64_t paths, std::uint64_t seed,
                                   double tolerance_se) {
  if (paths < 10'000) throw DomainError("sampling_validation needs at least 10^4 paths");
  const auto& atoms = space.atoms();
  std::vector<std::string> patterns;
  std::vector<double> cumulative;
  double running = 0.0;
  for (std::size_t a = 0; a < atoms.size(); ++a) {
    patterns.push_back(atom_pattern(space, a));
    running += to_double(atoms[a].weight);
    cumulative.push_back(running);
  }
  cumulative.back() = 1.0;

  std::map<std::string, std::uint64_t> hits;
  for (std::uint64_t path = 0; path < paths; ++path) {
    Rng rng({seed, path});
    double u = rng.uniform();
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    auto a = static_cast<std::size_t>(std::min<std::ptrdiff_t>(it - cumulative.begin(),
                                                               static_cast<std::ptrdiff_t>(atoms.size() - 1)));
    hits[patterns[a]] += 1;
  }
  return compare_patterns(space, hits, paths, seed, tolerance_se);
}

SamplingReport model_sampling_validation(const EventModel& model, const FiniteSpace& space,
                                         std::uint64_t paths, std::uint64_t seed, double tolerance_se) {
  if (paths < 10'000) throw DomainError("sampling_validation needs at least 10^4 paths");
  const std::uint64_t n = space.event_count();
  std::map<std::string, std::uint64_t> hits;
  for (std::uint64_t path = 0; path < paths; ++path) {
    Path bits = model.sample_path(n, {seed, path});
    std::string p;
    for (auto b : bits) p.push_back(b ? '1' : '0');
    hits[p] += 1;
  }
  return compare_patterns(space, hits, paths, seed, tolerance_se);
}

nlohmann::json to_json(const SamplingReport& report) {
  nlohmann::json patterns = nlohmann::json::array();
  for (const auto& c : report.patterns) {
    patterns.push_back({{"pattern", c.pattern},
                        {"exact", to_string(c.exact)},
                        {"empirical", c.empirical},
                        {"standard_error", c.standard_error},
                        {"z", c.z},
                        {"within", c.within}});
  }
  return {{"paths", report.paths},
          {"seed", report.seed},
          {"tolerance_se", report.tolerance_se},
          {"passed", report.passed},
          {"patterns", patterns}};
}

}  // namespace bclab
