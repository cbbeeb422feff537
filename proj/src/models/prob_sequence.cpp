#include "bclab/models/prob_sequence.hpp"

#include "bclab/core/errors.hpp"

#include <algorithm>
#include <map>

namespace bclab {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_unit(Prob& p) {
  p.canonicalize();
  if (!is_probability(p)) throw ConfigError("sequence value outside [0,1]: " + to_string(p));
}

using CountMap = std::map<Prob, std::uint64_t>;

}  // namespace

ProbSequence::ProbSequence(std::vector<Prob> prefix, TailRule tail)
    : prefix_(std::move(prefix)), tail_(std::move(tail)) {
  for (auto& p : prefix_) {
    check_unit(p);
    prefix_d_.push_back(to_double(p));
  }
  std::visit(overloaded{
                 [&](const RepeatLast&) {
                   if (prefix_.empty()) throw ConfigError("repeat-last tail needs a non-empty prefix");
                 },
                 [&](Cycle& c) {
                   if (c.values.empty()) throw ConfigError("cycle tail needs at least one value");
                   for (auto& v : c.values) {
                     check_unit(v);
                     cycle_d_.push_back(to_double(v));
                   }
                 },
                 [&](Runs& r) {
                   if (r.run_lengths.empty()) throw ConfigError("runs tail needs run lengths");
                   check_unit(r.high);
                   check_unit(r.low);
                   high_d_ = to_double(r.high);
                   low_d_ = to_double(r.low);
                   std::uint64_t total = 0;
                   for (auto a : r.run_lengths) {
                     if (a == 0) throw ConfigError("run lengths must be positive");
                     if (a > (std::uint64_t{1} << 61) || total > (std::uint64_t{1} << 62) - 2 * a) {
                       throw ConfigError("run pattern too long for 64-bit event indices");
                     }
                     total += 2 * a;
                     block_ends_.push_back(total);
                   }
                 },
             },
             tail_);
}

bool ProbSequence::runs_high(std::uint64_t t) const {
  const auto& r = std::get<Runs>(tail_);
  std::uint64_t a = 0;
  std::uint64_t offset = 0;
  if (t < block_ends_.back()) {
    auto it = std::upper_bound(block_ends_.begin(), block_ends_.end(), t);
    auto b = static_cast<std::size_t>(it - block_ends_.begin());
    offset = t - (b == 0 ? 0 : block_ends_[b - 1]);
    a = r.run_lengths[b];
  } else {
    a = r.run_lengths.back();
    offset = (t - block_ends_.back()) % (2 * a);
  }
  return offset < a;
}

const Prob& ProbSequence::tail_at(std::uint64_t t) const {
  if (std::holds_alternative<RepeatLast>(tail_)) return prefix_.back();
  if (const auto* c = std::get_if<Cycle>(&tail_)) return c->values[t % c->values.size()];
  const auto& r = std::get<Runs>(tail_);
  return runs_high(t) ? r.high : r.low;
}

Prob ProbSequence::at(std::uint64_t i) const {
  if (i < prefix_.size()) return prefix_[i];
  return tail_at(i - prefix_.size());
}

double ProbSequence::at_double(std::uint64_t i) const {
  if (i < prefix_d_.size()) return prefix_d_[i];
  std::uint64_t t = i - prefix_d_.size();
  if (std::holds_alternative<RepeatLast>(tail_)) return prefix_d_.back();
  if (std::holds_alternative<Cycle>(tail_)) return cycle_d_[t % cycle_d_.size()];
  return runs_high(t) ? high_d_ : low_d_;
}

namespace {

// Adds the multiplicities of tail positions [0, t_end) to acc.
void tail_counts(const TailRule& tail, const std::vector<Prob>& prefix,
                 const std::vector<std::uint64_t>& block_ends, std::uint64_t t_end, CountMap& acc) {
  if (t_end == 0) return;
  if (std::holds_alternative<RepeatLast>(tail)) {
    acc[prefix.back()] += t_end;
  } else if (const auto* c = std::get_if<Cycle>(&tail)) {
    std::uint64_t len = c->values.size();
    std::uint64_t full = t_end / len;
    std::uint64_t rem = t_end % len;
    for (std::uint64_t k = 0; k < len; ++k) acc[c->values[k]] += full + (k < rem ? 1 : 0);
  } else {
    const auto& r = std::get<Runs>(tail);
    std::uint64_t highs = 0;
    if (t_end <= block_ends.back()) {
      auto it = std::upper_bound(block_ends.begin(), block_ends.end(), t_end);
      auto b = static_cast<std::size_t>(it - block_ends.begin());
      std::uint64_t start = b == 0 ? 0 : block_ends[b - 1];
      highs = start / 2;
      if (b < r.run_lengths.size()) highs += std::min(t_end - start, r.run_lengths[b]);
    } else {
      std::uint64_t a = r.run_lengths.back();
      std::uint64_t rest = t_end - block_ends.back();
      highs = block_ends.back() / 2 + (rest / (2 * a)) * a + std::min(rest % (2 * a), a);
    }
    if (highs > 0) acc[r.high] += highs;
    if (t_end > highs) acc[r.low] += t_end - highs;
  }
}

CountMap counts_upto(const std::vector<Prob>& prefix, const TailRule& tail,
                     const std::vector<std::uint64_t>& block_ends, std::uint64_t end) {
  CountMap acc;
  std::uint64_t in_prefix = std::min<std::uint64_t>(end, prefix.size());
  for (std::uint64_t i = 0; i < in_prefix; ++i) acc[prefix[i]] += 1;
  if (end > prefix.size()) tail_counts(tail, prefix, block_ends, end - prefix.size(), acc);
  return acc;
}

}  // namespace

std::vector<std::pair<Prob, std::uint64_t>> ProbSequence::value_counts(std::uint64_t from,
                                                                        std::uint64_t to) const {
  if (from > to) throw DomainError("value_counts: from > to");
  CountMap upper = counts_upto(prefix_, tail_, block_ends_, to);
  CountMap lower = counts_upto(prefix_, tail_, block_ends_, from);
  std::vector<std::pair<Prob, std::uint64_t>> out;
  for (const auto& [value, count] : upper) {
    auto it = lower.find(value);
    std::uint64_t c = count - (it == lower.end() ? 0 : it->second);
    if (c > 0) out.emplace_back(value, c);
  }
  return out;
}

std::vector<Prob> ProbSequence::value_set() const {
  std::vector<Prob> values = prefix_;
  std::visit(overloaded{
                 [](const RepeatLast&) {},
                 [&](const Cycle& c) { values.insert(values.end(), c.values.begin(), c.values.end()); },
                 [&](const Runs& r) {
                   values.push_back(r.high);
                   values.push_back(r.low);
                 },
             },
             tail_);
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

}  // namespace bclab
