#include "bclab/core/sparse_pmf.hpp"

#include "bclab/core/errors.hpp"

#include <algorithm>
#include <cstdlib>

namespace bclab {

std::size_t max_support() {
  if (const char* env = std::getenv("BC_LAB_MAX_SUPPORT")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 1'000'000;
}

SparsePmf::SparsePmf() : entries_{{0, Prob(1)}} {}

SparsePmf::SparsePmf(std::vector<PmfEntry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const PmfEntry& a, const PmfEntry& b) { return a.count < b.count; });
  Prob total = 0;
  for (auto& e : entries) {
    if (e.mass < 0) throw DomainError("negative mass in p.m.f.");
    total += e.mass;
    if (!entries_.empty() && entries_.back().count == e.count) {
      entries_.back().mass += e.mass;
    } else {
      entries_.push_back(std::move(e));
    }
  }
  std::erase_if(entries_, [](const PmfEntry& e) { return e.mass == 0; });
  if (total != 1) {
    throw DomainError("p.m.f. masses sum to " + to_string(total) + ", not 1");
  }
}

SparsePmf::SparsePmf(const std::map<Count, Prob>& masses)
    : SparsePmf([&] {
        std::vector<PmfEntry> v;
        v.reserve(masses.size());
        for (const auto& [c, m] : masses) v.push_back({c, m});
        return v;
      }()) {}

SparsePmf SparsePmf::point(Count count) { return SparsePmf({PmfEntry{count, Prob(1)}}); }

SparsePmf SparsePmf::from_normalized(std::vector<PmfEntry> entries) {
  if (entries.empty()) throw DomainError("empty p.m.f.");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].mass <= 0) throw DomainError("nonpositive mass in normalized p.m.f.");
    if (i > 0 && entries[i - 1].count >= entries[i].count) throw DomainError("normalized p.m.f. is not sorted");
  }
  SparsePmf out;
  out.entries_ = std::move(entries);
  return out;
}

Prob SparsePmf::mass_at(Count count) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), count,
                             [](const PmfEntry& e, Count c) { return e.count < c; });
  if (it == entries_.end() || it->count != count) return Prob(0);
  return it->mass;
}

}  // namespace bclab
