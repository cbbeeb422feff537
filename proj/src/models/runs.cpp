#include "bclab/models/runs.hpp"

#include "bclab/core/errors.hpp"

namespace bclab {

ProbSequence RunPattern::thresholds() const {
  return ProbSequence({}, Runs{run_lengths, high, low});
}

std::shared_ptr<IntervalModel> RunPattern::model() const {
  return std::make_shared<IntervalModel>(thresholds(), 0, "runs");
}

std::uint64_t RunPattern::high_run_end(std::size_t block) const {
  if (block == 0 || block > run_lengths.size()) throw DomainError("run index out of range");
  std::uint64_t before = 0;
  for (std::size_t i = 0; i + 1 < block; ++i) before += run_lengths[i];
  return 2 * before + run_lengths[block - 1];
}

std::uint64_t RunPattern::low_run_end(std::size_t block) const {
  if (block == 0 || block > run_lengths.size()) throw DomainError("run index out of range");
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < block; ++i) total += run_lengths[i];
  return 2 * total;
}

Rational run_second_moment_ratio(const mpz_class& prefix_sum, const mpz_class& run_length) {
  if (run_length < 1) throw DomainError("run length must be >= 1");
  if (prefix_sum < 0) throw DomainError("prefix sum must be >= 0");
  // S_n is 2A + a on (0, 1/2] and A + a on (1/2, 1]; mu_n = 3A/2 + a.
  Rational mu = Rational(3, 2) * Rational(prefix_sum) + Rational(run_length);
  Rational hi = Rational(2 * prefix_sum + run_length) / mu;
  Rational lo = Rational(prefix_sum + run_length) / mu;
  return (hi * hi + lo * lo) / 2;
}

Rational run_second_moment_ratio(std::uint64_t prefix_sum, std::uint64_t run_length) {
  return run_second_moment_ratio(to_mpz(prefix_sum), to_mpz(run_length));
}

namespace {

bool block_target_met(std::uint64_t prefix, std::uint64_t a, const Rational& bound) {
  return run_second_moment_ratio(prefix, a) - 1 < bound;
}

}  // namespace

RunSelection select_run_lengths(std::size_t count, RunTarget target, std::uint64_t max_events) {
  if (count == 0) throw DomainError("select_run_lengths needs count >= 1");
  RunSelection sel;
  sel.target = target;
  std::uint64_t prefix = 0;
  for (std::size_t block = 1; block <= count; ++block) {
    std::uint64_t a = 0;
    Rational bound;
    if (target == RunTarget::event_index) {
      // With A >= 1, (E[X_n^2] - 1) * 2^n = A^2 2^{2A+a} / (3A+2a)^2 is strictly
      // increasing in a (3A + 2a >= 5), so a = 1 is the only candidate.
      if (prefix > 64) {
        sel.stop = RunStop::infeasible;
        break;
      }
      bound = inverse_power(2, static_cast<unsigned>(2 * prefix + 1));
      if (!block_target_met(prefix, 1, bound)) {
        sel.stop = RunStop::infeasible;
        break;
      }
      a = 1;
    } else {
      bound = inverse_power(2, static_cast<unsigned>(block));
      std::uint64_t hi = 1;
      while (!block_target_met(prefix, hi, bound)) {
        if (hi > max_events) break;
        hi *= 2;
      }
      std::uint64_t lo = hi / 2 + 1;
      if (hi == 1) lo = 1;
      while (lo < hi) {
        std::uint64_t mid = lo + (hi - lo) / 2;
        if (block_target_met(prefix, mid, bound)) {
          hi = mid;
        } else {
          lo = mid + 1;
        }
      }
      a = hi;
    }
    if (a > max_events / 2 || prefix > max_events / 2 - a) {
      sel.stop = RunStop::cap_reached;
      break;
    }
    RunCheckpoint cp;
    cp.block = block;
    cp.n = 2 * prefix + a;
    cp.ex2 = run_second_moment_ratio(prefix, a);
    cp.bound = bound;
    sel.run_lengths.push_back(a);
    sel.checkpoints.push_back(std::move(cp));
    prefix += a;
  }
  return sel;
}

std::string to_string(RunTarget target) {
  return target == RunTarget::event_index ? "event_index" : "block_index";
}

std::string to_string(RunStop stop) {
  switch (stop) {
    case RunStop::count_reached: return "count_reached";
    case RunStop::infeasible: return "infeasible";
    case RunStop::cap_reached: return "cap_reached";
  }
  return "unknown";
}

RunTarget parse_run_target(const std::string& text) {
  if (text == "event_index" || text == "event") return RunTarget::event_index;
  if (text == "block_index" || text == "block") return RunTarget::block_index;
  throw ConfigError("unknown run target '" + text + "'");
}

}  // namespace bclab
