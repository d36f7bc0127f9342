#pragma once

// Seeded trajectory simulation of a stationary profile and a z-test against
// exact absorption probabilities.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "redblack/game.hpp"
#include "redblack/parallel.hpp"

namespace redblack {

struct SimConfig {
  std::uint64_t trials = 100000;
  std::uint64_t seed = 0;
  std::uint64_t horizon = 0;  // 0 selects 64 * M
  int x0 = 1;
};

struct SimResult {
  std::uint64_t trials = 0;
  std::uint64_t wins_i = 0;
  std::uint64_t wins_ii = 0;
  std::uint64_t truncated = 0;
  std::uint64_t total_steps = 0;
  std::uint64_t max_steps = 0;
  std::uint64_t horizon = 0;
  std::uint64_t seed = 0;
  int x0 = 0;

  double empirical() const { return trials ? static_cast<double>(wins_i) / trials : 0.0; }
  double mean_length() const { return trials ? static_cast<double>(total_steps) / trials : 0.0; }
  double truncated_fraction() const {
    return trials ? static_cast<double>(truncated) / trials : 0.0;
  }

  friend bool operator==(const SimResult&, const SimResult&) = default;
};

/// SplitMix64 finalizer.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Engine for one trial, a pure function of (seed, trial).
inline std::mt19937_64 trial_engine(std::uint64_t seed, std::uint64_t trial) {
  return std::mt19937_64(mix64(seed ^ mix64(trial)));
}

/// Uniform in [0, 1) from the top 53 bits; fixed across standard libraries.
inline double unit_uniform(std::mt19937_64& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

struct TraceStep {
  std::uint64_t n = 0;
  int x = 0;
  int a = 0;
  int b = 0;

  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

namespace detail {

struct TrialOutcome {
  int final_state = 0;
  std::uint64_t steps = 0;
  bool truncated = false;
};

template <typename OnStep>
TrialOutcome run_trial(const WinProbTable& P, const Profile& profile, int x0,
                       std::uint64_t horizon, std::mt19937_64& g, OnStep&& on_step) {
  const int M = P.M();
  int x = x0;
  std::uint64_t n = 0;
  while (x != 0 && x != M) {
    if (n >= horizon) return {x, n, true};
    const int a = profile.bet_i(x);
    const int b = profile.bet_ii(x);
    on_step(n, x, a, b);
    const auto s = step_distribution(x, a, b, P);
    x = unit_uniform(g) < s.up_prob ? s.up_state : s.down_state;
    ++n;
  }
  return {x, n, false};
}

inline std::uint64_t effective_horizon(const SimConfig& cfg, int M) {
  return cfg.horizon ? cfg.horizon : 64ULL * static_cast<std::uint64_t>(M);
}

inline void validate(const WinProbTable& P, const Profile& profile, const SimConfig& cfg) {
  if (profile.M() != P.M()) throw DomainError("simulate: profile and table disagree on M");
  if (cfg.trials < 1) throw DomainError("simulate: trials must be >= 1");
  if (cfg.x0 < 0 || cfg.x0 > P.M()) throw DomainError("simulate: x0 outside {0,...,M}");
}

}  // namespace detail

/// Runs cfg.trials independent trajectories from cfg.x0. Trial i draws from
/// trial_engine(seed, i), so the aggregate is identical for any `jobs`.
inline SimResult simulate(const WinProbTable& P, const Profile& profile, const SimConfig& cfg,
                          unsigned jobs = 1) {
  detail::validate(P, profile, cfg);
  const int M = P.M();
  const std::uint64_t horizon = detail::effective_horizon(cfg, M);

  const std::size_t blocks = std::max<std::size_t>(1, std::min<std::uint64_t>(jobs, cfg.trials));
  std::vector<SimResult> partial(blocks);
  const std::uint64_t per_block = (cfg.trials + blocks - 1) / blocks;
  parallel_for(blocks, jobs, [&](std::size_t k) {
    SimResult& r = partial[k];
    const std::uint64_t lo = k * per_block;
    const std::uint64_t hi = std::min<std::uint64_t>(cfg.trials, lo + per_block);
    auto no_trace = [](std::uint64_t, int, int, int) {};
    for (std::uint64_t i = lo; i < hi; ++i) {
      auto g = trial_engine(cfg.seed, i);
      const auto out = detail::run_trial(P, profile, cfg.x0, horizon, g, no_trace);
      ++r.trials;
      r.total_steps += out.steps;
      r.max_steps = std::max(r.max_steps, out.steps);
      if (out.truncated)
        ++r.truncated;
      else if (out.final_state == M)
        ++r.wins_i;
      else
        ++r.wins_ii;
    }
  });

  SimResult total;
  total.horizon = horizon;
  total.seed = cfg.seed;
  total.x0 = cfg.x0;
  for (const auto& r : partial) {
    total.trials += r.trials;
    total.wins_i += r.wins_i;
    total.wins_ii += r.wins_ii;
    total.truncated += r.truncated;
    total.total_steps += r.total_steps;
    total.max_steps = std::max(total.max_steps, r.max_steps);
  }
  return total;
}

/// The (n, X_n, a_n, b_n) sequence of one trial.
inline std::vector<TraceStep> trace_trial(const WinProbTable& P, const Profile& profile,
                                          const SimConfig& cfg, std::uint64_t trial) {
  detail::validate(P, profile, cfg);
  std::vector<TraceStep> steps;
  auto g = trial_engine(cfg.seed, trial);
  const auto out = detail::run_trial(
      P, profile, cfg.x0, detail::effective_horizon(cfg, P.M()), g,
      [&](std::uint64_t n, int x, int a, int b) { steps.push_back({n, x, a, b}); });
  steps.push_back({out.steps, out.final_state, 0, 0});
  return steps;
}

struct Agreement {
  double exact = 0.0;
  double empirical = 0.0;
  double z = 0.0;
  double truncated_fraction = 0.0;
  bool degenerate = false;  // exact value is 0 or 1
  bool valid = true;        // truncation small enough to compare
  bool pass = false;
  std::string note;
};

inline constexpr double kZThreshold = 4.0;
inline constexpr double kMaxTruncatedFraction = 0.01;

/// z = (empirical - Q(x0)) / sqrt(Q(x0) (1 - Q(x0)) / trials).
inline Agreement compare_exact(const SimResult& result, const std::vector<double>& exact_q,
                               int x0) {
  if (x0 < 0 || static_cast<std::size_t>(x0) >= exact_q.size())
    throw DomainError("compare_exact: x0 outside the value vector");
  Agreement a;
  a.exact = exact_q[static_cast<std::size_t>(x0)];
  a.empirical = result.empirical();
  a.truncated_fraction = result.truncated_fraction();
  if (a.truncated_fraction > kMaxTruncatedFraction) {
    a.valid = false;
    a.pass = false;
    a.note = "truncated fraction above 1%; comparison invalid";
    return a;
  }
  constexpr double kDegenerate = 1e-14;
  if (a.exact <= kDegenerate || a.exact >= 1.0 - kDegenerate) {
    a.degenerate = true;
    const bool expect_win = a.exact >= 0.5;
    a.pass = expect_win ? result.wins_i == result.trials : result.wins_i == 0;
    a.z = a.pass ? 0.0 : std::numeric_limits<double>::infinity();
    a.note = a.pass ? "degenerate value matched exactly" : "degenerate value not matched";
    return a;
  }
  const double sigma = std::sqrt(a.exact * (1.0 - a.exact) / static_cast<double>(result.trials));
  a.z = (a.empirical - a.exact) / sigma;
  a.pass = std::abs(a.z) <= kZThreshold;
  return a;
}

}  // namespace redblack
