#pragma once

// Exact evaluation of stationary profiles, best responses, excessivity
// certificates and Nash verification by enumeration.
//
// All value vectors are indexed by player I's fortune x in {0,...,M}.
// Hitting probabilities are the minimal nonnegative solution of the
// first-step equations; a profile may trap the chain in a cycle that never
// reaches 0 or M, in which case both players' values can be 0.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "redblack/check_report.hpp"
#include "redblack/game.hpp"
#include "redblack/parallel.hpp"

namespace redblack {

struct SolverOptions {
  double eps_vi = 1e-13;             // sup-norm stopping threshold
  std::size_t max_sweeps = 1000000;  // iteration cap
  double tie = 1e-12;                // argmax tie window
  double cmp = 1e-12;                // strict-improvement margin for deviations
  int max_enum_M = 8;                // enumeration cap
  unsigned jobs = 1;
  bool force_iteration = false;      // skip the linear-solve fast path
};

/// Q(x): player I's probability of reaching M; T(x): player II's probability
/// of reaching 0. T = 1 - Q whenever absorption is certain.
struct ValueVector {
  std::vector<double> q;
  std::vector<double> t;

  int M() const { return static_cast<int>(q.size()) - 1; }
};

/// Q(M) = 1, Q(x) = phi(x) Q(x + 1), i.e. Q(x) = prod_{i=x}^{M-1} phi(i).
inline ValueVector q_bold_timid(const PhiVector& phi) {
  if (phi[0] != 0.0) throw DomainError("q_bold_timid: phi(0) must be 0");
  const int M = phi.M();
  ValueVector v;
  v.q.assign(static_cast<std::size_t>(M + 1), 0.0);
  v.q[static_cast<std::size_t>(M)] = 1.0;
  for (int x = M - 1; x >= 0; --x)
    v.q[static_cast<std::size_t>(x)] = phi[x] * v.q[static_cast<std::size_t>(x + 1)];
  v.t.resize(v.q.size());
  for (std::size_t i = 0; i < v.q.size(); ++i) v.t[i] = 1.0 - v.q[i];
  return v;
}

/// Transition kernel of the chain induced by a profile.
inline std::vector<StepDistribution> profile_kernel(const WinProbTable& P, const Profile& profile) {
  const int M = P.M();
  if (profile.M() != M) throw DomainError("profile and table disagree on M");
  std::vector<StepDistribution> k(static_cast<std::size_t>(M + 1));
  for (int x = 0; x <= M; ++x)
    k[static_cast<std::size_t>(x)] =
        (x == 0 || x == M) ? StepDistribution{x, 1.0, x, 0.0}
                           : step_distribution(x, profile.bet_i(x), profile.bet_ii(x), P);
  return k;
}

/// True when every state reaches {0, M} with positive probability.
inline bool absorption_certain(const std::vector<StepDistribution>& kernel) {
  const int M = static_cast<int>(kernel.size()) - 1;
  std::vector<char> reaches(kernel.size(), 0);
  reaches[0] = reaches[static_cast<std::size_t>(M)] = 1;
  for (bool changed = true; changed;) {
    changed = false;
    for (int x = 1; x < M; ++x) {
      if (reaches[static_cast<std::size_t>(x)]) continue;
      const auto& s = kernel[static_cast<std::size_t>(x)];
      if ((s.up_prob > 0.0 && reaches[static_cast<std::size_t>(s.up_state)]) ||
          (s.down_prob > 0.0 && reaches[static_cast<std::size_t>(s.down_state)])) {
        reaches[static_cast<std::size_t>(x)] = 1;
        changed = true;
      }
    }
  }
  return std::all_of(reaches.begin(), reaches.end(), [](char c) { return c != 0; });
}

/// Result of a hitting-probability computation for one target state.
struct HittingSolve {
  std::vector<double> values;
  std::size_t sweeps = 0;
  bool converged = true;
};

/// Monotone iteration from zero towards the minimal fixed point of
/// u(x) = p u(up) + (1 - p) u(down), u(target) = 1, u(other end) = 0.
/// `observe(sweep, values)` is called after every sweep.
template <typename Observer>
HittingSolve iterate_hitting(const std::vector<StepDistribution>& kernel, int target,
                             const SolverOptions& opts, Observer&& observe) {
  const int M = static_cast<int>(kernel.size()) - 1;
  HittingSolve out;
  std::vector<double> u(kernel.size(), 0.0), next(kernel.size(), 0.0);
  u[static_cast<std::size_t>(target)] = next[static_cast<std::size_t>(target)] = 1.0;
  out.converged = false;
  while (out.sweeps < opts.max_sweeps) {
    double change = 0.0;
    for (int x = 1; x < M; ++x) {
      const auto& s = kernel[static_cast<std::size_t>(x)];
      const double v = s.up_prob * u[static_cast<std::size_t>(s.up_state)] +
                       s.down_prob * u[static_cast<std::size_t>(s.down_state)];
      change = std::max(change, std::abs(v - u[static_cast<std::size_t>(x)]));
      next[static_cast<std::size_t>(x)] = v;
    }
    ++out.sweeps;
    u.swap(next);
    observe(out.sweeps, static_cast<const std::vector<double>&>(u));
    if (change < opts.eps_vi) {
      out.converged = true;
      break;
    }
  }
  out.values = std::move(u);
  return out;
}

/// Solves (I - K) u = e_target on the interior by Gaussian elimination.
/// Only valid when absorption is certain, which makes the system regular.
inline std::vector<double> solve_hitting_linear(const std::vector<StepDistribution>& kernel,
                                                int target) {
  const int M = static_cast<int>(kernel.size()) - 1;
  const int n = M - 1;
  std::vector<double> u(kernel.size(), 0.0);
  u[static_cast<std::size_t>(target)] = 1.0;
  if (n <= 0) return u;
  // Row-major n x (n + 1) augmented matrix over interior states 1..M-1.
  std::vector<double> A(static_cast<std::size_t>(n) * static_cast<std::size_t>(n + 1), 0.0);
  auto at = [&](int r, int c) -> double& {
    return A[static_cast<std::size_t>(r) * static_cast<std::size_t>(n + 1) +
             static_cast<std::size_t>(c)];
  };
  for (int x = 1; x < M; ++x) {
    const int r = x - 1;
    at(r, r) += 1.0;
    const auto& s = kernel[static_cast<std::size_t>(x)];
    for (auto [state, prob] : {std::pair{s.up_state, s.up_prob}, std::pair{s.down_state, s.down_prob}}) {
      if (prob == 0.0) continue;
      if (state == target)
        at(r, n) += prob;
      else if (state != 0 && state != M)
        at(r, state - 1) -= prob;
    }
  }
  for (int c = 0; c < n; ++c) {
    int pivot = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(at(r, c)) > std::abs(at(pivot, c))) pivot = r;
    if (at(pivot, c) == 0.0) throw DomainError("solve_hitting_linear: singular system");
    if (pivot != c)
      for (int k = c; k <= n; ++k) std::swap(at(c, k), at(pivot, k));
    for (int r = c + 1; r < n; ++r) {
      const double f = at(r, c) / at(c, c);
      if (f == 0.0) continue;
      for (int k = c; k <= n; ++k) at(r, k) -= f * at(c, k);
    }
  }
  for (int r = n - 1; r >= 0; --r) {
    double acc = at(r, n);
    for (int k = r + 1; k < n; ++k) acc -= at(r, k) * u[static_cast<std::size_t>(k + 1)];
    u[static_cast<std::size_t>(r + 1)] = std::clamp(acc / at(r, r), 0.0, 1.0);
  }
  return u;
}

/// Absorption probabilities of the chain induced by `profile`.
struct HittingValues {
  std::vector<double> win_i;   // absorbed at M
  std::vector<double> win_ii;  // absorbed at 0
  bool absorbing = true;       // every state reaches {0, M} with positive probability
  bool converged = true;
  std::size_t sweeps = 0;
};

inline HittingValues hitting_values(const WinProbTable& P, const Profile& profile,
                                    const SolverOptions& opts = {}) {
  const auto kernel = profile_kernel(P, profile);
  const int M = P.M();
  HittingValues hv;
  hv.absorbing = absorption_certain(kernel);
  if (hv.absorbing && !opts.force_iteration) {
    hv.win_i = solve_hitting_linear(kernel, M);
    hv.win_ii = solve_hitting_linear(kernel, 0);
    return hv;
  }
  auto ignore = [](std::size_t, const std::vector<double>&) {};
  auto a = iterate_hitting(kernel, M, opts, ignore);
  auto b = iterate_hitting(kernel, 0, opts, ignore);
  hv.win_i = std::move(a.values);
  hv.win_ii = std::move(b.values);
  hv.converged = a.converged && b.converged;
  hv.sweeps = std::max(a.sweeps, b.sweeps);
  return hv;
}

inline const std::vector<double>& values_for(const HittingValues& hv, Player p) {
  return p == Player::I ? hv.win_i : hv.win_ii;
}

namespace detail {

inline Profile with_strategy(const StationaryStrategy& responder,
                             const StationaryStrategy& opponent) {
  return responder.owner() == Player::I ? Profile(responder, opponent)
                                        : Profile(opponent, responder);
}

/// Value of the responder taking `bet` at state x against the opponent.
inline double action_value(const WinProbTable& P, const StationaryStrategy& opponent,
                           Player responder, int x, int bet, const std::vector<double>& v) {
  const int M = P.M();
  const int a = responder == Player::I ? bet : opponent.bet(x);
  const int b = responder == Player::I ? opponent.bet(M - x) : bet;
  const double p = P(a, b);
  return p * v[static_cast<std::size_t>(x + b)] + (1.0 - p) * v[static_cast<std::size_t>(x - a)];
}

/// Responder's own fortune at state x.
inline int own_fortune(Player responder, int M, int x) {
  return responder == Player::I ? x : M - x;
}

}  // namespace detail

struct BestResponse {
  StationaryStrategy strategy;
  std::vector<double> values;          // exact values of `strategy`
  std::vector<double> optimal_values;  // Bellman fixed point
  std::size_t sweeps = 0;
  bool converged = true;
};

/// Optimal stationary reply of `responder` to a fixed opponent strategy.
///
/// Optimal values come from monotone value iteration started at zero, which
/// converges to the minimal fixed point of the Bellman operator. The reply
/// takes the smallest bet within `opts.tie` of the maximum. If that choice
/// strands the chain in a cycle short of the optimum, ties are re-broken
/// towards bets that move closer to the goal.
inline BestResponse best_response(const WinProbTable& P, const StationaryStrategy& opponent,
                                  Player responder, const SolverOptions& opts = {}) {
  const int M = P.M();
  if (opponent.M() != M) throw DomainError("best_response: opponent and table disagree on M");
  if (opponent.owner() == responder)
    throw DomainError("best_response: opponent must belong to the other player");
  const int goal = responder == Player::I ? M : 0;

  BestResponse br;
  std::vector<double> v(static_cast<std::size_t>(M + 1), 0.0), next = v;
  v[static_cast<std::size_t>(goal)] = next[static_cast<std::size_t>(goal)] = 1.0;
  br.converged = false;
  while (br.sweeps < opts.max_sweeps) {
    double change = 0.0;
    for (int x = 1; x < M; ++x) {
      const int own = detail::own_fortune(responder, M, x);
      double best = 0.0;
      for (int bet = 1; bet <= own; ++bet)
        best = std::max(best, detail::action_value(P, opponent, responder, x, bet, v));
      change = std::max(change, std::abs(best - v[static_cast<std::size_t>(x)]));
      next[static_cast<std::size_t>(x)] = best;
    }
    ++br.sweeps;
    v.swap(next);
    if (change < opts.eps_vi) {
      br.converged = true;
      break;
    }
  }
  br.optimal_values = v;

  auto tied = [&](int x, int bet) {
    return detail::action_value(P, opponent, responder, x, bet, v) >=
           v[static_cast<std::size_t>(x)] - opts.tie;
  };

  std::vector<int> bets(static_cast<std::size_t>(M + 1), 0);
  for (int x = 1; x < M; ++x) {
    const int own = detail::own_fortune(responder, M, x);
    int chosen = 1;
    for (int bet = 1; bet <= own; ++bet)
      if (tied(x, bet)) {
        chosen = bet;
        break;
      }
    bets[static_cast<std::size_t>(own)] = chosen;
  }
  br.strategy = StationaryStrategy(responder, bets);
  br.values = values_for(hitting_values(P, detail::with_strategy(br.strategy, opponent), opts),
                         responder);

  const bool short_of_optimum = [&] {
    for (int x = 0; x <= M; ++x)
      if (br.values[static_cast<std::size_t>(x)] < v[static_cast<std::size_t>(x)] - 1e-9)
        return true;
    return false;
  }();
  if (!short_of_optimum) return br;

  // Attractor construction over tied actions: a state joins layer L + 1 when
  // some tied bet reaches a layer <= L state with positive probability.
  constexpr int kUnranked = std::numeric_limits<int>::max();
  std::vector<int> layer(static_cast<std::size_t>(M + 1), kUnranked);
  layer[static_cast<std::size_t>(goal)] = 0;
  for (int round = 1; round <= M; ++round) {
    std::vector<int> snapshot = layer;
    for (int x = 1; x < M; ++x) {
      if (snapshot[static_cast<std::size_t>(x)] != kUnranked) continue;
      if (v[static_cast<std::size_t>(x)] <= opts.tie) continue;
      const int own = detail::own_fortune(responder, M, x);
      for (int bet = 1; bet <= own; ++bet) {
        if (!tied(x, bet)) continue;
        const int a = responder == Player::I ? bet : opponent.bet(x);
        const int b = responder == Player::I ? opponent.bet(M - x) : bet;
        const auto s = step_distribution(x, a, b, P);
        const bool progress =
            (s.up_prob > 0.0 && snapshot[static_cast<std::size_t>(s.up_state)] < round) ||
            (s.down_prob > 0.0 && snapshot[static_cast<std::size_t>(s.down_state)] < round);
        if (progress) {
          layer[static_cast<std::size_t>(x)] = round;
          bets[static_cast<std::size_t>(own)] = bet;
          break;
        }
      }
    }
  }
  br.strategy = StationaryStrategy(responder, bets);
  br.values = values_for(hitting_values(P, detail::with_strategy(br.strategy, opponent), opts),
                         responder);
  return br;
}

/// Number of stationary strategies for one player: (M - 1)!.
inline std::size_t strategy_count(int M) {
  std::size_t n = 1;
  for (int t = 2; t <= M - 1; ++t) n *= static_cast<std::size_t>(t);
  return n;
}

/// The index-th strategy in lexicographic order of (bet(1), ..., bet(M-1)).
inline StationaryStrategy strategy_at(Player owner, int M, std::size_t index) {
  std::vector<int> bets(static_cast<std::size_t>(M + 1), 0);
  for (int t = M - 1; t >= 1; --t) {
    bets[static_cast<std::size_t>(t)] = static_cast<int>(index % static_cast<std::size_t>(t)) + 1;
    index /= static_cast<std::size_t>(t);
  }
  return {owner, std::move(bets)};
}

inline std::size_t strategy_index(const StationaryStrategy& s) {
  std::size_t index = 0;
  for (int t = 1; t < s.M(); ++t)
    index = index * static_cast<std::size_t>(t) + static_cast<std::size_t>(s.bet(t) - 1);
  return index;
}

class EnumerationCapExceeded : public DomainError {
 public:
  using DomainError::DomainError;
};

inline void require_enumerable(int M, const SolverOptions& opts) {
  if (M > opts.max_enum_M)
    throw EnumerationCapExceeded("enumeration cap exceeded: M = " + std::to_string(M) +
                                 " > " + std::to_string(opts.max_enum_M));
}

struct EnumeratedBestResponse {
  Player responder = Player::I;
  int M = 0;
  std::vector<double> best_values;               // state-wise maximum
  std::vector<std::vector<std::size_t>> argmax;  // per state, maximizing strategy indices
  std::size_t strategy_count = 0;

  StationaryStrategy strategy(std::size_t index) const { return strategy_at(responder, M, index); }
  bool is_maximizer(int x, const StationaryStrategy& s) const {
    const auto& am = argmax.at(static_cast<std::size_t>(x));
    return std::binary_search(am.begin(), am.end(), strategy_index(s));
  }
};

/// Evaluates every stationary strategy of `responder` against `opponent`.
inline EnumeratedBestResponse enumerate_best_response(const WinProbTable& P,
                                                      const StationaryStrategy& opponent,
                                                      Player responder,
                                                      const SolverOptions& opts = {}) {
  const int M = P.M();
  require_enumerable(M, opts);
  if (opponent.owner() == responder)
    throw DomainError("enumerate_best_response: opponent must belong to the other player");
  const std::size_t n = strategy_count(M);
  std::vector<std::vector<double>> values(n);
  parallel_for(n, opts.jobs, [&](std::size_t i) {
    const auto s = strategy_at(responder, M, i);
    values[i] = values_for(hitting_values(P, detail::with_strategy(s, opponent), opts), responder);
  });
  EnumeratedBestResponse out;
  out.responder = responder;
  out.M = M;
  out.strategy_count = n;
  out.best_values.assign(static_cast<std::size_t>(M + 1), 0.0);
  out.argmax.resize(static_cast<std::size_t>(M + 1));
  for (const auto& v : values)
    for (std::size_t x = 0; x < v.size(); ++x) out.best_values[x] = std::max(out.best_values[x], v[x]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t x = 0; x < values[i].size(); ++x)
      if (values[i][x] >= out.best_values[x] - opts.tie) out.argmax[x].push_back(i);
  return out;
}

/// `phi(a) Q(x+1) + [1 - phi(a)] Q(x-a) <= Q(x)` for x in {1,...,M-1},
/// a in {0,...,x}: Q is excessive for player I facing a timid opponent.
inline CheckReport check_excessive_exc(const PhiVector& phi, const ValueVector& Q,
                                       const Tolerances& tol = {}) {
  CheckReport r("exc", tol.cmp);
  const int M = phi.M();
  const auto& q = Q.q;
  for (int x = 1; x <= M - 1; ++x)
    for (int a = 0; a <= x; ++a)
      r.compare("exc", {x, a},
                phi[a] * q[static_cast<std::size_t>(x + 1)] +
                    (1.0 - phi[a]) * q[static_cast<std::size_t>(x - a)],
                q[static_cast<std::size_t>(x)]);
  return r;
}

/// Q(x) <= P(x,b) Q(x+b) for x in {0,...,M-1}, b in {1,...,M-x}: 1 - Q is
/// excessive for player II facing a bold opponent.
inline CheckReport check_excessive_star(const WinProbTable& P, const ValueVector& Q,
                                        const Tolerances& tol = {}) {
  CheckReport r("star", tol.cmp);
  const int M = P.M();
  const auto& q = Q.q;
  for (int x = 0; x <= M - 1; ++x)
    for (int b = 1; b <= M - x; ++b) {
      if (WinProbTable::is_absent(x, b)) {
        r.add_skipped();
        continue;
      }
      r.compare("star", {x, b}, q[static_cast<std::size_t>(x)],
                P(x, b) * q[static_cast<std::size_t>(x + b)]);
    }
  return r;
}

enum class CertificateMethod { excessivity, enumeration };

inline std::string_view to_string(CertificateMethod m) {
  return m == CertificateMethod::excessivity ? "excessivity" : "enumeration";
}

/// A unilateral deviation that strictly improves the deviator's value at x0.
struct Deviation {
  Player player = Player::I;
  StationaryStrategy strategy;
  double value = 0.0;
  double margin = 0.0;
  std::vector<int> changed_fortunes;  // own fortunes where the bet differs from the profile
};

struct EquilibriumCertificate {
  EquilibriumCertificate(Profile p, int start) : profile(std::move(p)), x0(start) {}

  Profile profile;
  int x0 = 0;
  double value_i = 0.0;
  double value_ii = 0.0;
  CertificateMethod method = CertificateMethod::enumeration;
  bool equilibrium = false;
  std::optional<Deviation> deviation;
  std::optional<CheckReport> exc;
  std::optional<CheckReport> star;
  std::vector<int> on_path;   // states reachable from x0 under the profile
  std::size_t class_size = 1; // equilibrium profiles sharing this on-path behaviour
};

namespace detail {

inline std::vector<int> changed(const StationaryStrategy& a, const StationaryStrategy& b) {
  std::vector<int> out;
  for (int t = 1; t < a.M(); ++t)
    if (a.bet(t) != b.bet(t)) out.push_back(t);
  return out;
}

/// Best stationary deviation of `player` at x0, if it beats `current` by more than cmp.
inline std::optional<Deviation> find_deviation(const WinProbTable& P, const Profile& profile,
                                               Player player, int x0, double current,
                                               const SolverOptions& opts) {
  const auto& opponent = player == Player::I ? profile.sigma_ii : profile.sigma_i;
  const auto& own = player == Player::I ? profile.sigma_i : profile.sigma_ii;
  const auto en = enumerate_best_response(P, opponent, player, opts);
  const double best = en.best_values[static_cast<std::size_t>(x0)];
  if (!(best > current + opts.cmp)) return std::nullopt;
  Deviation d;
  d.player = player;
  d.strategy = en.strategy(en.argmax[static_cast<std::size_t>(x0)].front());
  d.value = best;
  d.margin = best - current;
  d.changed_fortunes = changed(d.strategy, own);
  return d;
}

}  // namespace detail

/// States reachable from x0 with positive probability under the profile.
inline std::vector<int> reachable_states(const WinProbTable& P, const Profile& profile, int x0) {
  const auto kernel = profile_kernel(P, profile);
  std::vector<char> seen(kernel.size(), 0);
  std::vector<int> stack{x0};
  seen[static_cast<std::size_t>(x0)] = 1;
  while (!stack.empty()) {
    const int x = stack.back();
    stack.pop_back();
    const auto& s = kernel[static_cast<std::size_t>(x)];
    for (auto [state, prob] : {std::pair{s.up_state, s.up_prob}, std::pair{s.down_state, s.down_prob}})
      if (prob > 0.0 && !seen[static_cast<std::size_t>(state)]) {
        seen[static_cast<std::size_t>(state)] = 1;
        stack.push_back(state);
      }
  }
  std::vector<int> out;
  for (int x = 0; x < static_cast<int>(seen.size()); ++x)
    if (seen[static_cast<std::size_t>(x)]) out.push_back(x);
  return out;
}

/// Checks that neither player gains by deviating unilaterally at x0.
///
/// The bold-timid profile is first tried with the excessivity conditions,
/// which cover every strategy. Otherwise, or when they fail, stationary
/// deterministic deviations are enumerated for both players.
inline EquilibriumCertificate verify_nash(const WinProbTable& P, const Profile& profile, int x0,
                                          const SolverOptions& opts = {}) {
  const int M = P.M();
  if (profile.M() != M) throw DomainError("verify_nash: profile and table disagree on M");
  if (x0 < 1 || x0 > M - 1) throw DomainError("verify_nash: x0 must lie in [1, M-1]");

  EquilibriumCertificate cert(profile, x0);
  cert.on_path = reachable_states(P, profile, x0);

  if (profile == Profile::bold_timid(M)) {
    const auto phi = phi_of(P);
    const auto Q = q_bold_timid(phi);
    const Tolerances tol{opts.cmp, opts.cmp};
    cert.exc = check_excessive_exc(phi, Q, tol);
    cert.star = check_excessive_star(P, Q, tol);
    cert.value_i = Q.q[static_cast<std::size_t>(x0)];
    cert.value_ii = Q.t[static_cast<std::size_t>(x0)];
    if (cert.exc->pass() && cert.star->pass()) {
      cert.method = CertificateMethod::excessivity;
      cert.equilibrium = true;
      return cert;
    }
  }

  require_enumerable(M, opts);
  const auto hv = hitting_values(P, profile, opts);
  cert.method = CertificateMethod::enumeration;
  cert.value_i = hv.win_i[static_cast<std::size_t>(x0)];
  cert.value_ii = hv.win_ii[static_cast<std::size_t>(x0)];
  cert.deviation = detail::find_deviation(P, profile, Player::I, x0, cert.value_i, opts);
  if (!cert.deviation)
    cert.deviation = detail::find_deviation(P, profile, Player::II, x0, cert.value_ii, opts);
  cert.equilibrium = !cert.deviation.has_value();
  return cert;
}

/// Every stationary deterministic profile from which neither player has a
/// strictly improving stationary deviation at x0.
///
/// Bets at states the profile never visits from x0 do not affect payoffs, so
/// equilibria are grouped by their on-path behaviour: one certificate per
/// group, carrying the lowest-index member as representative and the group
/// size.
inline std::vector<EquilibriumCertificate> enumerate_equilibria(const WinProbTable& P, int x0,
                                                                const SolverOptions& opts = {}) {
  const int M = P.M();
  require_enumerable(M, opts);
  if (x0 < 1 || x0 > M - 1) throw DomainError("enumerate_equilibria: x0 must lie in [1, M-1]");
  const std::size_t n = strategy_count(M);
  const std::size_t pairs = n * n;

  auto profile_of = [&](std::size_t k) {
    return Profile(strategy_at(Player::I, M, k / n), strategy_at(Player::II, M, k % n));
  };
  auto payoff_at = [&](std::size_t k) {
    const auto hv = hitting_values(P, profile_of(k), opts);
    return std::pair{hv.win_i[static_cast<std::size_t>(x0)], hv.win_ii[static_cast<std::size_t>(x0)]};
  };

  std::vector<std::pair<double, double>> payoff(pairs);
  parallel_for(pairs, opts.jobs, [&](std::size_t k) { payoff[k] = payoff_at(k); });

  // best_i[j]: player I's best value against II's j-th strategy; best_ii[i] likewise.
  std::vector<double> best_i(n, 0.0), best_ii(n, 0.0);
  for (std::size_t k = 0; k < pairs; ++k) {
    best_i[k % n] = std::max(best_i[k % n], payoff[k].first);
    best_ii[k / n] = std::max(best_ii[k / n], payoff[k].second);
  }

  std::vector<EquilibriumCertificate> out;
  for (std::size_t k = 0; k < pairs; ++k) {
    const auto [ui, uii] = payoff[k];
    if (ui < best_i[k % n] - opts.cmp || uii < best_ii[k / n] - opts.cmp) continue;
    Profile prof = profile_of(k);
    auto path = reachable_states(P, prof, x0);
    const auto same_class = [&](const EquilibriumCertificate& c) {
      if (c.on_path != path) return false;
      for (int x : path) {
        if (x == 0 || x == M) continue;
        if (c.profile.bet_i(x) != prof.bet_i(x) || c.profile.bet_ii(x) != prof.bet_ii(x))
          return false;
      }
      return true;
    };
    if (auto it = std::find_if(out.begin(), out.end(), same_class); it != out.end()) {
      ++it->class_size;
      continue;
    }
    EquilibriumCertificate c(std::move(prof), x0);
    c.value_i = ui;
    c.value_ii = uii;
    c.method = CertificateMethod::enumeration;
    c.equilibrium = true;
    c.on_path = std::move(path);
    out.push_back(std::move(c));
  }
  return out;
}

/// True when `profile` bets like the certificate's representative on every
/// interior state the representative visits from x0.
inline bool same_on_path(const EquilibriumCertificate& c, const Profile& profile) {
  const int M = c.profile.M();
  for (int x : c.on_path) {
    if (x == 0 || x == M) continue;
    if (c.profile.bet_i(x) != profile.bet_i(x) || c.profile.bet_ii(x) != profile.bet_ii(x))
      return false;
  }
  return true;
}

}  // namespace redblack
