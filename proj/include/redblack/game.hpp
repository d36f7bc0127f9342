#pragma once

// Game model: fortunes, bets, the two-variable win probability and the law
// of motion of the two-person red-and-black game.

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "redblack/check_report.hpp"

namespace redblack {

/// Raised when an operation leaves the game's domain: P(0,0), a bet larger
/// than the fortune, indices outside {0,...,M}, or malformed parameters.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class Player { I, II };

inline std::string_view to_string(Player p) { return p == Player::I ? "I" : "II"; }

/// Total money M and the initial fortune of player I; player II holds M - x0.
class GameSpec {
 public:
  GameSpec(int total, int x0) : total_(total), x0_(x0) {
    if (total < 2) throw DomainError("GameSpec: M must be >= 2");
    if (x0 < 1 || x0 > total - 1)
      throw DomainError("GameSpec: x0 must lie in [1, M-1]");
  }
  int M() const { return total_; }
  int x0() const { return x0_; }
  int y0() const { return total_ - x0_; }

 private:
  int total_;
  int x0_;
};

/// Win probability P(a, b) of player I for bets a (player I) and b (player II),
/// stored on the full square {0,...,M}^2. The entry (0,0) is absent; reading
/// it is a DomainError. Border conditions are not enforced here so that
/// arbitrary tables can be loaded and checked; constructors in families.hpp
/// always produce tables that satisfy them.
class WinProbTable {
 public:
  WinProbTable() = default;

  /// Fills every entry except (0,0) from `f(a, b)`.
  template <typename F>
  static WinProbTable from_function(int M, F&& f) {
    WinProbTable t(M);
    for (int a = 0; a <= M; ++a)
      for (int b = 0; b <= M; ++b)
        if (a != 0 || b != 0) t.set(a, b, static_cast<double>(f(a, b)));
    return t;
  }

  /// Rows indexed by a, columns by b; position (0,0) must be empty.
  static WinProbTable from_rows(const std::vector<std::vector<std::optional<double>>>& rows) {
    if (rows.size() < 2) throw DomainError("WinProbTable: need at least 2 rows (M >= 1)");
    const int M = static_cast<int>(rows.size()) - 1;
    WinProbTable t(M);
    for (int a = 0; a <= M; ++a) {
      if (rows[a].size() != rows.size())
        throw DomainError("WinProbTable: row " + std::to_string(a) + " has wrong length");
      for (int b = 0; b <= M; ++b) {
        const auto& v = rows[a][b];
        if (a == 0 && b == 0) {
          if (v.has_value()) throw DomainError("WinProbTable: entry (0,0) must be absent");
          continue;
        }
        if (!v.has_value())
          throw DomainError("WinProbTable: entry (" + std::to_string(a) + "," +
                            std::to_string(b) + ") is missing");
        t.set(a, b, *v);
      }
    }
    return t;
  }

  int M() const { return total_; }

  static bool is_absent(int a, int b) { return a == 0 && b == 0; }

  bool in_range(int a, int b) const {
    return a >= 0 && b >= 0 && a <= total_ && b <= total_;
  }

  double operator()(int a, int b) const {
    if (!in_range(a, b))
      throw DomainError("WinProbTable: (" + std::to_string(a) + "," + std::to_string(b) +
                        ") outside {0,...," + std::to_string(total_) + "}^2");
    if (is_absent(a, b)) throw DomainError("WinProbTable: P(0,0) is undefined");
    return values_[index(a, b)];
  }

  std::optional<double> try_at(int a, int b) const {
    if (!in_range(a, b) || is_absent(a, b)) return std::nullopt;
    return values_[index(a, b)];
  }

  /// Copy with one entry replaced.
  WinProbTable with_entry(int a, int b, double v) const {
    if (!in_range(a, b) || is_absent(a, b))
      throw DomainError("WinProbTable::with_entry: invalid index");
    WinProbTable t = *this;
    t.set(a, b, v);
    return t;
  }

  friend bool operator==(const WinProbTable& l, const WinProbTable& r) {
    if (l.total_ != r.total_) return false;
    for (std::size_t i = 1; i < l.values_.size(); ++i)
      if (l.values_[i] != r.values_[i]) return false;
    return true;
  }

 private:
  explicit WinProbTable(int M)
      : total_(M),
        values_(static_cast<std::size_t>(M + 1) * static_cast<std::size_t>(M + 1),
                std::numeric_limits<double>::quiet_NaN()) {
    if (M < 1) throw DomainError("WinProbTable: M must be >= 1");
  }

  std::size_t index(int a, int b) const {
    return static_cast<std::size_t>(a) * static_cast<std::size_t>(total_ + 1) +
           static_cast<std::size_t>(b);
  }

  void set(int a, int b, double v) {
    if (!(v >= 0.0 && v <= 1.0))
      throw DomainError("WinProbTable: entry (" + std::to_string(a) + "," + std::to_string(b) +
                        ") = " + std::to_string(v) + " is outside [0,1]");
    values_[index(a, b)] = v;
  }

  int total_ = 0;
  std::vector<double> values_;
};

/// phi(x) = P(x, 1): the stage win probability of a player betting x against
/// a unit bet.
class PhiVector {
 public:
  PhiVector() = default;
  explicit PhiVector(std::vector<double> values) : values_(std::move(values)) {
    if (values_.size() < 2) throw DomainError("PhiVector: need values on {0,...,M}, M >= 1");
  }
  int M() const { return static_cast<int>(values_.size()) - 1; }
  double operator[](int x) const { return values_[static_cast<std::size_t>(x)]; }
  double at(int x) const {
    if (x < 0 || x > M()) throw DomainError("PhiVector: index out of range");
    return values_[static_cast<std::size_t>(x)];
  }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> values_;
};

/// A bet for each of the owner's own fortunes t in {0,...,M}. Interior bets
/// lie in {1,...,t}; at t = 0 and t = M the bet is 0.
class StationaryStrategy {
 public:
  StationaryStrategy() = default;

  StationaryStrategy(Player owner, std::vector<int> bets)
      : owner_(owner), bets_(std::move(bets)) {
    const int M = static_cast<int>(bets_.size()) - 1;
    if (M < 2) throw DomainError("StationaryStrategy: M must be >= 2");
    if (bets_.front() != 0 || bets_.back() != 0)
      throw DomainError("StationaryStrategy: bets at fortunes 0 and M must be 0");
    for (int t = 1; t < M; ++t) {
      const int b = bets_[static_cast<std::size_t>(t)];
      if (b < 1 || b > t)
        throw DomainError("StationaryStrategy: bet " + std::to_string(b) + " at fortune " +
                          std::to_string(t) + " outside {1,...," + std::to_string(t) + "}");
    }
  }

  static StationaryStrategy timid(Player owner, int M) {
    std::vector<int> b(static_cast<std::size_t>(M + 1), 1);
    b.front() = 0;
    b.back() = 0;
    return {owner, std::move(b)};
  }

  static StationaryStrategy bold(Player owner, int M) {
    std::vector<int> b(static_cast<std::size_t>(M + 1));
    for (int t = 1; t < M; ++t) b[static_cast<std::size_t>(t)] = t;
    return {owner, std::move(b)};
  }

  Player owner() const { return owner_; }
  int M() const { return static_cast<int>(bets_.size()) - 1; }
  int bet(int own_fortune) const { return bets_.at(static_cast<std::size_t>(own_fortune)); }
  const std::vector<int>& bets() const { return bets_; }

  bool is_timid() const { return *this == timid(owner_, M()); }
  bool is_bold() const { return *this == bold(owner_, M()); }

  friend bool operator==(const StationaryStrategy&, const StationaryStrategy&) = default;

 private:
  Player owner_ = Player::I;
  std::vector<int> bets_;
};

/// A stationary profile. The game state is player I's fortune x; player II
/// then holds M - x and bets sigma_ii.bet(M - x).
struct Profile {
  StationaryStrategy sigma_i;
  StationaryStrategy sigma_ii;

  Profile(StationaryStrategy i, StationaryStrategy ii)
      : sigma_i(std::move(i)), sigma_ii(std::move(ii)) {
    if (sigma_i.owner() != Player::I || sigma_ii.owner() != Player::II)
      throw DomainError("Profile: owner tags must be (I, II)");
    if (sigma_i.M() != sigma_ii.M()) throw DomainError("Profile: strategies disagree on M");
  }

  int M() const { return sigma_i.M(); }
  int bet_i(int x) const { return sigma_i.bet(x); }
  int bet_ii(int x) const { return sigma_ii.bet(M() - x); }

  static Profile bold_timid(int M) {
    return {StationaryStrategy::bold(Player::I, M), StationaryStrategy::timid(Player::II, M)};
  }
  static Profile timid_timid(int M) {
    return {StationaryStrategy::timid(Player::I, M), StationaryStrategy::timid(Player::II, M)};
  }
  static Profile bold_bold(int M) {
    return {StationaryStrategy::bold(Player::I, M), StationaryStrategy::bold(Player::II, M)};
  }

  friend bool operator==(const Profile&, const Profile&) = default;
};

/// One stage of the game from player I's fortune x.
struct StepDistribution {
  int up_state = 0;
  double up_prob = 0.0;
  int down_state = 0;
  double down_prob = 1.0;
};

/// Law of motion: x + b with probability P(a, b), x - a otherwise.
/// Fortunes 0 and M are absorbing.
inline StepDistribution step_distribution(int x, int a, int b, const WinProbTable& P) {
  const int M = P.M();
  if (x < 0 || x > M) throw DomainError("step_distribution: fortune outside {0,...,M}");
  if (x == 0 || x == M) return {x, 1.0, x, 0.0};
  if (a < 0 || a > x) throw DomainError("step_distribution: bet of player I exceeds fortune");
  if (b < 0 || b > M - x)
    throw DomainError("step_distribution: bet of player II exceeds fortune");
  const double p = P(a, b);  // throws on (0,0)
  return {x + b, p, x - a, 1.0 - p};
}

/// Border conditions P(a,0) = 1 and P(0,b) = 0 for a, b in {1,...,M}.
inline CheckReport check_border(const WinProbTable& P, const Tolerances& tol = {}) {
  CheckReport r("border", tol.cmp);
  const int M = P.M();
  // Lexicographic order over (a, b).
  for (int b = 1; b <= M; ++b) {
    const double v = P(0, b);
    r.compare("P(0,b)=0", {0, b}, std::abs(v), 0.0);
  }
  for (int a = 1; a <= M; ++a) {
    const double v = P(a, 0);
    r.compare("P(a,0)=1", {a, 0}, std::abs(v - 1.0), 0.0);
  }
  return r;
}

enum class Fairness { subfair, superfair, fair, neither };

inline std::string_view to_string(Fairness f) {
  switch (f) {
    case Fairness::subfair: return "subfair";
    case Fairness::superfair: return "superfair";
    case Fairness::fair: return "fair";
    case Fairness::neither: return "neither";
  }
  return "neither";
}

/// `subfair` holds the violations of P(a,b) <= a/(a+b); `superfair` those of
/// the reverse inequality. Pairs with a + b > M never occur in play and are
/// counted as unreachable rather than checked.
struct FairnessReport {
  Fairness classification = Fairness::neither;
  CheckReport subfair;
  CheckReport superfair;
};

inline FairnessReport check_fairness(const WinProbTable& P, const Tolerances& tol = {}) {
  FairnessReport out{Fairness::neither, CheckReport("subfair", tol.cmp),
                     CheckReport("superfair", tol.cmp)};
  const int M = P.M();
  for (int a = 0; a <= M; ++a) {
    for (int b = 0; b <= M; ++b) {
      if (a + b == 0) continue;
      if (a + b > M) {
        out.subfair.add_unreachable();
        out.superfair.add_unreachable();
        continue;
      }
      const double p = P(a, b);
      const double fair = static_cast<double>(a) / static_cast<double>(a + b);
      out.subfair.compare("P<=a/(a+b)", {a, b}, p, fair);
      out.superfair.compare("P>=a/(a+b)", {a, b}, fair, p);
    }
  }
  const bool sub = out.subfair.pass();
  const bool super = out.superfair.pass();
  out.classification = sub && super ? Fairness::fair
                       : sub        ? Fairness::subfair
                       : super      ? Fairness::superfair
                                    : Fairness::neither;
  return out;
}

inline PhiVector phi_of(const WinProbTable& P) {
  std::vector<double> v(static_cast<std::size_t>(P.M() + 1));
  for (int x = 0; x <= P.M(); ++x) v[static_cast<std::size_t>(x)] = P(x, 1);
  return PhiVector(std::move(v));
}

}  // namespace redblack
