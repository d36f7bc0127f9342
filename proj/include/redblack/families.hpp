#pragma once

// Constructors of win probability tables and phi vectors with known
// structure: infima of ratio families f(a)/f(a+b), the exponential family
// phi(x) = 1 - k(x) exp(-c x), closed-form presets, the Sincov change of
// variables F(x, y) = P(x, y - x), and the extension of P to all integers.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "redblack/check_report.hpp"
#include "redblack/game.hpp"

namespace redblack {

/// A function f on {0, 1, ...} with f(0) = 0 and f(t) > 0 for t > 0.
/// Closed forms are defined on all of N0; explicit members only on the
/// prefix they were given.
class FamilyMember {
 public:
  enum class Kind { power, exp, explicit_values, unit };

  /// f(t) = t^p.
  static FamilyMember power(double p) {
    if (!(p > 0.0) || !std::isfinite(p)) throw DomainError("FamilyMember::power: p must be > 0");
    return FamilyMember(Kind::power, p, {});
  }
  /// f(t) = exp(m t) for t > 0, f(0) = 0.
  static FamilyMember exp(double m) {
    if (!std::isfinite(m)) throw DomainError("FamilyMember::exp: m must be finite");
    return FamilyMember(Kind::exp, m, {});
  }
  /// f(t) = values[t].
  static FamilyMember explicit_values(std::vector<double> values) {
    if (values.empty() || values.front() != 0.0)
      throw DomainError("FamilyMember::explicit_values: f(0) must be 0");
    for (std::size_t t = 1; t < values.size(); ++t)
      if (!(values[t] > 0.0) || !std::isfinite(values[t]))
        throw DomainError("FamilyMember::explicit_values: f(" + std::to_string(t) +
                          ") must be positive");
    return FamilyMember(Kind::explicit_values, 0.0, std::move(values));
  }
  /// f(0) = 0, f(t) = 1 for t > 0.
  static FamilyMember unit() { return FamilyMember(Kind::unit, 0.0, {}); }

  Kind kind() const { return kind_; }
  double parameter() const { return param_; }
  const std::vector<double>& values() const { return values_; }

  bool defined_at(int t) const {
    if (t < 0) return false;
    return kind_ != Kind::explicit_values || static_cast<std::size_t>(t) < values_.size();
  }

  std::optional<double> value(int t) const {
    if (!defined_at(t)) return std::nullopt;
    if (t == 0) return 0.0;
    switch (kind_) {
      case Kind::power: return std::pow(static_cast<double>(t), param_);
      case Kind::exp: return std::exp(param_ * t);
      case Kind::explicit_values: return values_[static_cast<std::size_t>(t)];
      case Kind::unit: return 1.0;
    }
    return std::nullopt;
  }

  /// f(a) / f(a + b) for a > 0, b >= 0, evaluated without forming large
  /// intermediate values for the closed forms.
  std::optional<double> ratio(int a, int b) const {
    if (!defined_at(a + b)) return std::nullopt;
    switch (kind_) {
      case Kind::power:
        return std::pow(static_cast<double>(a) / static_cast<double>(a + b), param_);
      case Kind::exp: return std::exp(-param_ * b);
      case Kind::explicit_values:
        return values_[static_cast<std::size_t>(a)] / values_[static_cast<std::size_t>(a + b)];
      case Kind::unit: return 1.0;
    }
    return std::nullopt;
  }

 private:
  FamilyMember(Kind k, double param, std::vector<double> values)
      : kind_(k), param_(param), values_(std::move(values)) {}

  Kind kind_;
  double param_;
  std::vector<double> values_;
};

/// P(a, b) = (a / (a + b))^p.
inline WinProbTable power_family(double p, int M) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw DomainError("power_family: p must be >= 1");
  if (M < 2) throw DomainError("power_family: M must be >= 2");
  return WinProbTable::from_function(M, [p](int a, int b) {
    return std::pow(static_cast<double>(a) / static_cast<double>(a + b), p);
  });
}

/// P(a, b) = min over the family and the unit step of f(a) / f(a + b).
///
/// Entries with a + b > M are never reached in play. They are filled from the
/// same formula when every member is defined at a + b, and with 1 otherwise;
/// both choices keep the product inequality P(x,a) P(x+a,b) <= P(x,a+b).
inline WinProbTable family_infimum(const std::vector<FamilyMember>& family, int M) {
  if (family.empty()) throw DomainError("family_infimum: family must be nonempty");
  if (M < 2) throw DomainError("family_infimum: M must be >= 2");
  for (const auto& f : family)
    for (int t = 1; t <= M; ++t)
      if (!f.defined_at(t))
        throw DomainError("family_infimum: explicit member shorter than {0,...,M}");

  return WinProbTable::from_function(M, [&](int a, int b) -> double {
    if (a == 0) return 0.0;
    if (b == 0) return 1.0;
    double best = 1.0;
    for (const auto& f : family) {
      const auto r = f.ratio(a, b);
      if (!r) return 1.0;  // a + b > M and f unknown there
      best = std::min(best, *r);
    }
    return best;
  });
}

/// min{ a/(a+b), exp(-m b) }: the infimum of the linear map and exp(m t).
inline WinProbTable min_exp_family(double m, int M) {
  if (!(m > 0.0)) throw DomainError("min_exp_family: m must be > 0");
  return family_infimum({FamilyMember::power(1.0), FamilyMember::exp(m)}, M);
}

/// P(a, b) = 1 - exp(b - a) for 1 <= b <= a, 0 for b > a, 1 for b = 0 < a.
inline WinProbTable preset_exponential_el(int M) {
  if (M < 2) throw DomainError("preset_exponential_el: M must be >= 2");
  return WinProbTable::from_function(M, [](int a, int b) -> double {
    if (b == 0) return 1.0;
    if (b > a) return 0.0;
    return 1.0 - std::exp(static_cast<double>(b - a));
  });
}

/// Parameters of phi(x) = 1 - k(x) exp(-c x). `k` is sampled on {0,...,n}.
struct ExpFamilyParams {
  std::vector<double> k;
  double c = 0.0;

  template <typename F>
  static ExpFamilyParams sampled(F&& k_of_t, int last, double c) {
    ExpFamilyParams p;
    p.c = c;
    p.k.reserve(static_cast<std::size_t>(last + 1));
    for (int t = 0; t <= last; ++t) p.k.push_back(static_cast<double>(k_of_t(t)));
    return p;
  }
};

namespace k_presets {
inline double one(int) { return 1.0; }
inline double gaussian(int t) { return std::exp(-static_cast<double>(t) * t); }
inline double root_exp(int t) { return std::exp(-std::sqrt(static_cast<double>(t))); }
}  // namespace k_presets

/// phi(x) = 1 - k(x) exp(-c x) for x in {1,...,M}; phi(0) = 0.
inline PhiVector phi_from_k(const ExpFamilyParams& params, int M) {
  if (M < 1) throw DomainError("phi_from_k: M must be >= 1");
  if (!(params.c >= 0.0) || !std::isfinite(params.c))
    throw DomainError("phi_from_k: c must be >= 0");
  if (params.k.size() < static_cast<std::size_t>(M + 1))
    throw DomainError("phi_from_k: k must be given on {0,...,M}");
  for (int t = 0; t <= M; ++t) {
    const double v = params.k[static_cast<std::size_t>(t)];
    if (!(v >= 0.0 && v <= 1.0)) throw DomainError("phi_from_k: k out of [0,1]");
    if (t > 0 && v > params.k[static_cast<std::size_t>(t - 1)])
      throw DomainError("phi_from_k: k increases at t = " + std::to_string(t));
  }
  std::vector<double> phi(static_cast<std::size_t>(M + 1), 0.0);
  for (int x = 1; x <= M; ++x)
    phi[static_cast<std::size_t>(x)] =
        1.0 - params.k[static_cast<std::size_t>(x)] * std::exp(-params.c * x);
  return PhiVector(std::move(phi));
}

/// k(t + y) <= k(t) k(y) for t, y >= 0 with t + y <= M - 1.
inline CheckReport check_submultiplicative_k(const std::vector<double>& k, int M,
                                             const Tolerances& tol = {}) {
  if (M < 1 || k.size() < static_cast<std::size_t>(M))
    throw DomainError("check_submultiplicative_k: k must be given on {0,...,M-1}");
  CheckReport r("submultiplicative", tol.cmp);
  for (int t = 0; t <= M - 1; ++t)
    for (int y = 0; t + y <= M - 1; ++y)
      r.compare("k(t+y)<=k(t)k(y)", {t, y}, k[static_cast<std::size_t>(t + y)],
                k[static_cast<std::size_t>(t)] * k[static_cast<std::size_t>(y)]);
  return r;
}

/// P extended to Z x Z: 0 if either argument is negative, 1 if the sum
/// exceeds M, P elsewhere. (0, 0) stays undefined.
class ExtendedTable {
 public:
  explicit ExtendedTable(WinProbTable P) : table_(std::move(P)) {}

  int M() const { return table_.M(); }
  const WinProbTable& base() const { return table_; }

  std::optional<double> operator()(long x, long y) const {
    if (x < 0 || y < 0) return 0.0;
    if (x + y > table_.M()) return 1.0;
    return table_.try_at(static_cast<int>(x), static_cast<int>(y));
  }

 private:
  WinProbTable table_;
};

inline ExtendedTable extend_table(const WinProbTable& P) { return ExtendedTable(P); }

/// F on {0,...,M}^2 with possibly undefined entries.
class SincovTable {
 public:
  SincovTable() = default;

  template <typename F>
  static SincovTable from_function(int M, F&& f) {
    SincovTable s;
    s.total_ = M;
    s.values_.resize(static_cast<std::size_t>(M + 1) * static_cast<std::size_t>(M + 1));
    for (int x = 0; x <= M; ++x)
      for (int y = 0; y <= M; ++y) {
        std::optional<double> v = f(x, y);
        s.values_[s.index(x, y)] = v;
      }
    return s;
  }

  int M() const { return total_; }

  std::optional<double> operator()(int x, int y) const {
    if (x < 0 || y < 0 || x > total_ || y > total_) return std::nullopt;
    return values_[index(x, y)];
  }

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(x) * static_cast<std::size_t>(total_ + 1) +
           static_cast<std::size_t>(y);
  }

  int total_ = 0;
  std::vector<std::optional<double>> values_;
};

/// F(x, y) = P(x, y - x), defined for x <= y except at (0, 0).
inline SincovTable sincov_of(const WinProbTable& P) {
  return SincovTable::from_function(P.M(), [&P](int x, int y) -> std::optional<double> {
    if (y < x) return std::nullopt;
    return P.try_at(x, y - x);
  });
}

/// P(a, b) = F(a, a + b). Entries with a + b > M lie outside F's domain and
/// take the extension value 1.
inline WinProbTable table_of_sincov(const SincovTable& F) {
  return WinProbTable::from_function(F.M(), [&F](int a, int b) -> double {
    if (a + b > F.M()) return 1.0;
    const auto v = F(a, a + b);
    if (!v)
      throw DomainError("table_of_sincov: F(" + std::to_string(a) + "," +
                        std::to_string(a + b) + ") is undefined");
    return *v;
  });
}

}  // namespace redblack
