#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace redblack {

/// Comparison tolerances shared by every checker.
///
/// `cmp` is the slack accepted on a non-strict inequality (`lhs <= rhs + cmp`),
/// `strict` the margin a strict inequality must clear.
struct Tolerances {
  double cmp = 1e-12;
  double strict = 1e-12;
};

/// A single counterexample to a checked inequality.
///
/// `indices` are the quantified variables in the order the check names them,
/// `margin = lhs - rhs` is the amount by which the inequality `lhs <= rhs`
/// is violated. `relation` distinguishes sub-conditions of one check
/// (e.g. the inequality itself versus a monotonicity requirement).
struct Witness {
  std::string relation;
  std::vector<int> indices;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
};

/// Outcome of an inequality suite on a finite grid.
///
/// `violations` is always the exact number of violating index tuples; the
/// witness list is truncated to `witness_cap` entries in lexicographic order.
class CheckReport {
 public:
  static constexpr std::size_t kDefaultWitnessCap = 16;

  CheckReport() = default;
  CheckReport(std::string name, double tolerance,
              std::size_t witness_cap = kDefaultWitnessCap)
      : name_(std::move(name)), tolerance_(tolerance), cap_(witness_cap) {}

  const std::string& name() const { return name_; }
  double tolerance() const { return tolerance_; }
  bool pass() const { return violations_ == 0; }
  std::size_t violations() const { return violations_; }
  std::size_t skipped() const { return skipped_; }
  std::size_t unreachable() const { return unreachable_; }
  std::size_t evaluated() const { return evaluated_; }
  std::size_t witness_cap() const { return cap_; }
  const std::vector<Witness>& witnesses() const { return witnesses_; }

  /// Records one evaluation of `lhs <= rhs`; returns true when it holds.
  bool compare(std::string_view relation, std::vector<int> indices, double lhs,
               double rhs) {
    ++evaluated_;
    if (lhs <= rhs + tolerance_) return true;
    add_violation(Witness{std::string(relation), std::move(indices), lhs, rhs,
                          lhs - rhs});
    return false;
  }

  /// Records a strict requirement `lhs < rhs` using margin `strict`.
  bool compare_strict(std::string_view relation, std::vector<int> indices,
                      double lhs, double rhs, double strict) {
    ++evaluated_;
    if (rhs - lhs > strict) return true;
    add_violation(Witness{std::string(relation), std::move(indices), lhs, rhs,
                          lhs - rhs});
    return false;
  }

  void add_violation(Witness w) {
    ++violations_;
    if (witnesses_.size() < cap_) witnesses_.push_back(std::move(w));
  }

  void add_skipped(std::size_t n = 1) { skipped_ += n; }
  void add_unreachable(std::size_t n = 1) { unreachable_ += n; }

  /// Folds a report produced over a disjoint index subset into this one.
  /// Merging subsets in lexicographic order reproduces the sequential report.
  void merge(const CheckReport& other) {
    violations_ += other.violations_;
    skipped_ += other.skipped_;
    unreachable_ += other.unreachable_;
    evaluated_ += other.evaluated_;
    for (const auto& w : other.witnesses_) {
      if (witnesses_.size() >= cap_) break;
      witnesses_.push_back(w);
    }
  }

 private:
  std::string name_;
  double tolerance_ = 1e-12;
  std::size_t cap_ = kDefaultWitnessCap;
  std::size_t violations_ = 0;
  std::size_t skipped_ = 0;
  std::size_t unreachable_ = 0;
  std::size_t evaluated_ = 0;
  std::vector<Witness> witnesses_;
};

}  // namespace redblack
