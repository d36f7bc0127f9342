#pragma once

// Pointwise verification of the functional inequalities behind bold and
// timid optimality. Every check walks its index set in lexicographic order
// and reports violations as witnesses.

#include <algorithm>
#include <optional>
#include <vector>

#include "redblack/check_report.hpp"
#include "redblack/families.hpp"
#include "redblack/game.hpp"

namespace redblack {

/// phi(y) - phi(x) <= phi(x - y) (phi(y) - 1) for 0 <= y <= x <= M, plus
/// phi nondecreasing. Monotonicity failures carry relation "nondecreasing".
inline CheckReport check_I1(const PhiVector& phi, const Tolerances& tol = {}) {
  CheckReport r("I1", tol.cmp);
  const int M = phi.M();
  for (int x = 0; x <= M; ++x)
    for (int y = 0; y <= x; ++y)
      r.compare("I1", {x, y}, phi[y] - phi[x], phi[x - y] * (phi[y] - 1.0));
  for (int x = 0; x < M; ++x) r.compare("nondecreasing", {x, x + 1}, phi[x], phi[x + 1]);
  return r;
}

/// [1 - phi(a)] prod_{i=0}^{a} phi(x - i) <= phi(x) - phi(a) for a <= x <= M.
inline CheckReport check_conv(const PhiVector& phi, const Tolerances& tol = {}) {
  CheckReport r("conv", tol.cmp);
  const int M = phi.M();
  for (int x = 0; x <= M; ++x) {
    double prod = 1.0;
    for (int a = 0; a <= x; ++a) {
      prod *= phi[x - a];
      r.compare("conv", {x, a}, (1.0 - phi[a]) * prod, phi[x] - phi[a]);
    }
  }
  return r;
}

/// P(x,a) P(x+a,b) <= P(x,a+b) restricted to x in [x_begin, x_end).
/// Ranges: a in {0,...,M-x}, b in {0,...,M-a}. Triples touching (0,0) are
/// skipped; triples with x + a + b > M are evaluated but counted unreachable.
inline CheckReport check_mult_range(const WinProbTable& P, int x_begin, int x_end,
                                    const Tolerances& tol = {}) {
  CheckReport r("mult", tol.cmp);
  const int M = P.M();
  x_begin = std::max(x_begin, 0);
  x_end = std::min(x_end, M + 1);
  for (int x = x_begin; x < x_end; ++x)
    for (int a = 0; a <= M - x; ++a)
      for (int b = 0; b <= M - a; ++b) {
        const auto l1 = P.try_at(x, a);
        const auto l2 = P.try_at(x + a, b);
        const auto rh = P.try_at(x, a + b);
        if (!l1 || !l2 || !rh) {
          r.add_skipped();
          continue;
        }
        if (x + a + b > M) r.add_unreachable();
        r.compare("mult", {x, a, b}, *l1 * *l2, *rh);
      }
  return r;
}

inline CheckReport check_mult(const WinProbTable& P, const Tolerances& tol = {}) {
  return check_mult_range(P, 0, P.M() + 1, tol);
}

/// The product inequality on triples with x + a + b <= M only: the index set
/// that corresponds to the Sincov form F(x,a) F(a,b) <= F(x,b).
inline CheckReport check_mult_reachable(const WinProbTable& P, const Tolerances& tol = {}) {
  CheckReport r("mult-reachable", tol.cmp);
  const int M = P.M();
  for (int x = 0; x <= M; ++x)
    for (int a = 0; x + a <= M; ++a)
      for (int b = 0; x + a + b <= M; ++b) {
        const auto l1 = P.try_at(x, a);
        const auto l2 = P.try_at(x + a, b);
        const auto rh = P.try_at(x, a + b);
        if (!l1 || !l2 || !rh) {
          r.add_skipped();
          continue;
        }
        r.compare("mult", {x, a, b}, *l1 * *l2, *rh);
      }
  return r;
}

/// The product inequality for the extension on all integer triples in
/// [lo, hi]^3.
inline CheckReport check_mult(const ExtendedTable& P, long lo, long hi,
                              const Tolerances& tol = {}) {
  CheckReport r("mult-extended", tol.cmp);
  for (long x = lo; x <= hi; ++x)
    for (long a = lo; a <= hi; ++a)
      for (long b = lo; b <= hi; ++b) {
        const auto l1 = P(x, a);
        const auto l2 = P(x + a, b);
        const auto rh = P(x, a + b);
        if (!l1 || !l2 || !rh) {
          r.add_skipped();
          continue;
        }
        r.compare("mult", {static_cast<int>(x), static_cast<int>(a), static_cast<int>(b)},
                  *l1 * *l2, *rh);
      }
  return r;
}

/// F(x,a) F(a,b) <= F(x,b) wherever all three entries are defined.
inline CheckReport check_sincov(const SincovTable& F, const Tolerances& tol = {}) {
  CheckReport r("sincov", tol.cmp);
  const int M = F.M();
  for (int x = 0; x <= M; ++x)
    for (int a = 0; a <= M; ++a)
      for (int b = 0; b <= M; ++b) {
        const auto l1 = F(x, a);
        const auto l2 = F(a, b);
        const auto rh = F(x, b);
        if (!l1 || !l2 || !rh) {
          r.add_skipped();
          continue;
        }
        r.compare("sincov", {x, a, b}, *l1 * *l2, *rh);
      }
  return r;
}

/// phi strictly increasing on {0,...,M} and P(1, y) > 0 for y in {1,...,M}.
inline CheckReport check_c1_conditions(const WinProbTable& P, const Tolerances& tol = {}) {
  CheckReport r("c1", tol.cmp);
  const PhiVector phi = phi_of(P);
  for (int x = 0; x < P.M(); ++x)
    r.compare_strict("phi strictly increasing", {x, x + 1}, phi[x], phi[x + 1], tol.strict);
  for (int y = 1; y <= P.M(); ++y)
    r.compare_strict("P(1,y)>0", {1, y}, 0.0, P(1, y), tol.strict);
  return r;
}

}  // namespace redblack
