#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "oracles.hpp"
#include "redblack/equilibrium.hpp"
#include "redblack/families.hpp"

using namespace redblack;
using Catch::Matchers::WithinAbs;

namespace {

oracle::Kernel2 kernel_of(const WinProbTable& P) {
  return [&P](int a, int b) -> long double { return P(a, b); };
}

std::vector<WinProbTable> presets(int M) {
  return {power_family(1.0, M), power_family(2.0, M), power_family(3.0, M),
          min_exp_family(1.0, M), min_exp_family(0.3, M), preset_exponential_el(M)};
}

WinProbTable cycle_table() {
  return power_family(2.0, 4).with_entry(1, 2, 1.0).with_entry(2, 1, 0.0);
}

}  // namespace

TEST_CASE("q_bold_timid", "[equilibrium][values]") {
  const auto v = q_bold_timid(phi_of(power_family(2.0, 3)));
  REQUIRE(v.q.size() == 4);
  CHECK(v.q[0] == 0.0);
  CHECK_THAT(v.q[1], WithinAbs(1.0 / 9.0, 1e-12));
  CHECK_THAT(v.q[2], WithinAbs(4.0 / 9.0, 1e-12));
  CHECK(v.q[3] == 1.0);
  CHECK_THAT(v.t[1], WithinAbs(8.0 / 9.0, 1e-12));
  CHECK_THROWS_AS(q_bold_timid(PhiVector({0.1, 0.5, 0.7})), DomainError);

  for (int M = 2; M <= 12; ++M) {
    const auto fair = q_bold_timid(phi_of(power_family(1.0, M)));
    for (int x = 0; x <= M; ++x) CHECK_THAT(fair.q[x], WithinAbs(double(x) / M, 1e-12));
  }
}

TEST_CASE("bold-timid hitting values equal the product formula", "[equilibrium][values][property]") {
  for (int M = 2; M <= 12; ++M)
    for (const auto& P : presets(M)) {
      const auto hv = hitting_values(P, Profile::bold_timid(M));
      const auto q = oracle::product_q(phi_of(P).values());
      for (int x = 0; x <= M; ++x) {
        CHECK_THAT(hv.win_i[x], WithinAbs(q[x], 1e-10));
        CHECK_THAT(hv.win_i[x] + hv.win_ii[x], WithinAbs(1.0, 1e-10));
      }
    }
}

TEST_CASE("hitting values match the dense oracle for every profile", "[equilibrium][values][property]") {
  for (int M = 2; M <= 5; ++M) {
    const auto all = oracle::all_strategies(M);
    for (const auto& P : {power_family(2.0, M), min_exp_family(1.0, M)})
      for (const auto& bi : all)
        for (const auto& bii : all) {
          const Profile prof{StationaryStrategy(Player::I, bi), StationaryStrategy(Player::II, bii)};
          const auto hv = hitting_values(P, prof);
          REQUIRE(hv.absorbing);
          const auto ui = oracle::absorption(M, kernel_of(P), bi, bii, M);
          const auto uii = oracle::absorption(M, kernel_of(P), bi, bii, 0);
          for (int x = 0; x <= M; ++x) {
            CHECK_THAT(hv.win_i[x], WithinAbs(ui[x], 1e-10));
            CHECK_THAT(hv.win_ii[x], WithinAbs(uii[x], 1e-10));
          }
        }
  }
}

TEST_CASE("linear solve and iteration agree", "[equilibrium][values]") {
  SolverOptions iter;
  iter.force_iteration = true;
  for (int M = 3; M <= 8; ++M)
    for (const auto& prof : {Profile::bold_timid(M), Profile::timid_timid(M), Profile::bold_bold(M)}) {
      const auto P = power_family(2.0, M);
      const auto a = hitting_values(P, prof);
      const auto b = hitting_values(P, prof, iter);
      CHECK(b.converged);
      CHECK(b.sweeps > 0);
      for (int x = 0; x <= M; ++x) CHECK_THAT(a.win_i[x], WithinAbs(b.win_i[x], 1e-10));
    }
}

TEST_CASE("a cycling profile has value zero for both players", "[equilibrium][cycle]") {
  const auto P = cycle_table();
  const Profile prof{StationaryStrategy(Player::I, {0, 1, 1, 2, 0}),
                     StationaryStrategy(Player::II, {0, 1, 1, 2, 0})};
  const auto hv = hitting_values(P, prof);
  CHECK_FALSE(hv.absorbing);
  CHECK(hv.converged);
  CHECK(hv.win_i[1] == 0.0);
  CHECK(hv.win_ii[1] == 0.0);
  CHECK(hv.win_i[3] == 0.0);
  CHECK(hv.win_ii[3] == 0.0);
  CHECK(hv.win_i[1] + hv.win_ii[1] < 1.0);
  CHECK(reachable_states(P, prof, 1) == std::vector<int>{1, 3});

  SECTION("iterates rise monotonically from zero") {
    const auto kernel = profile_kernel(P, prof);
    std::vector<double> last(5, 0.0);
    bool monotone = true;
    const auto solve = iterate_hitting(kernel, 4, SolverOptions{}, [&](std::size_t, const std::vector<double>& u) {
      for (std::size_t x = 0; x < u.size(); ++x) monotone = monotone && u[x] >= last[x];
      last = u;
    });
    CHECK(monotone);
    CHECK(solve.converged);
  }
}

TEST_CASE("strategy enumeration order", "[equilibrium][enumeration]") {
  CHECK(strategy_count(2) == 1);
  CHECK(strategy_count(5) == 24);
  CHECK(strategy_count(8) == 5040);
  for (int M = 2; M <= 6; ++M) {
    const auto all = oracle::all_strategies(M);
    REQUIRE(all.size() == strategy_count(M));
    for (std::size_t i = 0; i < all.size(); ++i) {
      const auto s = strategy_at(Player::I, M, i);
      CHECK(s.bets() == all[i]);
      CHECK(strategy_index(s) == i);
    }
  }
  SolverOptions opts;
  CHECK_THROWS_AS(enumerate_best_response(power_family(2.0, 9), StationaryStrategy::timid(Player::II, 9),
                                          Player::I, opts),
                  EnumerationCapExceeded);
  CHECK_THROWS_AS(enumerate_equilibria(power_family(2.0, 9), 3), EnumerationCapExceeded);
}

TEST_CASE("best_response matches enumeration", "[equilibrium][best-response][property]") {
  for (int M = 2; M <= 6; ++M)
    for (const auto& P : presets(M))
      for (Player responder : {Player::I, Player::II}) {
        const Player other = responder == Player::I ? Player::II : Player::I;
        for (const auto& opp : {StationaryStrategy::bold(other, M), StationaryStrategy::timid(other, M)}) {
          const auto br = best_response(P, opp, responder);
          const auto en = enumerate_best_response(P, opp, responder);
          CHECK(br.converged);
          for (int x = 0; x <= M; ++x) {
            CHECK_THAT(br.values[x], WithinAbs(en.best_values[x], 1e-9));
            CHECK_THAT(br.optimal_values[x], WithinAbs(en.best_values[x], 1e-9));
          }
        }
      }
}

TEST_CASE("best_response breaks ties out of a cycle", "[equilibrium][best-response]") {
  // The smallest tied bets can cycle between x = 1 and x = 3 here.
  const auto P = cycle_table();
  const auto opp = StationaryStrategy(Player::II, {0, 1, 1, 2, 0});
  const auto br = best_response(P, opp, Player::I);
  const auto en = enumerate_best_response(P, opp, Player::I);
  for (int x = 0; x <= 4; ++x) CHECK_THAT(br.values[x], WithinAbs(en.best_values[x], 1e-9));
}

TEST_CASE("verify_nash certificates", "[equilibrium][nash]") {
  SECTION("power tables admit the excessivity certificate") {
    for (int M = 3; M <= 10; ++M) {
      const auto c = verify_nash(power_family(2.0, M), Profile::bold_timid(M), 1);
      CHECK(c.equilibrium);
      CHECK(c.method == CertificateMethod::excessivity);
      REQUIRE(c.exc.has_value());
      REQUIRE(c.star.has_value());
      CHECK(c.exc->pass());
      CHECK(c.star->pass());
    }
  }
  SECTION("min-exp m=1 refutes bold-timid at x0 = 3") {
    const auto c = verify_nash(min_exp_family(1.0, 4), Profile::bold_timid(4), 3);
    CHECK_FALSE(c.equilibrium);
    CHECK(c.method == CertificateMethod::enumeration);
    REQUIRE(c.deviation.has_value());
    CHECK(c.deviation->player == Player::I);
    CHECK(c.deviation->strategy.bet(3) == 1);
    CHECK(c.deviation->margin > 0.0);
    CHECK(std::find(c.deviation->changed_fortunes.begin(), c.deviation->changed_fortunes.end(), 3) !=
          c.deviation->changed_fortunes.end());
  }
  SECTION("timid-timid is not an equilibrium for p = 2") {
    const auto c = verify_nash(power_family(2.0, 4), Profile::timid_timid(4), 2);
    CHECK_FALSE(c.equilibrium);
    CHECK(c.deviation.has_value());
  }
  SECTION("x0 must be interior") {
    CHECK_THROWS_AS(verify_nash(power_family(2.0, 4), Profile::bold_timid(4), 0), DomainError);
  }
}

TEST_CASE("equilibria of the power table", "[equilibrium][nash][enumeration]") {
  for (int M = 3; M <= 5; ++M)
    for (int x0 = 1; x0 < M; ++x0) {
      const auto P = power_family(2.0, M);
      const auto eq = enumerate_equilibria(P, x0);
      REQUIRE_FALSE(eq.empty());
      const auto bt = Profile::bold_timid(M);
      const auto q = q_bold_timid(phi_of(P));
      bool has_bt = false;
      for (const auto& c : eq) {
        has_bt = has_bt || same_on_path(c, bt);
        for (int x : c.on_path)
          if (x != 0 && x != M) CHECK(c.profile.bet_i(x) == x);
        CHECK_THAT(c.value_i, WithinAbs(q.q[x0], 1e-10));
      }
      CHECK(has_bt);
    }
}

TEST_CASE("equilibria of the el table", "[equilibrium][nash][enumeration]") {
  const auto eq = enumerate_equilibria(preset_exponential_el(4), 1);
  bool found = false;
  for (const auto& c : eq)
    if (same_on_path(c, Profile::bold_bold(4))) {
      found = true;
      CHECK_THAT(c.value_ii, WithinAbs(1.0, 1e-12));
    }
  CHECK(found);
}

TEST_CASE("parallel enumeration matches sequential", "[equilibrium][enumeration]") {
  SolverOptions par;
  par.jobs = 4;
  const auto P = min_exp_family(1.0, 5);
  const auto a = enumerate_equilibria(P, 2);
  const auto b = enumerate_equilibria(P, 2, par);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].profile == b[i].profile);
    CHECK(a[i].class_size == b[i].class_size);
    CHECK(a[i].value_i == b[i].value_i);
  }
}
