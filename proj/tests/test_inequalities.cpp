#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "redblack/equilibrium.hpp"
#include "redblack/families.hpp"
#include "redblack/inequalities.hpp"

using namespace redblack;
using Catch::Matchers::WithinAbs;

namespace {

bool has_witness(const CheckReport& r, const std::vector<int>& idx) {
  for (const auto& w : r.witnesses())
    if (w.indices == idx) return true;
  return false;
}

std::vector<PhiVector> phi_presets(int M) {
  std::vector<PhiVector> out;
  for (double p : {1.0, 1.5, 2.0, 3.0}) out.push_back(phi_of(power_family(p, M)));
  for (double c : {0.5, 1.0}) out.push_back(phi_from_k(ExpFamilyParams::sampled(k_presets::one, M, c), M));
  out.push_back(phi_from_k(ExpFamilyParams::sampled(k_presets::gaussian, M, 0.0), M));
  return out;
}

}  // namespace

TEST_CASE("check_I1 on the min-exp table", "[inequalities][I1]") {
  const auto phi = phi_of(min_exp_family(1.0, 4));
  const auto r = check_I1(phi);
  REQUIRE_FALSE(r.pass());
  const auto& w = r.witnesses().front();
  CHECK(w.relation == "I1");
  CHECK(w.indices == std::vector<int>{2, 1});
  CHECK_THAT(w.margin, WithinAbs(std::exp(-1.0) * (1.0 - std::exp(-1.0)), 1e-12));  // ~0.2325
}

TEST_CASE("check_I1 reports monotonicity failures", "[inequalities][I1]") {
  const auto r = check_I1(PhiVector({0.0, 0.6, 0.5, 0.9}));
  REQUIRE_FALSE(r.pass());
  CHECK(has_witness(r, {1, 2}));
  bool tagged = false;
  for (const auto& w : r.witnesses()) tagged = tagged || w.relation == "nondecreasing";
  CHECK(tagged);
}

TEST_CASE("power tables satisfy conv and mult", "[inequalities]") {
  for (double p : {1.0, 1.5, 2.0, 3.0})
    for (int M = 2; M <= 12; ++M) {
      const auto P = power_family(p, M);
      CHECK(check_conv(phi_of(P)).pass());
      CHECK(check_mult(P).pass());
    }
}

TEST_CASE("I1 on power tables holds only for small M", "[inequalities][I1]") {
  CHECK(check_I1(phi_of(power_family(2.0, 2))).pass());
  CHECK(check_I1(phi_of(power_family(3.0, 4))).pass());
  // phi(1) - phi(3) = -5/16 > phi(2) (phi(1) - 1) = -1/3
  const auto r = check_I1(phi_of(power_family(2.0, 3)));
  REQUIRE_FALSE(r.pass());
  CHECK(r.witnesses().front().indices == std::vector<int>{3, 1});
  CHECK_THAT(r.witnesses().front().margin, WithinAbs(1.0 / 48.0, 1e-12));
  // x/(x+1): phi(1) - phi(2) = -1/6 > -1/4
  CHECK(check_I1(phi_of(power_family(1.0, 2))).witnesses().front().indices == std::vector<int>{2, 1});
}

TEST_CASE("check_mult on the el table", "[inequalities][mult]") {
  const auto r = check_mult(preset_exponential_el(4));
  REQUIRE_FALSE(r.pass());
  CHECK(r.violations() == 5);
  REQUIRE(has_witness(r, {3, 1, 1}));
  for (const auto& w : r.witnesses())
    if (w.indices == std::vector<int>{3, 1, 1}) {
      CHECK_THAT(w.lhs, WithinAbs((1.0 - std::exp(-2.0)) * (1.0 - std::exp(-3.0)), 1e-12));  // P(3,1) P(4,1)
      CHECK_THAT(w.lhs, WithinAbs(0.8216, 1e-4));
      CHECK_THAT(w.rhs, WithinAbs(0.6321, 1e-4));
    }
  CHECK(has_witness(r, {2, 1, 1}));
}

TEST_CASE("witness list is capped but counts are exact", "[inequalities][report]") {
  // P(1,1) P(2,2) = 1 > P(1,3) = 1/4, and many more like it
  const int M = 10;
  const auto P = WinProbTable::from_function(M, [](int a, int b) {
    if (a == 0) return 0.0;
    if (b == 0) return 1.0;
    return a >= b ? 1.0 : 0.25;
  });
  const auto r = check_mult(P);
  REQUIRE_FALSE(r.pass());
  CHECK(r.violations() > 16);
  CHECK(r.witnesses().size() == 16);
  for (std::size_t i = 1; i < r.witnesses().size(); ++i)
    CHECK(r.witnesses()[i - 1].indices < r.witnesses()[i].indices);
}

TEST_CASE("splitting the mult range and merging matches one pass", "[inequalities][report]") {
  for (const auto& P : {preset_exponential_el(7), power_family(2.0, 7), min_exp_family(1.0, 7)}) {
    const auto whole = check_mult(P);
    CheckReport merged("mult", whole.tolerance());
    for (int x = 0; x <= P.M(); x += 3) merged.merge(check_mult_range(P, x, x + 3));
    CHECK(merged.pass() == whole.pass());
    CHECK(merged.violations() == whole.violations());
    CHECK(merged.evaluated() == whole.evaluated());
    CHECK(merged.skipped() == whole.skipped());
    CHECK(merged.unreachable() == whole.unreachable());
    REQUIRE(merged.witnesses().size() == whole.witnesses().size());
    for (std::size_t i = 0; i < whole.witnesses().size(); ++i)
      CHECK(merged.witnesses()[i].indices == whole.witnesses()[i].indices);
  }
}

TEST_CASE("check_mult counts skipped and unreachable triples", "[inequalities][mult]") {
  const auto r = check_mult(power_family(2.0, 3));
  CHECK(r.pass());
  CHECK(r.skipped() > 0);
  CHECK(r.unreachable() > 0);
}

TEST_CASE("I1 implies conv and exc", "[inequalities][property]") {
  for (int M = 2; M <= 12; ++M)
    for (const auto& phi : phi_presets(M)) {
      if (!check_I1(phi).pass()) continue;
      CHECK(check_conv(phi).violations() == 0);
      CHECK(check_excessive_exc(phi, q_bold_timid(phi)).violations() == 0);
    }
}

TEST_CASE("mult implies star", "[inequalities][property]") {
  for (int M = 2; M <= 12; ++M) {
    std::vector<WinProbTable> tables;
    for (double p : {1.0, 1.5, 2.0, 3.0}) tables.push_back(power_family(p, M));
    for (double m : {0.5, 1.0, 2.0}) tables.push_back(min_exp_family(m, M));
    tables.push_back(preset_exponential_el(M));
    for (const auto& P : tables) {
      if (!check_mult(P).pass()) continue;
      CHECK(check_excessive_star(P, q_bold_timid(phi_of(P))).violations() == 0);
    }
  }
}

TEST_CASE("mult and sincov agree on the shared index set", "[inequalities][sincov][property]") {
  for (int M = 2; M <= 8; ++M)
    for (const auto& P : {power_family(2.0, M), min_exp_family(1.0, M), preset_exponential_el(M)})
      CHECK(check_mult_reachable(P).pass() == check_sincov(sincov_of(P)).pass());
  // el at M = 3 fails only on triples with x + a + b > M, outside Sincov's domain
  const auto el3 = preset_exponential_el(3);
  CHECK_FALSE(check_mult(el3).pass());
  CHECK(check_mult_reachable(el3).pass());
  CHECK(check_sincov(sincov_of(el3)).pass());
}

TEST_CASE("check_sincov", "[inequalities][sincov]") {
  const auto two = SincovTable::from_function(3, [](int, int) -> std::optional<double> { return 2.0; });
  const auto r = check_sincov(two);
  CHECK_FALSE(r.pass());
  CHECK(r.violations() == 64);
  CHECK(check_sincov(SincovTable::from_function(3, [](int, int) -> std::optional<double> { return 1.0; })).pass());
}

TEST_CASE("check_c1_conditions", "[inequalities][c1]") {
  CHECK(check_c1_conditions(power_family(2.0, 5)).pass());
  // min-exp has a flat phi, exp-el has P(1,y) = 0 for y >= 2
  CHECK_FALSE(check_c1_conditions(min_exp_family(1.0, 5)).pass());
  const auto el = check_c1_conditions(preset_exponential_el(5));
  CHECK_FALSE(el.pass());
  CHECK(has_witness(el, {1, 2}));
}
