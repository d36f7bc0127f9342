// Bold against timid on a power table: product formula, exact chain values,
// the equilibrium certificate and a short simulation.

#include <cstdio>

#include "redblack/redblack.hpp"

using namespace redblack;

int main() {
  const int M = 6;
  const auto P = power_family(2.0, M);
  const auto profile = Profile::bold_timid(M);

  const auto Q = q_bold_timid(phi_of(P));
  const auto hv = hitting_values(P, profile);
  std::printf(" x   Q(x) product   u_I(x) chain\n");
  for (int x = 0; x <= M; ++x) std::printf("%2d   %.12f  %.12f\n", x, Q.q[x], hv.win_i[x]);

  for (int x0 = 1; x0 < M; ++x0) {
    const auto c = verify_nash(P, profile, x0);
    std::printf("x0=%d  equilibrium=%s  method=%s\n", x0, c.equilibrium ? "yes" : "no",
                std::string(to_string(c.method)).c_str());
  }

  SimConfig cfg;
  cfg.trials = 50000;
  cfg.seed = 7;
  cfg.x0 = 3;
  const auto r = simulate(P, profile, cfg);
  const auto a = compare_exact(r, hv.win_i, cfg.x0);
  std::printf("simulated %llu trials from x0=3: %.5f vs exact %.5f (z = %.2f)\n",
              static_cast<unsigned long long>(r.trials), a.empirical, a.exact, a.z);
  return 0;
}
