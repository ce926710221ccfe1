// Shooting solve for the speed of a shock-fronted travelling wave: integrate
// the desingularised reduced problem off the saddles at u = 0 and u = 1 and
// bisect on the p-mismatch where the two manifolds meet the shock.
#include <cstdio>

#include "shockselect/shock.hpp"
#include "shockselect/wave.hpp"

using namespace shockselect;

int main(int argc, char** argv) {
    PotentialModel pot(DiffusivityModel::cubic(0.2, 0.4, 0.5));
    auto reac = ReactionModel::cubic(0.5);
    bool equal_area = argc > 1 && std::string_view(argv[1]) == "--equal-area";
    auto shock = equal_area ? equal_area_shock(pot) : continuous_diffusivity_shock(pot);

    std::printf("rule: %s, shock u_l = %.9f, u_r = %.9f\n",
                equal_area ? "equal area" : "continuous D", shock.u_l, shock.u_r);

    // Bracketing diagnostic: the mismatch Delta p(c) changes sign across the
    // admissible speed.
    for (double c : {0.013, 0.033}) {
        auto shot = shoot_manifolds(c, shock, pot, reac);
        std::printf("  c = %.3f: Delta p = %+.6e\n", c, shot.p_at_ur - shot.p_at_ul);
    }

    auto sol = solve_wave_speed(shock, pot, reac);
    std::printf("solved c = %.12f  (Delta p = %.2e, weak residual = %.2e)\n", sol.c, sol.delta_p,
                sol.weak_residual);

    std::printf("\nunstable-manifold trajectory (psi, u, p), every 40th point:\n");
    const auto& tr = sol.unstable_trajectory;
    for (std::size_t i = 0; i < tr.size(); i += 40)
        std::printf("  %+.4f  %.6f  %+.6e\n", tr[i].psi, tr[i].u, tr[i].p);
    return 0;
}
