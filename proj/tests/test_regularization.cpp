#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include <shockselect/regularization.hpp>

using namespace shockselect;

namespace {

PotentialModel make_pot(double delta) {
    return PotentialModel(DiffusivityModel::cubic(0.2, 0.4, delta));
}

// Fixed-grid Simpson refinement, independent of the adaptive routine.
template <class F>
double simpson_oracle(F&& f, double a, double b, double tol) {
    double prev = 0.0;
    for (int n = 64; n <= 1 << 22; n *= 2) {
        double h = (b - a) / n, s = f(a) + f(b);
        for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
        s *= h / 3.0;
        if (n > 64 && std::abs(s - prev) < tol) return s;
        prev = s;
    }
    return prev;
}

} // namespace

TEST_CASE("weight families evaluate and enforce positivity") {
    auto c = RegularisationWeight::constant();
    CHECK(c(0.3) == 1.0);
    CHECK(c.derivative(0.3) == 0.0);
    auto e = RegularisationWeight::exponential(-3.0);
    CHECK(e(0.5) == Catch::Approx(std::exp(1.5)));
    CHECK(e.derivative(0.5) == Catch::Approx(3.0 * std::exp(1.5)));
    auto q = RegularisationWeight::quadratic(10.0);
    CHECK(q(0.5) == Catch::Approx(3.5));
    CHECK(q.derivative(0.5) == Catch::Approx(10.0));
    CHECK_THROWS_AS(RegularisationWeight::quadratic(-1.2), model_error);
    CHECK_THROWS_AS(RegularisationWeight::linear(-1.5), model_error);
    CHECK(RegularisationWeight::quadratic(-0.5)(1.0) == Catch::Approx(0.5));
}

TEST_CASE("constant weight reduces the rule to the plain equal-area integral") {
    auto pot = make_pot(0.5);
    auto ea = equal_area_shock(pot);
    auto f1 = RegularisationWeight::constant();
    CHECK(std::abs(modified_area_integral(pot, ea, f1)) <= 1e-10);
    CHECK(modified_area_integral(pot, ea, f1) ==
          Catch::Approx(equal_area_integral(pot, ea)).margin(1e-14));

    // At the continuous-diffusivity shock the unweighted rule fails, with the
    // sign fixed by the level ordering (the area integral decreases in the
    // level, and that shock sits above the equal-area level).
    auto cd = continuous_diffusivity_shock(pot);
    double r = modified_area_integral(pot, cd, f1);
    CHECK(r < -1e-6);
}

TEST_CASE("closed-form exponential residual agrees with quadrature") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> ua(0.1, 0.3), ub(0.35, 0.55), ud(-0.7, 0.7);
    std::uniform_real_distribution<double> uf(0.1, 0.9), uA(0.5, 20.0);
    int done = 0;
    while (done < 50) {
        double a = ua(rng), b = ub(rng), d = ud(rng);
        try {
            auto base = DiffusivityModel::cubic(a, b, d);
            // Cycle through degrees 3, 4, 5 by multiplying positive factors.
            Poly dp = base.poly();
            if (done % 3 == 1) dp = dp * Poly{1.0, 0.3};
            if (done % 3 == 2) dp = dp * Poly{1.0, 0.2, 0.3};
            auto pot = PotentialModel(DiffusivityModel::polynomial(dp.coeffs()));
            ShockFamily fam(pot);
            double p = fam.phi_min() + (fam.phi_max() - fam.phi_min()) * uf(rng);
            auto s = fam.at(p);
            double A = uA(rng) * (done % 2 ? 1.0 : -1.0);
            double cf = modified_area_closed_form_exponential(pot, s, A);
            double qd = modified_area_integral(pot, s, RegularisationWeight::exponential(A));
            CHECK(cf == Catch::Approx(qd).margin(1e-10));
            ++done;
        } catch (const model_error&) {
            continue;
        }
    }
}

TEST_CASE("closed form is continuous at A = 0") {
    auto pot = make_pot(0.5);
    auto cd = continuous_diffusivity_shock(pot);
    double plain = modified_area_integral(pot, cd, RegularisationWeight::constant());
    CHECK(modified_area_closed_form_exponential(pot, cd, 1e-4) ==
          Catch::Approx(plain).margin(1e-6));
    CHECK(modified_area_closed_form_exponential(pot, cd, -1e-4) ==
          Catch::Approx(plain).margin(1e-6));
    CHECK(modified_area_closed_form_exponential(pot, cd, 0.0) == plain);
}

TEST_CASE("exponential weight parameter for the continuous-diffusivity shock") {
    auto pot = make_pot(0.5);
    auto cd = continuous_diffusivity_shock(pot);
    auto sol = solve_weight_parameter_detailed(pot, cd, WeightFamily::exponential);
    CHECK(std::abs(std::abs(sol.a) - 3.0757) <= 1e-3);
    CHECK(sol.a == Catch::Approx(-3.0756619208).margin(1e-6));  // recovered sign is negative
    CHECK(std::abs(sol.residual) <= 1e-10);
    CHECK(sol.sign_changes == 1);
    // The solved weight satisfies the rule through the quadrature path too.
    auto f = RegularisationWeight::exponential(sol.a);
    CHECK(std::abs(modified_area_integral(pot, cd, f)) <= 1e-8);
}

TEST_CASE("quadratic weight parameter for the continuous-diffusivity shock") {
    auto pot = make_pot(0.5);
    auto cd = continuous_diffusivity_shock(pot);
    auto sol = solve_weight_parameter_detailed(pot, cd, WeightFamily::quadratic);
    CHECK(std::abs(sol.a - 10.6453) <= 1e-3);
    CHECK(sol.a == Catch::Approx(10.645338198813091).margin(1e-6));
    CHECK(std::abs(sol.residual) <= 1e-10);
}

TEST_CASE("symmetric family needs no reweighting") {
    auto pot = make_pot(0.0);
    auto ea = equal_area_shock(pot);
    double a = solve_weight_parameter(pot, ea, WeightFamily::exponential);
    CHECK(std::abs(a) <= 1e-8);
}

TEST_CASE("weight solve rejects knee endpoints") {
    auto pot = make_pot(0.5);
    auto [lower, upper] = knee_shocks(pot);
    CHECK_THROWS_AS(solve_weight_parameter(pot, upper, WeightFamily::exponential), solver_error);
}

TEST_CASE("forward map: the solved weight reselects the same shock") {
    auto pot = make_pot(0.5);
    auto cd = continuous_diffusivity_shock(pot);
    double a = solve_weight_parameter(pot, cd, WeightFamily::exponential);
    auto s = shock_for_weight(pot, RegularisationWeight::exponential(a));
    CHECK(s.u_l == Catch::Approx(cd.u_l).margin(1e-6));
    CHECK(s.u_r == Catch::Approx(cd.u_r).margin(1e-6));
    // Unit weight forward map is the equal-area shock.
    auto s1 = shock_for_weight(pot, RegularisationWeight::constant());
    auto ea = equal_area_shock(pot);
    CHECK(s1.u_l == Catch::Approx(ea.u_l).margin(1e-10));
    CHECK(s1.rule == ShockRule::equal_area);
    // Selected shocks never touch the diffusivity zeros.
    CHECK(s.u_l < pot.diffusivity().alpha());
    CHECK(s.u_r > pot.diffusivity().beta());
}

TEST_CASE("round trip over random decreasing-increasing models") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> ua(0.12, 0.3), ub(0.35, 0.5), ud(-0.6, 0.6);
    int done = 0;
    while (done < 20) {
        try {
            auto pot = PotentialModel(DiffusivityModel::cubic(ua(rng), ub(rng), ud(rng)));
            if (pot.diffusivity().shape() != Shape::decreasing_increasing) continue;
            if (pot(pot.diffusivity().beta()) < pot(0.0) ||
                pot(pot.diffusivity().alpha()) > pot(1.0))
                continue;
            auto cd = continuous_diffusivity_shock(pot);
            double a = solve_weight_parameter(pot, cd, WeightFamily::exponential);
            auto back = shock_for_weight(pot, RegularisationWeight::exponential(a));
            CHECK(back.u_l == Catch::Approx(cd.u_l).margin(1e-6));
            CHECK(back.u_r == Catch::Approx(cd.u_r).margin(1e-6));
            ++done;
        } catch (const model_error&) {
            continue;
        }
    }
}

TEST_CASE("extreme weights steer the selection toward the knees") {
    auto pot = make_pot(0.5);
    auto near_upper = shock_for_weight(pot, RegularisationWeight::exponential(-80.0));
    CHECK(near_upper.u_l == Catch::Approx(0.1881).margin(2e-3));
    CHECK(near_upper.u_r == Catch::Approx(0.7585).margin(2e-3));
    auto near_lower = shock_for_weight(pot, RegularisationWeight::exponential(80.0));
    CHECK(near_lower.u_l == Catch::Approx(0.0415).margin(2e-3));
    CHECK(near_lower.u_r == Catch::Approx(0.5650).margin(2e-3));
}

TEST_CASE("flux-weighted alternative rule") {
    auto pot0 = make_pot(0.0);
    auto ea0 = equal_area_shock(pot0);
    CHECK(std::abs(alt_rule_flux_weighted(pot0, ea0, RegularisationWeight::constant())) <= 1e-9);

    // With unit weight the reweighted potential is the plain one, so the
    // residual equals the plain area integral.
    auto pot = make_pot(0.5);
    auto cd = continuous_diffusivity_shock(pot);
    double r = alt_rule_flux_weighted(pot, cd, RegularisationWeight::constant());
    CHECK(std::abs(r) > 1e-6);
    CHECK(r == Catch::Approx(modified_area_integral(pot, cd, RegularisationWeight::constant()))
                   .margin(1e-8));

    // Independent fixed-grid oracle for a non-trivial weight.
    auto f = RegularisationWeight::exponential(-2.0);
    const auto& d = pot.diffusivity();
    auto phi_w = [&](double u) {
        return simpson_oracle([&](double t) { return d(t) / f(t); }, 0.0, u, 1e-12);
    };
    double level = 0.5 * (phi_w(cd.u_l) + phi_w(cd.u_r));
    double oracle =
        simpson_oracle([&](double u) { return phi_w(u) - level; }, cd.u_l, cd.u_r, 1e-10);
    CHECK(alt_rule_flux_weighted(pot, cd, f) == Catch::Approx(oracle).margin(1e-7));
}

TEST_CASE("derivative-weighted alternative rule") {
    auto pot = make_pot(0.5);
    auto ea = equal_area_shock(pot);
    auto lin = RegularisationWeight::linear(1.0);  // f' = 1: plain rule
    CHECK(std::abs(alt_rule_fprime_weighted(pot, ea, lin)) <= 1e-10);
    auto cd = continuous_diffusivity_shock(pot);
    CHECK(alt_rule_fprime_weighted(pot, cd, lin) ==
          Catch::Approx(equal_area_integral(pot, cd)).margin(1e-10));

    // Oracle comparison for a genuinely weighted case.
    auto f = RegularisationWeight::exponential(-2.0);
    double oracle = simpson_oracle(
        [&](double u) { return f.derivative(u) * (pot(u) - cd.phi_s); }, cd.u_l, cd.u_r, 1e-12);
    CHECK(alt_rule_fprime_weighted(pot, cd, f) == Catch::Approx(oracle).margin(1e-10));

    // Positivity of f' is enforced.
    CHECK_THROWS_AS(alt_rule_fprime_weighted(pot, cd, RegularisationWeight::constant()),
                    model_error);
    CHECK_THROWS_AS(alt_rule_fprime_weighted(pot, cd, RegularisationWeight::exponential(2.0)),
                    model_error);
}
