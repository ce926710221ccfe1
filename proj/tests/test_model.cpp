#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include <shockselect/model.hpp>
#include <shockselect/quadrature.hpp>

using namespace shockselect;

namespace {

// Illustrative degree-6 diffusivity with an oscillatory positive branch:
// admissible (+/-/+) but not decreasing-increasing.
const std::vector<double> kWavyCoeffs = {
    1.0, -10.163080693408297, 234.51304044881732, -2080.9096478898618,
    6926.6347112600752, -9658.7018416405372, 4805.324299323649};

} // namespace

TEST_CASE("cubic-family diffusivity evaluates the factored form") {
    auto m0 = DiffusivityModel::cubic(0.2, 0.4, 0.0);
    CHECK(eval_diffusivity(m0, 0.2) == Catch::Approx(0.0).margin(1e-15));
    auto m = DiffusivityModel::cubic(0.2, 0.4, 0.5);
    CHECK(eval_diffusivity(m, 0.0) == Catch::Approx(0.08).margin(1e-15));
    CHECK(eval_diffusivity(m, 0.3) == Catch::Approx(-0.0145).margin(1e-15));
    CHECK_THROWS_AS(eval_diffusivity(m, 1.2), std::domain_error);
}

TEST_CASE("interior zeros are located and cross-checked") {
    auto m0 = DiffusivityModel::cubic(0.2, 0.4, 0.0);
    CHECK(m0.alpha() == Catch::Approx(0.2).margin(1e-12));
    CHECK(m0.beta() == Catch::Approx(0.4).margin(1e-12));

    auto mp = DiffusivityModel::cubic(0.2, 0.4, 0.5);
    CHECK(mp.alpha() == Catch::Approx(0.2).margin(1e-12));
    CHECK(mp.beta() == Catch::Approx(0.5527864045000421).margin(1e-11));

    auto mn = DiffusivityModel::cubic(0.2, 0.4, -0.5);
    // Zeros of the quadratic factor: (1 - sqrt(1.8)) / -1 lies in (0,1).
    double z = (1.0 - std::sqrt(1.8)) / -1.0;
    CHECK(mn.alpha() == Catch::Approx(0.2).margin(1e-12));
    CHECK(mn.beta() == Catch::Approx(z).margin(1e-11));

    for (auto& m : {m0, mp, mn}) {
        auto [a, b] = find_diffusivity_zeros(m);
        CHECK(std::abs(m(a)) <= 1e-12);
        CHECK(std::abs(m(b)) <= 1e-12);
        CHECK((0.0 < a && a < b && b < 1.0));
    }
}

TEST_CASE("inadmissible models are rejected at construction") {
    // D(0) < 0.
    CHECK_THROWS_AS(DiffusivityModel::polynomial({-0.1, 1.0, -1.0}), model_error);
    // No interior zero.
    CHECK_THROWS_AS(DiffusivityModel::polynomial({1.0, 0.0, 0.1}), model_error);
    // Four interior zeros: (u-.1)(u-.3)(u-.5)(u-.7) scaled positive at ends.
    Poly p = Poly::from_roots({0.1, 0.3, 0.5, 0.7});
    CHECK_THROWS_AS(DiffusivityModel::polynomial(p.coeffs()), model_error);
    // Unchecked constructor accepts anything but refuses zero queries.
    auto u = DiffusivityModel::unchecked({1.0});
    CHECK(u(0.5) == 1.0);
    CHECK_FALSE(u.admissible());
    CHECK_THROWS_AS(u.alpha(), model_error);
}

TEST_CASE("shape classification separates the wavy model") {
    CHECK(classify_shape(DiffusivityModel::cubic(0.2, 0.4, 0.5)) == Shape::decreasing_increasing);
    CHECK(classify_shape(DiffusivityModel::cubic(0.2, 0.4, 0.0)) == Shape::decreasing_increasing);
    auto wavy = DiffusivityModel::polynomial(kWavyCoeffs);
    CHECK(wavy.alpha() == Catch::Approx(0.2).margin(1e-10));
    CHECK(wavy.beta() == Catch::Approx(0.45).margin(1e-10));
    CHECK(classify_shape(wavy) == Shape::general);
}

TEST_CASE("potential is the exact antiderivative with base point zero") {
    auto pot0 = PotentialModel(DiffusivityModel::cubic(0.2, 0.4, 0.0));
    auto potd = PotentialModel(DiffusivityModel::cubic(0.2, 0.4, 0.5));
    CHECK(potd(0.0) == 0.0);
    CHECK(eval_potential(pot0, 0.4) ==
          Catch::Approx(integrate([&](double s) { return pot0.diffusivity()(s); }, 0.0, 0.4))
              .margin(1e-12));
    CHECK(eval_potential(potd, 1.0) ==
          Catch::Approx(integrate([&](double s) { return potd.diffusivity()(s); }, 0.0, 1.0))
              .margin(1e-12));
    // Closed-form spot value for the cubic family at u = 1:
    // (1/12)(-3*0.5 + 4*0.2*0.5 + 4 - 6*0.2 - 6*0.4 + 12*0.08).
    CHECK(potd(1.0) == Catch::Approx(0.26 / 12.0).margin(1e-15));
}

TEST_CASE("potential derivative matches the diffusivity at random points") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> uni(0.02, 0.98);
    auto pot = PotentialModel(DiffusivityModel::cubic(0.2, 0.4, 0.5));
    const double h = 1e-6;
    for (int i = 0; i < 100; ++i) {
        double u = uni(rng);
        double fd = (pot(u + h) - pot(u - h)) / (2.0 * h);
        double d = pot.diffusivity()(u);
        CHECK(fd == Catch::Approx(d).epsilon(1e-6).margin(1e-9));
    }
}

TEST_CASE("symmetric family is even about the midpoint of its zeros") {
    auto m = DiffusivityModel::cubic(0.2, 0.4, 0.0);
    double mid = 0.3;
    for (int i = 1; i <= 50; ++i) {
        double s = 0.1 * i / 50.0;
        CHECK(m(mid + s) == Catch::Approx(m(mid - s)).margin(1e-14));
    }
}

TEST_CASE("reaction families hit their roots exactly") {
    auto r = ReactionModel::cubic(0.5);
    CHECK(r(0.0) == 0.0);
    CHECK(r(0.5) == 0.0);
    CHECK(r(1.0) == 0.0);
    CHECK(eval_reaction(r, 0.75) == Catch::Approx(0.046875).margin(1e-15));
    auto g3 = ReactionModel::cubic(0.3);
    CHECK(g3(0.3) == 0.0);
    auto z = ReactionModel::none();
    CHECK(z(0.37) == 0.0);
    CHECK(z.is_zero());
    CHECK_THROWS_AS(ReactionModel::cubic(1.5), model_error);
}
