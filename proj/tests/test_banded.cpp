#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include <shockselect/banded.hpp>

using shockselect::BandedMatrix;

namespace {

// Multiply a banded matrix by x, reading only in-band entries.
std::vector<double> mul(const BandedMatrix& a, const std::vector<double>& x) {
    int n = a.size();
    std::vector<double> b(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (a.in_band(i, j)) b[i] += a.at(i, j) * x[j];
    return b;
}

} // namespace

TEST_CASE("banded factor/solve round-trips a tridiagonal system") {
    const int n = 8;
    BandedMatrix a(n, 1, 1);
    for (int i = 0; i < n; ++i) {
        a.at(i, i) = 2.0;
        if (i > 0) a.at(i, i - 1) = -1.0;
        if (i < n - 1) a.at(i, i + 1) = -1.0;
    }
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = 1.0 + i;
    auto b = mul(a, x);
    a.factor();
    a.solve(b);
    for (int i = 0; i < n; ++i) CHECK(b[i] == Catch::Approx(x[i]).epsilon(1e-12));
}

TEST_CASE("banded solve handles asymmetric bandwidths and pivoting") {
    const int n = 6;
    BandedMatrix a(n, 2, 1);
    // Weak diagonal forces partial pivoting to engage.
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (a.in_band(i, j)) a.at(i, j) = (i == j) ? 0.1 : 1.0 + 0.3 * i - 0.2 * j;
    std::vector<double> x = {1.0, -2.0, 0.5, 3.0, -1.5, 0.25};
    auto b = mul(a, x);
    a.factor();
    a.solve(b);
    for (int i = 0; i < n; ++i) CHECK(b[i] == Catch::Approx(x[i]).margin(1e-10));
}

TEST_CASE("pentadiagonal system (half-bandwidth two) solves correctly") {
    const int n = 20;
    BandedMatrix a(n, 2, 2);
    for (int i = 0; i < n; ++i)
        for (int j = std::max(0, i - 2); j <= std::min(n - 1, i + 2); ++j)
            a.at(i, j) = (i == j) ? 6.0 : (std::abs(i - j) == 1 ? -4.0 : 1.0);
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = std::sin(0.37 * i);
    auto b = mul(a, x);
    a.factor();
    a.solve(b);
    for (int i = 0; i < n; ++i) CHECK(b[i] == Catch::Approx(x[i]).margin(1e-10));
}
