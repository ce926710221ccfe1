#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace shockselect {

struct solver_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bracketed scalar root finding: bisection with secant acceleration.
// Requires f(lo) and f(hi) of opposite sign (or an exact zero at an end).
// Converges to |hi-lo| <= xtol; never steps outside the bracket.
template <class F>
double solve_bracketed(F&& f, double lo, double hi, double xtol = 1e-12) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (std::signbit(flo) == std::signbit(fhi))
        throw solver_error("solve_bracketed: endpoints do not bracket a root");
    for (int it = 0; it < 200 && hi - lo > xtol; ++it) {
        double mid = 0.5 * (lo + hi);
        // secant proposal from the bracket endpoints; fall back to bisection
        double s = lo - flo * (hi - lo) / (fhi - flo);
        double x = (s > lo + 0.01 * (hi - lo) && s < hi - 0.01 * (hi - lo)) ? s : mid;
        double fx = f(x);
        if (fx == 0.0) return x;
        if (std::signbit(fx) == std::signbit(flo)) {
            lo = x; flo = fx;
        } else {
            hi = x; fhi = fx;
        }
    }
    return 0.5 * (lo + hi);
}

// Scan [lo,hi] at n+1 uniform points for sign changes; refine each bracket.
// A value that is exactly zero at a scan node counts as a root (polynomials
// evaluated at rational nodes really do hit 0.0).
template <class F>
std::vector<double> scan_roots(F&& f, double lo, double hi, int n = 1000, double xtol = 1e-12) {
    std::vector<double> roots;
    double prev_x = lo, prev_f = f(lo);
    bool prev_was_zero = (prev_f == 0.0);
    if (prev_was_zero) roots.push_back(lo);
    for (int i = 1; i <= n; ++i) {
        double x = lo + (hi - lo) * i / n;
        double fx = f(x);
        if (fx == 0.0) {
            roots.push_back(x);
            prev_was_zero = true;
        } else {
            if (!prev_was_zero && std::signbit(fx) != std::signbit(prev_f))
                roots.push_back(solve_bracketed(f, prev_x, x, xtol));
            prev_was_zero = false;
        }
        prev_x = x;
        prev_f = fx;
    }
    return roots;
}

} // namespace shockselect
