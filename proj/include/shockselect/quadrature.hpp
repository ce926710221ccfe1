#pragma once

#include <cmath>
#include <stdexcept>

namespace shockselect {

namespace detail {

template <class F>
double adapt_simpson(F& f, double a, double fa, double b, double fb, double m, double fm,
                     double whole, double tol, int depth) {
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    // Simpson pair vs single Simpson: Richardson term delta/15 estimates the error
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adapt_simpson(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           adapt_simpson(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

} // namespace detail

// Adaptive Simpson quadrature: interval halving with the embedded
// higher-order (Richardson) estimate, absolute tolerance abs_tol.
template <class F>
double integrate(F&& f, double a, double b, double abs_tol = 1e-12, int max_depth = 48) {
    if (a == b) return 0.0;
    double sign = 1.0;
    if (a > b) { std::swap(a, b); sign = -1.0; }
    double fa = f(a), fb = f(b), m = 0.5 * (a + b), fm = f(m);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return sign * detail::adapt_simpson(f, a, fa, b, fb, m, fm, whole, abs_tol, max_depth);
}

} // namespace shockselect
