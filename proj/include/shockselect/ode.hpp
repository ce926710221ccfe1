#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include <shockselect/roots.hpp>

namespace shockselect {

using Vec = std::vector<double>;

struct OdeOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    double h0 = 1e-4;
    double hmax = std::numeric_limits<double>::infinity();
    std::size_t max_steps = 2'000'000;
};

struct OdePoint {
    double t = 0.0;
    Vec y;
    bool event_hit = false;
};

namespace detail {

// One Dormand-Prince 5(4) step from (t, y) with step h.
// Returns the 5th-order solution; err receives the embedded error estimate.
template <class F>
Vec dopri5_step(F& f, double t, const Vec& y, double h, Vec& err, std::vector<Vec>& k) {
    const std::size_t n = y.size();
    k.assign(7, Vec(n));
    Vec tmp(n);

    f(t, y, k[0]);

    auto stage = [&](double c, std::initializer_list<double> a, Vec& out) {
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            std::size_t j = 0;
            for (double aj : a) s += aj * k[j++][i];
            tmp[i] = y[i] + h * s;
        }
        f(t + c * h, tmp, out);
    };

    stage(1.0 / 5, {1.0 / 5}, k[1]);
    stage(3.0 / 10, {3.0 / 40, 9.0 / 40}, k[2]);
    stage(4.0 / 5, {44.0 / 45, -56.0 / 15, 32.0 / 9}, k[3]);
    stage(8.0 / 9, {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729}, k[4]);
    stage(1.0, {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656}, k[5]);

    const double b[7] = {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84, 0.0};
    Vec ynew(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (int j = 0; j < 6; ++j) s += b[j] * k[j][i];
        ynew[i] = y[i] + h * s;
    }
    f(t + h, ynew, k[6]);

    const double bs[7] = {5179.0 / 57600, 0.0,         7571.0 / 16695, 393.0 / 640,
                          -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};
    err.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (int j = 0; j < 7; ++j) s += (b[j] - bs[j]) * k[j][i];
        err[i] = h * s;
    }
    return ynew;
}

inline double error_norm(const Vec& err, const Vec& y, const Vec& ynew, double atol, double rtol) {
    double s = 0.0;
    for (std::size_t i = 0; i < err.size(); ++i) {
        double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
        s += (err[i] / sc) * (err[i] / sc);
    }
    return std::sqrt(s / static_cast<double>(err.size()));
}

} // namespace detail

// Integrate y' = f(t, y) from t0 to t1 with the adaptive Dormand-Prince 5(4)
// pair.  f has signature f(t, y, dydt).
template <class F>
Vec integrate_ode(F&& f, double t0, Vec y, double t1, const OdeOptions& opt = {}) {
    double t = t0;
    const double dir = (t1 >= t0) ? 1.0 : -1.0;
    double h = dir * std::min({opt.h0, opt.hmax, std::abs(t1 - t0)});
    if (h == 0.0) return y;
    Vec err;
    std::vector<Vec> k;
    for (std::size_t step = 0; step < opt.max_steps; ++step) {
        if (dir * (t + h - t1) > 0.0) h = t1 - t;
        Vec ynew = detail::dopri5_step(f, t, y, h, err, k);
        double en = detail::error_norm(err, y, ynew, opt.atol, opt.rtol);
        if (en <= 1.0) {
            t += h;
            y = std::move(ynew);
            if (dir * (t - t1) >= 0.0) return y;
            double fac = std::clamp(0.9 * std::pow(std::max(en, 1e-16), -0.2), 0.2, 5.0);
            h = dir * std::min(std::abs(h) * fac, opt.hmax);
        } else {
            h *= std::clamp(0.9 * std::pow(en, -0.2), 0.1, 0.9);
        }
        if (std::abs(h) < 1e-15 * std::max(1.0, std::abs(t)))
            throw solver_error("step size underflow in ODE integration");
    }
    throw solver_error("ODE integration exceeded the step budget");
}

// Integrate until event(t, y) changes sign (or t reaches t_max).  The crossing
// is refined by re-taking the final accepted step with a bisected step size,
// so no interpolation formula is needed.  The observer is called with (t, y)
// at the start point and after every accepted step, including the event point.
template <class F, class E, class Obs>
OdePoint integrate_until_observed(F&& f, double t0, Vec y0, double t_max, E&& event, Obs&& observe,
                                  const OdeOptions& opt = {}) {
    double t = t0;
    Vec y = std::move(y0);
    const double dir = (t_max >= t0) ? 1.0 : -1.0;
    double h = dir * std::min({opt.h0, opt.hmax, std::abs(t_max - t0)});
    double ev_prev = event(t, y);
    observe(t, y);
    if (ev_prev == 0.0) return {t, y, true};
    Vec err;
    std::vector<Vec> k;
    for (std::size_t step = 0; step < opt.max_steps; ++step) {
        if (dir * (t + h - t_max) > 0.0) h = t_max - t;
        Vec ynew = detail::dopri5_step(f, t, y, h, err, k);
        double en = detail::error_norm(err, y, ynew, opt.atol, opt.rtol);
        if (en <= 1.0) {
            double ev_new = event(t + h, ynew);
            if (ev_prev * ev_new <= 0.0) {
                // Refine: the flow of a single step is continuous in the step size.
                auto at_substep = [&](double s) {
                    if (s == 0.0) return ev_prev;
                    Vec e2;
                    std::vector<Vec> k2;
                    Vec ys = detail::dopri5_step(f, t, y, s, e2, k2);
                    return event(t + s, ys);
                };
                double g = solve_bracketed(at_substep, std::min(0.0, h), std::max(0.0, h),
                                           1e-14 * std::max(1.0, std::abs(h)));
                Vec e2;
                std::vector<Vec> k2;
                Vec yg = detail::dopri5_step(f, t, y, g, e2, k2);
                observe(t + g, yg);
                return {t + g, std::move(yg), true};
            }
            t += h;
            y = std::move(ynew);
            ev_prev = ev_new;
            observe(t, y);
            if (dir * (t - t_max) >= 0.0) return {t, std::move(y), false};
            double fac = std::clamp(0.9 * std::pow(std::max(en, 1e-16), -0.2), 0.2, 5.0);
            h = dir * std::min(std::abs(h) * fac, opt.hmax);
        } else {
            h *= std::clamp(0.9 * std::pow(en, -0.2), 0.1, 0.9);
        }
        if (std::abs(h) < 1e-15 * std::max(1.0, std::abs(t)))
            throw solver_error("step size underflow in ODE integration");
    }
    throw solver_error("ODE integration exceeded the step budget");
}

template <class F, class E>
OdePoint integrate_until(F&& f, double t0, Vec y0, double t_max, E&& event,
                         const OdeOptions& opt = {}) {
    return integrate_until_observed(std::forward<F>(f), t0, std::move(y0), t_max,
                                    std::forward<E>(event), [](double, const Vec&) {}, opt);
}

} // namespace shockselect
