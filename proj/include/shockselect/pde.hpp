#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <shockselect/model.hpp>
#include <shockselect/ode.hpp>
#include <shockselect/regularization.hpp>
#include <shockselect/rosenbrock.hpp>
#include <shockselect/shock.hpp>

namespace shockselect {

struct instability_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class RegularisationKind { linear, nonlinear };       // f = 1 vs weighted
enum class Discretisation { central, conservative };       // Phi-term stencil
enum class TimeIntegrator { stiff, explicit_rk };

struct SimulationConfig {
    double x_min = 0.0, x_max = 10.0;
    double dx = 0.001;
    double t_end = 20.0;
    std::vector<double> snapshot_times{0.0, 2.0, 4.0, 6.0, 8.0, 10.0, 12.0, 14.0, 16.0, 18.0, 20.0};
    double eps = 0.01;
    RegularisationKind regularisation = RegularisationKind::linear;
    RegularisationWeight weight = RegularisationWeight::constant();
    Discretisation discretisation = Discretisation::central;
    TimeIntegrator integrator = TimeIntegrator::stiff;
    double ic_x0 = std::numeric_limits<double>::quiet_NaN();  // NaN -> domain midpoint
    double rtol = 1e-6;
    double atol = 1e-9;

    double midpoint() const { return 0.5 * (x_min + x_max); }

    // Number of grid nodes (inclusive of both boundaries); throws if dx does
    // not divide the domain evenly.
    std::size_t node_count() const {
        double len = x_max - x_min;
        if (!(len > 0.0) || !(dx > 0.0)) throw model_error("domain and dx must be positive");
        double nd = len / dx;
        auto n = static_cast<std::size_t>(std::llround(nd));
        if (n < 8 || std::abs(nd - static_cast<double>(n)) > 1e-9 * std::max(1.0, nd))
            throw model_error("dx must divide the domain into at least 8 even cells");
        return n + 1;
    }

    std::vector<double> grid() const {
        std::size_t n = node_count();
        std::vector<double> x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = x_min + static_cast<double>(i) * dx;
        x.back() = x_max;
        return x;
    }

    void validate() const {
        node_count();
        if (!(eps > 0.0)) throw model_error("regularisation scale eps must be positive");
        if (!(t_end > 0.0)) throw model_error("end time must be positive");
        if (snapshot_times.empty()) throw model_error("at least one snapshot time is required");
        double prev = -1.0;
        for (double t : snapshot_times) {
            if (!(t >= 0.0 && t <= t_end) || !(t > prev))
                throw model_error("snapshot times must increase within [0, t_end]");
            prev = t;
        }
        if (!(rtol > 0.0) || !(atol > 0.0)) throw model_error("tolerances must be positive");
        if (!std::isnan(ic_x0) && !(ic_x0 > x_min && ic_x0 < x_max))
            throw model_error("initial step position must lie inside the domain");
    }
};

// Semi-discrete right-hand side of
//   u_t = [Phi(u)]_xx - eps^2 [f(u) u_xx]_xx + R(u)
// on the config's grid.  Boundary closure: u and u_x are prescribed at both
// ends, so boundary rows are frozen (du/dt = 0) and the u_x = 0 condition
// supplies ghost nodes by even reflection (u_{-1} = u_1, u_{-2} = u_2).
// Values are evaluated raw (no [0,1] clamp): regularised profiles overshoot.
inline void spatial_rhs(const std::vector<double>& u, std::vector<double>& dudt,
                        const SimulationConfig& cfg, const PotentialModel& pot,
                        const ReactionModel& reac) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(u.size());
    const std::ptrdiff_t m = n - 1;
    const double dx2 = cfg.dx * cfg.dx;
    const double e2 = cfg.eps * cfg.eps;
    const bool weighted = cfg.regularisation == RegularisationKind::nonlinear;
    dudt.assign(u.size(), 0.0);

    auto at = [&](std::ptrdiff_t i) -> double {
        if (i < 0) return u[static_cast<std::size_t>(-i)];
        if (i > m) return u[static_cast<std::size_t>(2 * m - i)];
        return u[static_cast<std::size_t>(i)];
    };

    // Inner array: q_i = Phi_i - eps^2 f_i (u_xx)_i for the central scheme,
    // or just the regularisation part for the conservative scheme (whose Phi
    // term uses face-averaged diffusivities instead).
    const bool conservative = cfg.discretisation == Discretisation::conservative;
    std::vector<double> q(u.size() + 2);
    for (std::ptrdiff_t i = -1; i <= m + 1; ++i) {
        double ui = at(i);
        double uxx = (at(i - 1) - 2.0 * ui + at(i + 1)) / dx2;
        double w = weighted ? cfg.weight(ui) : 1.0;
        q[static_cast<std::size_t>(i + 1)] = (conservative ? 0.0 : pot(ui)) - e2 * w * uxx;
    }

    const auto& d = pot.diffusivity();
    for (std::ptrdiff_t i = 1; i < m; ++i) {
        auto qi = [&](std::ptrdiff_t j) { return q[static_cast<std::size_t>(j + 1)]; };
        double val = (qi(i - 1) - 2.0 * qi(i) + qi(i + 1)) / dx2;
        if (conservative) {
            double dm = 0.5 * (d(at(i - 1)) + d(at(i)));
            double dp = 0.5 * (d(at(i)) + d(at(i + 1)));
            val += (dp * (at(i + 1) - at(i)) - dm * (at(i) - at(i - 1))) / dx2;
        }
        dudt[static_cast<std::size_t>(i)] = val + reac(at(i));
    }
}

// Shock location and endpoints read off a single profile.
struct ShockEstimate {
    bool formed = false;
    double x_s = std::numeric_limits<double>::quiet_NaN();
    double u_l = std::numeric_limits<double>::quiet_NaN();  // low side (ahead of the wave)
    double u_r = std::numeric_limits<double>::quiet_NaN();  // high side (behind the wave)
};

namespace detail {

struct SlopeScan {
    std::vector<double> mag;  // |u_x| by central differences, index 1..n-2 valid
    std::size_t peak = 0;
    bool formed = false;
};

inline SlopeScan scan_slopes(const std::vector<double>& u, const std::vector<double>& x) {
    SlopeScan s;
    const std::size_t n = u.size();
    if (n < 5 || x.size() != n) throw model_error("profile and grid must match with >= 5 nodes");
    s.mag.assign(n, 0.0);
    double best = 0.0, sum = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        s.mag[i] = std::abs((u[i + 1] - u[i - 1]) / (x[i + 1] - x[i - 1]));
        sum += s.mag[i];
        if (s.mag[i] > best) {
            best = s.mag[i];
            s.peak = i;
        }
    }
    double mean = sum / static_cast<double>(n - 2);
    s.formed = best > 5.0 * mean && s.peak > 0;
    return s;
}

} // namespace detail

// Plateau read-off: x_s at the slope maximum; endpoints where |u_x| first
// falls below 10% of the peak on each side.  A profile without a localised
// front (peak <= 5x the mean slope) reports formed = false.
inline ShockEstimate extract_shock(const std::vector<double>& u, const std::vector<double>& x) {
    auto scan = detail::scan_slopes(u, x);
    if (!scan.formed) return {};
    const std::size_t n = u.size();
    const double thresh = 0.1 * scan.mag[scan.peak];
    std::size_t l = scan.peak;
    while (l > 1 && scan.mag[l] >= thresh) --l;
    std::size_t r = scan.peak;
    while (r + 2 < n && scan.mag[r] >= thresh) ++r;
    // The wave steps down from high (left in x) to low (right in x), so the
    // left plateau carries u_r and the right plateau carries u_l.
    return {true, x[scan.peak], u[r], u[l]};
}

// Level-set read-off: refine x_s sub-cell by a parabolic fit through the
// slope maximum, interpolate u there, and map its potential level to the
// branch endpoints.  This avoids the O(eps) bias of plateau thresholds.
inline ShockEstimate extract_shock_levelset(const std::vector<double>& u,
                                            const std::vector<double>& x,
                                            const PotentialModel& pot) {
    auto scan = detail::scan_slopes(u, x);
    if (!scan.formed) return {};
    const std::size_t p = scan.peak;
    double shift = 0.0;
    if (p >= 2 && p + 2 < scan.mag.size()) {
        double a = scan.mag[p - 1], b = scan.mag[p], c = scan.mag[p + 1];
        double denom = a - 2.0 * b + c;
        if (denom != 0.0) shift = std::clamp(0.5 * (a - c) / denom, -0.5, 0.5);
    }
    double dx = x[1] - x[0];
    double xs = x[p] + shift * dx;
    double us = shift >= 0.0 ? u[p] + shift * (u[p + 1] - u[p]) : u[p] + shift * (u[p] - u[p - 1]);
    ShockFamily fam(pot);
    double phi = std::clamp(pot(us), fam.phi_min(), fam.phi_max());
    auto [ul, ur] = endpoints_for_phi(pot, phi);
    return {true, xs, ul, ur};
}

struct ShockSample {
    double t = 0.0;
    bool formed = false;
    double x_s = std::numeric_limits<double>::quiet_NaN();
    double u_l = std::numeric_limits<double>::quiet_NaN();
    double u_r = std::numeric_limits<double>::quiet_NaN();
};

struct SpeedSample {
    double t = 0.0;
    double speed = 0.0;
};

// Backward differences of the shock trace over the actual snapshot spacing;
// pairs with an unformed endpoint are skipped.
inline std::vector<SpeedSample> estimate_speed(const std::vector<ShockSample>& trace) {
    std::vector<SpeedSample> out;
    for (std::size_t i = 1; i < trace.size(); ++i) {
        if (!trace[i].formed || !trace[i - 1].formed) continue;
        double dt = trace[i].t - trace[i - 1].t;
        if (!(dt > 0.0)) throw model_error("shock trace times must strictly increase");
        out.push_back({trace[i].t, (trace[i].x_s - trace[i - 1].x_s) / dt});
    }
    return out;
}

struct SimulationResult {
    std::vector<double> grid;
    std::vector<double> times;
    std::vector<std::vector<double>> snapshots;
    std::vector<ShockSample> trace;  // level-set endpoints when the model admits them
    std::vector<SpeedSample> speeds;
    bool overshoot_flagged = false;  // any snapshot value outside [-0.05, 1.05]
};

namespace detail {

inline std::vector<double> heaviside_ic(const SimulationConfig& cfg) {
    double x0 = std::isnan(cfg.ic_x0) ? cfg.midpoint() : cfg.ic_x0;
    auto x = cfg.grid();
    std::vector<double> u(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        u[i] = x[i] < x0 - 1e-12 ? 1.0 : (x[i] > x0 + 1e-12 ? 0.0 : 0.5);
    return u;
}

} // namespace detail

// Advance the semi-discrete system to t_end, recording snapshots by stepping
// exactly onto each requested time.  The stiff path is the default: the
// explicit stability limit dt ~ dx^4/eps^2 is impractical on fine grids.
inline SimulationResult integrate(const SimulationConfig& cfg, const PotentialModel& pot,
                                  const ReactionModel& reac, std::vector<double> initial) {
    cfg.validate();
    SimulationResult res;
    res.grid = cfg.grid();
    if (initial.size() != res.grid.size())
        throw model_error("initial profile length does not match the grid");

    auto check_finite = [&](const std::vector<double>& u, double t) {
        for (double v : u)
            if (!std::isfinite(v))
                throw instability_error("non-finite profile value at t = " + std::to_string(t));
    };
    check_finite(initial, 0.0);

    auto record = [&](double t, const std::vector<double>& u) {
        res.times.push_back(t);
        res.snapshots.push_back(u);
        for (double v : u)
            if (v < -0.05 || v > 1.05) res.overshoot_flagged = true;
        ShockSample sample;
        sample.t = t;
        ShockEstimate e;
        try {
            e = extract_shock_levelset(u, res.grid, pot);
        } catch (const model_error&) {
            e = extract_shock(u, res.grid);  // model without a usable shock window
        } catch (const solver_error&) {
            e = extract_shock(u, res.grid);
        }
        sample.formed = e.formed;
        sample.x_s = e.x_s;
        sample.u_l = e.u_l;
        sample.u_r = e.u_r;
        res.trace.push_back(sample);
    };

    std::size_t next = 0;
    if (cfg.snapshot_times[0] == 0.0) {
        record(0.0, initial);
        next = 1;
    }

    try {
        if (cfg.integrator == TimeIntegrator::stiff) {
            auto rhs = [&](const Vec& y, Vec& dy) { spatial_rhs(y, dy, cfg, pot, reac); };
            RosenbrockOptions opt;
            opt.rtol = cfg.rtol;
            opt.atol = cfg.atol;
            StiffIntegrator integ(rhs, 0.0, initial, 2, opt);
            for (; next < cfg.snapshot_times.size(); ++next) {
                integ.advance(cfg.snapshot_times[next]);
                check_finite(integ.y(), integ.t());
                record(integ.t(), integ.y());
            }
        } else {
            auto rhs = [&](double, const Vec& y, Vec& dy) { spatial_rhs(y, dy, cfg, pot, reac); };
            OdeOptions opt;
            opt.rtol = cfg.rtol;
            opt.atol = cfg.atol;
            Vec y = std::move(initial);
            double t = 0.0;
            for (; next < cfg.snapshot_times.size(); ++next) {
                y = integrate_ode(rhs, t, std::move(y), cfg.snapshot_times[next], opt);
                t = cfg.snapshot_times[next];
                check_finite(y, t);
                record(t, y);
            }
        }
    } catch (const solver_error& e) {
        double t_bad = res.times.empty() ? 0.0 : res.times.back();
        throw instability_error("time integration failed after t = " + std::to_string(t_bad) +
                                ": " + e.what());
    }

    res.speeds = estimate_speed(res.trace);
    return res;
}

inline SimulationResult integrate(const SimulationConfig& cfg, const PotentialModel& pot,
                                  const ReactionModel& reac) {
    return integrate(cfg, pot, reac, detail::heaviside_ic(cfg));
}

// Leading implicit-regularisation term of the chosen stencil, evaluated
// discretely on a profile.  For the central scheme the term is a perfect
// second difference in disguise, so any potential-continuous shock satisfies
// the induced selection rule; the conservative form has no such reduction.
struct DiscretisationErrorReport {
    Discretisation scheme = Discretisation::central;
    double max_abs = 0.0;
    double rms = 0.0;
    std::vector<double> term;  // per node; zero where the stencil does not fit
    std::string note;
};

inline DiscretisationErrorReport discretisation_error_report(const std::vector<double>& u,
                                                             const SimulationConfig& cfg,
                                                             const PotentialModel& pot) {
    const std::size_t n = u.size();
    if (n < 5) throw model_error("error report needs at least 5 nodes");
    const double dx = cfg.dx;
    const double dx2 = dx * dx;
    DiscretisationErrorReport rep;
    rep.scheme = cfg.discretisation;
    rep.term.assign(n, 0.0);

    if (cfg.discretisation == Discretisation::central) {
        std::vector<double> phi(n);
        for (std::size_t i = 0; i < n; ++i) phi[i] = pot(u[i]);
        for (std::size_t i = 2; i + 2 < n; ++i) {
            double p4 = (phi[i - 2] - 4.0 * phi[i - 1] + 6.0 * phi[i] - 4.0 * phi[i + 1] +
                         phi[i + 2]) /
                        (dx2 * dx2);
            rep.term[i] = -dx2 / 12.0 * p4;
        }
        rep.note = "second difference of the potential: the induced rule is satisfied by any "
                   "potential-continuous shock";
    } else {
        const auto& dmodel = pot.diffusivity();
        std::vector<double> dv(n);
        for (std::size_t i = 0; i < n; ++i) dv[i] = dmodel(u[i]);
        for (std::size_t i = 2; i + 2 < n; ++i) {
            double ux = (u[i + 1] - u[i - 1]) / (2.0 * dx);
            double uxx = (u[i + 1] - 2.0 * u[i] + u[i - 1]) / dx2;
            double uxxx = (-u[i - 2] + 2.0 * u[i - 1] - 2.0 * u[i + 1] + u[i + 2]) / (2.0 * dx2 * dx);
            double uxxxx = (u[i - 2] - 4.0 * u[i - 1] + 6.0 * u[i] - 4.0 * u[i + 1] + u[i + 2]) /
                           (dx2 * dx2);
            double dvx = (dv[i + 1] - dv[i - 1]) / (2.0 * dx);
            double dvxx = (dv[i + 1] - 2.0 * dv[i] + dv[i - 1]) / dx2;
            double dvxxx = (-dv[i - 2] + 2.0 * dv[i - 1] - 2.0 * dv[i + 1] + dv[i + 2]) /
                           (2.0 * dx2 * dx);
            rep.term[i] = -dx2 / 12.0 *
                          (dv[i] * uxxxx + 2.0 * dvx * uxxx + 3.0 * dvxx * uxx + 2.0 * dvxxx * ux);
        }
        rep.note = "face-averaged flux form: no equivalent selection rule is known";
    }

    double sum2 = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 2; i + 2 < n; ++i) {
        rep.max_abs = std::max(rep.max_abs, std::abs(rep.term[i]));
        sum2 += rep.term[i] * rep.term[i];
        ++count;
    }
    rep.rms = count ? std::sqrt(sum2 / static_cast<double>(count)) : 0.0;
    return rep;
}

} // namespace shockselect
