#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include <shockselect/model.hpp>
#include <shockselect/ode.hpp>
#include <shockselect/quadrature.hpp>
#include <shockselect/regularization.hpp>
#include <shockselect/roots.hpp>
#include <shockselect/shock.hpp>

namespace shockselect {

// Sample of a reduced-flow trajectory in the desingularised phase plane.
struct PhasePoint {
    double psi, u, p;
};

// Reduced slow flow after rescaling the travelling-wave variable by D(u):
// du/dpsi = -p - c u,  dp/dpsi = R(u) D(u).  The rescaling removes the
// D = 0 singularities, so trajectories cross the interval of negative
// diffusivity without incident.
inline std::array<double, 2> desingularised_rhs(double u, double p, double c,
                                                const DiffusivityModel& d,
                                                const ReactionModel& r) {
    return {-p - c * u, r(u) * d(u)};
}

// Equilibria of the reduced flow: one per zero of R, each at p = -c u.
inline std::vector<std::array<double, 2>> reduced_equilibria(double c, const ReactionModel& r) {
    if (r.is_zero()) throw solver_error("zero reaction leaves no isolated reduced equilibria");
    return {{0.0, 0.0}, {r.gamma(), -c * r.gamma()}, {1.0, -c}};
}

struct Eigenpair {
    double lambda;
    std::array<double, 2> direction;  // (u, p) components
};

struct SaddleInfo {
    Eigenpair stable;    // lambda < 0
    Eigenpair unstable;  // lambda > 0
};

// Linearisation of the reduced flow at an equilibrium (u_eq, -c u_eq):
// J = [[-c, -1], [(R D)'(u_eq), 0]].  A saddle requires (R D)'(u_eq) < 0,
// which holds at the stable rest states u = 0 and u = 1 of a bistable
// reaction with positive outer diffusivity.
inline SaddleInfo saddle_directions(double u_eq, double c, const DiffusivityModel& d,
                                    const ReactionModel& r) {
    double q = (r.poly() * d.poly()).derivative()(u_eq);
    if (!(q < 0.0))
        throw solver_error("reduced-flow equilibrium is not a saddle (d(RD)/du = " +
                           std::to_string(q) + " at u = " + std::to_string(u_eq) + ")");
    double disc = std::sqrt(c * c - 4.0 * q);
    double lam_u = 0.5 * (-c + disc);
    double lam_s = 0.5 * (-c - disc);
    auto vec = [&](double lam) { return std::array<double, 2>{1.0, -(c + lam)}; };
    return {{lam_s, vec(lam_s)}, {lam_u, vec(lam_u)}};
}

// Result of shooting both outer-branch manifolds against a shock line.
struct ManifoldShot {
    double p_at_ur = 0.0;  // p where the unstable manifold of u = 1 meets u = u_r
    double p_at_ul = 0.0;  // p where the stable manifold of u = 0 meets u = u_l
    std::vector<PhasePoint> unstable_trajectory;
    std::vector<PhasePoint> stable_trajectory;
};

// Launch from u = 1 along its unstable eigen-direction (branch entering
// u < 1) forward in psi until u crosses u_r; launch from u = 0 along its
// stable eigen-direction (branch entering u > 0) backward in psi until u
// crosses u_l.  The p values at the two crossings measure how far the two
// slow segments are from joining across the shock.
inline ManifoldShot shoot_manifolds(double c, const ShockPosition& s, const PotentialModel& pot,
                                    const ReactionModel& reac, double eps_off = 1e-8) {
    const auto& d = pot.diffusivity();
    auto rhs = [&](double, const Vec& y, Vec& dy) {
        auto v = desingularised_rhs(y[0], y[1], c, d, reac);
        dy[0] = v[0];
        dy[1] = v[1];
    };
    OdeOptions opt;
    opt.rtol = 1e-10;
    opt.atol = 1e-13;
    const double psi_span = 400.0;

    auto escape = [](const char* which, const OdePoint& end) {
        return solver_error(std::string(which) +
                            " shot escaped without crossing the shock line (psi = " +
                            std::to_string(end.t) + ", u = " + std::to_string(end.y[0]) +
                            ", p = " + std::to_string(end.y[1]) + ")");
    };

    ManifoldShot out;
    {
        auto dir = saddle_directions(1.0, c, d, reac).unstable.direction;
        double scale = eps_off / std::hypot(dir[0], dir[1]);
        Vec y0{1.0 - scale * dir[0], -c - scale * dir[1]};
        auto hit = integrate_until_observed(
            rhs, 0.0, std::move(y0), psi_span,
            [&](double, const Vec& y) { return y[0] - s.u_r; },
            [&](double t, const Vec& y) { out.unstable_trajectory.push_back({t, y[0], y[1]}); },
            opt);
        if (!hit.event_hit) throw escape("unstable-manifold", hit);
        out.p_at_ur = hit.y[1];
    }
    {
        auto dir = saddle_directions(0.0, c, d, reac).stable.direction;
        double scale = eps_off / std::hypot(dir[0], dir[1]);
        Vec y0{scale * dir[0], scale * dir[1]};
        auto hit = integrate_until_observed(
            rhs, 0.0, std::move(y0), -psi_span,
            [&](double, const Vec& y) { return y[0] - s.u_l; },
            [&](double t, const Vec& y) { out.stable_trajectory.push_back({t, y[0], y[1]}); },
            opt);
        if (!hit.event_hit) throw escape("stable-manifold", hit);
        out.p_at_ul = hit.y[1];
    }
    return out;
}

struct WaveSpeedSolution {
    double c = 0.0;
    ShockPosition shock;
    double p_at_ur = 0.0;
    double p_at_ul = 0.0;
    double delta_p = 0.0;        // p(u_r) - p(u_l) at the accepted speed
    double weak_residual = 0.0;  // |c + [Phi_z]/[u]| across the shock
    std::vector<PhasePoint> unstable_trajectory;
    std::vector<PhasePoint> stable_trajectory;
};

// Solve Delta p(c) = 0 on [c_min, c_max] by bracketed bisection over the
// shooting mismatch.  Monotonicity of Delta p(c) is not assumed: the scan
// takes the first sign change it finds.
inline WaveSpeedSolution solve_wave_speed(const ShockPosition& s, const PotentialModel& pot,
                                          const ReactionModel& reac, double c_min = 0.0,
                                          double c_max = 0.5, double eps_off = 1e-8) {
    if (reac.is_zero())
        throw solver_error(
            "zero reaction makes every admissible shock stationary and degenerates the reduced "
            "flow; use the time-dependent simulator for that case");
    auto mismatch = [&](double c) {
        auto m = shoot_manifolds(c, s, pot, reac, eps_off);
        return m.p_at_ur - m.p_at_ul;
    };

    const int n = 25;
    double c_star = c_min;
    bool solved = false;
    double prev_c = c_min, prev_v = mismatch(c_min);
    if (prev_v == 0.0) solved = true;
    for (int i = 1; i <= n && !solved; ++i) {
        double c = c_min + (c_max - c_min) * i / n;
        double v = mismatch(c);
        if (v == 0.0) {
            c_star = c;
            solved = true;
            break;
        }
        if (std::signbit(v) != std::signbit(prev_v)) {
            c_star = solve_bracketed(mismatch, prev_c, c, 1e-13);
            solved = true;
            break;
        }
        prev_c = c;
        prev_v = v;
    }
    if (!solved)
        throw solver_error("no sign change of the shooting mismatch for c in [" +
                           std::to_string(c_min) + ", " + std::to_string(c_max) + "]");

    auto shot = shoot_manifolds(c_star, s, pot, reac, eps_off);
    double delta = shot.p_at_ur - shot.p_at_ul;
    if (std::abs(delta) > 1e-10)
        throw solver_error("wave-speed solve left |Delta p| = " + std::to_string(delta));
    // Weak-solution check: with Phi_z = -p - c u on the slow manifold, the
    // jump condition c = -[Phi_z]/[u] must hold at the accepted speed.
    double phiz_r = -shot.p_at_ur - c_star * s.u_r;
    double phiz_l = -shot.p_at_ul - c_star * s.u_l;
    double weak = std::abs(c_star + (phiz_r - phiz_l) / (s.u_r - s.u_l));
    if (weak > 1e-8)
        throw solver_error("weak-solution residual " + std::to_string(weak) +
                           " exceeds tolerance at the accepted speed");
    return {c_star,
            s,
            shot.p_at_ur,
            shot.p_at_ul,
            delta,
            weak,
            std::move(shot.unstable_trajectory),
            std::move(shot.stable_trajectory)};
}

// Fast-variable layer problem at frozen slow data v:
// du/dxi = w,  dw/dxi = (v + Phi(u)) / f(u).
inline std::array<double, 2> layer_rhs(double u, double w, double v, const PotentialModel& pot,
                                       const RegularisationWeight& f) {
    return {w, (v + pot(u)) / f(u)};
}

// Conserved quantity of the layer flow: H = -w^2/2 + v F(u) + G(u) with
// F' = 1/f and G' = Phi/f (antiderivatives from 0).  Equal H at the two
// rest points of a layer connection is exactly the weighted area rule.
inline double layer_hamiltonian(double u, double w, double v, const PotentialModel& pot,
                                const RegularisationWeight& f) {
    double F = integrate([&](double t) { return 1.0 / f(t); }, 0.0, u, 1e-12);
    double G = integrate([&](double t) { return pot(t) / f(t); }, 0.0, u, 1e-12);
    return -0.5 * w * w + v * F + G;
}

// Eigenvalues of the layer linearisation about a rest point on the slow
// manifold: +/- sqrt(D(u)/f(u)), purely imaginary where D < 0.
inline std::array<std::complex<double>, 2> layer_eigenvalues(double u, const PotentialModel& pot,
                                                             const RegularisationWeight& f) {
    auto lam = std::sqrt(std::complex<double>(pot.diffusivity()(u) / f(u), 0.0));
    return {lam, -lam};
}

} // namespace shockselect
