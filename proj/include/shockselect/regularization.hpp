#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <shockselect/model.hpp>
#include <shockselect/quadrature.hpp>
#include <shockselect/roots.hpp>
#include <shockselect/shock.hpp>

namespace shockselect {

enum class WeightFamily { constant, exponential, quadratic, linear };

// Positive weight f(u) appearing in the nonlinear regularisation and the
// modified equal-area rule.  Families: 1, e^{-Au}, 1 + Au^2 (A > -1), and
// 1 + Au (A > -1; used for the derivative-weighted rule diagnostics).
class RegularisationWeight {
  public:
    static RegularisationWeight constant() { return {WeightFamily::constant, 0.0}; }
    static RegularisationWeight exponential(double a) { return {WeightFamily::exponential, a}; }
    static RegularisationWeight quadratic(double a) { return {WeightFamily::quadratic, a}; }
    static RegularisationWeight linear(double a) { return {WeightFamily::linear, a}; }

    double operator()(double u) const {
        switch (family_) {
            case WeightFamily::constant: return 1.0;
            case WeightFamily::exponential: return std::exp(-a_ * u);
            case WeightFamily::quadratic: return 1.0 + a_ * u * u;
            case WeightFamily::linear: return 1.0 + a_ * u;
        }
        return 1.0;
    }

    double derivative(double u) const {
        switch (family_) {
            case WeightFamily::constant: return 0.0;
            case WeightFamily::exponential: return -a_ * std::exp(-a_ * u);
            case WeightFamily::quadratic: return 2.0 * a_ * u;
            case WeightFamily::linear: return a_;
        }
        return 0.0;
    }

    WeightFamily family() const { return family_; }
    double parameter() const { return a_; }

  private:
    RegularisationWeight(WeightFamily f, double a) : family_(f), a_(a) {
        for (int i = 0; i < 1000; ++i)
            if (!((*this)(i / 999.0) > 0.0))
                throw model_error("regularisation weight must be positive on [0,1]");
    }

    WeightFamily family_;
    double a_;
};

// Residual of the modified equal-area rule: integral of (Phi - Phi_S)/f over
// the jump.  The selected shock makes this vanish; f = 1 reduces it to the
// plain equal-area integral through the same code path.
inline double modified_area_integral(const PotentialModel& pot, const ShockPosition& s,
                                     const RegularisationWeight& f) {
    return integrate([&](double u) { return (pot(u) - s.phi_s) / f(u); }, s.u_l, s.u_r, 1e-12);
}

// Closed form of the exponential-weight residual via repeated integration by
// parts: with f = e^{-Au}, the integral of (Phi - Phi_S) e^{Au} telescopes to
// boundary terms in the exact polynomial derivatives of Phi (the zeroth-order
// terms drop because Phi - Phi_S vanishes at both endpoints).
inline double modified_area_closed_form_exponential(const PotentialModel& pot,
                                                    const ShockPosition& s, double a) {
    if (a == 0.0) return modified_area_integral(pot, s, RegularisationWeight::constant());
    if (std::abs(a) < 0.25) {
        // The boundary-term form divides by a^{k+1} and cancels catastrophically
        // as a -> 0.  Sum the exact power series instead: each coefficient
        // integral of (Phi - Phi_S) u^m is an exact polynomial integral.
        Poly g = pot.poly() + Poly{-s.phi_s};
        Poly um{1.0};
        double sum = 0.0, fact = 1.0, apow = 1.0;
        for (int m = 0; m <= 40; ++m) {
            if (m > 0) {
                fact *= m;
                apow *= a;
                um = um * Poly{0.0, 1.0};
            }
            Poly anti = (g * um).antiderivative();
            double term = apow / fact * (anti(s.u_r) - anti(s.u_l));
            sum += term;
            if (m >= 4 && std::abs(term) < 1e-18 * std::max(1.0, std::abs(sum))) break;
        }
        return sum;
    }
    std::vector<Poly> derivs;
    Poly p = pot.poly();
    while (p.degree() >= 1) {
        p = p.derivative();
        derivs.push_back(p);
    }
    auto boundary = [&](double u) {
        double sum = 0.0, apow = a;  // apow = a^{k+1} for k starting at 1
        double sign = -1.0;
        for (const Poly& d : derivs) {
            apow *= a;
            sum += sign * d(u) / apow;
            sign = -sign;
        }
        return std::exp(a * u) * sum;
    };
    return boundary(s.u_r) - boundary(s.u_l);
}

namespace detail {

inline double weight_residual(const PotentialModel& pot, const ShockPosition& s,
                              WeightFamily family, double a) {
    if (family == WeightFamily::exponential)
        return modified_area_closed_form_exponential(pot, s, a);
    if (family == WeightFamily::quadratic)
        return modified_area_integral(pot, s, RegularisationWeight::quadratic(a));
    throw solver_error("weight-parameter solve supports exponential and quadratic families");
}

// Expanding parameter schedule: 0 and +/-{0.5, 1, 2, ..., 128, 200}; the
// quadratic family's negative side stays above its positivity bound -1.
inline std::vector<double> parameter_schedule(WeightFamily family) {
    std::vector<double> pos{0.0};
    for (double a = 0.5; a < 200.0; a *= 2.0) pos.push_back(a);
    pos.push_back(200.0);
    std::vector<double> grid;
    if (family == WeightFamily::quadratic) {
        grid = {-0.99, -0.9, -0.5};
    } else {
        for (auto it = pos.rbegin(); it != pos.rend(); ++it)
            if (*it > 0.0) grid.push_back(-*it);
    }
    grid.insert(grid.end(), pos.begin(), pos.end());
    return grid;
}

} // namespace detail

struct ResidualSample {
    double a = 0.0;
    double residual = 0.0;
};

// The residual as a function of the weight parameter, over the solve schedule
// (diagnostic output when no bracket is found).
inline std::vector<ResidualSample> weight_residual_curve(const PotentialModel& pot,
                                                         const ShockPosition& s,
                                                         WeightFamily family) {
    std::vector<ResidualSample> out;
    for (double a : detail::parameter_schedule(family))
        out.push_back({a, detail::weight_residual(pot, s, family, a)});
    return out;
}

struct WeightSolve {
    double a = 0.0;
    double residual = 0.0;
    int sign_changes = 0;  // over the scan schedule; expected 1
};

// Find the weight parameter whose modified equal-area rule selects the given
// shock.  Bracketing over the expanding schedule mirrors the intermediate-
// value existence argument; requires D > 0 at both endpoints (no knees).
inline WeightSolve solve_weight_parameter_detailed(const PotentialModel& pot,
                                                   const ShockPosition& s, WeightFamily family) {
    const auto& d = pot.diffusivity();
    if (!(d(s.u_l) > 0.0 && d(s.u_r) > 0.0))
        throw solver_error("weight solve requires positive diffusivity at both endpoints");
    auto grid = detail::parameter_schedule(family);
    std::vector<double> vals;
    for (double a : grid) vals.push_back(detail::weight_residual(pot, s, family, a));

    WeightSolve out;
    int first = -1;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        if (vals[i] == 0.0) {  // exact grid hit
            out.sign_changes += 1;
            if (first < 0) {
                out.a = grid[i];
                out.residual = 0.0;
                first = static_cast<int>(i);
            }
            continue;
        }
        if (vals[i] * vals[i + 1] < 0.0) {
            out.sign_changes += 1;
            if (first < 0) {
                first = static_cast<int>(i);
                out.a = solve_bracketed(
                    [&](double a) { return detail::weight_residual(pot, s, family, a); }, grid[i],
                    grid[i + 1], 1e-13);
                out.residual = detail::weight_residual(pot, s, family, out.a);
            }
        }
    }
    if (first < 0)
        throw solver_error("no sign change of the modified-area residual for |A| <= 200");
    if (std::abs(out.residual) > 1e-10)
        throw solver_error("weight-parameter residual did not reach 1e-10");
    return out;
}

inline double solve_weight_parameter(const PotentialModel& pot, const ShockPosition& s,
                                     WeightFamily family) {
    return solve_weight_parameter_detailed(pot, s, family).a;
}

// Forward map: the shock selected by a given weight — the root of the
// modified area residual over the shock family's window.
inline ShockPosition shock_for_weight(const PotentialModel& pot, const RegularisationWeight& f) {
    ShockFamily fam(pot);
    // For exponential weights the closed form is exact and, unlike quadrature,
    // stays usable when e^{-Au} spans many orders of magnitude over the jump.
    auto residual = [&](double p) {
        if (f.family() == WeightFamily::exponential)
            return modified_area_closed_form_exponential(pot, fam.at(p), f.parameter());
        return modified_area_integral(pot, fam.at(p), f);
    };
    auto roots = detail::window_roots(fam, residual);
    if (roots.empty()) throw solver_error("no shock satisfies the modified equal-area rule");
    ShockRule rule =
        f.family() == WeightFamily::constant ? ShockRule::equal_area : ShockRule::custom;
    return fam.at(roots.front(), rule);
}

// Equal-area rule in the reweighted potential (the flux-weighted alternative
// regularisation).  The given shock need not conserve the reweighted
// potential, so the level is taken as the endpoint average.  Diagnostic only.
inline double alt_rule_flux_weighted(const PotentialModel& pot, const ShockPosition& s,
                                     const RegularisationWeight& f) {
    const auto& d = pot.diffusivity();
    auto phi_w = [&](double u) {
        return integrate([&](double t) { return d(t) / f(t); }, 0.0, u, 1e-13);
    };
    double level = 0.5 * (phi_w(s.u_l) + phi_w(s.u_r));
    return integrate([&](double u) { return phi_w(u) - level; }, s.u_l, s.u_r, 1e-10);
}

// Derivative-weighted rule: integral of f'(u) (Phi - Phi_S) over the jump.
// Requires f and f' positive across the shock interval.
inline double alt_rule_fprime_weighted(const PotentialModel& pot, const ShockPosition& s,
                                       const RegularisationWeight& f) {
    for (int i = 0; i <= 1000; ++i) {
        double u = s.u_l + (s.u_r - s.u_l) * i / 1000.0;
        if (!(f(u) > 0.0 && f.derivative(u) > 0.0))
            throw model_error("derivative-weighted rule needs f and f' positive on the jump");
    }
    return integrate([&](double u) { return f.derivative(u) * (pot(u) - s.phi_s); }, s.u_l,
                     s.u_r, 1e-12);
}

} // namespace shockselect
