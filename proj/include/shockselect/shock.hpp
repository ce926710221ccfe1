#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include <shockselect/model.hpp>
#include <shockselect/quadrature.hpp>
#include <shockselect/roots.hpp>

namespace shockselect {

enum class ShockRule { equal_area, continuous_d, lower_knee, upper_knee, custom };

// A shock jump (u_l, u_r) over the negative-diffusivity interval, with the
// conserved potential value Phi_S = Phi(u_l) = Phi(u_r).
struct ShockPosition {
    double u_l = 0.0;
    double u_r = 0.0;
    double phi_s = 0.0;
    ShockRule rule = ShockRule::custom;
};

// The one-parameter family of admissible shocks, indexed by Phi_S.  Phi is
// strictly increasing on both outer branches (D > 0 there), so each branch
// inverse is a single bracketed solve.  The representable window caps the
// knee values by the branch ranges: [max(Phi(0), Phi(beta)), min(Phi(alpha),
// Phi(1))] — for the cubic family this is just [Phi(beta), Phi(alpha)].
class ShockFamily {
  public:
    explicit ShockFamily(const PotentialModel& pot)
        : pot_(&pot), alpha_(pot.diffusivity().alpha()), beta_(pot.diffusivity().beta()),
          phi_alpha_(pot(alpha_)), phi_beta_(pot(beta_)) {
        if (phi_alpha_ - phi_beta_ < 1e-10)
            throw model_error("potential drop across the negative interval is degenerate");
        lo_ = std::max(pot(0.0), phi_beta_);
        hi_ = std::min(phi_alpha_, pot(1.0));
        if (hi_ - lo_ < 1e-10)
            throw model_error("no admissible shock window: the outer-branch potential ranges "
                              "do not overlap");
    }

    double phi_min() const { return lo_; }
    double phi_max() const { return hi_; }
    double phi_alpha() const { return phi_alpha_; }
    double phi_beta() const { return phi_beta_; }

    double u_left(double phi_s) const {
        check_window(phi_s);
        return solve_bracketed([&](double u) { return (*pot_)(u) - phi_s; }, 0.0, alpha_, 1e-14);
    }

    double u_right(double phi_s) const {
        check_window(phi_s);
        return solve_bracketed([&](double u) { return (*pot_)(u) - phi_s; }, beta_, 1.0, 1e-14);
    }

    ShockPosition at(double phi_s, ShockRule rule = ShockRule::custom) const {
        return {u_left(phi_s), u_right(phi_s), phi_s, rule};
    }

    double length(double phi_s) const { return u_right(phi_s) - u_left(phi_s); }

    // dS_L/dPhi_S = 1/D(u_r) - 1/D(u_l): each branch inverse has slope
    // 1/Phi'(u) = 1/D(u).  Diverges at a knee, where one endpoint has D = 0.
    double length_derivative(double phi_s) const {
        const auto& d = pot_->diffusivity();
        return 1.0 / d(u_right(phi_s)) - 1.0 / d(u_left(phi_s));
    }

    // d2S_L/dPhi_S^2 = -D'(u_r)/D(u_r)^3 + D'(u_l)/D(u_l)^3.
    double length_second_derivative(double phi_s) const {
        const auto& d = pot_->diffusivity();
        Poly dp = d.poly().derivative();
        double ur = u_right(phi_s), ul = u_left(phi_s);
        return -dp(ur) / std::pow(d(ur), 3) + dp(ul) / std::pow(d(ul), 3);
    }

    const PotentialModel& potential() const { return *pot_; }

  private:
    void check_window(double phi_s) const {
        if (!(phi_s >= lo_ - 1e-14 && phi_s <= hi_ + 1e-14))
            throw solver_error("shock potential value outside the representable window");
    }

    const PotentialModel* pot_;
    double alpha_, beta_, phi_alpha_, phi_beta_, lo_, hi_;
};

inline std::pair<double, double> endpoints_for_phi(const PotentialModel& pot, double phi_s) {
    ShockFamily fam(pot);
    return {fam.u_left(phi_s), fam.u_right(phi_s)};
}

// Area of Phi - Phi_S over the jump; the selected shock makes this vanish.
inline double equal_area_integral(const PotentialModel& pot, const ShockPosition& s) {
    return integrate([&](double u) { return pot(u) - s.phi_s; }, s.u_l, s.u_r, 1e-12);
}

// Same integral via the exact antiderivative of Phi; cross-check path.
inline double equal_area_integral_exact(const PotentialModel& pot, const ShockPosition& s) {
    Poly anti = pot.poly().antiderivative();
    return anti(s.u_r) - anti(s.u_l) - s.phi_s * (s.u_r - s.u_l);
}

namespace detail {

// Bracket the roots of g over the shock family's window with a 1000-panel
// sign-change scan, mirroring the intermediate-value existence arguments.
template <class G>
std::vector<double> window_roots(const ShockFamily& fam, G&& g) {
    double lo = fam.phi_min(), hi = fam.phi_max();
    double pad = 1e-12 * (hi - lo);  // keep evaluations strictly inside
    return scan_roots(g, lo + pad, hi - pad, 1000, 1e-14);
}

} // namespace detail

inline ShockPosition equal_area_shock(const PotentialModel& pot) {
    ShockFamily fam(pot);
    auto roots = detail::window_roots(
        fam, [&](double p) { return equal_area_integral(pot, fam.at(p)); });
    if (roots.empty()) throw solver_error("no equal-area shock found in the window");
    return fam.at(roots.front(), ShockRule::equal_area);
}

// All shocks with D(u_l) = D(u_r).  Decreasing-increasing models have exactly
// one; general shapes may have several (returned in increasing Phi_S order).
inline std::vector<ShockPosition> continuous_diffusivity_shocks(const PotentialModel& pot) {
    ShockFamily fam(pot);
    const auto& d = pot.diffusivity();
    auto roots = detail::window_roots(fam, [&](double p) {
        auto s = fam.at(p);
        return d(s.u_r) - d(s.u_l);
    });
    if (roots.empty()) throw solver_error("no continuous-diffusivity shock found in the window");
    std::vector<ShockPosition> out;
    for (double p : roots) out.push_back(fam.at(p, ShockRule::continuous_d));
    return out;
}

// The longest continuous-diffusivity shock (the global shock-length maximum).
inline ShockPosition continuous_diffusivity_shock(const PotentialModel& pot) {
    auto all = continuous_diffusivity_shocks(pot);
    return *std::max_element(all.begin(), all.end(), [](const auto& a, const auto& b) {
        return a.u_r - a.u_l < b.u_r - b.u_l;
    });
}

// Shocks pinned at a zero of D.  A knee is only realisable when its Phi value
// lies in the representable window (always true for the cubic family).
inline std::pair<ShockPosition, ShockPosition> knee_shocks(const PotentialModel& pot) {
    ShockFamily fam(pot);
    const double alpha = pot.diffusivity().alpha(), beta = pot.diffusivity().beta();
    if (fam.phi_beta() < fam.phi_min() - 1e-14 || fam.phi_alpha() > fam.phi_max() + 1e-14)
        throw solver_error("a knee shock falls outside the representable window for this model");
    ShockPosition lower{fam.u_left(fam.phi_beta()), beta, fam.phi_beta(), ShockRule::lower_knee};
    ShockPosition upper{alpha, fam.u_right(fam.phi_alpha()), fam.phi_alpha(), ShockRule::upper_knee};
    return {lower, upper};
}

enum class ExtremumKind { maximum, minimum };

struct LengthExtremum {
    double phi_s = 0.0;
    ExtremumKind kind = ExtremumKind::maximum;
    double length = 0.0;
};

// Critical points of S_L(Phi_S), classified by the sign of the second
// derivative (negative = maximum).
inline std::vector<LengthExtremum> shock_length_extrema(const PotentialModel& pot) {
    ShockFamily fam(pot);
    auto roots = detail::window_roots(fam, [&](double p) { return fam.length_derivative(p); });
    std::vector<LengthExtremum> out;
    for (double p : roots) {
        double curv = fam.length_second_derivative(p);
        out.push_back({p, curv < 0.0 ? ExtremumKind::maximum : ExtremumKind::minimum,
                       fam.length(p)});
    }
    return out;
}

} // namespace shockselect
