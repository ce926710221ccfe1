#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <shockselect/polynomial.hpp>
#include <shockselect/roots.hpp>

namespace shockselect {

class model_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class Shape { decreasing_increasing, general };

// Density-dependent diffusivity D(u) on [0,1], positive at the ends and
// negative on one interior interval (alpha, beta).  Admissibility (exactly
// two interior zeros, +/-/+ sign pattern) is enforced at construction, so
// downstream solvers may assume it.
class DiffusivityModel {
  public:
    // D(u) = (u - a)(u - b - delta u^2), expanded to polynomial form.
    static DiffusivityModel cubic(double a, double b, double delta) {
        Poly d = Poly{-a, 1.0} * Poly{-b, 1.0, -delta};
        DiffusivityModel m(std::move(d), true);
        m.cross_check_cubic_zeros(a, b, delta);
        return m;
    }

    static DiffusivityModel polynomial(std::vector<double> coeffs) {
        return DiffusivityModel(Poly(std::move(coeffs)), true);
    }

    // Skips zero-finding and admissibility; for discretisation diagnostics
    // (e.g. constant-D Fourier-symbol checks).  Zero/shape queries throw.
    static DiffusivityModel unchecked(std::vector<double> coeffs) {
        return DiffusivityModel(Poly(std::move(coeffs)), false);
    }

    double operator()(double u) const { return d_(u); }

    double alpha() const { return require_checked(), alpha_; }
    double beta() const { return require_checked(), beta_; }
    Shape shape() const { return require_checked(), shape_; }
    bool admissible() const { return checked_; }
    const Poly& poly() const { return d_; }

  private:
    DiffusivityModel(Poly d, bool check) : d_(std::move(d)), checked_(check) {
        if (check) {
            locate_zeros();
            validate_sign_pattern();
            classify();
        }
    }

    bool require_checked() const {
        if (!checked_) throw model_error("operation requires an admissibility-checked model");
        return true;
    }

    void locate_zeros() {
        if (d_(0.0) <= 0.0 || d_(1.0) <= 0.0)
            throw model_error("diffusivity must be positive at u = 0 and u = 1");
        auto zeros = scan_roots(d_, 0.0, 1.0, 1000, 1e-14);
        if (zeros.size() != 2)
            throw model_error("expected exactly two interior diffusivity zeros, found " +
                              std::to_string(zeros.size()));
        alpha_ = zeros[0];
        beta_ = zeros[1];
    }

    void validate_sign_pattern() {
        for (int i = 0; i < 1000; ++i) {
            double u = i / 999.0;
            if (std::abs(u - alpha_) < 1e-6 || std::abs(u - beta_) < 1e-6) continue;
            double v = d_(u);
            bool inside = (u > alpha_ && u < beta_);
            if ((inside && v >= 0.0) || (!inside && v <= 0.0))
                throw model_error("diffusivity must follow a +/-/+ sign pattern on [0,1]");
        }
    }

    void classify() {
        Poly dp = d_.derivative();
        shape_ = Shape::decreasing_increasing;
        for (int i = 0; i < 1000; ++i) {
            double s = i / 999.0;
            if (dp(s * alpha_) > 1e-12 || dp(beta_ + s * (1.0 - beta_)) < -1e-12) {
                shape_ = Shape::general;
                return;
            }
        }
    }

    // The quadratic factor's roots have a closed form; require agreement with
    // the scanned zeros (guards both paths, e.g. when 4*b*delta is near 1).
    void cross_check_cubic_zeros(double a, double b, double delta) const {
        std::vector<double> cand{a};
        if (delta == 0.0) {
            cand.push_back(b);
        } else {
            double disc = 1.0 - 4.0 * b * delta;
            if (disc >= 0.0) {
                cand.push_back((1.0 + std::sqrt(disc)) / (2.0 * delta));
                cand.push_back((1.0 - std::sqrt(disc)) / (2.0 * delta));
            }
        }
        for (double z : {alpha_, beta_}) {
            bool matched = false;
            for (double cd : cand) matched = matched || std::abs(z - cd) <= 1e-10;
            if (!matched)
                throw model_error("closed-form cross-check of cubic-family zeros failed");
        }
    }

    Poly d_;
    double alpha_ = std::numeric_limits<double>::quiet_NaN();
    double beta_ = std::numeric_limits<double>::quiet_NaN();
    Shape shape_ = Shape::general;
    bool checked_ = false;
};

// Flux potential Phi(u) = integral of D from the base point u* = 0, so
// Phi(0) = 0 exactly.  Exact polynomial antiderivative.
class PotentialModel {
  public:
    explicit PotentialModel(DiffusivityModel d)
        : d_(std::move(d)), phi_(d_.poly().antiderivative()) {}

    double operator()(double u) const { return phi_(u); }
    const DiffusivityModel& diffusivity() const { return d_; }
    const Poly& poly() const { return phi_; }

  private:
    DiffusivityModel d_;
    Poly phi_;
};

// Reaction term: either identically zero or the cubic u(1-u)(u-gamma).
// Evaluation uses the factored form so the three roots are exact.
class ReactionModel {
  public:
    static ReactionModel none() { return ReactionModel(true, 0.0); }
    static ReactionModel cubic(double gamma) {
        if (!(gamma > 0.0 && gamma < 1.0))
            throw model_error("reaction threshold gamma must lie in (0,1)");
        return ReactionModel(false, gamma);
    }

    double operator()(double u) const {
        return zero_ ? 0.0 : u * (1.0 - u) * (u - gamma_);
    }

    bool is_zero() const { return zero_; }
    double gamma() const { return gamma_; }
    const Poly& poly() const { return r_; }

  private:
    ReactionModel(bool zero, double gamma)
        : zero_(zero), gamma_(gamma),
          r_(zero ? Poly{0.0} : Poly{0.0, 1.0} * Poly{1.0, -1.0} * Poly{-gamma, 1.0}) {}

    bool zero_;
    double gamma_;
    Poly r_;
};

inline void require_density(double u) {
    if (!(u >= 0.0 && u <= 1.0)) throw std::domain_error("density outside [0,1]");
}

inline double eval_diffusivity(const DiffusivityModel& m, double u) {
    require_density(u);
    return m(u);
}

inline double eval_potential(const PotentialModel& m, double u) {
    require_density(u);
    return m(u);
}

inline double eval_reaction(const ReactionModel& m, double u) {
    require_density(u);
    return m(u);
}

inline std::pair<double, double> find_diffusivity_zeros(const DiffusivityModel& m) {
    return {m.alpha(), m.beta()};
}

inline Shape classify_shape(const DiffusivityModel& m) { return m.shape(); }

} // namespace shockselect
