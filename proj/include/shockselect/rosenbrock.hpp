#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include <shockselect/banded.hpp>
#include <shockselect/roots.hpp>

namespace shockselect {

struct RosenbrockOptions {
    double rtol = 1e-6;
    double atol = 1e-9;
    double h0 = 1e-7;
    double hmax = std::numeric_limits<double>::infinity();
    std::size_t max_steps = 50'000'000;
};

// Linearly implicit Rosenbrock 4(3) integrator (Kaps-Rentrop pair with
// Shampine's parameter set) for autonomous systems y' = f(y) whose Jacobian
// is banded with half-bandwidth bw.  The Jacobian is formed by finite
// differences using 2*bw+1 colour groups and factored with a banded LU, so a
// step costs O(n) regardless of stiffness.
template <class F>
class StiffIntegrator {
  public:
    StiffIntegrator(F f, double t0, std::vector<double> y0, int bw, RosenbrockOptions opt = {})
        : f_(std::move(f)), opt_(opt), t_(t0), y_(std::move(y0)),
          n_(static_cast<int>(y_.size())), bw_(bw), jac_(n_, bw, bw), mat_(n_, bw, bw),
          h_(opt.h0) {}

    double t() const { return t_; }
    const std::vector<double>& y() const { return y_; }
    std::size_t accepted_steps() const { return accepted_; }

    // Advance the state to exactly t_target (> current t).
    void advance(double t_target) {
        while (t_ < t_target) {
            if (std::abs(h_) < 1e-15 * std::max(1.0, std::abs(t_)))
                throw solver_error("step size underflow in stiff integration");
            double h = std::min({h_, opt_.hmax, t_target - t_});
            if (!jac_fresh_) form_jacobian();
            double en = attempt(h);
            if (en <= 1.0) {
                t_ += h;
                y_ = ynew_;
                jac_fresh_ = false;
                ++accepted_;
                double fac = std::clamp(0.9 * std::pow(std::max(en, 1e-16), -0.25), 0.2, 5.0);
                h_ = h * fac;
            } else {
                h_ = h * std::clamp(0.9 * std::pow(en, -0.25), 0.1, 0.5);
            }
            if (++total_ > opt_.max_steps) throw solver_error("stiff integration exceeded the step budget");
        }
    }

  private:
    void form_jacobian() {
        f0_.resize(n_);
        f_(y_, f0_);
        jac_.zero();
        const int stride = 2 * bw_ + 1;
        std::vector<double> yp(y_), f1(n_), del(n_, 0.0);
        const double sqeps = std::sqrt(std::numeric_limits<double>::epsilon());
        for (int c = 0; c < stride; ++c) {
            for (int j = c; j < n_; j += stride) {
                del[j] = sqeps * std::max(std::abs(y_[j]), 1e-5);
                yp[j] = y_[j] + del[j];
            }
            f_(yp, f1);
            for (int j = c; j < n_; j += stride) {
                for (int i = std::max(0, j - bw_); i <= std::min(n_ - 1, j + bw_); ++i)
                    jac_.at(i, j) = (f1[i] - f0_[i]) / del[j];
                yp[j] = y_[j];
            }
        }
        jac_fresh_ = true;
    }

    // One trial step of size h; fills ynew_ and returns the error norm.
    double attempt(double h) {
        static constexpr double GAM = 0.5;
        static constexpr double A21 = 2.0, A31 = 48.0 / 25, A32 = 6.0 / 25;
        static constexpr double C21 = -8.0, C31 = 372.0 / 25, C32 = 12.0 / 5;
        static constexpr double C41 = -112.0 / 125, C42 = -54.0 / 125, C43 = -2.0 / 5;
        static constexpr double B1 = 19.0 / 9, B2 = 1.0 / 2, B3 = 25.0 / 108, B4 = 125.0 / 108;
        static constexpr double E1 = 17.0 / 54, E2 = 7.0 / 36, E3 = 0.0, E4 = 125.0 / 108;

        mat_.zero();
        const double d = 1.0 / (GAM * h);
        for (int j = 0; j < n_; ++j)
            for (int i = std::max(0, j - bw_); i <= std::min(n_ - 1, j + bw_); ++i)
                mat_.at(i, j) = (i == j ? d : 0.0) - jac_.at(i, j);
        mat_.factor();

        std::vector<double> g1(f0_), g2(n_), g3(n_), g4(n_), tmp(n_), fx(n_);
        mat_.solve(g1);

        for (int i = 0; i < n_; ++i) tmp[i] = y_[i] + A21 * g1[i];
        f_(tmp, fx);
        for (int i = 0; i < n_; ++i) g2[i] = fx[i] + C21 * g1[i] / h;
        mat_.solve(g2);

        for (int i = 0; i < n_; ++i) tmp[i] = y_[i] + A31 * g1[i] + A32 * g2[i];
        f_(tmp, fx);
        for (int i = 0; i < n_; ++i) g3[i] = fx[i] + (C31 * g1[i] + C32 * g2[i]) / h;
        mat_.solve(g3);

        // The fourth stage reuses the third stage's argument (and its f value).
        for (int i = 0; i < n_; ++i) g4[i] = fx[i] + (C41 * g1[i] + C42 * g2[i] + C43 * g3[i]) / h;
        mat_.solve(g4);

        ynew_.resize(n_);
        double s = 0.0;
        for (int i = 0; i < n_; ++i) {
            ynew_[i] = y_[i] + B1 * g1[i] + B2 * g2[i] + B3 * g3[i] + B4 * g4[i];
            double ei = E1 * g1[i] + E2 * g2[i] + E3 * g3[i] + E4 * g4[i];
            double sc = opt_.atol + opt_.rtol * std::max(std::abs(y_[i]), std::abs(ynew_[i]));
            s += (ei / sc) * (ei / sc);
        }
        return std::sqrt(s / n_);
    }

    F f_;
    RosenbrockOptions opt_;
    double t_;
    std::vector<double> y_, ynew_, f0_;
    int n_, bw_;
    BandedMatrix jac_, mat_;
    double h_;
    bool jac_fresh_ = false;
    std::size_t accepted_ = 0, total_ = 0;
};

} // namespace shockselect
