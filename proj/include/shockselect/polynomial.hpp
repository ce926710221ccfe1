#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace shockselect {

// Dense univariate polynomial, coefficients low to high degree.
class Poly {
  public:
    Poly() : c_{0.0} {}
    explicit Poly(std::vector<double> c) : c_(std::move(c)) {
        if (c_.empty()) c_.push_back(0.0);
    }
    Poly(std::initializer_list<double> c) : c_(c) {
        if (c_.empty()) c_.push_back(0.0);
    }

    static Poly from_roots(std::initializer_list<double> roots) {
        Poly p{1.0};
        for (double r : roots) p = p * Poly{-r, 1.0};
        return p;
    }

    double operator()(double u) const {  // Horner
        double v = 0.0;
        for (std::size_t i = c_.size(); i-- > 0;) v = v * u + c_[i];
        return v;
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<double>& coeffs() const { return c_; }

    Poly derivative() const {
        if (c_.size() == 1) return Poly{0.0};
        std::vector<double> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<double>(i);
        return Poly(std::move(d));
    }

    Poly antiderivative() const {  // constant of integration 0
        std::vector<double> a(c_.size() + 1, 0.0);
        for (std::size_t i = 0; i < c_.size(); ++i) a[i + 1] = c_[i] / static_cast<double>(i + 1);
        return Poly(std::move(a));
    }

    friend Poly operator*(const Poly& p, const Poly& q) {
        std::vector<double> r(p.c_.size() + q.c_.size() - 1, 0.0);
        for (std::size_t i = 0; i < p.c_.size(); ++i)
            for (std::size_t j = 0; j < q.c_.size(); ++j) r[i + j] += p.c_[i] * q.c_[j];
        return Poly(std::move(r));
    }

    friend Poly operator+(const Poly& p, const Poly& q) {
        std::vector<double> r(std::max(p.c_.size(), q.c_.size()), 0.0);
        for (std::size_t i = 0; i < p.c_.size(); ++i) r[i] += p.c_[i];
        for (std::size_t i = 0; i < q.c_.size(); ++i) r[i] += q.c_[i];
        return Poly(std::move(r));
    }

    friend Poly operator*(double s, const Poly& p) {
        std::vector<double> r(p.c_);
        for (double& v : r) v *= s;
        return Poly(std::move(r));
    }

  private:
    std::vector<double> c_;
};

} // namespace shockselect
