#pragma once

#include <stdexcept>
#include <vector>

extern "C" {
void dgbtrf_(const int* m, const int* n, const int* kl, const int* ku, double* ab,
             const int* ldab, int* ipiv, int* info);
void dgbtrs_(const char* trans, const int* n, const int* kl, const int* ku, const int* nrhs,
             const double* ab, const int* ldab, const int* ipiv, double* b, const int* ldb,
             int* info);
}

namespace shockselect {

// Square banded matrix in LAPACK band storage (column-major, with kl extra
// rows of factorisation fill-in).
class BandedMatrix {
  public:
    BandedMatrix(int n, int kl, int ku)
        : n_(n), kl_(kl), ku_(ku), ldab_(2 * kl + ku + 1), ab_(static_cast<std::size_t>(ldab_) * n, 0.0) {}

    int size() const { return n_; }
    int lower() const { return kl_; }
    int upper() const { return ku_; }

    // Entry (i, j); caller must keep j - ku <= i <= j + kl.
    double& at(int i, int j) { return ab_[static_cast<std::size_t>(j) * ldab_ + (kl_ + ku_ + i - j)]; }
    double at(int i, int j) const { return ab_[static_cast<std::size_t>(j) * ldab_ + (kl_ + ku_ + i - j)]; }

    bool in_band(int i, int j) const { return i - j <= kl_ && j - i <= ku_; }

    void zero() { ab_.assign(ab_.size(), 0.0); }

    // LU factorisation in place (destroys the stored matrix).
    void factor() {
        ipiv_.resize(n_);
        int info = 0;
        dgbtrf_(&n_, &n_, &kl_, &ku_, ab_.data(), &ldab_, ipiv_.data(), &info);
        if (info != 0) throw std::runtime_error("banded LU factorisation failed");
    }

    // Solve A x = b using a prior factor(); b is overwritten with x.
    void solve(std::vector<double>& b) const {
        const char trans = 'N';
        const int nrhs = 1, ldb = n_;
        int info = 0;
        dgbtrs_(&trans, &n_, &kl_, &ku_, &nrhs, ab_.data(), &ldab_, ipiv_.data(), b.data(), &ldb,
                &info);
        if (info != 0) throw std::runtime_error("banded solve failed");
    }

  private:
    int n_, kl_, ku_, ldab_;
    std::vector<double> ab_;
    std::vector<int> ipiv_;
};

} // namespace shockselect
