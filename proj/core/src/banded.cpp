#include "sulfsim/banded.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sulfsim/errors.hpp"

namespace sulfsim {

BandMatrix::BandMatrix(int n, int kl, int ku)
    : n_(n), kl_(kl), ku_(ku), width_(2 * kl + ku + 1),
      data_(static_cast<size_t>(n) * width_, 0.0) {}

void BandMatrix::set_zero() { std::fill(data_.begin(), data_.end(), 0.0); }

void BandMatrix::multiply(std::span<const double> x, std::span<double> y) const {
    for (int i = 0; i < n_; ++i) {
        const int jlo = std::max(0, i - kl_);
        const int jhi = std::min(n_ - 1, i + kl_ + ku_);
        double acc = 0.0;
        for (int j = jlo; j <= jhi; ++j) acc += data_[index(i, j)] * x[j];
        y[i] = acc;
    }
}

BandLU::BandLU(BandMatrix a) : a_(std::move(a)), pivot_(a_.n_) {
    const int n = a_.n_;
    const int kl = a_.kl_;
    const int ku_f = a_.kl_ + a_.ku_;  // upper bandwidth after fill
    for (int k = 0; k < n; ++k) {
        // Partial pivot among the kl candidate rows below the diagonal.
        const int imax = std::min(n - 1, k + kl);
        int p = k;
        double best = std::abs(a_.data_[a_.index(k, k)]);
        for (int i = k + 1; i <= imax; ++i) {
            const double v = std::abs(a_.data_[a_.index(i, k)]);
            if (v > best) {
                best = v;
                p = i;
            }
        }
        if (!(best > 1e-300)) {
            throw SolverError("singular band matrix at column " + std::to_string(k) +
                              " (pivot " + std::to_string(best) + ")");
        }
        pivot_[k] = p;
        const int jhi = std::min(n - 1, k + ku_f);
        if (p != k) {
            for (int j = k; j <= jhi; ++j) {
                std::swap(a_.data_[a_.index(k, j)], a_.data_[a_.index(p, j)]);
            }
        }
        const double inv_piv = 1.0 / a_.data_[a_.index(k, k)];
        for (int i = k + 1; i <= imax; ++i) {
            const double l = a_.data_[a_.index(i, k)] * inv_piv;
            a_.data_[a_.index(i, k)] = l;
            if (l != 0.0) {
                for (int j = k + 1; j <= jhi; ++j) {
                    a_.data_[a_.index(i, j)] -= l * a_.data_[a_.index(k, j)];
                }
            }
        }
    }
}

void BandLU::solve_in_place(std::span<double> b) const {
    const int n = a_.n_;
    const int kl = a_.kl_;
    const int ku_f = a_.kl_ + a_.ku_;
    for (int k = 0; k < n; ++k) {
        if (pivot_[k] != k) std::swap(b[k], b[pivot_[k]]);
        const int imax = std::min(n - 1, k + kl);
        for (int i = k + 1; i <= imax; ++i) {
            b[i] -= a_.data_[a_.index(i, k)] * b[k];
        }
    }
    for (int k = n - 1; k >= 0; --k) {
        const int jhi = std::min(n - 1, k + ku_f);
        double acc = b[k];
        for (int j = k + 1; j <= jhi; ++j) acc -= a_.data_[a_.index(k, j)] * b[j];
        b[k] = acc / a_.data_[a_.index(k, k)];
    }
}

std::vector<double> BandLU::solve(std::span<const double> b) const {
    std::vector<double> x(b.begin(), b.end());
    solve_in_place(x);
    return x;
}

} // namespace sulfsim
