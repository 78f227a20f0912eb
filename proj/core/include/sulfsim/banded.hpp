#pragma once

#include <span>
#include <vector>

namespace sulfsim {

/// Square band matrix with kl sub- and ku superdiagonals. Storage reserves
/// kl extra superdiagonals so an LU factorization with partial pivoting fits
/// in place (fill widens the upper band to kl + ku).
class BandMatrix {
public:
    BandMatrix() = default;
    BandMatrix(int n, int kl, int ku);

    int size() const { return n_; }
    int lower_bandwidth() const { return kl_; }
    int upper_bandwidth() const { return ku_; }

    /// Element access, valid for -kl <= j - i <= kl + ku; other entries are
    /// structurally zero.
    double& at(int i, int j) { return data_[index(i, j)]; }
    double at(int i, int j) const {
        const int off = j - i;
        if (off < -kl_ || off > kl_ + ku_) return 0.0;
        return data_[index(i, j)];
    }

    void set_zero();

    /// y = A * x over the declared bands.
    void multiply(std::span<const double> x, std::span<double> y) const;

private:
    friend class BandLU;
    int index(int i, int j) const { return i * width_ + (j - i + kl_); }

    int n_ = 0;
    int kl_ = 0;
    int ku_ = 0;
    int width_ = 0;  // 2*kl + ku + 1 slots per row
    std::vector<double> data_;
};

/// LU factorization of a BandMatrix with partial pivoting. Throws SolverError
/// when a pivot falls below an absolute floor.
class BandLU {
public:
    BandLU() = default;  ///< empty; assign a factored instance before use
    explicit BandLU(BandMatrix a);

    void solve_in_place(std::span<double> b) const;
    std::vector<double> solve(std::span<const double> b) const;

private:
    BandMatrix a_;
    std::vector<int> pivot_;
};

} // namespace sulfsim
