#pragma once

#include <cmath>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "sulfsim/config.hpp"

namespace test_support {

/// Dense Gaussian elimination with partial pivoting; the independent oracle
/// for the structured band/arrow solvers.
inline std::vector<double> dense_solve(std::vector<std::vector<double>> a,
                                       std::vector<double> b) {
    const int n = static_cast<int>(b.size());
    for (int k = 0; k < n; ++k) {
        int p = k;
        for (int i = k + 1; i < n; ++i) {
            if (std::abs(a[i][k]) > std::abs(a[p][k])) p = i;
        }
        if (std::abs(a[p][k]) < 1e-300) throw std::runtime_error("singular");
        std::swap(a[k], a[p]);
        std::swap(b[k], b[p]);
        for (int i = k + 1; i < n; ++i) {
            const double l = a[i][k] / a[k][k];
            for (int j = k; j < n; ++j) a[i][j] -= l * a[k][j];
            b[i] -= l * b[k];
        }
    }
    std::vector<double> x(n);
    for (int k = n - 1; k >= 0; --k) {
        double acc = b[k];
        for (int j = k + 1; j < n; ++j) acc -= a[k][j] * x[j];
        x[k] = acc / a[k][k];
    }
    return x;
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    double m = 0.0;
    for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline double max_abs(std::span<const double> a) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
}

/// Small validated config for solver-level tests.
inline sulfsim::RunConfig small_config(int nx, int ny, double L = 3.0,
                                       double ell = 1.0) {
    sulfsim::RunConfig cfg;
    cfg.grid.nx = nx;
    cfg.grid.ny = ny;
    cfg.geom.L = L;
    cfg.geom.ell = ell;
    sulfsim::finalize_config(cfg);
    sulfsim::validate_config(cfg);
    return cfg;
}

} // namespace test_support
