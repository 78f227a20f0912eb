#include <random>

#include "doctest.h"
#include "sulfsim/banded.hpp"
#include "sulfsim/errors.hpp"
#include "test_support.hpp"

using namespace sulfsim;
using test_support::dense_solve;

namespace {

// Random band matrix with a boosted diagonal plus its dense mirror.
std::pair<BandMatrix, std::vector<std::vector<double>>> random_band(int n, int kl,
                                                                    int ku,
                                                                    std::mt19937& rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    BandMatrix a(n, kl, ku);
    std::vector<std::vector<double>> dense(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
        for (int j = std::max(0, i - kl); j <= std::min(n - 1, i + ku); ++j) {
            const double v = dist(rng) + (i == j ? 3.0 : 0.0);
            a.at(i, j) = v;
            dense[i][j] = v;
        }
    }
    return {a, dense};
}

} // namespace

TEST_CASE("band LU matches the dense oracle") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (auto [n, kl, ku] :
         {std::tuple{5, 1, 1}, {9, 2, 2}, {20, 2, 2}, {13, 3, 1}, {30, 1, 3}}) {
        for (int rep = 0; rep < 5; ++rep) {
            auto [a, dense] = random_band(n, kl, ku, rng);
            std::vector<double> b(n);
            for (auto& v : b) v = dist(rng);
            const BandLU lu(a);
            const std::vector<double> x = lu.solve(b);
            const std::vector<double> x_ref = dense_solve(dense, b);
            for (int i = 0; i < n; ++i) {
                CHECK(x[i] == doctest::Approx(x_ref[i]).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("pivoting handles a zero diagonal") {
    // [[0, 1], [1, 0]] requires a row swap.
    BandMatrix a(2, 1, 1);
    a.at(0, 1) = 1.0;
    a.at(1, 0) = 1.0;
    const BandLU lu(a);
    const std::vector<double> x = lu.solve(std::vector<double>{2.0, 3.0});
    CHECK(x[0] == doctest::Approx(3.0));
    CHECK(x[1] == doctest::Approx(2.0));
}

TEST_CASE("singular matrix is reported") {
    BandMatrix a(3, 1, 1);
    a.at(0, 0) = 1.0;
    a.at(1, 1) = 1.0;  // row 2 entirely zero
    CHECK_THROWS_AS(BandLU{a}, SolverError);
}

TEST_CASE("multiply agrees with the dense mirror") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    auto [a, dense] = random_band(12, 2, 2, rng);
    std::vector<double> x(12), y(12);
    for (auto& v : x) v = dist(rng);
    a.multiply(x, y);
    for (int i = 0; i < 12; ++i) {
        double ref = 0.0;
        for (int j = 0; j < 12; ++j) ref += dense[i][j] * x[j];
        CHECK(y[i] == doctest::Approx(ref).epsilon(1e-13));
    }
}
