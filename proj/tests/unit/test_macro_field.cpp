#include <random>

#include "doctest.h"
#include "sulfsim/kinetics.hpp"
#include "sulfsim/macro_field.hpp"
#include "test_support.hpp"

using namespace sulfsim;
using test_support::small_config;

TEST_CASE("uniform inflow value with no exchange is steady") {
    const RunConfig cfg = small_config(9, 3);
    const MacroState s = make_macro_state(cfg, cfg.model.u1_dirichlet);
    const std::vector<double> exch(cfg.grid.nx, 0.0);
    for (double v : macro_rhs(s, exch, cfg)) CHECK(v == 0.0);
}

TEST_CASE("diffusion is exact on quadratics") {
    RunConfig cfg = small_config(9, 3, 4.0);
    MacroState s = make_macro_state(cfg, 0.0);
    for (int i = 0; i < cfg.grid.nx; ++i) {
        const double x = i * cfg.hx();
        s.u1[i] = x * x;
    }
    const std::vector<double> exch(cfg.grid.nx, 0.0);
    const std::vector<double> r = macro_rhs(s, exch, cfg);
    for (int i = 1; i < cfg.grid.nx - 1; ++i) {
        CHECK(r[i] == doctest::Approx(2.0 * 0.864).epsilon(1e-12));
    }
    CHECK(r[0] == 0.0);
}

TEST_CASE("pure sink drives every free node at -c") {
    const RunConfig cfg = small_config(7, 3);
    const MacroState s{std::vector<double>(7, 0.0)};
    const std::vector<double> exch(7, 0.25);
    const std::vector<double> r = macro_rhs(s, exch, cfg);
    CHECK(r[0] == 0.0);
    for (int i = 1; i < 7; ++i) CHECK(r[i] == -0.25);
}

TEST_CASE("Jacobian: held row, row sums, FD agreement through the exchange") {
    const RunConfig cfg = small_config(5, 3);
    const int nx = cfg.grid.nx;

    SUBCASE("held Dirichlet row is the zero row of the derivative") {
        const BandMatrix j = macro_jacobian(cfg);
        CHECK(j.at(0, 0) == 0.0);
        CHECK(j.at(0, 1) == 0.0);
        // interior stencil rows sum to zero (consistency)
        for (int i = 1; i < nx - 1; ++i) {
            CHECK(j.at(i, i - 1) + j.at(i, i) + j.at(i, i + 1) ==
                  doctest::Approx(0.0).epsilon(1e-14));
        }
        CHECK(j.at(nx - 1, nx - 2) + j.at(nx - 1, nx - 1) ==
              doctest::Approx(0.0).epsilon(1e-14));
    }

    SUBCASE("matches finite differences of the exchange-coupled field") {
        // g(u1) = macro_rhs with exchange = henry(u1_i, fixed u2); the hook
        // contributes -B*H on each free diagonal.
        const double u2_fixed = 0.002;
        auto g = [&](const std::vector<double>& u1) {
            MacroState s{u1};
            std::vector<double> exch(nx);
            for (int i = 0; i < nx; ++i) {
                exch[i] = henry_exchange(u1[i], u2_fixed, cfg.model).value;
            }
            return macro_rhs(s, exch, cfg);
        };
        std::vector<double> dexch(nx, cfg.model.B * cfg.model.H);
        const BandMatrix j = macro_jacobian(cfg, dexch);

        std::mt19937 rng(3);
        std::uniform_real_distribution<double> dist(0.0, 0.01);
        std::vector<double> u1(nx);
        for (auto& v : u1) v = dist(rng);
        const double h = 1e-7;
        for (int col = 0; col < nx; ++col) {
            std::vector<double> up = u1, um = u1;
            up[col] += h;
            um[col] -= h;
            const std::vector<double> fp = g(up), fm = g(um);
            for (int row = 0; row < nx; ++row) {
                const double fd = (fp[row] - fm[row]) / (2 * h);
                const double an = j.at(row, col);
                if (std::abs(fd) > 1e-4) {
                    CHECK(an == doctest::Approx(fd).epsilon(1e-6));
                } else {
                    CHECK(std::abs(an - fd) < 1e-5);
                }
            }
        }
    }

    SUBCASE("no diffusion leaves a diagonal-only matrix") {
        RunConfig c2 = cfg;
        c2.model.d1 = 0.0;
        const BandMatrix j = macro_jacobian(c2);
        for (int i = 0; i < nx; ++i) {
            CHECK(j.at(i, std::max(0, i - 1)) == (i > 0 ? 0.0 : j.at(0, 0)));
            if (i + 1 < nx) CHECK(j.at(i, i + 1) == 0.0);
            CHECK(j.at(i, i) == 0.0);
        }
    }
}

TEST_CASE("dimension mismatch is rejected") {
    const RunConfig cfg = small_config(5, 3);
    const MacroState s = make_macro_state(cfg, 0.0);
    CHECK_THROWS_AS(macro_rhs(s, std::vector<double>(4, 0.0), cfg),
                    std::invalid_argument);
}
