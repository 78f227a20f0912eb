#include <random>

#include "doctest.h"
#include "sulfsim/kinetics.hpp"

using namespace sulfsim;

namespace {

ModelParameters params(double p = 1.0, double q = 1.0, double beta_bar = 1.0) {
    ModelParameters m;
    m.p_order = p;
    m.q_order = q;
    m.beta_bar = beta_bar;
    return m;
}

} // namespace

TEST_CASE("eta branch values") {
    const ModelParameters m = params();
    CHECK(eta(0.0, 0.5, m).value == 0.0);
    CHECK(eta(0.5, 1.0, m).value == 0.0);          // saturated wall
    CHECK(eta(0.5, 0.25, m).value == doctest::Approx(0.375).epsilon(1e-14));
    CHECK(eta(-0.1, 0.5, m).value == 0.0);         // "otherwise" branch
    CHECK(eta(0.5, -0.1, m).value == 0.0);
    CHECK(eta(0.5, 1.5, m).value == 0.0);          // clamped past saturation
    CHECK(eta(0.5, 1.5, m).d_first == 0.0);
    CHECK(eta(0.5, 1.5, m).d_second == 0.0);
}

TEST_CASE("eta seam derivatives use the interior limit") {
    const ModelParameters m = params();
    // p = 1: d/dalpha at alpha = 0 is the one-sided value (beta_bar - beta)^q.
    CHECK(eta(0.0, 0.25, m).d_first == doctest::Approx(0.75));
    // q = 1: d/dbeta at beta = beta_bar is -alpha^p.
    CHECK(eta(0.5, 1.0, m).d_second == doctest::Approx(-0.5));
    const ModelParameters m2 = params(2.0, 3.0);
    CHECK(eta(0.0, 0.25, m2).d_first == 0.0);
    CHECK(eta(0.5, 1.0, m2).d_second == 0.0);
}

TEST_CASE("henry exchange values and linearity") {
    ModelParameters m;
    m.B = 86.4;
    m.H = 0.3;
    CHECK(henry_exchange(0.011, 0.0, m).value ==
          doctest::Approx(0.28512).epsilon(1e-12));
    CHECK(henry_exchange(0.0, 0.1, m).value == doctest::Approx(-8.64).epsilon(1e-12));
    CHECK(henry_exchange(0.7, 0.3 * 0.7, m).value == doctest::Approx(0.0));
    CHECK(henry_exchange(0.011, 0.0, m).d_first == doctest::Approx(86.4 * 0.3));
    CHECK(henry_exchange(0.011, 0.0, m).d_second == doctest::Approx(-86.4));
}

TEST_CASE("bulk sources: values and exact antisymmetry") {
    ModelParameters m;
    m.phi2 = 1.0;
    m.k2 = 1.48;
    m.phi3 = 1.0;
    m.k3 = 0.0084;
    const SourcePair s = bulk_sources(1.0, 0.0, m);
    CHECK(s.u2_rate == doctest::Approx(-1.48).epsilon(1e-14));
    CHECK(s.u3_rate == doctest::Approx(1.48).epsilon(1e-14));
    CHECK(bulk_sources(0.0, 0.0, m).u2_rate == 0.0);
    // chemical equilibrium k2*u2 == k3*u3
    const double u2 = 0.0084, u3 = 1.48;
    CHECK(bulk_sources(u2, u3, m).u2_rate == doctest::Approx(0.0).epsilon(1e-12));

    std::mt19937 rng(42);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (int i = 0; i < 1000; ++i) {
        const SourcePair r = bulk_sources(dist(rng), dist(rng), m);
        CHECK(r.u2_rate + r.u3_rate == 0.0);  // exact, by construction
    }
}

TEST_CASE("eta properties: sign, support, monotonicity, continuity") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        const double p = 1.0 + 2.0 * u01(rng);
        const double q = 1.0 + 2.0 * u01(rng);
        const double bb = 0.5 + 1.5 * u01(rng);
        const ModelParameters m = params(p, q, bb);
        const double a = 2.0 * u01(rng);
        const double b = bb * u01(rng);
        const RateEval r = eta(a, b, m);
        CHECK(r.value >= 0.0);
        // monotone nondecreasing in alpha, nonincreasing in beta
        CHECK(eta(a + 0.1, b, m).value >= r.value);
        CHECK(eta(a, std::min(b + 0.1, bb), m).value <= r.value);
        // continuity at the support boundary
        CHECK(eta(1e-12, b, m).value <= 1e-11);
        CHECK(eta(a, bb - 1e-12, m).value <= 1e-11);
    }
}

TEST_CASE("eta and henry derivatives match central differences") {
    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const double h = 1e-6;
    for (int i = 0; i < 2000; ++i) {
        const double p = 1.0 + 2.0 * u01(rng);
        const double q = 1.0 + 2.0 * u01(rng);
        const double bb = 0.5 + 1.5 * u01(rng);
        const ModelParameters m = params(p, q, bb);
        // interior of the smooth branch
        const double a = 0.1 + 1.9 * u01(rng);
        const double b = bb * (0.05 + 0.85 * u01(rng));
        const RateEval r = eta(a, b, m);
        const double fd_a = (eta(a + h, b, m).value - eta(a - h, b, m).value) / (2 * h);
        const double fd_b = (eta(a, b + h, m).value - eta(a, b - h, m).value) / (2 * h);
        CHECK(r.d_first == doctest::Approx(fd_a).epsilon(1e-6));
        CHECK(r.d_second == doctest::Approx(fd_b).epsilon(1e-6));

        ModelParameters hm;
        hm.B = 0.1 + 100.0 * u01(rng);
        hm.H = 0.05 + u01(rng);
        const double u1 = u01(rng), u2 = u01(rng);
        const RateEval e = henry_exchange(u1, u2, hm);
        const double fd1 =
            (henry_exchange(u1 + h, u2, hm).value - henry_exchange(u1 - h, u2, hm).value) /
            (2 * h);
        const double fd2 =
            (henry_exchange(u1, u2 + h, hm).value - henry_exchange(u1, u2 - h, hm).value) /
            (2 * h);
        CHECK(e.d_first == doctest::Approx(fd1).epsilon(1e-6));
        CHECK(e.d_second == doctest::Approx(fd2).epsilon(1e-6));
    }
}
