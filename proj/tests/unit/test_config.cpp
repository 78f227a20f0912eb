#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "sulfsim/config.hpp"

using namespace sulfsim;

TEST_CASE("defaults carry the published parameter set") {
    const RunConfig cfg = default_config();
    CHECK(cfg.model.d1 == 0.864);
    CHECK(cfg.model.d2 == 0.00864);
    CHECK(cfg.model.d3 == 0.00864);
    CHECK(cfg.model.k2 == 1.48);
    CHECK(cfg.model.k3 == 0.0084);
    CHECK(cfg.model.k4 == 10.0);
    CHECK(cfg.model.phi2 == 1.0);
    CHECK(cfg.model.phi3 == 1.0);
    CHECK(cfg.model.phi4 == 1.0);
    CHECK(cfg.model.B == 86.4);
    CHECK(cfg.model.H == 0.3);
    CHECK(cfg.model.beta_bar == 1.0);
    CHECK(cfg.model.p_order == 1.0);
    CHECK(cfg.model.q_order == 1.0);
    CHECK(cfg.model.u1_dirichlet == 0.011);
    CHECK(cfg.geom.L == 30.0);
    CHECK(cfg.geom.ell == 1.0);
    // documented fallbacks for symbols the published table omits
    CHECK(cfg.model.beta2 == 3.0);
    CHECK(cfg.model.beta3 == 3.0);
    CHECK(cfg.model.beta4 == 3.0);
    CHECK(cfg.model.k_a == 1.0);
    CHECK(cfg.model.gamma_sw_coeff == cfg.model.phi3);
    CHECK(cfg.initial.u1 == 0.0);
    CHECK(cfg.initial.u2 == 0.0);
    CHECK(cfg.initial.u3 == 0.0);
    CHECK(cfg.initial.u4 == 0.0);
    CHECK(cfg.output.epsilon == 0.01 * cfg.model.beta_bar);
    CHECK(cfg.time.snapshot_times ==
          std::vector<double>{2000, 4000, 8000, 12000, 16000, 20000});
    CHECK_NOTHROW(validate_config(cfg));
}

TEST_CASE("a file restating defaults is accepted and equals them") {
    const RunConfig cfg =
        load_config_text("d1 = 0.864\nB = 86.4\nH = 0.3\nL = 30\nell = 1\n");
    CHECK(cfg == default_config());
}

TEST_CASE("empty file yields the full default config") {
    CHECK(load_config_text("") == default_config());
    CHECK(load_config_text("# just a comment\n\n") == default_config());
}

TEST_CASE("validation errors name the offending key") {
    CHECK_THROWS_WITH_AS(load_config_text("beta_bar = -1\n"),
                         doctest::Contains("beta_bar"), ConfigError);
    CHECK_THROWS_WITH_AS(load_config_text("grid.nx = 2\n"),
                         doctest::Contains("grid.nx"), ConfigError);
    CHECK_THROWS_WITH_AS(load_config_text("p = 0.5\n"), doctest::Contains("p"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(
        load_config_text("time.t_end = 10\ntime.dt_init = 11\ntime.snapshots = 5\n"),
        doctest::Contains("time.dt_init"), ConfigError);
    CHECK_THROWS_WITH_AS(load_config_text("initial.u4 = 2\n"),
                         doctest::Contains("initial.u4"), ConfigError);
}

TEST_CASE("parse errors: unknown, duplicate, malformed") {
    CHECK_THROWS_WITH_AS(load_config_text("d9 = 1\n"), doctest::Contains("unknown"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(load_config_text("d1 = 1\nd1 = 2\n"),
                         doctest::Contains("duplicate"), ConfigError);
    CHECK_THROWS_AS(load_config_text("d1\n"), ConfigError);
    CHECK_THROWS_WITH_AS(load_config_text("d1 = abc\n"),
                         doctest::Contains("not a number"), ConfigError);
}

TEST_CASE("explicit snapshots are validated, default ones are filtered") {
    // explicit out-of-range entry fails loud
    CHECK_THROWS_AS(load_config_text("time.t_end = 100\ntime.snapshots = 50,200\n"),
                    ConfigError);
    CHECK_THROWS_AS(load_config_text("time.snapshots = 10,10\n"), ConfigError);
    // the default list adapts to a shorter run
    const RunConfig cfg = load_config_text("time.t_end = 100\n");
    CHECK(cfg.time.snapshot_times.empty());
    const RunConfig cfg2 = load_config_text("time.t_end = 4000\n");
    CHECK(cfg2.time.snapshot_times == std::vector<double>{2000, 4000});
}

TEST_CASE("derived defaults follow their anchors") {
    CHECK(load_config_text("beta_bar = 2\ninitial.u4 = 1.5\n").output.epsilon == 0.02);
    CHECK(load_config_text("phi3 = 2\n").model.gamma_sw_coeff == 2.0);
    CHECK(load_config_text("gamma_sw_coeff = 0.5\nphi3 = 2\n").model.gamma_sw_coeff ==
          0.5);
    const RunConfig cfg = load_config_text("L = 8\n");
    CHECK(cfg.output.cell_dump_x == std::vector<double>{0, 2, 4, 6, 8});
    CHECK(load_config_text("output.cells = none\n").output.cell_dump_x.empty());
}

TEST_CASE("serialize/load round trip is exact") {
    RunConfig cfg = default_config();
    cfg.model.d1 = 1.0 / 3.0;
    cfg.model.k3 = 8.4e-3;
    cfg.model.beta2 = 2.7182818284590452;
    cfg.grid.nx = 17;
    cfg.time.snapshot_times = {1.25, 2000.5, 19999.000001};
    cfg.meta.snapshots_set = true;
    cfg.output.epsilon = 0.015;
    finalize_config(cfg);
    validate_config(cfg);
    const RunConfig back = load_config_text(serialize_config(cfg));
    CHECK(back == cfg);
    CHECK(serialize_config(back) == serialize_config(cfg));
}

TEST_CASE("load_config reads files and reports missing ones") {
    const std::string path = "test_config_roundtrip.cfg";
    {
        std::ofstream f(path);
        f << "d1 = 0.5\ngrid.ny = 11\n";
    }
    const RunConfig cfg = load_config(path);
    CHECK(cfg.model.d1 == 0.5);
    CHECK(cfg.grid.ny == 11);
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_config("no_such_file.cfg"), ConfigError);
}

TEST_CASE("degenerate zero limits pass validation") {
    CHECK_NOTHROW(load_config_text("B = 0\n"));
    CHECK_NOTHROW(load_config_text("d1 = 0\n"));
    CHECK_NOTHROW(load_config_text("k2 = 0\nk3 = 0\nk4 = 0\ngamma_sw_coeff = 0\n"));
    CHECK_THROWS_AS(load_config_text("H = 0\n"), ConfigError);
    CHECK_THROWS_AS(load_config_text("beta2 = 0\n"), ConfigError);
}

TEST_CASE("t_end = 0 validates with the default dt_init") {
    const RunConfig cfg = load_config_text("time.t_end = 0\n");
    CHECK(cfg.time.t_end == 0.0);
    CHECK(cfg.time.snapshot_times.empty());
}
