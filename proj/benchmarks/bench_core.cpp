#include <benchmark/benchmark.h>

#include "sulfsim/config.hpp"
#include "sulfsim/coupled.hpp"
#include "sulfsim/integrator.hpp"
#include "sulfsim/micro_cell.hpp"

using namespace sulfsim;

namespace {

RunConfig bench_config(int nx, int ny) {
    RunConfig cfg;
    cfg.grid.nx = nx;
    cfg.grid.ny = ny;
    cfg.time.snapshot_times.clear();
    cfg.meta.snapshots_set = true;
    finalize_config(cfg);
    validate_config(cfg);
    return cfg;
}

CoupledState warm_state(const RunConfig& cfg) {
    RunConfig pre = cfg;
    pre.time.t_end = 1.0;
    return integrate(make_initial_state(pre), pre).final_state;
}

void BM_cell_rhs(benchmark::State& state) {
    const RunConfig cfg = bench_config(3, static_cast<int>(state.range(0)));
    const CoupledState s = warm_state(cfg);
    for (auto _ : state) {
        benchmark::DoNotOptimize(cell_rhs(s.cells[1], s.macro.u1[1], cfg));
    }
}
BENCHMARK(BM_cell_rhs)->Arg(41)->Arg(81);

void BM_cell_jacobian(benchmark::State& state) {
    const RunConfig cfg = bench_config(3, static_cast<int>(state.range(0)));
    const CoupledState s = warm_state(cfg);
    for (auto _ : state) {
        benchmark::DoNotOptimize(cell_jacobian(s.cells[1], s.macro.u1[1], cfg));
    }
}
BENCHMARK(BM_cell_jacobian)->Arg(41);

void BM_global_rhs(benchmark::State& state) {
    const RunConfig cfg = bench_config(static_cast<int>(state.range(0)), 41);
    const CoupledState s = warm_state(cfg);
    for (auto _ : state) {
        benchmark::DoNotOptimize(global_rhs(s, cfg));
    }
}
BENCHMARK(BM_global_rhs)->Arg(101)->Arg(301);

void BM_assemble_and_solve(benchmark::State& state) {
    const RunConfig cfg = bench_config(static_cast<int>(state.range(0)), 41);
    const CoupledState s = warm_state(cfg);
    const std::vector<double> rhs(global_unknowns(cfg), 1.0);
    for (auto _ : state) {
        const ShiftedSystem sys(s, cfg, 0.01);
        benchmark::DoNotOptimize(sys.solve(rhs));
    }
}
BENCHMARK(BM_assemble_and_solve)->Arg(101)->Arg(301);

void BM_implicit_step(benchmark::State& state) {
    const RunConfig cfg = bench_config(static_cast<int>(state.range(0)), 41);
    const CoupledState s = warm_state(cfg);
    for (auto _ : state) {
        benchmark::DoNotOptimize(implicit_step(s, 0.05, cfg));
    }
}
BENCHMARK(BM_implicit_step)->Arg(101)->Arg(301);

} // namespace

BENCHMARK_MAIN();
