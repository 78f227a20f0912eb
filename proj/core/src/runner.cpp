#include "sulfsim/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <vector>

#include "sulfsim/coupled.hpp"
#include "sulfsim/integrator.hpp"
#include "sulfsim/postprocess.hpp"
#include "sulfsim/table_io.hpp"
#include "sulfsim/version.hpp"

namespace fs = std::filesystem;

namespace sulfsim {
namespace {

std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&tt, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::vector<int> dump_node_indices(const RunConfig& cfg) {
    std::vector<int> idx;
    for (double x : cfg.output.cell_dump_x) {
        int i = static_cast<int>(std::lround(x / cfg.hx()));
        i = std::clamp(i, 0, cfg.grid.nx - 1);
        idx.push_back(i);
    }
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    return idx;
}

struct SnapshotWriter {
    const RunConfig* cfg = nullptr;
    fs::path dir;
    std::vector<int> cell_nodes;
    std::vector<std::string> files;
    std::vector<IndicatorRow> indicators;
    std::vector<double> defects;
    const double* current_defect = nullptr;

    void operator()(double t, const CoupledState& state) {
        const std::string label = format_time_label(t);
        const int nx = cfg->grid.nx;
        const int ny = cfg->grid.ny;
        const double hx = cfg->hx();
        const double hy = cfg->hy();

        std::vector<TableRow> rows(nx);
        for (int i = 0; i < nx; ++i) rows[i] = {i * hx, state.macro.u1[i]};
        write("u1_" + label + ".csv", {"x", "u1"}, rows);

        for (int i = 0; i < nx; ++i) rows[i] = {i * hx, state.cells[i].u4};
        write("u4_" + label + ".csv", {"x", "u4"}, rows);

        const PhProfile ph = ph_profile(state, *cfg);
        for (int i = 0; i < nx; ++i) rows[i] = {ph.x[i], ph.ph[i]};
        write("ph_" + label + ".csv", {"x", "pH"}, rows);

        for (int node : cell_nodes) {
            std::vector<TableRow> cell_rows(ny);
            for (int j = 0; j < ny; ++j) {
                cell_rows[j] = {j * hy, state.cells[node].u2[j],
                                state.cells[node].u3[j]};
            }
            write("cell_" + label + "_" + std::to_string(node) + ".csv",
                  {"y", "u2", "u3"}, cell_rows);
        }

        indicators.push_back(indicator_row(state, *cfg));
        indicators.back().t = t;
        defects.push_back(current_defect ? *current_defect : 0.0);
    }

    void write(const std::string& name, const std::vector<std::string>& header,
               const std::vector<TableRow>& rows) {
        write_table((dir / name).string(), header, rows);
        files.push_back(name);
    }
};

} // namespace

int run(const RunOptions& options) {
    try {
        RunConfig cfg =
            options.config_path.empty() ? RunConfig{} : load_config(options.config_path);
        if (options.t_end) cfg.time.t_end = *options.t_end;
        if (options.nx) cfg.grid.nx = *options.nx;
        if (options.ny) cfg.grid.ny = *options.ny;
        if (options.epsilon) cfg.output.epsilon = *options.epsilon;
        if (options.snapshots) {
            cfg.time.snapshot_times = *options.snapshots;
            cfg.meta.snapshots_set = true;
        }
        finalize_config(cfg);
        // The final state is always written, so a zero-length run still
        // produces the initial profile.
        auto& snaps = cfg.time.snapshot_times;
        if (std::find(snaps.begin(), snaps.end(), cfg.time.t_end) == snaps.end()) {
            snaps.push_back(cfg.time.t_end);
            std::sort(snaps.begin(), snaps.end());
        }
        validate_config(cfg);

        const std::string started = iso_timestamp();
        const auto t0 = std::chrono::steady_clock::now();

        fs::path dir(options.out_dir);
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec) throw IoError("cannot create output directory " + dir.string() + ": " +
                              ec.message());

        const CoupledState state0 = make_initial_state(cfg);

        SnapshotWriter writer;
        writer.cfg = &cfg;
        writer.dir = dir;
        if (!cfg.output.no_cell_dumps) writer.cell_nodes = dump_node_indices(cfg);

        double last_defect = 0.0;
        writer.current_defect = &last_defect;
        AuditTrail audit;
        StepObserver observer = [&](const CoupledState&, const StepStats&,
                                    const AuditTrail& a) {
            audit = a;
            last_defect = a.integrated_defect;
        };

        IntegrateResult result = integrate(
            state0, cfg, [&](double t, const CoupledState& s) { writer(t, s); },
            observer);

        double oracle_discrepancy = -1.0;
        if (options.oracle) {
            const double dt = oracle_stable_dt(cfg);
            const CoupledState oracle_final = integrate_oracle(state0, cfg, dt);
            oracle_discrepancy = relative_discrepancy(to_flat(result.final_state),
                                                      to_flat(oracle_final));
        }

        std::vector<TableRow> front_rows;
        std::vector<TableRow> totals_rows;
        for (size_t k = 0; k < writer.indicators.size(); ++k) {
            const IndicatorRow& row = writer.indicators[k];
            front_rows.push_back({row.t, row.front});
            totals_rows.push_back(
                {row.t, row.gas_total, row.cell_sulfur_total, writer.defects[k]});
        }
        writer.write("front.csv", {"t", "p"}, front_rows);
        writer.write("totals.csv",
                     {"t", "gas_total", "cell_sulfur_total", "conservation_defect"},
                     totals_rows);

        const auto t1 = std::chrono::steady_clock::now();
        const double wall = std::chrono::duration<double>(t1 - t0).count();

        std::string manifest;
        manifest += "# sulfsim run manifest\n";
        manifest += std::string("version = ") + kVersion + "\n";
        manifest += "started_at = " + started + "\n";
        manifest += "finished_at = " + iso_timestamp() + "\n";
        manifest += "wall_seconds = " + format_double(wall) + "\n";
        manifest += "steps_accepted = " + std::to_string(result.steps_accepted) + "\n";
        manifest += "steps_rejected = " + std::to_string(result.steps_rejected) + "\n";
        manifest +=
            "max_conservation_defect = " + format_double(result.audit.max_defect) + "\n";
        manifest += "integrated_defect_final = " +
                    format_double(result.audit.integrated_defect) + "\n";
        manifest +=
            "min_concentration = " + format_double(result.audit.min_concentration) +
            "\n";
        manifest +=
            "max_u4_overshoot = " + format_double(result.audit.max_u4_overshoot) + "\n";
        manifest += "first_saturation_time = ";
        if (result.audit.first_saturation_time >= 0.0) {
            manifest += format_double(result.audit.first_saturation_time);
        }
        manifest += "\n";
        if (options.oracle) {
            manifest +=
                "oracle_max_rel_discrepancy = " + format_double(oracle_discrepancy) +
                "\n";
        }
        manifest +=
            "snapshot_count = " + std::to_string(writer.indicators.size()) + "\n";
        for (const auto& f : writer.files) manifest += "file = " + f + "\n";
        manifest += "\n[config]\n";
        manifest += serialize_config(cfg);

        std::ofstream mf(dir / "manifest.txt", std::ios::binary | std::ios::trunc);
        if (!mf) throw IoError("cannot write manifest");
        mf.write(manifest.data(), static_cast<std::streamsize>(manifest.size()));
        if (!mf) throw IoError("manifest write failed");
        return kExitOk;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIoError;
    } catch (const SolverError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return kExitSolverError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace sulfsim
