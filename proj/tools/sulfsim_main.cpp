// Command-line front end: loads a run configuration, integrates the
// two-scale corrosion model and writes profile snapshots, indicator series
// and audit logs as CSV files.

#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sulfsim/runner.hpp"
#include "sulfsim/version.hpp"

int main(int argc, char** argv) {
    CLI::App app{"sulfsim - two-scale sulfate corrosion simulator"};
    app.set_version_flag("--version", std::string(sulfsim::kVersion));

    sulfsim::RunOptions opt;
    double t_end = 0.0, epsilon = 0.0;
    int nx = 0, ny = 0;
    std::vector<double> snapshots;

    app.add_option("--config", opt.config_path,
                   "Config file (key = value); defaults used when omitted")
        ->check(CLI::ExistingFile);
    app.add_option("--out-dir", opt.out_dir, "Output directory")
        ->capture_default_str();
    auto* o_tend = app.add_option("--t-end", t_end, "Override final time");
    auto* o_nx = app.add_option("--nx", nx, "Override macro node count");
    auto* o_ny = app.add_option("--ny", ny, "Override micro node count");
    auto* o_eps =
        app.add_option("--epsilon", epsilon, "Override the front threshold offset");
    auto* o_snaps = app.add_option("--snapshots", snapshots,
                                   "Comma-separated snapshot times")
                        ->delimiter(',');
    app.add_flag("--oracle", opt.oracle,
                 "Rerun with the explicit reference integrator and report the "
                 "discrepancy in the manifest");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : sulfsim::kExitConfigError;
    }

    if (*o_tend) opt.t_end = t_end;
    if (*o_nx) opt.nx = nx;
    if (*o_ny) opt.ny = ny;
    if (*o_eps) opt.epsilon = epsilon;
    if (*o_snaps) opt.snapshots = snapshots;

    return sulfsim::run(opt);
}
