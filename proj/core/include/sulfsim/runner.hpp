#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sulfsim/config.hpp"

namespace sulfsim {

/// Command-line options after parsing. Absent optionals leave the config
/// untouched.
struct RunOptions {
    std::string config_path;  ///< empty: defaults
    std::string out_dir = "out";
    std::optional<double> t_end;
    std::optional<int> nx;
    std::optional<int> ny;
    std::optional<double> epsilon;
    std::optional<std::vector<double>> snapshots;
    bool oracle = false;  ///< rerun with the explicit integrator and report
                          ///< the discrepancy in the manifest
};

/// Exit codes reported by run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitSolverError = 3;
inline constexpr int kExitIoError = 4;

/// Loads the config, integrates, and writes snapshot profiles, indicator
/// series, audit totals and the manifest into out_dir. Errors are reported
/// on stderr and mapped to the exit codes above.
int run(const RunOptions& options);

} // namespace sulfsim
