#pragma once

#include <functional>
#include <string>
#include <vector>

#include "sulfsim/errors.hpp"

namespace sulfsim {

/// Physical and dimensionless constants of the corrosion model. Keys in the
/// config file carry the same names (d1, k2, phi3, beta_bar, ...).
struct ModelParameters {
    double d1 = 0.864;    ///< diffusivity of H2S(g), macro scale
    double d2 = 0.00864;  ///< diffusivity of H2S(aq), pore scale
    double d3 = 0.00864;  ///< diffusivity of H2SO4, pore scale

    // Concentration ratios of H2S(aq), H2SO4 and gypsum relative to the
    // reference species. Not part of the published parameter set; see README
    // for how the defaults were fixed.
    double beta2 = 3.0;
    double beta3 = 3.0;
    double beta4 = 3.0;

    double B = 86.4;  ///< Biot number, interfacial gas/water mass-transfer rate
    double H = 0.3;   ///< Henry constant

    double phi2 = 1.0;  ///< Damkoehler number of the oxidation reaction
    double phi3 = 1.0;  ///< Damkoehler number of the back-reaction
    double phi4 = 1.0;  ///< Damkoehler number of the sulfatation reaction

    double k2 = 1.48;    ///< rate constant, H2S(aq) -> H2SO4
    double k3 = 0.0084;  ///< rate constant, H2SO4 -> H2S(aq)
    double k4 = 10.0;    ///< rate constant of gypsum production

    double beta_bar = 1.0;  ///< maximum gypsum concentration at the solid wall
    double p_order = 1.0;   ///< partial reaction order in acid
    double q_order = 1.0;   ///< partial reaction order in free wall capacity

    double k_a = 1.0;           ///< hydronium activity used in the pH formula
    double u1_dirichlet = 0.011;  ///< gas inflow concentration held at x = 0

    /// Coefficient multiplying the sulfatation rate in the acid flux at the
    /// solid wall. Resolved to phi3 when not set explicitly.
    double gamma_sw_coeff = -1.0;
};

struct Geometry {
    double L = 30.0;  ///< macroscopic interval length
    double ell = 1.0; ///< pore (cell) interval length
};

/// Uniform grids including both endpoints.
struct GridSpec {
    int nx = 301;  ///< macro node count (>= 3)
    int ny = 41;   ///< micro node count per cell (>= 3)
};

struct TimeSpec {
    double t_end = 20000.0;
    double dt_init = 1e-6;
    std::vector<double> snapshot_times = {2000, 4000, 8000, 12000, 16000, 20000};
    double rel_tol = 1e-6;
    double abs_tol = 1e-10;
    double newton_tol = 1e-3;  ///< scaled Newton update threshold
    int newton_max_iter = 12;
};

/// Initial data. Config files carry constants; profiles can be installed
/// programmatically and take precedence over the constants.
struct InitialConditions {
    double u1 = 0.0;
    double u2 = 0.0;
    double u3 = 0.0;
    double u4 = 0.0;
    std::function<double(double)> u1_profile;          ///< x -> u1
    std::function<double(double, double)> u2_profile;  ///< (x, y) -> u2
    std::function<double(double, double)> u3_profile;  ///< (x, y) -> u3
    std::function<double(double)> u4_profile;          ///< x -> u4
};

/// Post-processing and output controls.
struct OutputSpec {
    double epsilon = -1.0;   ///< front threshold offset; resolves to 0.01*beta_bar
    double kink_hi = 0.95;   ///< upper kink threshold, fraction of beta_bar
    double kink_lo = 0.05;   ///< lower kink threshold, fraction of beta_bar
    std::vector<double> cell_dump_x;  ///< x positions of dumped cells; resolves to
                                      ///< {0, L/4, L/2, 3L/4, L}
    bool no_cell_dumps = false;
};

struct RunConfig {
    ModelParameters model;
    Geometry geom;
    GridSpec grid;
    TimeSpec time;
    InitialConditions initial;
    OutputSpec output;

    /// Tracks which keys were set explicitly, so derived defaults and the
    /// snapshot filter only apply to untouched fields.
    struct Meta {
        bool snapshots_set = false;
    } meta;

    double hx() const { return geom.L / (grid.nx - 1); }
    double hy() const { return geom.ell / (grid.ny - 1); }
};

/// Fills in derived defaults (gamma_sw_coeff, epsilon, cell dump positions)
/// and drops non-explicit snapshot times beyond t_end. Idempotent.
void finalize_config(RunConfig& cfg);

/// Checks every invariant; throws ConfigError naming the offending key.
void validate_config(const RunConfig& cfg);

/// Table defaults with derived fields resolved; passes validate_config.
RunConfig default_config();

/// Parses the key = value schema from a file. Omitted keys take defaults,
/// unknown or duplicate keys are errors, and the result is validated.
RunConfig load_config(const std::string& path);

/// Same as load_config but on an in-memory string.
RunConfig load_config_text(const std::string& text);

/// Canonical text form; load_config_text(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& cfg);

bool operator==(const ModelParameters& a, const ModelParameters& b);
bool operator==(const RunConfig& a, const RunConfig& b);

} // namespace sulfsim
