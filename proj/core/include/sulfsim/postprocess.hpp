#pragma once

#include <optional>
#include <vector>

#include "sulfsim/coupled.hpp"

namespace sulfsim {

/// Macroscopic pH per macro node, computed from the cell volume average of
/// the sulfuric acid concentration. Nodes whose average is <= 0 carry no
/// value (the logarithm is left undefined rather than clamped).
struct PhProfile {
    std::vector<double> x;
    std::vector<std::optional<double>> ph;
};

PhProfile ph_profile(const CoupledState& state, const RunConfig& cfg);

/// Corrosion front position: the first left-to-right crossing of the gypsum
/// profile through beta_bar - epsilon. Empty position means the front has
/// not formed yet; a fully saturated profile reports position L.
struct FrontRecord {
    double t = 0.0;
    std::optional<double> position;
};

FrontRecord front_position(const CoupledState& state, const RunConfig& cfg,
                           double epsilon);

/// Geometry of the transition layer between the saturated plateau and the
/// untouched region, from interpolated crossings of hi*beta_bar and
/// lo*beta_bar. Non-monotone profiles use the first crossings and are
/// flagged; profiles that never reach the hi threshold carry has_layer=false.
struct KinkRecord {
    double t = 0.0;
    bool has_layer = false;
    bool monotone = true;
    double left_extent = 0.0;  ///< end of the saturated plateau (hi crossing)
    double width = 0.0;        ///< distance between hi and lo crossings
    double center = 0.0;       ///< midpoint of the layer
};

KinkRecord kink_metrics(const CoupledState& state, const RunConfig& cfg,
                        double hi_fraction, double lo_fraction);

struct Snapshot {
    double t = 0.0;
    CoupledState state;
};

/// One row of the indicator time series.
struct IndicatorRow {
    double t = 0.0;
    std::optional<double> front;
    std::optional<double> ph_at_x0;
    double gas_total = 0.0;
    double cell_sulfur_total = 0.0;
};

IndicatorRow indicator_row(const CoupledState& state, const RunConfig& cfg);

struct IndicatorSeries {
    std::vector<IndicatorRow> rows;
};

/// Indicators for each snapshot in time order; throws on empty input.
IndicatorSeries indicator_series(const std::vector<Snapshot>& snapshots,
                                 const RunConfig& cfg);

} // namespace sulfsim
