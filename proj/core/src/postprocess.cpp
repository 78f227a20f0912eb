#include "sulfsim/postprocess.hpp"

#include <cmath>
#include <stdexcept>

namespace sulfsim {

PhProfile ph_profile(const CoupledState& state, const RunConfig& cfg) {
    check_dimensions(state, cfg);
    const int nx = cfg.grid.nx;
    const double hx = cfg.hx();
    PhProfile out;
    out.x.resize(nx);
    out.ph.resize(nx);
    for (int i = 0; i < nx; ++i) {
        out.x[i] = i * hx;
        const double avg = cell_average_u3(state.cells[i], cfg);
        const double activity = cfg.model.k_a * avg;
        if (activity > 0.0) {
            out.ph[i] = -std::log10(activity);
        }  // else: left undefined, never a sentinel number
    }
    return out;
}

FrontRecord front_position(const CoupledState& state, const RunConfig& cfg,
                           double epsilon) {
    check_dimensions(state, cfg);
    if (!(epsilon > 0.0 && epsilon < cfg.model.beta_bar)) {
        throw std::invalid_argument("front threshold epsilon must lie in (0, beta_bar)");
    }
    const int nx = cfg.grid.nx;
    const double hx = cfg.hx();
    const double thresh = cfg.model.beta_bar - epsilon;

    FrontRecord rec;
    rec.t = state.t;
    bool all_above = true;
    for (int i = 0; i < nx; ++i) {
        if (state.cells[i].u4 < thresh) {
            all_above = false;
            break;
        }
    }
    if (all_above) {
        rec.position = cfg.geom.L;  // front has swept the whole sample
        return rec;
    }
    for (int i = 0; i + 1 < nx; ++i) {
        const double a = state.cells[i].u4;
        const double b = state.cells[i + 1].u4;
        if (a >= thresh && b < thresh) {
            rec.position = (i + (a - thresh) / (a - b)) * hx;
            return rec;
        }
    }
    return rec;  // not yet formed
}

namespace {

// First downward crossing of the piecewise-linear nodal profile through
// level; negative when the profile never reaches it.
double first_crossing(const std::vector<const CellState*>& cells, double level,
                      double hx, bool* found) {
    const int nx = static_cast<int>(cells.size());
    *found = false;
    if (cells[0]->u4 < level) return -1.0;
    for (int i = 0; i + 1 < nx; ++i) {
        const double a = cells[i]->u4;
        const double b = cells[i + 1]->u4;
        if (a >= level && b < level) {
            *found = true;
            return (i + (a - level) / (a - b)) * hx;
        }
    }
    *found = true;  // stayed above the level across the whole domain
    return (nx - 1) * hx;
}

} // namespace

KinkRecord kink_metrics(const CoupledState& state, const RunConfig& cfg,
                        double hi_fraction, double lo_fraction) {
    check_dimensions(state, cfg);
    if (!(0.0 < lo_fraction && lo_fraction < hi_fraction && hi_fraction < 1.0)) {
        throw std::invalid_argument("kink thresholds must satisfy 0 < lo < hi < 1");
    }
    const int nx = cfg.grid.nx;
    const double hx = cfg.hx();
    KinkRecord rec;
    rec.t = state.t;

    for (int i = 0; i + 1 < nx; ++i) {
        if (state.cells[i + 1].u4 > state.cells[i].u4) {
            rec.monotone = false;
            break;
        }
    }

    std::vector<const CellState*> cells(nx);
    for (int i = 0; i < nx; ++i) cells[i] = &state.cells[i];

    const double hi = hi_fraction * cfg.model.beta_bar;
    const double lo = lo_fraction * cfg.model.beta_bar;
    bool hi_found = false, lo_found = false;
    const double x_hi = first_crossing(cells, hi, hx, &hi_found);
    const double x_lo = first_crossing(cells, lo, hx, &lo_found);
    if (!hi_found) return rec;  // no saturated plateau yet

    rec.has_layer = true;
    rec.left_extent = x_hi;
    const double right = lo_found ? std::max(x_lo, x_hi) : x_hi;
    rec.width = right - x_hi;
    rec.center = 0.5 * (x_hi + right);
    return rec;
}

IndicatorRow indicator_row(const CoupledState& state, const RunConfig& cfg) {
    IndicatorRow row;
    row.t = state.t;
    row.front = front_position(state, cfg, cfg.output.epsilon).position;
    const double avg0 = cell_average_u3(state.cells[0], cfg);
    const double activity = cfg.model.k_a * avg0;
    if (activity > 0.0) row.ph_at_x0 = -std::log10(activity);
    row.gas_total = gas_content(state, cfg);
    row.cell_sulfur_total = dissolved_sulfur_content(state, cfg);
    return row;
}

IndicatorSeries indicator_series(const std::vector<Snapshot>& snapshots,
                                 const RunConfig& cfg) {
    if (snapshots.empty()) {
        throw std::invalid_argument("indicator_series requires at least one snapshot");
    }
    IndicatorSeries series;
    series.rows.reserve(snapshots.size());
    for (const auto& snap : snapshots) {
        series.rows.push_back(indicator_row(snap.state, cfg));
        series.rows.back().t = snap.t;
    }
    return series;
}

} // namespace sulfsim
