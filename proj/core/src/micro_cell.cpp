#include "sulfsim/micro_cell.hpp"

#include <stdexcept>
#include <string>

#include "sulfsim/kinetics.hpp"

namespace sulfsim {
namespace {

void check_cell(const CellState& state, const RunConfig& cfg) {
    const size_t ny = static_cast<size_t>(cfg.grid.ny);
    if (state.u2.size() != ny || state.u3.size() != ny) {
        throw std::invalid_argument("cell state dimension mismatch: got u2=" +
                                    std::to_string(state.u2.size()) + ", u3=" +
                                    std::to_string(state.u3.size()) + ", expected " +
                                    std::to_string(ny));
    }
}

} // namespace

CellState make_cell_state(const RunConfig& cfg, double u2, double u3, double u4) {
    CellState s;
    s.u2.assign(cfg.grid.ny, u2);
    s.u3.assign(cfg.grid.ny, u3);
    s.u4 = u4;
    return s;
}

CellResidual cell_rhs(const CellState& state, double u1_local, const RunConfig& cfg) {
    check_cell(state, cfg);
    const auto& m = cfg.model;
    const int ny = cfg.grid.ny;
    const double h = cfg.hy();
    const double ih2 = 1.0 / (h * h);
    const double inv_b2 = 1.0 / m.beta2;
    const double inv_b3 = 1.0 / m.beta3;

    CellResidual r;
    r.r_u2.resize(ny);
    r.r_u3.resize(ny);

    const RateEval exch = henry_exchange(u1_local, state.u2[0], m);
    const RateEval rate = eta(state.u3[ny - 1], state.u4, m);

    for (int j = 0; j < ny; ++j) {
        const SourcePair src = bulk_sources(state.u2[j], state.u3[j], m);
        double diff2, diff3;
        if (j == 0) {
            diff2 = 2.0 * m.d2 * (state.u2[1] - state.u2[0]) * ih2;
            diff3 = 2.0 * m.d3 * (state.u3[1] - state.u3[0]) * ih2;
        } else if (j == ny - 1) {
            diff2 = 2.0 * m.d2 * (state.u2[ny - 2] - state.u2[ny - 1]) * ih2;
            diff3 = 2.0 * m.d3 * (state.u3[ny - 2] - state.u3[ny - 1]) * ih2;
        } else {
            diff2 = m.d2 * (state.u2[j - 1] - 2.0 * state.u2[j] + state.u2[j + 1]) * ih2;
            diff3 = m.d3 * (state.u3[j - 1] - 2.0 * state.u3[j] + state.u3[j + 1]) * ih2;
        }
        r.r_u2[j] = diff2 + inv_b2 * src.u2_rate;
        r.r_u3[j] = diff3 + inv_b3 * src.u3_rate;
    }
    // Ghost-eliminated flux terms: interfacial uptake at y = 0, sulfatation
    // consumption at y = ell.
    r.r_u2[0] += 2.0 * exch.value / (m.beta2 * h);
    r.r_u3[ny - 1] -= 2.0 * m.gamma_sw_coeff * rate.value / h;
    r.r_u4 = m.phi4 * m.k4 / m.beta4 * rate.value;
    return r;
}

CellJacobian cell_jacobian(const CellState& state, double u1_local, const RunConfig& cfg) {
    check_cell(state, cfg);
    const auto& m = cfg.model;
    const int ny = cfg.grid.ny;
    const double h = cfg.hy();
    const double ih2 = 1.0 / (h * h);
    const double inv_b2 = 1.0 / m.beta2;
    const double inv_b3 = 1.0 / m.beta3;
    const double r2 = m.phi2 * m.k2;
    const double r3 = m.phi3 * m.k3;

    CellJacobian jac;
    jac.matrix = BandMatrix(cell_unknowns(ny), 2, 2);
    BandMatrix& a = jac.matrix;

    const RateEval exch = henry_exchange(u1_local, state.u2[0], m);
    const RateEval rate = eta(state.u3[ny - 1], state.u4, m);

    for (int j = 0; j < ny; ++j) {
        const int i2 = cell_index_u2(j);
        const int i3 = cell_index_u3(j);
        if (j == 0) {
            a.at(i2, cell_index_u2(1)) += 2.0 * m.d2 * ih2;
            a.at(i2, i2) += -2.0 * m.d2 * ih2;
            a.at(i3, cell_index_u3(1)) += 2.0 * m.d3 * ih2;
            a.at(i3, i3) += -2.0 * m.d3 * ih2;
        } else if (j == ny - 1) {
            a.at(i2, cell_index_u2(ny - 2)) += 2.0 * m.d2 * ih2;
            a.at(i2, i2) += -2.0 * m.d2 * ih2;
            a.at(i3, cell_index_u3(ny - 2)) += 2.0 * m.d3 * ih2;
            a.at(i3, i3) += -2.0 * m.d3 * ih2;
        } else {
            a.at(i2, cell_index_u2(j - 1)) += m.d2 * ih2;
            a.at(i2, i2) += -2.0 * m.d2 * ih2;
            a.at(i2, cell_index_u2(j + 1)) += m.d2 * ih2;
            a.at(i3, cell_index_u3(j - 1)) += m.d3 * ih2;
            a.at(i3, i3) += -2.0 * m.d3 * ih2;
            a.at(i3, cell_index_u3(j + 1)) += m.d3 * ih2;
        }
        // bulk interconversion
        a.at(i2, i2) += -r2 * inv_b2;
        a.at(i2, i3) += r3 * inv_b2;
        a.at(i3, i2) += r2 * inv_b3;
        a.at(i3, i3) += -r3 * inv_b3;
    }

    // Henry row at y = 0.
    a.at(cell_index_u2(0), cell_index_u2(0)) += 2.0 * exch.d_second / (m.beta2 * h);
    jac.d_u1 = 2.0 * exch.d_first / (m.beta2 * h);

    // Sulfatation couplings at y = ell.
    const int iw3 = cell_index_u3(ny - 1);
    const int iw4 = cell_index_u4(ny);
    const double flux_coeff = 2.0 * m.gamma_sw_coeff / h;
    a.at(iw3, iw3) += -flux_coeff * rate.d_first;
    a.at(iw3, iw4) += -flux_coeff * rate.d_second;
    const double k4t = m.phi4 * m.k4 / m.beta4;
    a.at(iw4, iw3) += k4t * rate.d_first;
    a.at(iw4, iw4) += k4t * rate.d_second;
    return jac;
}

double cell_average_u3(const CellState& state, const RunConfig& cfg) {
    check_cell(state, cfg);
    const int ny = cfg.grid.ny;
    double sum = 0.5 * (state.u3[0] + state.u3[ny - 1]);
    for (int j = 1; j < ny - 1; ++j) sum += state.u3[j];
    return sum / (ny - 1);
}

CellSulfurBalance cell_sulfur_balance(const CellState& state, double u1_local,
                                      const RunConfig& cfg) {
    const auto& m = cfg.model;
    const int ny = cfg.grid.ny;
    const double h = cfg.hy();
    const CellResidual r = cell_rhs(state, u1_local, cfg);

    CellSulfurBalance b;
    for (int j = 0; j < ny; ++j) {
        const double w = (j == 0 || j == ny - 1) ? 0.5 * h : h;
        b.content_rate += w * (m.beta2 * r.r_u2[j] + m.beta3 * r.r_u3[j]);
    }
    b.boundary_in = henry_exchange(u1_local, state.u2[0], m).value;
    b.boundary_out =
        m.beta3 * m.gamma_sw_coeff * eta(state.u3[ny - 1], state.u4, m).value;
    return b;
}

} // namespace sulfsim
