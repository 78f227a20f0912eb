#include "sulfsim/coupled.hpp"

#include <stdexcept>
#include <string>

#include "sulfsim/kinetics.hpp"

namespace sulfsim {

int global_unknowns(const RunConfig& cfg) {
    return cfg.grid.nx * (2 * cfg.grid.ny + 2);
}

int cell_block_offset(const RunConfig& cfg, int i) {
    return cfg.grid.nx + i * cell_unknowns(cfg.grid.ny);
}

void check_dimensions(const CoupledState& state, const RunConfig& cfg) {
    const int nx = cfg.grid.nx;
    const size_t ny = static_cast<size_t>(cfg.grid.ny);
    if (state.macro.u1.size() != static_cast<size_t>(nx) ||
        state.cells.size() != static_cast<size_t>(nx)) {
        throw std::invalid_argument(
            "coupled state dimension mismatch: macro=" +
            std::to_string(state.macro.u1.size()) + ", cells=" +
            std::to_string(state.cells.size()) + ", expected " + std::to_string(nx));
    }
    for (const auto& c : state.cells) {
        if (c.u2.size() != ny || c.u3.size() != ny) {
            throw std::invalid_argument("cell dimension mismatch inside coupled state");
        }
    }
}

std::vector<double> to_flat(const CoupledState& state) {
    const int nx = static_cast<int>(state.macro.u1.size());
    const int ny = nx > 0 ? static_cast<int>(state.cells[0].u2.size()) : 0;
    std::vector<double> flat(nx + nx * cell_unknowns(ny));
    for (int i = 0; i < nx; ++i) flat[i] = state.macro.u1[i];
    int base = nx;
    for (int i = 0; i < nx; ++i) {
        const CellState& c = state.cells[i];
        for (int j = 0; j < ny; ++j) {
            flat[base + cell_index_u2(j)] = c.u2[j];
            flat[base + cell_index_u3(j)] = c.u3[j];
        }
        flat[base + cell_index_u4(ny)] = c.u4;
        base += cell_unknowns(ny);
    }
    return flat;
}

CoupledState from_flat(std::span<const double> flat, double t, const RunConfig& cfg) {
    const int nx = cfg.grid.nx;
    const int ny = cfg.grid.ny;
    if (flat.size() != static_cast<size_t>(global_unknowns(cfg))) {
        throw std::invalid_argument("flat vector length mismatch");
    }
    CoupledState s;
    s.t = t;
    s.macro.u1.assign(flat.begin(), flat.begin() + nx);
    s.cells.resize(nx);
    for (int i = 0; i < nx; ++i) {
        const int base = cell_block_offset(cfg, i);
        CellState& c = s.cells[i];
        c.u2.resize(ny);
        c.u3.resize(ny);
        for (int j = 0; j < ny; ++j) {
            c.u2[j] = flat[base + cell_index_u2(j)];
            c.u3[j] = flat[base + cell_index_u3(j)];
        }
        c.u4 = flat[base + cell_index_u4(ny)];
    }
    return s;
}

CoupledState make_initial_state(const RunConfig& cfg) {
    const int nx = cfg.grid.nx;
    const int ny = cfg.grid.ny;
    const double hx = cfg.hx();
    const double hy = cfg.hy();
    const auto& init = cfg.initial;

    auto check = [&](const char* key, double v) {
        if (!(v >= 0.0)) {
            throw ConfigError(key, "initial profile produced a negative value");
        }
        return v;
    };

    CoupledState s;
    s.t = 0.0;
    s.macro.u1.resize(nx);
    for (int i = 0; i < nx; ++i) {
        const double x = i * hx;
        s.macro.u1[i] =
            init.u1_profile ? check("initial.u1", init.u1_profile(x)) : init.u1;
    }
    s.macro.u1[0] = cfg.model.u1_dirichlet;  // inflow value wins at x = 0

    s.cells.resize(nx);
    for (int i = 0; i < nx; ++i) {
        const double x = i * hx;
        CellState& c = s.cells[i];
        c.u2.resize(ny);
        c.u3.resize(ny);
        for (int j = 0; j < ny; ++j) {
            const double y = j * hy;
            c.u2[j] =
                init.u2_profile ? check("initial.u2", init.u2_profile(x, y)) : init.u2;
            c.u3[j] =
                init.u3_profile ? check("initial.u3", init.u3_profile(x, y)) : init.u3;
        }
        c.u4 = init.u4_profile ? check("initial.u4", init.u4_profile(x)) : init.u4;
        if (c.u4 > cfg.model.beta_bar) {
            throw ConfigError("initial.u4", "initial profile exceeds beta_bar");
        }
    }
    return s;
}

std::vector<double> global_rhs(const CoupledState& state, const RunConfig& cfg) {
    check_dimensions(state, cfg);
    const int nx = cfg.grid.nx;
    const int ny = cfg.grid.ny;

    std::vector<double> exchange(nx);
    for (int i = 0; i < nx; ++i) {
        exchange[i] =
            henry_exchange(state.macro.u1[i], state.cells[i].u2[0], cfg.model).value;
    }
    const std::vector<double> macro = macro_rhs(state.macro, exchange, cfg);

    std::vector<double> out(global_unknowns(cfg));
    for (int i = 0; i < nx; ++i) out[i] = macro[i];
    for (int i = 0; i < nx; ++i) {
        const CellResidual r = cell_rhs(state.cells[i], state.macro.u1[i], cfg);
        const int base = cell_block_offset(cfg, i);
        for (int j = 0; j < ny; ++j) {
            out[base + cell_index_u2(j)] = r.r_u2[j];
            out[base + cell_index_u3(j)] = r.r_u3[j];
        }
        out[base + cell_index_u4(ny)] = r.r_u4;
    }
    return out;
}

double gas_content(const CoupledState& state, const RunConfig& cfg) {
    const int nx = cfg.grid.nx;
    const double hx = cfg.hx();
    double sum = 0.5 * (state.macro.u1[0] + state.macro.u1[nx - 1]);
    for (int i = 1; i < nx - 1; ++i) sum += state.macro.u1[i];
    return sum * hx;
}

namespace {

double cell_sulfur_integral(const CellState& c, const RunConfig& cfg) {
    const auto& m = cfg.model;
    const int ny = cfg.grid.ny;
    const double hy = cfg.hy();
    double sum = 0.5 * (m.beta2 * c.u2[0] + m.beta3 * c.u3[0] +
                        m.beta2 * c.u2[ny - 1] + m.beta3 * c.u3[ny - 1]);
    for (int j = 1; j < ny - 1; ++j) sum += m.beta2 * c.u2[j] + m.beta3 * c.u3[j];
    return sum * hy;
}

} // namespace

double dissolved_sulfur_content(const CoupledState& state, const RunConfig& cfg) {
    const int nx = cfg.grid.nx;
    const double hx = cfg.hx();
    double sum = 0.5 * (cell_sulfur_integral(state.cells[0], cfg) +
                        cell_sulfur_integral(state.cells[nx - 1], cfg));
    for (int i = 1; i < nx - 1; ++i) sum += cell_sulfur_integral(state.cells[i], cfg);
    return sum * hx;
}

double weighted_content_rate(std::span<const double> rhs_flat, const RunConfig& cfg) {
    const auto& m = cfg.model;
    const int nx = cfg.grid.nx;
    const int ny = cfg.grid.ny;
    const double hx = cfg.hx();
    const double hy = cfg.hy();
    double rate = 0.0;
    for (int i = 0; i < nx; ++i) {
        const double wx = (i == 0 || i == nx - 1) ? 0.5 * hx : hx;
        rate += wx * rhs_flat[i];
        const int base = cell_block_offset(cfg, i);
        for (int j = 0; j < ny; ++j) {
            const double wy = (j == 0 || j == ny - 1) ? 0.5 * hy : hy;
            rate += wx * wy *
                    (m.beta2 * rhs_flat[base + cell_index_u2(j)] +
                     m.beta3 * rhs_flat[base + cell_index_u3(j)]);
        }
    }
    return rate;
}

BoundaryFlux boundary_flux(const CoupledState& state, const RunConfig& cfg) {
    const auto& m = cfg.model;
    const int nx = cfg.grid.nx;
    const int ny = cfg.grid.ny;
    const double hx = cfg.hx();
    BoundaryFlux b;
    for (int i = 0; i < nx; ++i) {
        const double wx = (i == 0 || i == nx - 1) ? 0.5 * hx : hx;
        b.eta_outflux +=
            wx * m.beta3 * m.gamma_sw_coeff *
            eta(state.cells[i].u3[ny - 1], state.cells[i].u4, m).value;
    }
    // The held inflow node feeds the grid diffusively and its own cell
    // through the interface; both count as boundary influx.
    b.influx = m.d1 * (state.macro.u1[0] - state.macro.u1[1]) / hx +
               0.5 * hx *
                   henry_exchange(state.macro.u1[0], state.cells[0].u2[0], m).value;
    return b;
}

MassBalance mass_balance(const CoupledState& state, const RunConfig& cfg) {
    check_dimensions(state, cfg);
    const std::vector<double> f = global_rhs(state, cfg);
    const BoundaryFlux flux = boundary_flux(state, cfg);
    MassBalance b;
    b.content_rate = weighted_content_rate(f, cfg);
    b.influx = flux.influx;
    b.eta_outflux = flux.eta_outflux;
    return b;
}

} // namespace sulfsim
