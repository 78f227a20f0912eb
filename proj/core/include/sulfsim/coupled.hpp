#pragma once

#include <span>
#include <vector>

#include "sulfsim/config.hpp"
#include "sulfsim/macro_field.hpp"
#include "sulfsim/micro_cell.hpp"

namespace sulfsim {

/// The full two-scale state: the gas field plus one cell per macro node.
/// Total unknown count nx * (2*ny + 2).
struct CoupledState {
    MacroState macro;
    std::vector<CellState> cells;
    double t = 0.0;
};

/// Flat vector layout shared by global_rhs, the Newton solver and the
/// explicit oracle: [u1_0 .. u1_{nx-1}] followed by one interleaved cell
/// block per node (see cell_index_*).
int global_unknowns(const RunConfig& cfg);
int cell_block_offset(const RunConfig& cfg, int i);

std::vector<double> to_flat(const CoupledState& state);
CoupledState from_flat(std::span<const double> flat, double t, const RunConfig& cfg);

/// Initial state from the config: constants or profiles evaluated on the
/// grid, with the gas node at x = 0 pinned to u1_dirichlet. Throws
/// ConfigError if profile values violate the initial-data invariants.
CoupledState make_initial_state(const RunConfig& cfg);

/// Right-hand side of the coupled system in the flat layout: macro_rhs with
/// exchange[i] = henry_exchange(u1_i, u2_i|_{y=0}), and cell_rhs per node.
std::vector<double> global_rhs(const CoupledState& state, const RunConfig& cfg);

/// Dimension checks shared by the solver entry points.
void check_dimensions(const CoupledState& state, const RunConfig& cfg);

/// Trapezoid mass of the gas field over (0, L).
double gas_content(const CoupledState& state, const RunConfig& cfg);

/// Macro-trapezoid of the per-cell trapezoids of beta2*u2 + beta3*u3.
double dissolved_sulfur_content(const CoupledState& state, const RunConfig& cfg);

/// Instantaneous sulfur audit of the semidiscrete system. The weighted sum
/// of the derivatives of gas + dissolved content equals
///     influx - eta_outflux
/// to rounding, where influx collects the discrete diffusive flux out of the
/// held inflow node plus that node's interfacial uptake, and eta_outflux is
/// the weighted sulfatation consumption at the solid walls. The interfacial
/// exchange cancels pairwise between the gas equation and the cell wall
/// condition on every free node.
struct MassBalance {
    double content_rate = 0.0;
    double influx = 0.0;
    double eta_outflux = 0.0;
    double defect() const { return content_rate - (influx - eta_outflux); }
};

MassBalance mass_balance(const CoupledState& state, const RunConfig& cfg);

/// The weighted-derivative side of the audit, evaluated on a precomputed
/// right-hand side vector.
double weighted_content_rate(std::span<const double> rhs_flat, const RunConfig& cfg);

/// The boundary side of the audit; a pure state functional.
struct BoundaryFlux {
    double influx = 0.0;
    double eta_outflux = 0.0;
    double net() const { return influx - eta_outflux; }
};

BoundaryFlux boundary_flux(const CoupledState& state, const RunConfig& cfg);

} // namespace sulfsim
