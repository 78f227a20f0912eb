#pragma once

#include <vector>

#include "sulfsim/banded.hpp"
#include "sulfsim/config.hpp"

namespace sulfsim {

/// One pore cell: H2S(aq) and H2SO4 on the water film (0, ell) plus the
/// gypsum concentration at the solid wall y = ell. y = 0 is the water-air
/// interface, y = ell the solid-water interface. Physically meaningful
/// states have u2, u3 >= 0 and 0 <= u4 <= beta_bar; this is monitored as a
/// diagnostic, never enforced, so Newton iterates may pass through slightly
/// negative values without tripping assertions.
struct CellState {
    std::vector<double> u2;
    std::vector<double> u3;
    double u4 = 0.0;
};

/// Time derivatives of a CellState under the method-of-lines discretization.
struct CellResidual {
    std::vector<double> r_u2;
    std::vector<double> r_u3;
    double r_u4 = 0.0;
};

/// Jacobian of cell_rhs in the interleaved local ordering
/// [u2_0, u3_0, u2_1, u3_1, ..., u2_{ny-1}, u3_{ny-1}, u4] (band kl = ku = 2),
/// plus the single coupling of the u2 wall row to the local gas value.
struct CellJacobian {
    BandMatrix matrix;
    double d_u1 = 0.0;  ///< d(row u2_0)/d(u1_local)
};

/// Local index helpers for the interleaved cell layout.
inline int cell_index_u2(int j) { return 2 * j; }
inline int cell_index_u3(int j) { return 2 * j + 1; }
inline int cell_index_u4(int ny) { return 2 * ny; }
inline int cell_unknowns(int ny) { return 2 * ny + 1; }

/// Semidiscrete right-hand side of one cell. Interior rows carry the
/// centered Laplacian plus the bulk sources scaled by 1/beta_k. Boundary
/// rows eliminate the ghost node of the centered stencil against the flux
/// conditions: Henry exchange for u2 at y = 0, zero flux for u2 at y = ell
/// and u3 at y = 0, and the sulfatation outflux -gamma_sw_coeff * eta for u3
/// at y = ell. The gypsum row is (phi4 k4 / beta4) * eta.
CellResidual cell_rhs(const CellState& state, double u1_local, const RunConfig& cfg);

/// Analytic Jacobian of cell_rhs at the given state.
CellJacobian cell_jacobian(const CellState& state, double u1_local, const RunConfig& cfg);

/// Trapezoidal volume average of u3 over the water film.
double cell_average_u3(const CellState& state, const RunConfig& cfg);

/// Sulfur bookkeeping of one cell evaluated on cell_rhs.
struct CellSulfurBalance {
    double content_rate = 0.0;  ///< d/dt of the trapezoid of beta2*u2 + beta3*u3
    double boundary_in = 0.0;   ///< Henry flux at the water-air interface
    double boundary_out = 0.0;  ///< beta3 * gamma_sw_coeff * eta at the solid wall
};

/// Evaluates the three balance terms; the discretization satisfies
/// content_rate == boundary_in - boundary_out to rounding.
CellSulfurBalance cell_sulfur_balance(const CellState& state, double u1_local,
                                      const RunConfig& cfg);

/// Cell with constant initial data (profiles applied by make_initial_state).
CellState make_cell_state(const RunConfig& cfg, double u2, double u3, double u4);

} // namespace sulfsim
