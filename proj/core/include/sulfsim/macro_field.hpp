#pragma once

#include <span>
#include <vector>

#include "sulfsim/banded.hpp"
#include "sulfsim/config.hpp"

namespace sulfsim {

/// Macroscopic H2S(g) concentration on (0, L). Node 0 is held at the inflow
/// value u1_dirichlet for all time; node nx-1 carries a zero-flux condition.
struct MacroState {
    std::vector<double> u1;
};

/// Time derivatives of the gas field given the per-node interfacial exchange
/// sinks. The Dirichlet node is held (derivative 0); the Neumann end uses the
/// ghost-eliminated centered stencil. Exchange is subtracted on every
/// non-Dirichlet node.
std::vector<double> macro_rhs(const MacroState& macro,
                              std::span<const double> exchange,
                              const RunConfig& cfg);

/// Jacobian of macro_rhs with respect to u1 (tridiagonal, band kl = ku = 1).
/// Row 0 is identically zero: the held node is a trivial ODE, so the unit
/// Dirichlet row appears only in shifted Newton matrices I - a*J. When
/// d_exchange_du1 is non-empty its entries are subtracted from the diagonal
/// of the non-Dirichlet rows (the exchange-derivative hooks).
BandMatrix macro_jacobian(const RunConfig& cfg,
                          std::span<const double> d_exchange_du1 = {});

MacroState make_macro_state(const RunConfig& cfg, double fill);

} // namespace sulfsim
