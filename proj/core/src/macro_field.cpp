#include "sulfsim/macro_field.hpp"

#include <stdexcept>
#include <string>

namespace sulfsim {

MacroState make_macro_state(const RunConfig& cfg, double fill) {
    MacroState s;
    s.u1.assign(cfg.grid.nx, fill);
    s.u1[0] = cfg.model.u1_dirichlet;
    return s;
}

std::vector<double> macro_rhs(const MacroState& macro,
                              std::span<const double> exchange,
                              const RunConfig& cfg) {
    const int nx = cfg.grid.nx;
    if (macro.u1.size() != static_cast<size_t>(nx) ||
        exchange.size() != static_cast<size_t>(nx)) {
        throw std::invalid_argument("macro state dimension mismatch: u1=" +
                                    std::to_string(macro.u1.size()) + ", exchange=" +
                                    std::to_string(exchange.size()) + ", expected " +
                                    std::to_string(nx));
    }
    const double d1 = cfg.model.d1;
    const double ih2 = 1.0 / (cfg.hx() * cfg.hx());
    const auto& u = macro.u1;

    std::vector<double> r(nx);
    r[0] = 0.0;  // inflow node held at u1_dirichlet
    for (int i = 1; i < nx - 1; ++i) {
        r[i] = d1 * (u[i - 1] - 2.0 * u[i] + u[i + 1]) * ih2 - exchange[i];
    }
    r[nx - 1] = 2.0 * d1 * (u[nx - 2] - u[nx - 1]) * ih2 - exchange[nx - 1];
    return r;
}

BandMatrix macro_jacobian(const RunConfig& cfg,
                          std::span<const double> d_exchange_du1) {
    const int nx = cfg.grid.nx;
    if (!d_exchange_du1.empty() && d_exchange_du1.size() != static_cast<size_t>(nx)) {
        throw std::invalid_argument("exchange-derivative length mismatch");
    }
    const double d1 = cfg.model.d1;
    const double ih2 = 1.0 / (cfg.hx() * cfg.hx());

    BandMatrix a(nx, 1, 1);
    // Row 0 stays zero: the held Dirichlet node is a trivial ODE.
    for (int i = 1; i < nx - 1; ++i) {
        a.at(i, i - 1) = d1 * ih2;
        a.at(i, i) = -2.0 * d1 * ih2;
        a.at(i, i + 1) = d1 * ih2;
    }
    a.at(nx - 1, nx - 2) = 2.0 * d1 * ih2;
    a.at(nx - 1, nx - 1) = -2.0 * d1 * ih2;
    if (!d_exchange_du1.empty()) {
        for (int i = 1; i < nx; ++i) a.at(i, i) -= d_exchange_du1[i];
    }
    return a;
}

} // namespace sulfsim
