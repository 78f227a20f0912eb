#include "sulfsim/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <string>

#include "sulfsim/errors.hpp"
#include "sulfsim/kinetics.hpp"

namespace sulfsim {
namespace {

const double kSqrt2 = std::sqrt(2.0);
const double kGamma = 2.0 - kSqrt2;          // trapezoidal stage fraction
const double kShift = 1.0 - 0.5 * kSqrt2;    // gamma/2; both stages share it
const double kBdfU = 1.0 / (kGamma * (2.0 - kGamma));
const double kBdfN = (1.0 - kGamma) * (1.0 - kGamma) * kBdfU;
// Weights of the embedded third-order comparison minus the step weights.
const double kErrW0 = (1.0 - kSqrt2) / 3.0;
const double kErrW1 = 1.0 / 3.0;
const double kErrW2 = -(2.0 - kSqrt2) / 3.0;
// Quadrature weights of the step itself: u_{n+1} - u_n = dt * sum b_i f_i.
const double kStepB0 = kSqrt2 / 4.0;
const double kStepB1 = kSqrt2 / 4.0;
const double kStepB2 = 1.0 - 0.5 * kSqrt2;

std::vector<double> scale_vector(std::span<const double> a,
                                 std::span<const double> b,
                                 const TimeSpec& time) {
    std::vector<double> s(a.size());
    for (size_t i = 0; i < a.size(); ++i) {
        s[i] = time.abs_tol + time.rel_tol * std::max(std::abs(a[i]), std::abs(b[i]));
    }
    return s;
}

double wrms(std::span<const double> v, std::span<const double> scale) {
    double acc = 0.0;
    for (size_t i = 0; i < v.size(); ++i) {
        const double r = v[i] / scale[i];
        acc += r * r;
    }
    return std::sqrt(acc / static_cast<double>(v.size()));
}

struct NewtonOutcome {
    bool converged = false;
    int iterations = 0;
    std::vector<double> f_at_solution;
    std::unique_ptr<ShiftedSystem> last_system;
};

// Solves w = target + a * f(w) by Newton iteration with the analytic
// Jacobian reassembled every iteration.
NewtonOutcome newton_solve(std::vector<double>& w, std::span<const double> target,
                           double a, double t, const RunConfig& cfg,
                           std::span<const double> scale) {
    NewtonOutcome out;
    const int n = static_cast<int>(w.size());
    double prev_norm = std::numeric_limits<double>::infinity();
    std::vector<double> rhs(n);
    for (int iter = 1; iter <= cfg.time.newton_max_iter; ++iter) {
        CoupledState ws = from_flat(w, t, cfg);
        std::vector<double> f = global_rhs(ws, cfg);
        auto system = std::make_unique<ShiftedSystem>(ws, cfg, a);
        for (int i = 0; i < n; ++i) rhs[i] = -(w[i] - target[i] - a * f[i]);
        const std::vector<double> delta = system->solve(rhs);
        for (int i = 0; i < n; ++i) w[i] += delta[i];
        const double norm = wrms(delta, scale);
        out.iterations = iter;
        out.last_system = std::move(system);
        if (norm <= cfg.time.newton_tol) {
            out.converged = true;
            out.f_at_solution = global_rhs(from_flat(w, t, cfg), cfg);
            return out;
        }
        if (iter > 2 && norm > 2.0 * prev_norm) break;  // diverging
        prev_norm = norm;
    }
    return out;
}

struct StepExtras {
    double flux_quadrature = 0.0;   // sum b_i * boundary_flux(stage_i)
    double content_rate_end = 0.0;  // weighted content rate at the new state
    double flux_end = 0.0;          // boundary flux at the new state
    bool wanted = false;
};

std::pair<CoupledState, StepStats> step_core(const CoupledState& state, double dt,
                                             const RunConfig& cfg, StepExtras* extras) {
    check_dimensions(state, cfg);
    if (!(dt > 0.0)) throw std::invalid_argument("implicit_step requires dt > 0");

    StepStats stats;
    stats.dt_taken = dt;

    const std::vector<double> un = to_flat(state);
    const int n = static_cast<int>(un.size());
    const double a = kShift * dt;

    const std::vector<double> fn = global_rhs(state, cfg);
    const std::vector<double> scale = scale_vector(un, un, cfg.time);

    // Trapezoidal stage to t + gamma*dt.
    std::vector<double> target1(n);
    for (int i = 0; i < n; ++i) target1[i] = un[i] + a * fn[i];
    std::vector<double> ug = un;
    NewtonOutcome s1 = newton_solve(ug, target1, a, state.t, cfg, scale);
    stats.newton_iterations = s1.iterations;
    if (!s1.converged) {
        stats.newton_converged = false;
        stats.error_estimate = std::numeric_limits<double>::infinity();
        return {state, stats};
    }

    // BDF2 closure to t + dt.
    std::vector<double> target2(n);
    for (int i = 0; i < n; ++i) target2[i] = kBdfU * ug[i] - kBdfN * un[i];
    target2[0] = un[0];  // exact hold of the inflow node
    std::vector<double> up(n);
    const double inv_gamma = 1.0 / kGamma;
    for (int i = 0; i < n; ++i) up[i] = un[i] + inv_gamma * (ug[i] - un[i]);
    NewtonOutcome s2 = newton_solve(up, target2, a, state.t, cfg, scale);
    stats.newton_iterations = std::max(stats.newton_iterations, s2.iterations);
    if (!s2.converged) {
        stats.newton_converged = false;
        stats.error_estimate = std::numeric_limits<double>::infinity();
        return {state, stats};
    }

    // Embedded error, filtered through the iteration matrix so the stiff
    // components do not overestimate.
    std::vector<double> est(n);
    for (int i = 0; i < n; ++i) {
        est[i] = dt * (kErrW0 * fn[i] + kErrW1 * s1.f_at_solution[i] +
                       kErrW2 * s2.f_at_solution[i]);
    }
    est = s2.last_system->solve(est);
    const std::vector<double> err_scale = scale_vector(un, up, cfg.time);
    stats.error_estimate = wrms(est, err_scale);
    stats.accepted = stats.error_estimate <= 1.0;
    if (!stats.accepted) return {state, stats};

    CoupledState out = from_flat(up, state.t + dt, cfg);
    if (extras && extras->wanted) {
        CoupledState gs = from_flat(ug, state.t + kGamma * dt, cfg);
        extras->flux_quadrature = kStepB0 * boundary_flux(state, cfg).net() +
                                  kStepB1 * boundary_flux(gs, cfg).net() +
                                  kStepB2 * boundary_flux(out, cfg).net();
        extras->content_rate_end = weighted_content_rate(s2.f_at_solution, cfg);
        extras->flux_end = boundary_flux(out, cfg).net();
    }
    return {std::move(out), stats};
}

double min_component(const CoupledState& s) {
    double m = std::numeric_limits<double>::infinity();
    for (double v : s.macro.u1) m = std::min(m, v);
    for (const auto& c : s.cells) {
        for (double v : c.u2) m = std::min(m, v);
        for (double v : c.u3) m = std::min(m, v);
        m = std::min(m, c.u4);
    }
    return m;
}

} // namespace

ShiftedSystem::ShiftedSystem(const CoupledState& state, const RunConfig& cfg,
                             double shift)
    : nx_(cfg.grid.nx), ny_(cfg.grid.ny), m_(cell_unknowns(cfg.grid.ny)),
      shift_(shift) {
    check_dimensions(state, cfg);
    const auto& mp = cfg.model;

    cell_raw_.reserve(nx_);
    gas_to_cell_.resize(nx_);
    cell_to_gas_.resize(nx_);

    for (int i = 0; i < nx_; ++i) {
        CellJacobian jac = cell_jacobian(state.cells[i], state.macro.u1[i], cfg);
        BandMatrix block(m_, 2, 2);
        for (int r = 0; r < m_; ++r) {
            const int jlo = std::max(0, r - 2);
            const int jhi = std::min(m_ - 1, r + 2);
            for (int c = jlo; c <= jhi; ++c) {
                block.at(r, c) = (r == c ? 1.0 : 0.0) - shift * jac.matrix.at(r, c);
            }
        }
        gas_to_cell_[i] = -shift * jac.d_u1;
        cell_to_gas_[i] = (i == 0) ? 0.0 : -shift * mp.B;
        cell_raw_.push_back(std::move(block));
    }

    std::vector<double> dexch(nx_, mp.B * mp.H);
    const BandMatrix jm = macro_jacobian(cfg, dexch);
    macro_raw_ = BandMatrix(nx_, 1, 1);
    for (int i = 0; i < nx_; ++i) {
        const int jlo = std::max(0, i - 1);
        const int jhi = std::min(nx_ - 1, i + 1);
        for (int j = jlo; j <= jhi; ++j) {
            macro_raw_.at(i, j) = (i == j ? 1.0 : 0.0) - shift * jm.at(i, j);
        }
    }

    // Factor the cell blocks, pull the wall column of each inverse, and fold
    // the eliminated couplings onto the gas tridiagonal (Schur complement).
    cell_lu_.reserve(nx_);
    wall_inverse_col_.resize(nx_);
    BandMatrix schur = macro_raw_;
    std::vector<double> e0(m_, 0.0);
    for (int i = 0; i < nx_; ++i) {
        cell_lu_.emplace_back(cell_raw_[i]);
        e0.assign(m_, 0.0);
        e0[0] = 1.0;
        wall_inverse_col_[i] = cell_lu_[i].solve(e0);
        schur.at(i, i) -= cell_to_gas_[i] * gas_to_cell_[i] * wall_inverse_col_[i][0];
    }
    schur_lu_ = BandLU(std::move(schur));
}

std::vector<double> ShiftedSystem::solve(std::span<const double> rhs) const {
    const int total = nx_ + nx_ * m_;
    if (rhs.size() != static_cast<size_t>(total)) {
        throw std::invalid_argument("solve_linear rhs length mismatch");
    }
    std::vector<double> x(total);

    // Cell elimination.
    std::vector<double> z(static_cast<size_t>(nx_) * m_);
    std::vector<double> gas_rhs(nx_);
    for (int i = 0; i < nx_; ++i) {
        const int base = nx_ + i * m_;
        std::span<double> zi(z.data() + static_cast<size_t>(i) * m_, m_);
        std::copy(rhs.begin() + base, rhs.begin() + base + m_, zi.begin());
        cell_lu_[i].solve_in_place(zi);
        gas_rhs[i] = rhs[i] - cell_to_gas_[i] * zi[0];
    }

    // Gas tridiagonal Schur solve.
    schur_lu_.solve_in_place(gas_rhs);
    for (int i = 0; i < nx_; ++i) x[i] = gas_rhs[i];

    // Back-substitute the gas correction into each cell.
    for (int i = 0; i < nx_; ++i) {
        const int base = nx_ + i * m_;
        const double corr = gas_to_cell_[i] * x[i];
        const std::vector<double>& w = wall_inverse_col_[i];
        for (int r = 0; r < m_; ++r) {
            x[base + r] = z[static_cast<size_t>(i) * m_ + r] - corr * w[r];
        }
    }
    return x;
}

std::vector<double> ShiftedSystem::multiply(std::span<const double> x) const {
    const int total = nx_ + nx_ * m_;
    if (x.size() != static_cast<size_t>(total)) {
        throw std::invalid_argument("multiply operand length mismatch");
    }
    std::vector<double> y(total, 0.0);
    std::vector<double> tmp(nx_);
    macro_raw_.multiply(x.subspan(0, nx_), tmp);
    for (int i = 0; i < nx_; ++i) {
        const int base = nx_ + i * m_;
        y[i] = tmp[i] + cell_to_gas_[i] * x[base];
        std::vector<double> cy(m_);
        cell_raw_[i].multiply(x.subspan(base, m_), cy);
        for (int r = 0; r < m_; ++r) y[base + r] = cy[r];
        y[base] += gas_to_cell_[i] * x[i];
    }
    return y;
}

std::vector<double> solve_linear(const ShiftedSystem& system,
                                 std::span<const double> rhs) {
    return system.solve(rhs);
}

std::pair<CoupledState, StepStats> implicit_step(const CoupledState& state,
                                                 double dt, const RunConfig& cfg) {
    return step_core(state, dt, cfg, nullptr);
}

CoupledState oracle_step(const CoupledState& state, double dt, const RunConfig& cfg) {
    check_dimensions(state, cfg);
    const std::vector<double> u = to_flat(state);
    const int n = static_cast<int>(u.size());

    const std::vector<double> k1 = global_rhs(state, cfg);
    std::vector<double> tmp(n);
    for (int i = 0; i < n; ++i) tmp[i] = u[i] + 0.5 * dt * k1[i];
    const std::vector<double> k2 = global_rhs(from_flat(tmp, state.t, cfg), cfg);
    for (int i = 0; i < n; ++i) tmp[i] = u[i] + 0.5 * dt * k2[i];
    const std::vector<double> k3 = global_rhs(from_flat(tmp, state.t, cfg), cfg);
    for (int i = 0; i < n; ++i) tmp[i] = u[i] + dt * k3[i];
    const std::vector<double> k4 = global_rhs(from_flat(tmp, state.t, cfg), cfg);

    for (int i = 0; i < n; ++i) {
        tmp[i] = u[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return from_flat(tmp, state.t + dt, cfg);
}

double oracle_stable_dt(const RunConfig& cfg) {
    const auto& m = cfg.model;
    const double hx = cfg.hx();
    const double hy = cfg.hy();
    // Crude bound on the acid level reachable through the interconversion.
    const double u3_cap =
        std::max(1.0, m.phi2 * m.k2 * m.H * m.u1_dirichlet /
                          std::max(m.phi3 * m.k3, 1e-6));
    const double deta_max =
        m.p_order * std::pow(u3_cap, m.p_order - 1.0) *
            std::pow(m.beta_bar, m.q_order) +
        m.q_order * std::pow(u3_cap, m.p_order) *
            std::pow(m.beta_bar, m.q_order - 1.0);
    double lam = 4.0 * m.d1 / (hx * hx) + m.B * m.H;
    lam = std::max(lam, 4.0 * m.d2 / (hy * hy) + 2.0 * m.B / (m.beta2 * hy) +
                            m.phi2 * m.k2 / m.beta2);
    lam = std::max(lam, 4.0 * m.d3 / (hy * hy) +
                            2.0 * m.gamma_sw_coeff * deta_max / hy +
                            m.phi3 * m.k3 / m.beta3);
    lam = std::max(lam, m.phi4 * m.k4 / m.beta4 * deta_max);
    return 2.5 / lam;
}

IntegrateResult integrate(const CoupledState& state0, const RunConfig& cfg,
                          const SnapshotSink& sink, const StepObserver& observer) {
    check_dimensions(state0, cfg);
    IntegrateResult result;
    CoupledState state = state0;
    state.macro.u1[0] = cfg.model.u1_dirichlet;

    const double t_end = cfg.time.t_end;
    const double dt_min = 1e-12 * std::max(t_end, 1.0);
    const double saturation_level = cfg.model.beta_bar - cfg.output.epsilon;

    AuditTrail audit;
    audit.min_concentration = min_component(state);
    if (state.cells[0].u4 >= saturation_level) audit.first_saturation_time = state.t;
    const double content0 =
        gas_content(state, cfg) + dissolved_sulfur_content(state, cfg);
    double flux_integral = 0.0;

    size_t snap_idx = 0;
    const auto& snaps = cfg.time.snapshot_times;
    while (snap_idx < snaps.size() && snaps[snap_idx] <= state.t) {
        if (sink && snaps[snap_idx] == state.t) sink(state.t, state);
        ++snap_idx;
    }

    if (t_end <= state.t) {
        result.final_state = std::move(state);
        result.audit = audit;
        return result;
    }

    double dt_next = std::min(cfg.time.dt_init, t_end - state.t);
    double err_prev = 1.0;
    double fac_max = 5.0;

    while (state.t < t_end) {
        const double next_target =
            snap_idx < snaps.size() ? std::min(snaps[snap_idx], t_end) : t_end;
        // Stretch slightly oversized gaps onto the target so no sliver step
        // is left behind.
        const bool clipped = 1.05 * dt_next >= next_target - state.t;
        const double attempt = clipped ? next_target - state.t : dt_next;
        if (attempt < dt_min) {
            if (sink) sink(state.t, state);
            throw SolverError("time step underflow at t = " + std::to_string(state.t) +
                              " (dt = " + std::to_string(attempt) + ")");
        }

        StepExtras extras;
        extras.wanted = true;
        auto [next_state, stats] = step_core(state, attempt, cfg, &extras);

        if (stats.accepted) {
            const double t_prev = state.t;
            const double u4_prev = state.cells[0].u4;
            state = std::move(next_state);
            state.t = clipped ? next_target : t_prev + attempt;
            ++result.steps_accepted;

            // Audits.
            flux_integral += attempt * extras.flux_quadrature;
            const double content =
                gas_content(state, cfg) + dissolved_sulfur_content(state, cfg);
            audit.integrated_defect = std::abs(content - content0 - flux_integral);
            const double inst_defect = std::abs(extras.content_rate_end - extras.flux_end);
            const double denom = std::max(std::abs(content), 1e-300);
            audit.max_defect = std::max(audit.max_defect, inst_defect / denom);
            audit.min_concentration =
                std::min(audit.min_concentration, min_component(state));
            for (const auto& c : state.cells) {
                audit.max_u4_overshoot =
                    std::max(audit.max_u4_overshoot, c.u4 - cfg.model.beta_bar);
            }
            if (audit.first_saturation_time < 0.0 &&
                state.cells[0].u4 >= saturation_level) {
                const double u4_now = state.cells[0].u4;
                double tc = state.t;
                if (u4_now > u4_prev) {
                    const double frac = (saturation_level - u4_prev) / (u4_now - u4_prev);
                    tc = t_prev + std::clamp(frac, 0.0, 1.0) * (state.t - t_prev);
                }
                audit.first_saturation_time = tc;
            }

            if (observer) observer(state, stats, audit);
            if (snap_idx < snaps.size() && state.t == snaps[snap_idx]) {
                if (sink) sink(state.t, state);
                ++snap_idx;
            }

            // PI controller on the scaled error estimate.
            const double err = std::max(stats.error_estimate, 1e-8);
            const double ep = std::max(err_prev, 1e-8);
            double fac = 0.9 * std::pow(err, -0.2) * std::pow(ep, 0.2 / 3.0);
            fac = std::clamp(fac, 0.2, fac_max);
            dt_next = attempt * fac;
            err_prev = err;
            fac_max = 5.0;
        } else {
            ++result.steps_rejected;
            if (!stats.newton_converged) {
                dt_next = attempt * 0.25;
            } else {
                const double fac =
                    std::clamp(0.9 * std::pow(stats.error_estimate, -1.0 / 3.0), 0.1, 0.5);
                dt_next = attempt * fac;
            }
            fac_max = 1.0;
        }
    }

    result.final_state = std::move(state);
    result.audit = audit;
    return result;
}

double relative_discrepancy(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("relative_discrepancy length mismatch");
    }
    double scale = 0.0;
    for (double v : b) scale = std::max(scale, std::abs(v));
    const double floor = 1e-4 * scale;
    double worst = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(a[i] - b[i]) / (floor + std::abs(b[i])));
    }
    return worst;
}

CoupledState integrate_oracle(const CoupledState& state0, const RunConfig& cfg,
                              double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("integrate_oracle requires dt > 0");
    CoupledState state = state0;
    state.macro.u1[0] = cfg.model.u1_dirichlet;
    const double t_end = cfg.time.t_end;
    while (state.t < t_end) {
        const double step = std::min(dt, t_end - state.t);
        const double t_before = state.t;
        state = oracle_step(state, step, cfg);
        state.t = (t_before + step >= t_end) ? t_end : t_before + step;
    }
    return state;
}

} // namespace sulfsim
