#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "sulfsim/banded.hpp"
#include "sulfsim/coupled.hpp"

namespace sulfsim {

/// Outcome of one implicit step attempt.
struct StepStats {
    double dt_taken = 0.0;
    int newton_iterations = 0;   ///< max over the two stages
    double error_estimate = 0.0; ///< scaled WRMS of the filtered embedded error
    bool accepted = false;
    bool newton_converged = true;
};

/// Newton matrix M = I - shift * J assembled at a state, stored in its arrow
/// structure: one factored band block per cell, the two scalar couplings
/// between each cell wall row and its gas node, and the factored tridiagonal
/// Schur complement on the gas field. Solves cost O(nx * ny).
class ShiftedSystem {
public:
    ShiftedSystem(const CoupledState& state, const RunConfig& cfg, double shift);

    /// Solves M x = rhs by block elimination of the cells onto the gas
    /// tridiagonal. Throws SolverError on singular blocks.
    std::vector<double> solve(std::span<const double> rhs) const;

    /// y = M x over the unfactored copy (used by verification tests).
    std::vector<double> multiply(std::span<const double> x) const;

    double shift() const { return shift_; }

private:
    int nx_ = 0;
    int ny_ = 0;
    int m_ = 0;
    double shift_ = 0.0;
    std::vector<BandMatrix> cell_raw_;
    std::vector<BandLU> cell_lu_;
    std::vector<std::vector<double>> wall_inverse_col_; // A_i^{-1} e_0
    std::vector<double> gas_to_cell_;  // M entry (cell i row 0, gas col i)
    std::vector<double> cell_to_gas_;  // M entry (gas row i, cell i col 0)
    BandMatrix macro_raw_;
    BandLU schur_lu_;
};

/// Convenience wrapper matching the operation name.
std::vector<double> solve_linear(const ShiftedSystem& system,
                                 std::span<const double> rhs);

/// One TR-BDF2 step (trapezoidal stage to t + gamma*dt, BDF2 closure to
/// t + dt, gamma = 2 - sqrt(2)); L-stable, second order, with an embedded
/// third-order error estimate filtered through the iteration matrix. Both
/// stages share the shift (gamma/2)*dt and are solved by Newton with the
/// analytic Jacobian reassembled every iteration. Returns the original state
/// with accepted = false when the error test fails or Newton stalls.
std::pair<CoupledState, StepStats> implicit_step(const CoupledState& state,
                                                 double dt, const RunConfig& cfg);

/// One classical four-stage explicit Runge-Kutta step on global_rhs. Shares
/// no code with implicit_step beyond the right-hand side; serves as the
/// independent cross-validation integrator. The caller owns stability:
/// dt must stay below ~2.78/lambda_max of the semidiscrete operator.
CoupledState oracle_step(const CoupledState& state, double dt, const RunConfig& cfg);

/// Conservative explicit step bound for the current config (used by the
/// oracle runner; includes the interfacial-exchange eigenvalue).
double oracle_stable_dt(const RunConfig& cfg);

/// Running audit aggregates exposed to step observers.
struct AuditTrail {
    double max_defect = 0.0;            ///< max |mass_balance defect| (normalized)
    double integrated_defect = 0.0;     ///< |content - content0 - integral of flux|
    double min_concentration = 0.0;     ///< most negative value seen in any field
    double max_u4_overshoot = 0.0;      ///< max(u4 - beta_bar) seen
    double first_saturation_time = -1.0;///< first t with u4(x=0) >= beta_bar - eps
};

using SnapshotSink = std::function<void(double t, const CoupledState&)>;
using StepObserver =
    std::function<void(const CoupledState&, const StepStats&, const AuditTrail&)>;

struct IntegrateResult {
    CoupledState final_state;
    AuditTrail audit;
    long steps_accepted = 0;
    long steps_rejected = 0;
};

/// Adaptive TR-BDF2 drive from state0.t to t_end. Steps are accepted when
/// the scaled error estimate is <= 1 and sized by a PI controller; requested
/// snapshot times are hit exactly by clipping the step (never interpolation)
/// and handed to the sink. The observer, when set, fires after every
/// accepted step. Deterministic for a fixed config. Throws SolverError if
/// dt underflows 1e-12 * t_end (the last accepted state is emitted first).
IntegrateResult integrate(const CoupledState& state0, const RunConfig& cfg,
                          const SnapshotSink& sink = {},
                          const StepObserver& observer = {});

/// Fixed-step RK4 drive used for cross-validation runs; audits are skipped.
CoupledState integrate_oracle(const CoupledState& state0, const RunConfig& cfg,
                              double dt);

/// Cross-validation metric: max_i |a_i - b_i| / (floor + |b_i|) with
/// floor = 1e-4 * max_j |b_j|, so dormant near-zero components are measured
/// against the solution's own scale instead of blowing up the ratio.
double relative_discrepancy(std::span<const double> a, std::span<const double> b);

} // namespace sulfsim
