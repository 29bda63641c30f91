#pragma once

#include "cohspec/system.hpp"

namespace cohspec::oracles {

// Reference implementations that share no code path with the Liouville-space
// solver. They are slow and exist to cross-check it.

/// Right-hand side of the master equation evaluated directly with matrix
/// products, in the pump frame, with an optional probe term
///   -i[H_rot + V1 + (W/2) e^{i delta t} + (W/2)^dagger e^{-i delta t}, rho]
///   - (1/2){P_e, rho} + b sum_q Q_q rho Q_q^dagger - gamma (rho - rho_0 * feed).
CMatrix master_rhs(const OperatorSet& ops, const TransitionSpec& spec, const CMatrix& probe_w, double delta,
                   double t, const CMatrix& rho, double feed = 1.0);

struct TimeDomainResult {
    CMatrix fourier_dc;
    CMatrix fourier_plus;
    CMatrix fourier_minus;
    double integration_span = 0.0;  ///< total integrated time
    double dt = 0.0;                ///< step actually used (divides the probe period)
    double max_trace_error = 0.0;   ///< max |Tr rho(t) - 1|, meaningful for closed transitions
    double max_hermiticity_error = 0.0;
};

/// Fixed-step RK4 integration of the master equation with the probe field
/// written explicitly, starting from rho_0 = P_g/(2F_g+1). After a settling time
/// t_end, `periods` further probe periods are projected onto {1, e^{i delta t}, e^{-i delta t}}.
/// dt is shrunk so that one probe period holds an integer number of steps.
/// Throws InputError if dt does not resolve Gamma, delta and the pump Rabi frequency
/// (dt * scale > 0.01) or if delta == 0.
TimeDomainResult integrate_master_equation(const OperatorSet& ops, const TransitionSpec& spec,
                                           const FieldSpec& probe, double delta, double t_end, double dt,
                                           int periods = 2);

/// Closed-form steady state of a single ground / single excited sublevel pair
/// (Gamma = 1) normalized by N = n_g + n_e [1 + (1-b)/gamma].
struct TwoLevelState {
    double rho_gg = 0.0;
    double rho_ee = 0.0;
    cplx rho_ge{};
};
TwoLevelState two_level_steady_state(double rabi, double detuning, double gamma_transit, double branching = 1.0);

/// Closed-form first-order probe absorption of the pumped two-level system
/// (pump and probe on the same sublevel pair), per unit probe Rabi frequency.
double mollow_probe_absorption(double rabi, double detuning, double delta, double gamma_transit,
                               double branching = 1.0);

}  // namespace cohspec::oracles
