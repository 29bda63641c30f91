#pragma once

#include <vector>

#include "cohspec/system.hpp"

namespace cohspec {

/// Pump-dressed steady state sigma^0, normalized by the total atom number
/// N = n_g + n_e [1 + (1-b) Gamma / gamma] so that Tr(matrix) + n_ext = 1.
struct DensityState {
    CMatrix matrix;
    std::vector<double> populations_g;
    std::vector<double> populations_e;
    double n_ext = 0.0;
    double residual = 0.0;   ///< relative residual of the raw linear solve
};

/// Isotropic ground state P_g / (2F_g + 1).
CMatrix isotropic_ground_state(const OperatorSet& ops);

DensityState solve_steady_state(const OperatorSet& ops, const TransitionSpec& spec);

struct SteadyStateDiagnostics {
    std::vector<double> populations_g;
    std::vector<double> populations_e;
    double n_g = 0.0;
    double n_e = 0.0;
    double n_ext = 0.0;
    double orientation_g = 0.0;         ///< <F_z> within the ground level
    double max_ground_coherence = 0.0;  ///< largest |sigma_{m m'}|, m != m', ground block
};

SteadyStateDiagnostics steady_state_diagnostics(const DensityState& s, const OperatorSet& ops);

}  // namespace cohspec
