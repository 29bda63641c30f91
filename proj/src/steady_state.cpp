#include "cohspec/steady_state.hpp"

#include <cmath>

#include "cohspec/errors.hpp"
#include "cohspec/liouville.hpp"

namespace cohspec {

CMatrix isotropic_ground_state(const OperatorSet& ops) {
    return ops.Pg / static_cast<double>(ops.ground_size);
}

DensityState solve_steady_state(const OperatorSet& ops, const TransitionSpec& spec) {
    spec.validate();
    const Superoperator l = lindblad_superop(ops, spec);
    // Solve for the displacement from rho_0: L (x - rho_0) = -(L + gamma) rho_0.
    // The right-hand side no longer scales with gamma, so the residual stays
    // meaningful down to gamma = 1e-8.
    const LiouvilleVector rho0 = vectorize(isotropic_ground_state(ops));
    const LiouvilleVector rhs = -(l * rho0) - spec.gamma * rho0;
    const LinearSolution sol = solve_linear(l, rhs, "steady state");

    const CMatrix raw = unvectorize(sol.x + rho0, ops.dim);
    const int ng = ops.ground_size;
    const int ne = ops.excited_size;
    const double n_g = raw.topLeftCorner(ng, ng).trace().real();
    const double n_e = raw.bottomRightCorner(ne, ne).trace().real();
    const double leak = (1.0 - spec.branching) / spec.gamma;
    const double total = n_g + n_e * (1.0 + leak);
    if (!(total > 0.0) || !std::isfinite(total)) throw SolverError("steady state has non-positive atom number");

    DensityState s;
    s.matrix = raw / total;
    // Symmetrize away round-off; the exact solution is Hermitian.
    s.matrix = 0.5 * (s.matrix + s.matrix.adjoint()).eval();
    s.n_ext = n_e / total * leak;
    s.residual = sol.residual;
    s.populations_g.resize(static_cast<std::size_t>(ng));
    s.populations_e.resize(static_cast<std::size_t>(ne));
    for (int i = 0; i < ng; ++i) s.populations_g[static_cast<std::size_t>(i)] = s.matrix(i, i).real();
    for (int i = 0; i < ne; ++i) s.populations_e[static_cast<std::size_t>(i)] = s.matrix(ng + i, ng + i).real();
    return s;
}

SteadyStateDiagnostics steady_state_diagnostics(const DensityState& s, const OperatorSet& ops) {
    SteadyStateDiagnostics d;
    d.populations_g = s.populations_g;
    d.populations_e = s.populations_e;
    for (double p : s.populations_g) d.n_g += p;
    for (double p : s.populations_e) d.n_e += p;
    d.n_ext = s.n_ext;
    const int ng = ops.ground_size;
    const CMatrix ground = s.matrix.topLeftCorner(ng, ng);
    d.orientation_g = (ground * ops.Fz.topLeftCorner(ng, ng)).trace().real();
    for (int i = 0; i < ng; ++i) {
        for (int j = 0; j < ng; ++j) {
            if (i != j) d.max_ground_coherence = std::max(d.max_ground_coherence, std::abs(ground(i, j)));
        }
    }
    return d;
}

}  // namespace cohspec
