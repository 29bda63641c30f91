#include "cohspec/probe_response.hpp"

#include <sstream>

namespace cohspec {

CMatrix probe_source(const OperatorSet& ops, const CMatrix& sigma0) {
    const cplx i_unit{0.0, 1.0};
    const CMatrix half_w = 0.5 * ops.W2;
    return i_unit * (half_w * sigma0 - sigma0 * half_w);
}

ProbeSolver::ProbeSolver(const OperatorSet& ops, const TransitionSpec& spec, const DensityState& s0,
                         PumpCoupling coupling, Strategy strategy)
    : generator_(lindblad_superop(ops, spec, coupling)),
      source_(vectorize(probe_source(ops, s0.matrix))),
      dim_(ops.dim),
      ground_size_(ops.ground_size),
      excited_size_(ops.excited_size) {
    if (strategy == Strategy::shifted) {
        solver_.emplace(std::move(generator_));
        generator_ = Superoperator();
    }
}

ProbeResponse ProbeSolver::solve(double delta) const {
    std::ostringstream context;
    context << "probe response at delta = " << delta;
    LinearSolution sol;
    if (solver_) {
        sol = solver_->solve(cplx{0.0, -delta}, source_, context.str());
    } else {
        Superoperator shifted = generator_;
        shifted.diagonal().array() -= cplx{0.0, delta};
        sol = solve_linear(shifted, source_, context.str());
    }
    ProbeResponse pr;
    pr.sigma = unvectorize(sol.x, dim_);
    pr.ground_size = ground_size_;
    pr.excited_size = excited_size_;
    pr.delta = delta;
    pr.residual = sol.residual;
    return pr;
}

ProbeResponse solve_probe(const OperatorSet& ops, const TransitionSpec& spec, const DensityState& s0, double delta) {
    return ProbeSolver(ops, spec, s0, PumpCoupling::include, ProbeSolver::Strategy::direct).solve(delta);
}

ProbeResponse incoherent_probe(const OperatorSet& ops, const TransitionSpec& spec, const DensityState& s0,
                               double delta) {
    return ProbeSolver(ops, spec, s0, PumpCoupling::exclude, ProbeSolver::Strategy::direct).solve(delta);
}

}  // namespace cohspec
