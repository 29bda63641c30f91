#pragma once

#include <optional>

#include "cohspec/liouville.hpp"
#include "cohspec/steady_state.hpp"

namespace cohspec {

/// First-order probe response: the non-Hermitian matrix sigma collecting the
/// +delta sideband blocks sigma_gg^+, sigma_ge^+, sigma_eg^+, sigma_ee^+.
struct ProbeResponse {
    CMatrix sigma;
    int ground_size = 0;
    int excited_size = 0;
    double delta = 0.0;
    double residual = 0.0;

    CMatrix sigma_gg() const { return sigma.topLeftCorner(ground_size, ground_size); }
    CMatrix sigma_ge() const { return sigma.topRightCorner(ground_size, excited_size); }
    CMatrix sigma_eg() const { return sigma.bottomLeftCorner(excited_size, ground_size); }
    CMatrix sigma_ee() const { return sigma.bottomRightCorner(excited_size, excited_size); }
};

/// Solves  L sigma - i delta sigma = i [W2 / 2, sigma^0]  for many delta.
///
/// L is the homogeneous pump-frame master-equation generator (no transit
/// feed). Matching the commutator block by block gives the four source terms
///   gg:  i (W2/2) sigma^0_eg          ee: -i sigma^0_eg (W2/2)
///   ge:  i [(W2/2) sigma^0_ee - sigma^0_gg (W2/2)]     eg: 0
/// because W2 only maps excited to ground states.
///
/// With Strategy::shifted the generator is Hessenberg-reduced once and each
/// delta is an O(n^2) shifted solve. Strategy::direct factorizes L - i delta
/// per call, which is cheaper when only one or two deltas are needed.
/// Instances are immutable and safe to share.
class ProbeSolver {
public:
    enum class Strategy { shifted, direct };

    ProbeSolver(const OperatorSet& ops, const TransitionSpec& spec, const DensityState& s0,
                PumpCoupling coupling = PumpCoupling::include, Strategy strategy = Strategy::shifted);

    ProbeResponse solve(double delta) const;

private:
    Superoperator generator_;
    std::optional<ShiftedSolver> solver_;
    LiouvilleVector source_;
    int dim_ = 0;
    int ground_size_ = 0;
    int excited_size_ = 0;
};

/// Source term i [W2/2, sigma^0] of the probe equation.
CMatrix probe_source(const OperatorSet& ops, const CMatrix& sigma0);

ProbeResponse solve_probe(const OperatorSet& ops, const TransitionSpec& spec, const DensityState& s0, double delta);

/// Same as solve_probe with V1 removed from the probe generator while s0
/// stays pump-dressed: the incoherent optical-pumping contribution.
ProbeResponse incoherent_probe(const OperatorSet& ops, const TransitionSpec& spec, const DensityState& s0,
                               double delta);

}  // namespace cohspec
