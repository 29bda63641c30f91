#pragma once

#include <optional>

#include "cohspec/system.hpp"

namespace cohspec {

/// Liouville-space vectors stack density-matrix columns: entry i + n*j holds rho(i, j).
/// With this ordering vec(A X B) = (B^T kron A) vec(X).
using LiouvilleVector = CVector;
using Superoperator = CMatrix;

LiouvilleVector vectorize(const CMatrix& m);
CMatrix unvectorize(const LiouvilleVector& v, int dim);

/// A kron B.
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Superoperators of rho -> A rho, rho -> rho B and rho -> A rho B.
Superoperator left_multiplication(const CMatrix& a);
Superoperator right_multiplication(const CMatrix& b);
Superoperator sandwich(const CMatrix& a, const CMatrix& b);


enum class PumpCoupling { include, exclude };

/// Homogeneous part of the master equation in the pump frame:
///   -i[H_rot + V1, .] - (Gamma/2){P_e, .} + b Gamma sum_q Q_ge^q . Q_eg^q - gamma (.)
/// The constant transit feed gamma rho_0 is not included. With
/// PumpCoupling::exclude the V1 commutator is dropped.
Superoperator lindblad_superop(const OperatorSet& ops, const TransitionSpec& spec,
                               PumpCoupling coupling = PumpCoupling::include);

/// Relative residual ||L x - b|| / ||b|| (0 when b = 0 and L x = 0).
double relative_residual(const Superoperator& l, const LiouvilleVector& x, const LiouvilleVector& rhs);

struct LinearSolution {
    LiouvilleVector x;
    double residual = 0.0;
    double rcond = 0.0;
};

inline constexpr double kMaxResidual = 1e-10;
inline constexpr double kMinRcond = 1e-12;

/// Dense LU solve of L x = rhs. Throws SolverError when the reciprocal
/// condition estimate falls below kMinRcond or the residual exceeds kMaxResidual.
/// `context` is prepended to the error message.
LinearSolution solve_linear(const Superoperator& l, const LiouvilleVector& rhs, const std::string& context = {});

/// Solves (L + s I) x = rhs for many complex shifts s. L is reduced once to
/// upper Hessenberg form L = U H U^*, after which each shift costs O(n^2).
class ShiftedSolver {
public:
    explicit ShiftedSolver(Superoperator l);

    LinearSolution solve(cplx shift, const LiouvilleVector& rhs, const std::string& context = {}) const;

    const Superoperator& matrix() const { return l_; }
    Eigen::Index size() const { return l_.rows(); }

private:
    CVector solve_hessenberg(cplx shift, const CVector& y, double& min_pivot_ratio) const;
    CVector apply_shifted(cplx shift, const CVector& x) const;

    Superoperator l_;
    CMatrix hessenberg_;
    CMatrix unitary_;
    double scale_ = 1.0;
};

}  // namespace cohspec
