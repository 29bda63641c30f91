#include "cohspec/liouville.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "cohspec/errors.hpp"

namespace cohspec {

LiouvilleVector vectorize(const CMatrix& m) {
    if (m.rows() != m.cols()) throw InputError("vectorize expects a square matrix");
    return Eigen::Map<const LiouvilleVector>(m.data(), m.size());
}

CMatrix unvectorize(const LiouvilleVector& v, int dim) {
    if (dim <= 0 || v.size() != static_cast<Eigen::Index>(dim) * dim) {
        std::ostringstream os;
        os << "Liouville vector of length " << v.size() << " does not match dimension " << dim;
        throw InputError(os.str());
    }
    return Eigen::Map<const CMatrix>(v.data(), dim, dim);
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    const Eigen::Index ar = a.rows(), ac = a.cols(), br = b.rows(), bc = b.cols();
    CMatrix out(ar * br, ac * bc);
    for (Eigen::Index j = 0; j < ac; ++j) {
        for (Eigen::Index i = 0; i < ar; ++i) {
            out.block(i * br, j * bc, br, bc) = a(i, j) * b;
        }
    }
    return out;
}

Superoperator left_multiplication(const CMatrix& a) {
    return kron(CMatrix::Identity(a.rows(), a.cols()), a);
}

Superoperator right_multiplication(const CMatrix& b) {
    return kron(b.transpose(), CMatrix::Identity(b.rows(), b.cols()));
}

Superoperator sandwich(const CMatrix& a, const CMatrix& b) { return kron(b.transpose(), a); }

Superoperator lindblad_superop(const OperatorSet& ops, const TransitionSpec& spec, PumpCoupling coupling) {
    const cplx i_unit{0.0, 1.0};
    const CMatrix h = (coupling == PumpCoupling::include) ? CMatrix(ops.H_rot + ops.V1) : ops.H_rot;

    Superoperator l = -i_unit * (left_multiplication(h) - right_multiplication(h));
    l -= 0.5 * (left_multiplication(ops.Pe) + right_multiplication(ops.Pe));
    if (spec.branching != 0.0) {
        for (const auto& q : ops.Q) {
            if (q.isZero(0.0)) continue;
            l += spec.branching * sandwich(q, q.adjoint());
        }
    }
    l.diagonal().array() -= spec.gamma;
    return l;
}

double relative_residual(const Superoperator& l, const LiouvilleVector& x, const LiouvilleVector& rhs) {
    const double r = (l * x - rhs).norm();
    const double b = rhs.norm();
    if (b == 0.0) return r;
    return r / b;
}

LinearSolution solve_linear(const Superoperator& l, const LiouvilleVector& rhs, const std::string& context) {
    if (l.rows() != l.cols() || l.rows() != rhs.size()) throw InputError("solve_linear: dimension mismatch");
    Eigen::PartialPivLU<CMatrix> lu(l);
    LinearSolution sol;
    sol.rcond = lu.rcond();
    if (!(sol.rcond >= kMinRcond)) {
        std::ostringstream os;
        os << context << (context.empty() ? "" : ": ") << "linear system is singular or ill-conditioned (rcond = "
           << sol.rcond << ")";
        throw SolverError(os.str());
    }
    sol.x = lu.solve(rhs);
    sol.residual = relative_residual(l, sol.x, rhs);
    if (sol.residual > 0.1 * kMaxResidual) {
        sol.x += lu.solve(LiouvilleVector(rhs - l * sol.x));
        sol.residual = relative_residual(l, sol.x, rhs);
    }
    if (!(sol.residual <= kMaxResidual)) {
        std::ostringstream os;
        os << context << (context.empty() ? "" : ": ") << "linear solve residual " << sol.residual
           << " exceeds " << kMaxResidual;
        throw SolverError(os.str());
    }
    return sol;
}

ShiftedSolver::ShiftedSolver(Superoperator l) : l_(std::move(l)) {
    if (l_.rows() != l_.cols()) throw InputError("ShiftedSolver expects a square matrix");
    Eigen::HessenbergDecomposition<CMatrix> hd(l_);
    hessenberg_ = hd.matrixH();
    unitary_ = hd.matrixQ();
    scale_ = std::max(l_.cwiseAbs().maxCoeff(), 1e-300);
}

CVector ShiftedSolver::solve_hessenberg(cplx shift, const CVector& y, double& min_pivot_ratio) const {
    const Eigen::Index n = hessenberg_.rows();
    CMatrix a = hessenberg_;
    a.diagonal().array() += shift;
    CVector b = y;

    // Gaussian elimination with partial pivoting; only one subdiagonal entry per column.
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
        if (std::abs(a(k + 1, k)) > std::abs(a(k, k))) {
            a.row(k).tail(n - k).swap(a.row(k + 1).tail(n - k));
            std::swap(b(k), b(k + 1));
        }
        if (a(k, k) == cplx{}) continue;
        const cplx factor = a(k + 1, k) / a(k, k);
        if (factor != cplx{}) {
            a.row(k + 1).tail(n - k) -= factor * a.row(k).tail(n - k);
            b(k + 1) -= factor * b(k);
        }
    }

    double min_pivot = std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < n; ++k) min_pivot = std::min(min_pivot, std::abs(a(k, k)));
    min_pivot_ratio = min_pivot / std::max(scale_, std::abs(shift));
    if (min_pivot == 0.0) return CVector::Zero(n);

    return a.triangularView<Eigen::Upper>().solve(b);
}

CVector ShiftedSolver::apply_shifted(cplx shift, const CVector& x) const { return l_ * x + shift * x; }

LinearSolution ShiftedSolver::solve(cplx shift, const LiouvilleVector& rhs, const std::string& context) const {
    if (rhs.size() != l_.rows()) throw InputError("ShiftedSolver::solve: dimension mismatch");
    LinearSolution sol;
    const double b_norm = rhs.norm();
    if (b_norm == 0.0) {
        sol.x = CVector::Zero(rhs.size());
        sol.rcond = 1.0;
        return sol;
    }

    auto fail = [&](const std::string& why) {
        std::ostringstream os;
        os << context << (context.empty() ? "" : ": ") << why;
        throw SolverError(os.str());
    };

    double pivot_ratio = 0.0;
    const CVector y = unitary_.adjoint() * rhs;
    sol.x = unitary_ * solve_hessenberg(shift, y, pivot_ratio);
    sol.rcond = pivot_ratio;
    if (!(pivot_ratio >= kMinRcond)) {
        std::ostringstream os;
        os << "shifted system is singular or ill-conditioned (pivot ratio " << pivot_ratio << ")";
        fail(os.str());
    }

    sol.residual = (apply_shifted(shift, sol.x) - rhs).norm() / b_norm;
    if (sol.residual > 0.1 * kMaxResidual) {
        const CVector r = rhs - apply_shifted(shift, sol.x);
        double unused = 0.0;
        sol.x += unitary_ * solve_hessenberg(shift, CVector(unitary_.adjoint() * r), unused);
        sol.residual = (apply_shifted(shift, sol.x) - rhs).norm() / b_norm;
    }
    if (!(sol.residual <= kMaxResidual)) {
        std::ostringstream os;
        os << "linear solve residual " << sol.residual << " exceeds " << kMaxResidual;
        fail(os.str());
    }
    return sol;
}

}  // namespace cohspec
