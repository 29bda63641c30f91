#include <doctest.h>

#include "cohspec/errors.hpp"
#include "cohspec/liouville.hpp"
#include "support.hpp"

using namespace cohspec;

namespace {

OperatorSet operators(int twice_fg, int twice_fe, double branching, double pump, double bfield,
                      TransitionSpec* out = nullptr) {
    TransitionSpec t;
    t.fg = HalfInt{twice_fg};
    t.fe = HalfInt{twice_fe};
    t.branching = branching;
    t.gamma = 0.01;
    t.beta_e = 0.6;
    if (out) *out = t;
    return make_operator_set(t, {pump, support::random_polarization(), 0.05}, {1e-3, support::random_polarization(), 0.0},
                             bfield);
}

CMatrix master_rhs_by_hand(const OperatorSet& ops, const TransitionSpec& t, const CMatrix& x) {
    const cplx i{0.0, 1.0};
    const CMatrix h = ops.H_rot + ops.V1;
    CMatrix out = -i * (h * x - x * h) - 0.5 * (ops.Pe * x + x * ops.Pe) - t.gamma * x;
    for (const auto& q : ops.Q) out += t.branching * q * x * q.adjoint();
    return out;
}

}  // namespace

TEST_SUITE("liouville") {

TEST_CASE("column stacking") {
    const LiouvilleVector v = vectorize(CMatrix::Identity(2, 2));
    CHECK(v.size() == 4);
    CHECK(v(0) == cplx{1, 0});
    CHECK(v(1) == cplx{0, 0});
    CHECK(v(2) == cplx{0, 0});
    CHECK(v(3) == cplx{1, 0});

    CMatrix m(2, 2);
    m << 1, 2, 3, 4;
    const LiouvilleVector w = vectorize(m);
    CHECK(w(1) == cplx{3, 0});
    CHECK(w(2) == cplx{2, 0});

    const CMatrix r = support::random_matrix(5, 5);
    CHECK((unvectorize(vectorize(r), 5) - r).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("vec(AXB) = (B^T kron A) vec(X)") {
    for (int k = 0; k < 5; ++k) {
        const CMatrix a = support::random_matrix(6, 6);
        const CMatrix b = support::random_matrix(6, 6);
        const CMatrix x = support::random_matrix(6, 6);
        const LiouvilleVector lhs = vectorize(a * x * b);
        CHECK((sandwich(a, b) * vectorize(x) - lhs).norm() < 1e-12 * lhs.norm());
        CHECK((left_multiplication(a) * vectorize(x) - vectorize(a * x)).norm() < 1e-12 * lhs.norm());
        CHECK((right_multiplication(b) * vectorize(x) - vectorize(x * b)).norm() < 1e-12 * lhs.norm());
    }
}

TEST_CASE("generator matches the master equation applied term by term") {
    for (auto [g, e, b] : {std::tuple{2, 4, 1.0}, {4, 2, 0.7}, {3, 5, 1.0}, {0, 2, 0.3}}) {
        TransitionSpec t;
        const OperatorSet ops = operators(g, e, b, 0.8, 0.02, &t);
        const Superoperator l = lindblad_superop(ops, t);
        for (int k = 0; k < 3; ++k) {
            const CMatrix x = support::random_matrix(ops.dim, ops.dim);
            const CMatrix expected = master_rhs_by_hand(ops, t, x);
            CHECK((unvectorize(l * vectorize(x), ops.dim) - expected).norm() < 1e-12 * expected.norm());
        }
    }
}

TEST_CASE("pump exclusion drops only the V1 commutator") {
    TransitionSpec t;
    const OperatorSet ops = operators(2, 4, 1.0, 0.8, 0.01, &t);
    const Superoperator diff = lindblad_superop(ops, t) - lindblad_superop(ops, t, PumpCoupling::exclude);
    const cplx i{0.0, 1.0};
    const Superoperator expected = -i * (left_multiplication(ops.V1) - right_multiplication(ops.V1));
    CHECK((diff - expected).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("ground state decays at the transit rate without fields") {
    TransitionSpec t;
    t.gamma = 0.02;
    const OperatorSet ops = make_operator_set(t, {0.0, {0, 1, 0}, 0.0}, {0.0, {0, 1, 0}, 0.0}, 0.0);
    const CMatrix rho0 = ops.Pg / 3.0;
    const CMatrix out = unvectorize(lindblad_superop(ops, t) * vectorize(rho0), ops.dim);
    CHECK((out + t.gamma * rho0).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("closed system conserves trace apart from transit loss") {
    TransitionSpec t;
    const OperatorSet ops = operators(4, 6, 1.0, 1.3, 0.03, &t);
    const Superoperator l = lindblad_superop(ops, t);
    for (int k = 0; k < 10; ++k) {
        const CMatrix rho = support::random_density(ops.dim);
        const CMatrix d = unvectorize(l * vectorize(rho), ops.dim);
        CHECK(std::abs(d.trace() + t.gamma * rho.trace()) < 1e-13);
    }
}

TEST_CASE("linearity") {
    TransitionSpec t;
    const OperatorSet ops = operators(2, 2, 0.5, 0.5, 0.0, &t);
    const Superoperator l = lindblad_superop(ops, t);
    const CMatrix x = support::random_matrix(ops.dim, ops.dim);
    const CMatrix y = support::random_matrix(ops.dim, ops.dim);
    const cplx a{0.3, -1.2};
    const LiouvilleVector lhs = l * vectorize(a * x + y);
    CHECK((lhs - (a * (l * vectorize(x)) + l * vectorize(y))).norm() < 1e-12 * lhs.norm());
}

TEST_CASE("dense solve") {
    SUBCASE("identity") {
        const CVector rhs = support::random_matrix(7, 1);
        const auto s = solve_linear(CMatrix::Identity(7, 7), rhs);
        CHECK((s.x - rhs).norm() < 1e-15);
        CHECK(s.residual < 1e-15);
    }
    SUBCASE("diagonal") {
        CMatrix d = CMatrix::Zero(4, 4);
        d.diagonal() << 1.0, 2.0, cplx{0, 4}, -8.0;
        const CVector rhs = CVector::Ones(4);
        const auto s = solve_linear(d, rhs);
        CHECK(std::abs(s.x(1) - 0.5) < 1e-15);
        CHECK(std::abs(s.x(2) - cplx{0, -0.25}) < 1e-15);
        CHECK(std::abs(s.x(3) + 0.125) < 1e-15);
    }
    SUBCASE("random") {
        const CMatrix a = support::random_matrix(64, 64);
        const CVector x = support::random_matrix(64, 1);
        const auto s = solve_linear(a, a * x);
        CHECK((s.x - x).norm() < 1e-9 * x.norm());
        CHECK(s.residual < kMaxResidual);
        CHECK(s.rcond > kMinRcond);
    }
    SUBCASE("singular") {
        CMatrix a = support::random_matrix(6, 6);
        a.col(3) = a.col(1);
        CHECK_THROWS_AS(solve_linear(a, CVector::Ones(6), "probe at delta=0.1"), SolverError);
        try {
            solve_linear(a, CVector::Ones(6), "probe at delta=0.1");
        } catch (const SolverError& e) {
            CHECK(std::string(e.what()).find("delta=0.1") != std::string::npos);
        }
    }
}

TEST_CASE("shifted solver agrees with dense solves") {
    TransitionSpec t;
    const OperatorSet ops = operators(2, 4, 1.0, 0.6, 0.01, &t);
    const Superoperator l = lindblad_superop(ops, t);
    const ShiftedSolver shifted(l);
    CHECK(shifted.size() == l.rows());
    const CVector rhs = support::random_matrix(static_cast<int>(l.rows()), 1);
    for (double d : {-0.5, -0.01, 0.0, 0.003, 0.2, 3.0}) {
        const cplx s{0.0, -d};
        CMatrix shifted_l = l;
        shifted_l.diagonal().array() += s;
        const auto ref = solve_linear(shifted_l, rhs);
        const auto got = shifted.solve(s, rhs);
        CHECK((got.x - ref.x).norm() < 1e-10 * ref.x.norm());
        CHECK(got.residual < kMaxResidual);
    }
}

}
