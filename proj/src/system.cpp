#include "cohspec/system.hpp"

#include <cmath>
#include <sstream>

#include "cohspec/errors.hpp"

namespace cohspec {

void TransitionSpec::validate() const {
    if (fg.twice < 0 || fe.twice < 0) throw InputError("angular momenta must be non-negative");
    if ((fg.twice - fe.twice) % 2 != 0) throw InputError("F_g and F_e must both be integer or both half-integer");
    if (std::abs(fg.twice - fe.twice) > 2) {
        throw InputError("transition F_g=" + to_string(fg) + " -> F_e=" + to_string(fe) + " is not dipole allowed");
    }
    if (fg.twice == 0 && fe.twice == 0) throw InputError("0 -> 0 transition is not dipole allowed");
    if (!(branching >= 0.0 && branching <= 1.0)) throw InputError("branching ratio must lie in [0, 1]");
    if (!(gamma >= 1e-8)) {
        std::ostringstream os;
        os << "transit rate gamma = " << gamma << " is below the minimum 1e-8 (steady state is singular)";
        throw InputError(os.str());
    }
    if (!std::isfinite(gamma) || !std::isfinite(beta_g) || !std::isfinite(beta_e)) {
        throw InputError("transition rates must be finite");
    }
}

std::string_view to_string(RabiNormalization n) {
    return n == RabiNormalization::unit_q ? "unit_q" : "reduced_element";
}

RabiNormalization parse_rabi_normalization(std::string_view name) {
    if (name == "reduced_element") return RabiNormalization::reduced_element;
    if (name == "unit_q") return RabiNormalization::unit_q;
    throw InputError("rabi_normalization must be 'reduced_element' or 'unit_q'");
}

double TransitionSpec::coupling_scale() const {
    if (normalization == RabiNormalization::unit_q) return 1.0;
    return 1.0 / std::sqrt(static_cast<double>(fe.twice + 1));
}

namespace {

// Map magnetic quantum number (twice value) to basis index within a block.
int sublevel_index(HalfInt f, int twice_m) { return (twice_m + f.twice) / 2; }

}  // namespace

std::array<CMatrix, 3> build_q_operators(const TransitionSpec& spec) {
    spec.validate();
    const int ng = spec.ground_size();
    const int ne = spec.excited_size();
    const int n = ng + ne;
    const double scale = std::sqrt(static_cast<double>(spec.fe.twice + 1) / (spec.fg.twice + 1));
    const HalfInt one{2};

    std::array<CMatrix, 3> q_ops;
    for (int q = -1; q <= 1; ++q) {
        CMatrix m = CMatrix::Zero(n, n);
        for (int twice_me = -spec.fe.twice; twice_me <= spec.fe.twice; twice_me += 2) {
            const int twice_mg = twice_me + 2 * q;
            if (std::abs(twice_mg) > spec.fg.twice) continue;
            const double cg = clebsch_gordan(spec.fe, HalfInt{twice_me}, one, HalfInt{2 * q}, spec.fg, HalfInt{twice_mg});
            m(sublevel_index(spec.fg, twice_mg), ng + sublevel_index(spec.fe, twice_me)) = scale * cg;
        }
        q_ops[static_cast<std::size_t>(q + 1)] = std::move(m);
    }
    return q_ops;
}

std::array<CMatrix, 3> build_angular_momentum(const TransitionSpec& spec) {
    const int ng = spec.ground_size();
    const int n = spec.dim();
    CMatrix fz = CMatrix::Zero(n, n);
    CMatrix fplus = CMatrix::Zero(n, n);

    auto fill_block = [&](HalfInt f, int offset) {
        const double ff = f.value() * (f.value() + 1.0);
        for (int twice_m = -f.twice; twice_m <= f.twice; twice_m += 2) {
            const int i = offset + sublevel_index(f, twice_m);
            const double m = 0.5 * twice_m;
            fz(i, i) = m;
            if (twice_m + 2 <= f.twice) fplus(i + 1, i) = std::sqrt(ff - m * (m + 1.0));
        }
    };
    fill_block(spec.fg, 0);
    fill_block(spec.fe, ng);

    const CMatrix fminus = fplus.adjoint();
    const cplx i_unit{0.0, 1.0};
    CMatrix fx = 0.5 * (fplus + fminus);
    CMatrix fy = (fplus - fminus) / (2.0 * i_unit);
    return {std::move(fx), std::move(fy), std::move(fz)};
}

namespace {

// e^* . Q with e^* expanded on conjugated basis vectors: e_q^* = (-1)^q e_{-q}.
CMatrix contract_lowering(const std::array<CMatrix, 3>& q_ops, const SphericalVector& polarization) {
    CMatrix out = CMatrix::Zero(q_ops[0].rows(), q_ops[0].cols());
    for (int q = -1; q <= 1; ++q) {
        const cplx c = polarization[q];
        if (c == cplx{}) continue;
        const double sign = (q == 0) ? 1.0 : -1.0;
        out += sign * std::conj(c) * q_ops[static_cast<std::size_t>(1 - q)];
    }
    return out;
}

SphericalVector checked_polarization(const SphericalVector& p, const char* which) {
    const double n2 = p.norm_squared();
    if (std::abs(n2 - 1.0) > 1e-12) {
        if (n2 == 0.0) throw InputError(std::string(which) + " polarization is the zero vector");
        return p.normalized();
    }
    return p;
}

}  // namespace

CMatrix OperatorSet::lowering_coupling(const SphericalVector& polarization) const {
    return contract_lowering(Q, polarization);
}

PumpHamiltonian build_hamiltonian(const TransitionSpec& spec, const FieldSpec& pump, double bfield) {
    const auto q_ops = build_q_operators(spec);
    const auto f_ops = build_angular_momentum(spec);
    const int ng = spec.ground_size();
    const int n = spec.dim();

    CMatrix h = CMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        const double beta = (i < ng) ? spec.beta_g : spec.beta_e;
        const double energy = bfield * beta * f_ops[2](i, i).real() - (i < ng ? 0.0 : pump.detuning);
        h(i, i) = energy;
    }

    const CMatrix g = contract_lowering(q_ops, checked_polarization(pump.polarization, "pump"));
    CMatrix v1 = 0.5 * pump.rabi * spec.coupling_scale() * (g + g.adjoint());
    return {std::move(h), std::move(v1)};
}

CMatrix build_probe_coupling(const TransitionSpec& spec, const FieldSpec& probe) {
    const auto q_ops = build_q_operators(spec);
    return probe.rabi * spec.coupling_scale() * contract_lowering(q_ops, checked_polarization(probe.polarization, "probe"));
}

OperatorSet make_operator_set(const TransitionSpec& spec, const FieldSpec& pump, const FieldSpec& probe,
                              double bfield) {
    spec.validate();
    OperatorSet ops;
    ops.ground_size = spec.ground_size();
    ops.excited_size = spec.excited_size();
    ops.dim = spec.dim();
    ops.Pg = CMatrix::Zero(ops.dim, ops.dim);
    ops.Pe = CMatrix::Zero(ops.dim, ops.dim);
    ops.Pg.topLeftCorner(ops.ground_size, ops.ground_size).setIdentity();
    ops.Pe.bottomRightCorner(ops.excited_size, ops.excited_size).setIdentity();

    auto f_ops = build_angular_momentum(spec);
    ops.Fx = std::move(f_ops[0]);
    ops.Fy = std::move(f_ops[1]);
    ops.Fz = std::move(f_ops[2]);
    ops.Q = build_q_operators(spec);

    auto pump_h = build_hamiltonian(spec, pump, bfield);
    ops.H_rot = std::move(pump_h.H_rot);
    ops.V1 = std::move(pump_h.V1);
    ops.W2 = build_probe_coupling(spec, probe);
    return ops;
}

}  // namespace cohspec
