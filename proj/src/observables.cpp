#include "cohspec/observables.hpp"

#include <array>
#include <cmath>

#include "cohspec/errors.hpp"

namespace cohspec {

namespace {

constexpr std::array<std::pair<ObservableKind, std::string_view>, 7> kNames{{
    {ObservableKind::absorption, "absorption"},
    {ObservableKind::dispersion, "dispersion"},
    {ObservableKind::fwm_power, "fwm_power"},
    {ObservableKind::fluorescence_mod, "fluorescence_mod"},
    {ObservableKind::mag_dipole_modulus, "mag_dipole_modulus"},
    {ObservableKind::linear_absorption, "linear_absorption"},
    {ObservableKind::incoherent_absorption, "incoherent_absorption"},
}};

// Tr(sigma G^dagger) = sum_ij sigma_ij conj(G_ij)
cplx overlap(const CMatrix& sigma, const CMatrix& g) { return (g.conjugate().cwiseProduct(sigma)).sum(); }

}  // namespace

std::string_view to_string(ObservableKind kind) {
    for (const auto& [k, name] : kNames) {
        if (k == kind) return name;
    }
    return "unknown";
}

ObservableKind parse_observable(std::string_view name) {
    for (const auto& [k, n] : kNames) {
        if (n == name) return k;
    }
    throw InputError("unknown observable '" + std::string(name) + "'");
}

double absorption(const ProbeResponse& pr, const OperatorSet& ops, const FieldSpec& probe, Projection projection) {
    if (probe.rabi == 0.0) return 0.0;
    const SphericalVector e2 = probe.polarization.normalized();
    const SphericalVector projector = (projection == Projection::conjugate) ? e2 : conjugate(e2);
    return overlap(pr.sigma, ops.lowering_coupling(projector)).imag() / probe.rabi;
}

double dispersion(const ProbeResponse& pr, const OperatorSet& ops, const FieldSpec& probe,
                  const SphericalVector& axis) {
    if (probe.rabi == 0.0) return 0.0;
    return -overlap(pr.sigma, ops.lowering_coupling(axis.normalized())).real() / probe.rabi;
}

double fwm_power(const ProbeResponse& pr, const OperatorSet& ops) {
    double total = 0.0;
    for (const auto& q : ops.Q) total += std::norm((q.transpose().cwiseProduct(pr.sigma)).sum());
    return total;
}

double fluorescence_modulation(const ProbeResponse& pr, const TransitionSpec& spec) {
    return 2.0 * spec.branching * std::abs(pr.sigma_ee().trace());
}

double magnetic_dipole(const ProbeResponse& pr, const OperatorSet& ops, const TransitionSpec& spec) {
    const int ng = ops.ground_size;
    const CMatrix gg = pr.sigma_gg();
    double sum = 0.0;
    for (const CMatrix* f : {&ops.Fx, &ops.Fy, &ops.Fz}) {
        sum += std::norm((gg * f->topLeftCorner(ng, ng)).trace());
    }
    return std::abs(spec.beta_g) * std::sqrt(sum);
}

LinearReference linear_reference(const OperatorSet& ops, const TransitionSpec& spec, const FieldSpec& probe) {
    LinearReference ref{ops, {}};
    ref.ops.V1.setZero();
    ref.ops.W2 = build_probe_coupling(spec, probe);
    ref.state.matrix = isotropic_ground_state(ops);
    const int ng = ops.ground_size;
    ref.state.populations_g.assign(static_cast<std::size_t>(ng), 1.0 / ng);
    ref.state.populations_e.assign(static_cast<std::size_t>(ops.excited_size), 0.0);
    return ref;
}

double linear_absorption(const OperatorSet& ops, const TransitionSpec& spec, const FieldSpec& probe, double delta) {
    const LinearReference ref = linear_reference(ops, spec, probe);
    return absorption(solve_probe(ref.ops, spec, ref.state, delta), ref.ops, probe);
}

}  // namespace cohspec
