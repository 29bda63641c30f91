#include "cohspec/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "cohspec/errors.hpp"

namespace cohspec::oracles {

CMatrix master_rhs(const OperatorSet& ops, const TransitionSpec& spec, const CMatrix& probe_w, double delta,
                   double t, const CMatrix& rho, double feed) {
    const cplx i_unit{0.0, 1.0};
    CMatrix h = ops.H_rot + ops.V1;
    if (probe_w.size() != 0) {
        const cplx phase = std::exp(i_unit * (delta * t));
        h += 0.5 * phase * probe_w + 0.5 * std::conj(phase) * probe_w.adjoint();
    }
    // lazyProduct: these matrices are at most 16x16, where blocked GEMM only adds overhead.
    CMatrix out = -i_unit * (h.lazyProduct(rho) - rho.lazyProduct(h));
    out -= 0.5 * (ops.Pe.lazyProduct(rho) + rho.lazyProduct(ops.Pe));
    for (const auto& q : ops.Q) {
        const CMatrix qr = q.lazyProduct(rho);
        out += spec.branching * qr.lazyProduct(q.adjoint());
    }
    out -= spec.gamma * rho;
    if (feed != 0.0) {
        const double rho0 = feed * spec.gamma / ops.ground_size;
        for (int i = 0; i < ops.ground_size; ++i) out(i, i) += rho0;
    }
    return out;
}

TimeDomainResult integrate_master_equation(const OperatorSet& ops, const TransitionSpec& spec,
                                           const FieldSpec& probe, double delta, double t_end, double dt,
                                           int periods) {
    if (delta == 0.0) throw InputError("time-domain oracle needs a nonzero probe offset delta");
    if (periods < 1) throw InputError("time-domain oracle needs at least one averaging period");
    double energy_scale = std::max({1.0, std::abs(delta), std::abs(probe.rabi)});
    energy_scale = std::max(energy_scale, ops.V1.cwiseAbs().rowwise().sum().maxCoeff() * 2.0);
    energy_scale = std::max(energy_scale, ops.H_rot.cwiseAbs().maxCoeff());
    if (!(dt > 0.0) || dt * energy_scale > 0.01 * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "time step " << dt << " is too coarse for energy scale " << energy_scale
           << " (need dt * scale <= 0.01)";
        throw InputError(os.str());
    }

    const double period = 2.0 * std::numbers::pi / std::abs(delta);
    const long steps_per_period = static_cast<long>(std::ceil(period / dt));
    const double h = period / static_cast<double>(steps_per_period);
    const long window_steps = steps_per_period * periods;
    const long total_steps = static_cast<long>(std::ceil(t_end / h)) + window_steps;

    const CMatrix w = build_probe_coupling(spec, probe);
    CMatrix rho = ops.Pg / static_cast<double>(ops.ground_size);

    const int n = ops.dim;
    TimeDomainResult res;
    res.fourier_dc = CMatrix::Zero(n, n);
    res.fourier_plus = CMatrix::Zero(n, n);
    res.fourier_minus = CMatrix::Zero(n, n);
    res.dt = h;
    res.integration_span = static_cast<double>(total_steps) * h;

    const cplx i_unit{0.0, 1.0};
    const long window_start = total_steps - window_steps;
    for (long step = 0; step < total_steps; ++step) {
        const double t = static_cast<double>(step) * h;
        if (step >= window_start) {
            // Rectangle rule over whole periods is exact for the harmonics we keep.
            const cplx phase = std::exp(-i_unit * (delta * t));
            res.fourier_dc += rho;
            res.fourier_plus += phase * rho;
            res.fourier_minus += std::conj(phase) * rho;
        }
        const CMatrix k1 = master_rhs(ops, spec, w, delta, t, rho);
        const CMatrix k2 = master_rhs(ops, spec, w, delta, t + 0.5 * h, rho + 0.5 * h * k1);
        const CMatrix k3 = master_rhs(ops, spec, w, delta, t + 0.5 * h, rho + 0.5 * h * k2);
        const CMatrix k4 = master_rhs(ops, spec, w, delta, t + h, rho + h * k3);
        rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        res.max_trace_error = std::max(res.max_trace_error, std::abs(rho.trace() - 1.0));
        res.max_hermiticity_error = std::max(res.max_hermiticity_error, (rho - rho.adjoint()).cwiseAbs().maxCoeff());
    }
    const double inv = 1.0 / static_cast<double>(window_steps);
    res.fourier_dc *= inv;
    res.fourier_plus *= inv;
    res.fourier_minus *= inv;
    return res;
}

TwoLevelState two_level_steady_state(double rabi, double detuning, double gamma_transit, double branching) {
    const double g2 = 0.5 + gamma_transit;  // coherence decay
    const double ge = 1.0 + gamma_transit;  // excited population decay
    const double pump_rate = 0.5 * rabi * rabi * g2 / (g2 * g2 + detuning * detuning);

    TwoLevelState s;
    double raw_gg = 1.0;
    double raw_ee = 0.0;
    if (pump_rate > 0.0) {
        raw_ee = gamma_transit * pump_rate /
                 (pump_rate * (ge - branching) + gamma_transit * (ge + pump_rate));
        raw_gg = raw_ee * (ge + pump_rate) / pump_rate;
    }
    const double total = raw_gg + raw_ee * (1.0 + (1.0 - branching) / gamma_transit);
    s.rho_gg = raw_gg / total;
    s.rho_ee = raw_ee / total;
    const cplx i_unit{0.0, 1.0};
    s.rho_ge = i_unit * (0.5 * rabi) * (s.rho_gg - s.rho_ee) / (g2 + i_unit * detuning);
    return s;
}

double mollow_probe_absorption(double rabi, double detuning, double delta, double gamma_transit,
                               double branching) {
    // Unknowns x = sigma_gg, y = sigma_ee, u = sigma_ge, v = sigma_eg at +delta, probe Rabi 1.
    // Eliminate u, v in favour of z = x - y, then the population sum s = kappa z.
    const cplx i_unit{0.0, 1.0};
    const TwoLevelState s0 = two_level_steady_state(rabi, detuning, gamma_transit, branching);
    const double w = s0.rho_gg - s0.rho_ee;
    const double g2 = 0.5 + gamma_transit;
    const cplx du = g2 + i_unit * (delta + detuning);
    const cplx dv = g2 + i_unit * (delta - detuning);
    const cplx ground_rate = gamma_transit + i_unit * delta;
    const double leak = 0.5 * (1.0 - branching);
    const cplx kappa = leak / (ground_rate + leak);

    const cplx src_ge = -i_unit * 0.5 * w;
    const cplx src_diff = i_unit * std::conj(s0.rho_ge);  // S_gg - S_ee
    const cplx coeff = -0.5 * rabi * rabi * (1.0 / dv + 1.0 / du) +
                       0.5 * ((1.0 + branching) * (kappa - 1.0) - 2.0 * ground_rate);
    const cplx z = (src_diff + i_unit * rabi * src_ge / du) / coeff;
    const cplx u = (i_unit * 0.5 * rabi * z - src_ge) / du;
    return u.imag();
}

}  // namespace cohspec::oracles
