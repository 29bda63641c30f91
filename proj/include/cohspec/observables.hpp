#pragma once

#include <string>
#include <string_view>

#include "cohspec/probe_response.hpp"

namespace cohspec {

// Every observable is in reduced units. Dropped prefactors:
//   absorption          n k_2 <g||D||e> / sqrt(2F_e+1)   (and 1/E_2 becomes 1/Omega_2)
//   dispersion          n / eps_0-like constants, same dipole scale
//   fwm_power           n^2 and the squared dipole scale
//   fluorescence_mod    hbar omega_0 Gamma
//   mag_dipole_modulus  n
enum class ObservableKind {
    absorption,
    dispersion,
    fwm_power,
    fluorescence_mod,
    mag_dipole_modulus,
    linear_absorption,
    incoherent_absorption,
};

std::string_view to_string(ObservableKind kind);
ObservableKind parse_observable(std::string_view name);  // throws InputError

/// How the probe polarization projects the induced dipole.
enum class Projection {
    conjugate,  ///< e_2^* . P (positive pump-off absorption for any polarization)
    literal,    ///< e_2 . P without conjugation; equal for linear light
};

struct ObservableSample {
    ObservableKind kind = ObservableKind::absorption;
    double value = 0.0;
    double delta = 0.0;
    double bfield = 0.0;
};

/// Im of the probe-polarization projection of Tr(sigma_ge^+ Q_eg), per unit probe Rabi frequency.
double absorption(const ProbeResponse& pr, const OperatorSet& ops, const FieldSpec& probe,
                  Projection projection = Projection::conjugate);

/// Refractive part projected on `axis`, per unit probe Rabi frequency. The sign is
/// chosen so the value tracks chi' (normal dispersion = positive slope in delta).
double dispersion(const ProbeResponse& pr, const OperatorSet& ops, const FieldSpec& probe,
                  const SphericalVector& axis);

/// |Tr(sigma_eg^+ Q_ge)|^2 summed over the three vector components.
double fwm_power(const ProbeResponse& pr, const OperatorSet& ops);

/// 2 b |Tr sigma_ee^+|: amplitude of the fluorescence oscillation at delta.
double fluorescence_modulation(const ProbeResponse& pr, const TransitionSpec& spec);

/// |beta_g| * |Tr(sigma_gg^+ F)| with F the ground-level angular momentum vector.
double magnetic_dipole(const ProbeResponse& pr, const OperatorSet& ops, const TransitionSpec& spec);

/// Pump-off copy of the operator set (V1 = 0, W2 rebuilt from `probe`) and the isotropic state.
struct LinearReference {
    OperatorSet ops;
    DensityState state;
};
LinearReference linear_reference(const OperatorSet& ops, const TransitionSpec& spec, const FieldSpec& probe);

/// Probe absorption with the pump switched off and sigma^0 = rho_0.
double linear_absorption(const OperatorSet& ops, const TransitionSpec& spec, const FieldSpec& probe, double delta);

}  // namespace cohspec
