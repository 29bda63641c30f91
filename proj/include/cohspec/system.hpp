#pragma once

#include <string_view>

#include <array>

#include <Eigen/Dense>

#include "cohspec/angular.hpp"

namespace cohspec {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// How Omega = 2 E <g||D||e> / hbar maps onto the Q operators.
enum class RabiNormalization {
    reduced_element,  ///< D_ge = <g||D||e> Q_ge / sqrt(2F_e+1): coupling (Omega/2) Q / sqrt(2F_e+1)
    unit_q,           ///< coupling (Omega/2) Q: a 0 -> 1 sigma+ element equals Omega/2
};

std::string_view to_string(RabiNormalization n);
RabiNormalization parse_rabi_normalization(std::string_view name);

/// Ground level F_g and excited level F_e sharing one optical transition.
/// Rates are in units of the excited-state decay rate Gamma (Gamma = 1).
struct TransitionSpec {
    HalfInt fg{2};
    HalfInt fe{4};
    double branching = 1.0;     ///< b: fraction of decays returning to g
    double gamma = 1e-3;        ///< transit (ground relaxation) rate
    double beta_g = 1.0;        ///< beta_g B is the ground Zeeman step for B = 1
    double beta_e = 1.0;
    RabiNormalization normalization = RabiNormalization::reduced_element;

    int ground_size() const { return fg.twice + 1; }
    int excited_size() const { return fe.twice + 1; }
    int dim() const { return ground_size() + excited_size(); }

    /// Factor multiplying (Omega/2) Q in the field couplings.
    double coupling_scale() const;

    /// Throws InputError for forbidden transitions or out-of-range rates.
    void validate() const;
};

/// One optical field. The polarization is the complex direction of the
/// field's positive-frequency amplitude in the usual e^{-i w t} sense, so
/// a sigma+ vector drives m_g -> m_e = m_g + 1.
struct FieldSpec {
    double rabi = 0.0;          ///< Omega / Gamma
    SphericalVector polarization{0.0, 1.0, 0.0};
    double detuning = 0.0;      ///< pump only: w_1 - (w_e - w_g)
};

/// Every operator on the (2F_g+1)+(2F_e+1) space. Basis order: ground
/// sublevels m = -F_g..F_g, then excited sublevels m = -F_e..F_e.
struct OperatorSet {
    int dim = 0;
    int ground_size = 0;
    int excited_size = 0;
    CMatrix Pg, Pe;
    CMatrix Fx, Fy, Fz;               ///< block diagonal over g and e
    std::array<CMatrix, 3> Q;         ///< Q[q+1] = Q_ge^q, lowering block only
    CMatrix H_rot;                    ///< free Hamiltonian in the pump frame
    CMatrix V1;                       ///< pump coupling, Hermitian
    CMatrix W2;                       ///< probe lowering coupling, not Hermitian

    const CMatrix& q_component(int q) const { return Q.at(static_cast<std::size_t>(q + 1)); }

    /// e^* . Q_ge for a field of polarization e (unit Rabi frequency).
    CMatrix lowering_coupling(const SphericalVector& polarization) const;
};

/// Q_ge^q with <g m_g|Q_q|e m_e> nonzero only for m_g = m_e + q, normalized
/// so that sum_q Q_eg^q Q_ge^q = P_e.
std::array<CMatrix, 3> build_q_operators(const TransitionSpec& spec);

/// Angular momentum operators (F_x, F_y, F_z), block diagonal over g and e.
std::array<CMatrix, 3> build_angular_momentum(const TransitionSpec& spec);

struct PumpHamiltonian {
    CMatrix H_rot;
    CMatrix V1;
};

PumpHamiltonian build_hamiltonian(const TransitionSpec& spec, const FieldSpec& pump, double bfield);
CMatrix build_probe_coupling(const TransitionSpec& spec, const FieldSpec& probe);

/// Assemble the full operator set for a pump, probe and magnetic field.
OperatorSet make_operator_set(const TransitionSpec& spec, const FieldSpec& pump, const FieldSpec& probe,
                              double bfield);

}  // namespace cohspec
