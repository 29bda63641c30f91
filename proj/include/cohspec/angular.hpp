#pragma once

#include <array>
#include <complex>
#include <string>

namespace cohspec {

using cplx = std::complex<double>;

/// Angular momentum or magnetic quantum number stored as twice its value,
/// so 3/2 is HalfInt{3}. Integer and half-integer values are both exact.
struct HalfInt {
    int twice = 0;

    static HalfInt from_double(double value);  // throws InputError if 2*value is not integral
    double value() const { return 0.5 * twice; }
    bool is_integer() const { return twice % 2 == 0; }

    friend bool operator==(HalfInt, HalfInt) = default;
    friend auto operator<=>(HalfInt, HalfInt) = default;
};

std::string to_string(HalfInt h);

/// Components of a vector in the helicity basis e_{-1}, e_0, e_{+1} with
/// e_{+1} = -(x + i y)/sqrt(2), e_0 = z, e_{-1} = (x - i y)/sqrt(2).
/// The stored numbers are the expansion coefficients c_q in A = sum_q c_q e_q,
/// so a pure sigma+ vector is (0, 0, 1) and x = (1/sqrt2, 0, -1/sqrt2).
struct SphericalVector {
    cplx q_minus{};
    cplx q_zero{};
    cplx q_plus{};

    /// Coefficient for q in {-1, 0, +1}.
    cplx operator[](int q) const;
    double norm_squared() const;
    SphericalVector normalized() const;
};

SphericalVector cartesian_to_spherical(cplx x, cplx y, cplx z);
std::array<cplx, 3> spherical_to_cartesian(const SphericalVector& v);

/// <j1 m1; j2 m2 | J M> in the Condon-Shortley convention (Racah's formula).
/// Returns 0 when M != m1 + m2, when the triangle rule fails or when |m| > j.
/// Throws InputError when a projection and its momentum differ in parity.
double clebsch_gordan(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt J, HalfInt M);

}  // namespace cohspec

namespace cohspec {

/// Complex conjugate of the vector itself (not of its coefficients):
/// conj(A) has coefficients c'_q = (-1)^q conj(c_{-q}).
SphericalVector conjugate(const SphericalVector& v);

}  // namespace cohspec
