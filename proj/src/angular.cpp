#include "cohspec/angular.hpp"

#include <cmath>
#include <sstream>

#include "cohspec/errors.hpp"

namespace cohspec {

HalfInt HalfInt::from_double(double value) {
    const double twice = 2.0 * value;
    const double rounded = std::round(twice);
    if (std::abs(twice - rounded) > 1e-9) {
        std::ostringstream os;
        os << "angular momentum " << value << " is not a multiple of 1/2";
        throw InputError(os.str());
    }
    return HalfInt{static_cast<int>(rounded)};
}

std::string to_string(HalfInt h) {
    if (h.is_integer()) return std::to_string(h.twice / 2);
    return std::to_string(h.twice) + "/2";
}

cplx SphericalVector::operator[](int q) const {
    switch (q) {
        case -1: return q_minus;
        case 0: return q_zero;
        case 1: return q_plus;
        default: throw InputError("spherical component index must be -1, 0 or +1");
    }
}

double SphericalVector::norm_squared() const {
    return std::norm(q_minus) + std::norm(q_zero) + std::norm(q_plus);
}

SphericalVector SphericalVector::normalized() const {
    const double n = std::sqrt(norm_squared());
    if (n == 0.0) throw InputError("cannot normalize a zero polarization vector");
    return {q_minus / n, q_zero / n, q_plus / n};
}

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
const cplx kI{0.0, 1.0};
}  // namespace

// c_q = e_q^* . A
SphericalVector cartesian_to_spherical(cplx x, cplx y, cplx z) {
    return {(x + kI * y) * kInvSqrt2, z, -(x - kI * y) * kInvSqrt2};
}

std::array<cplx, 3> spherical_to_cartesian(const SphericalVector& v) {
    // A = c_{-1} e_{-1} + c_0 e_0 + c_{+1} e_{+1}
    const cplx x = (v.q_minus - v.q_plus) * kInvSqrt2;
    const cplx y = -kI * (v.q_minus + v.q_plus) * kInvSqrt2;
    return {x, y, v.q_zero};
}

namespace {

long double factorial(int n) {
    static const auto table = [] {
        std::array<long double, 171> t{};
        t[0] = 1.0L;
        for (std::size_t i = 1; i < t.size(); ++i) t[i] = t[i - 1] * static_cast<long double>(i);
        return t;
    }();
    if (n < 0 || n >= static_cast<int>(table.size())) throw InputError("factorial argument out of range");
    return table[static_cast<std::size_t>(n)];
}

void check_pair(HalfInt j, HalfInt m) {
    if (j.twice < 0) throw InputError("negative angular momentum " + to_string(j));
    if ((j.twice - m.twice) % 2 != 0) {
        throw InputError("projection " + to_string(m) + " has the wrong parity for j = " + to_string(j));
    }
}

}  // namespace

double clebsch_gordan(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt J, HalfInt M) {
    check_pair(j1, m1);
    check_pair(j2, m2);
    check_pair(J, M);
    if (M.twice != m1.twice + m2.twice) return 0.0;
    if (std::abs(m1.twice) > j1.twice || std::abs(m2.twice) > j2.twice || std::abs(M.twice) > J.twice) return 0.0;
    if (J.twice > j1.twice + j2.twice || J.twice < std::abs(j1.twice - j2.twice)) return 0.0;
    if ((j1.twice + j2.twice + J.twice) % 2 != 0) return 0.0;

    // Every combination below is an integer once the triangle and parity checks pass.
    const int a = (j1.twice + j2.twice - J.twice) / 2;   // j1+j2-J
    const int b = (j1.twice - m1.twice) / 2;             // j1-m1
    const int c = (j2.twice + m2.twice) / 2;             // j2+m2
    const int d = (J.twice - j2.twice + m1.twice) / 2;   // J-j2+m1
    const int e = (J.twice - j1.twice - m2.twice) / 2;   // J-j1-m2

    const long double prefactor =
        std::sqrt(static_cast<long double>(J.twice + 1) * factorial((J.twice + j1.twice - j2.twice) / 2) *
                  factorial((J.twice - j1.twice + j2.twice) / 2) * factorial(a) /
                  factorial((j1.twice + j2.twice + J.twice) / 2 + 1)) *
        std::sqrt(factorial((J.twice + M.twice) / 2) * factorial((J.twice - M.twice) / 2) *
                  factorial((j1.twice - m1.twice) / 2) * factorial((j1.twice + m1.twice) / 2) *
                  factorial((j2.twice - m2.twice) / 2) * factorial((j2.twice + m2.twice) / 2));

    long double sum = 0.0L;
    const int k_min = std::max({0, -d, -e});
    const int k_max = std::min({a, b, c});
    for (int k = k_min; k <= k_max; ++k) {
        const long double term = 1.0L / (factorial(k) * factorial(a - k) * factorial(b - k) * factorial(c - k) *
                                         factorial(d + k) * factorial(e + k));
        sum += (k % 2 == 0) ? term : -term;
    }
    return static_cast<double>(prefactor * sum);
}

}  // namespace cohspec

namespace cohspec {

SphericalVector conjugate(const SphericalVector& v) {
    return {-std::conj(v.q_plus), std::conj(v.q_zero), -std::conj(v.q_minus)};
}

}  // namespace cohspec
