#pragma once

#include <random>
#include <vector>

#include "cohspec/liouville.hpp"
#include "cohspec/system.hpp"

namespace support {

using cohspec::CMatrix;
using cohspec::cplx;

inline std::mt19937_64& rng() {
    static std::mt19937_64 engine(20260417);
    return engine;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

inline CMatrix random_matrix(int rows, int cols) {
    std::normal_distribution<double> n01;
    CMatrix m(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) m(i, j) = cplx{n01(rng()), n01(rng())};
    return m;
}

inline CMatrix random_density(int n) {
    const CMatrix a = random_matrix(n, n);
    CMatrix rho = a * a.adjoint();
    return rho / rho.trace().real();
}

inline cohspec::SphericalVector random_polarization() {
    const CMatrix v = random_matrix(3, 1);
    return cohspec::cartesian_to_spherical(v(0), v(1), v(2)).normalized();
}

/// <j1 m1; j2 m2 | J M> built without any closed-form sum: the stretched state
/// |J J> is the J^2 eigenvector in the M = J subspace (sign fixed by m1 = j1 > 0),
/// lower states follow from repeated application of J_-.
double cg_by_lowering(double j1, double m1, double j2, double m2, double J, double M);

/// A local extremum with its topographic prominence and its width at half
/// prominence, computed the way scipy.signal.peak_prominences/peak_widths do.
struct Feature {
    std::size_t index = 0;
    double position = 0.0;
    double value = 0.0;
    double prominence = 0.0;
    double width = 0.0;
    bool maximum = true;
};

std::vector<Feature> find_features(const std::vector<double>& x, const std::vector<double>& y);

/// Features narrower than `max_width` whose prominence exceeds `rel_floor`
/// times the largest |y|.
std::vector<Feature> narrow_features(const std::vector<double>& x, const std::vector<double>& y, double max_width,
                                     double rel_floor = 1e-6);

/// Coefficient of determination of a least-squares line through (x, y).
double linear_r2(const std::vector<double>& x, const std::vector<double>& y);

/// Least-squares slope.
double linear_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace support
