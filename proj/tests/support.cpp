#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

namespace support {

namespace {

struct ProductBasis {
    int n1, n2;
    double j1, j2;
    int index(int a, int b) const { return a * n2 + b; }
    double m1(int a) const { return j1 - a; }
    double m2(int b) const { return j2 - b; }
};

}  // namespace

double cg_by_lowering(double j1, double m1, double j2, double m2, double J, double M) {
    const ProductBasis pb{static_cast<int>(std::lround(2 * j1 + 1)), static_cast<int>(std::lround(2 * j2 + 1)), j1, j2};
    const int n = pb.n1 * pb.n2;
    Eigen::MatrixXd jsq = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd jminus = Eigen::MatrixXd::Zero(n, n);
    auto lower = [](double j, double m) { return std::sqrt(j * (j + 1) - m * (m - 1)); };
    auto raise = [](double j, double m) { return std::sqrt(j * (j + 1) - m * (m + 1)); };
    for (int a = 0; a < pb.n1; ++a) {
        for (int b = 0; b < pb.n2; ++b) {
            const int col = pb.index(a, b);
            const double ma = pb.m1(a), mb = pb.m2(b);
            jsq(col, col) += j1 * (j1 + 1) + j2 * (j2 + 1) + 2 * ma * mb;
            if (a + 1 < pb.n1) jminus(pb.index(a + 1, b), col) += lower(j1, ma);
            if (b + 1 < pb.n2) jminus(pb.index(a, b + 1), col) += lower(j2, mb);
            // J1+ J2- + J1- J2+
            if (a > 0 && b + 1 < pb.n2) jsq(pb.index(a - 1, b + 1), col) += raise(j1, ma) * lower(j2, mb);
            if (a + 1 < pb.n1 && b > 0) jsq(pb.index(a + 1, b - 1), col) += lower(j1, ma) * raise(j2, mb);
        }
    }
    std::vector<int> top;
    for (int a = 0; a < pb.n1; ++a)
        for (int b = 0; b < pb.n2; ++b)
            if (std::abs(pb.m1(a) + pb.m2(b) - J) < 1e-9) top.push_back(pb.index(a, b));
    if (top.empty()) return 0.0;
    Eigen::MatrixXd sub(top.size(), top.size());
    for (std::size_t r = 0; r < top.size(); ++r)
        for (std::size_t c = 0; c < top.size(); ++c) sub(r, c) = jsq(top[r], top[c]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sub);
    int best = 0;
    for (int k = 0; k < es.eigenvalues().size(); ++k) {
        if (std::abs(es.eigenvalues()(k) - J * (J + 1)) < std::abs(es.eigenvalues()(best) - J * (J + 1))) best = k;
    }
    if (std::abs(es.eigenvalues()(best) - J * (J + 1)) > 1e-8) return 0.0;
    Eigen::VectorXd state = Eigen::VectorXd::Zero(n);
    for (std::size_t r = 0; r < top.size(); ++r) state(top[r]) = es.eigenvectors()(static_cast<int>(r), best);
    // Condon-Shortley: <j1 j1; j2 J-j1 | J J> > 0.
    const int b0 = static_cast<int>(std::lround(j2 - (J - j1)));
    if (b0 >= 0 && b0 < pb.n2 && state(pb.index(0, b0)) < 0) state = -state;
    for (double m = J; m > M + 1e-9; m -= 1.0) {
        state = jminus * state / lower(J, m);
    }
    const int a = static_cast<int>(std::lround(j1 - m1));
    const int b = static_cast<int>(std::lround(j2 - m2));
    if (a < 0 || a >= pb.n1 || b < 0 || b >= pb.n2) return 0.0;
    return state(pb.index(a, b));
}

std::vector<Feature> find_features(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<Feature> out;
    const std::size_t n = y.size();
    for (int sign : {1, -1}) {
        std::vector<double> s(n);
        for (std::size_t i = 0; i < n; ++i) s[i] = sign * y[i];
        for (std::size_t i = 1; i + 1 < n; ++i) {
            if (!(s[i] > s[i - 1] && s[i] >= s[i + 1])) continue;
            double left_min = s[i];
            std::size_t l = i;
            while (l > 0 && s[l - 1] <= s[i]) left_min = std::min(left_min, s[--l]);
            double right_min = s[i];
            std::size_t r = i;
            while (r + 1 < n && s[r + 1] <= s[i]) right_min = std::min(right_min, s[++r]);
            Feature f;
            f.index = i;
            f.position = x[i];
            f.value = y[i];
            f.maximum = sign > 0;
            f.prominence = s[i] - std::max(left_min, right_min);
            const double level = s[i] - 0.5 * f.prominence;
            std::size_t a = i;
            while (a > l && s[a] > level) --a;
            double xl = x[a];
            if (s[a] < level) xl = x[a] + (level - s[a]) / (s[a + 1] - s[a]) * (x[a + 1] - x[a]);
            std::size_t b = i;
            while (b < r && s[b] > level) ++b;
            double xr = x[b];
            if (s[b] < level) xr = x[b] - (level - s[b]) / (s[b - 1] - s[b]) * (x[b] - x[b - 1]);
            f.width = xr - xl;
            out.push_back(f);
        }
    }
    std::sort(out.begin(), out.end(), [](const Feature& p, const Feature& q) { return p.index < q.index; });
    return out;
}

std::vector<Feature> narrow_features(const std::vector<double>& x, const std::vector<double>& y, double max_width,
                                     double rel_floor) {
    double scale = 0.0;
    for (double v : y) scale = std::max(scale, std::abs(v));
    std::vector<Feature> out;
    for (const auto& f : find_features(x, y)) {
        if (f.width < max_width && f.prominence > rel_floor * scale) out.push_back(f);
    }
    return out;
}

double linear_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

double linear_r2(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    return sxy * sxy / (sxx * syy);
}

}  // namespace support
