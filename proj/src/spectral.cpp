#include "orthant/spectral.hpp"

#include "orthant/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace orthant {

namespace {

double off_norm(const Mat& a) {
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
}

} // namespace

std::pair<Vec, Mat> sym_eig(const Mat& a0, std::vector<double>* off_history) {
    const int n = a0.rows();
    if (a0.cols() != n) fail_domain("sym_eig needs a square matrix");
    Mat a = a0;
    Mat v = Mat::identity(n);
    double scale = inf_norm(a);
    if (scale == 0.0) scale = 1.0;

    for (int sweep = 0; sweep < 100; ++sweep) {
        if (off_norm(a) <= 1e-14 * scale) break;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                if (std::fabs(a(p, q)) <= 1e-300) continue;
                double tau = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                double t = (tau >= 0 ? 1.0 : -1.0) / (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;
                for (int k = 0; k < n; ++k) { // A <- J^T A J on rows/cols p,q
                    double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
        if (off_history) off_history->push_back(off_norm(a));
    }

    Vec lam(n);
    for (int i = 0; i < n; ++i) lam[i] = a(i, i);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int l, int r) { return lam[l] < lam[r]; });
    Vec lam_sorted(n);
    Mat v_sorted(n, n);
    for (int j = 0; j < n; ++j) {
        lam_sorted[j] = lam[order[j]];
        for (int i = 0; i < n; ++i) v_sorted(i, j) = v(i, order[j]);
    }
    return {lam_sorted, v_sorted};
}

Mat sym_power(const Mat& a, double p) {
    auto [lam, v] = sym_eig(a);
    const int n = a.rows();
    const double lmax = std::fabs(lam[n - 1]);
    bool integral = p == std::floor(p);
    Vec lp(n);
    for (int i = 0; i < n; ++i) {
        if (!integral && lam[i] <= 1e-12 * std::max(1.0, lmax))
            fail_numeric("fractional matrix power of a non-positive-definite matrix");
        if (integral && p < 0 && std::fabs(lam[i]) <= 1e-14 * std::max(1.0, lmax))
            fail_numeric("negative matrix power of a singular matrix");
        lp[i] = integral ? std::pow(lam[i], p) : std::exp(p * std::log(lam[i]));
    }
    Mat out(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int k = 0; k < n; ++k) s += v(i, k) * lp[k] * v(j, k);
            out(i, j) = s;
        }
    return out;
}

Mat reflection(const Vec& u) {
    const int n = static_cast<int>(u.size());
    double nn = dot(u, u);
    if (nn <= 0.0) fail_domain("reflection needs a nonzero normal");
    Mat r = Mat::identity(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r(i, j) -= 2.0 * u[i] * u[j] / nn;
    return r;
}

AngleGeometry angle_geometry(const Mat& delta) {
    AngleGeometry g;
    g.delta = delta;
    g.half = sym_power(delta, 0.5);
    const int d = delta.rows();
    g.wall_angles = Mat(d, d);
    for (int i = 0; i < d; ++i) {
        g.normals.push_back(g.half.col(i));
        for (int j = 0; j < d; ++j) {
            if (i == j) continue;
            double c = std::clamp(delta(i, j), -1.0, 1.0);
            g.wall_angles(i, j) = std::acos(-c); // pi - arccos(c)
        }
    }
    for (const Vec& u : g.normals) g.reflections.push_back(reflection(u));
    return g;
}

double isometry_residual(const Mat& s, const Mat& g) {
    return inf_norm(transpose(s) * g * s - g);
}

} // namespace orthant
