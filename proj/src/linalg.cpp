#include "orthant/linalg.hpp"

#include "orthant/errors.hpp"

#include <algorithm>
#include <cmath>

namespace orthant {

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Vec Mat::col(int j) const {
    Vec v(r_);
    for (int i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
}

Vec Mat::row(int i) const {
    Vec v(c_);
    for (int j = 0; j < c_; ++j) v[j] = (*this)(i, j);
    return v;
}

Mat operator*(const Mat& a, const Mat& b) {
    Mat out(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            double aik = a(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    return out;
}

Mat operator+(const Mat& a, const Mat& b) {
    Mat out(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) + b(i, j);
    return out;
}

Mat operator-(const Mat& a, const Mat& b) {
    Mat out(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) - b(i, j);
    return out;
}

Vec operator*(const Mat& a, const Vec& x) {
    Vec out(a.rows(), 0.0);
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out[i] += a(i, j) * x[j];
    return out;
}

Mat transpose(const Mat& a) {
    Mat out(a.cols(), a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
    return out;
}

Mat scale(const Mat& a, double s) {
    Mat out(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) * s;
    return out;
}

double inf_norm(const Mat& a) {
    double m = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) m = std::max(m, std::fabs(a(i, j)));
    return m;
}

double inf_norm(const Vec& x) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::fabs(v));
    return m;
}

double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(const Vec& x) {
    return std::sqrt(dot(x, x));
}

Vec solve(Mat a, Vec b) {
    int n = a.rows();
    std::vector<int> piv(n);
    for (int i = 0; i < n; ++i) piv[i] = i;
    for (int k = 0; k < n; ++k) {
        int p = k;
        for (int i = k + 1; i < n; ++i)
            if (std::fabs(a(i, k)) > std::fabs(a(p, k))) p = i;
        if (std::fabs(a(p, k)) < 1e-14) fail_numeric("singular linear system");
        if (p != k) {
            for (int j = 0; j < n; ++j) std::swap(a(p, j), a(k, j));
            std::swap(b[p], b[k]);
        }
        for (int i = k + 1; i < n; ++i) {
            double f = a(i, k) / a(k, k);
            a(i, k) = 0.0;
            for (int j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
            b[i] -= f * b[k];
        }
    }
    Vec x(n);
    for (int i = n - 1; i >= 0; --i) {
        double s = b[i];
        for (int j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
        x[i] = s / a(i, i);
    }
    return x;
}

CVec poly_roots(const CVec& coeffs) {
    using C = std::complex<double>;
    CVec c = coeffs;
    while (c.size() > 1 && std::abs(c.back()) == 0.0) c.pop_back();
    int n = static_cast<int>(c.size()) - 1;
    if (n <= 0) return {};
    const C lead = c.back();
    for (auto& v : c) v /= lead; // monic; index = power, c[n] = 1
    double radius = 0.0;
    for (int i = 0; i < n; ++i) radius = std::max(radius, std::abs(c[i]));
    radius = 1.0 + radius;

    CVec z(n);
    for (int i = 0; i < n; ++i)
        z[i] = std::polar(radius * 0.7, 2.0 * M_PI * i / n + 0.4);

    auto eval = [&](C x, C& df) {
        C p = c[n];
        df = 0.0;
        for (int i = n - 1; i >= 0; --i) {
            df = df * x + p;
            p = p * x + c[i];
        }
        return p;
    };

    for (int iter = 0; iter < 600; ++iter) {
        double shift = 0.0;
        for (int i = 0; i < n; ++i) {
            C df;
            C num = eval(z[i], df);
            C den = 1.0;
            for (int j = 0; j < n; ++j)
                if (j != i) den *= (z[i] - z[j]);
            if (std::abs(den) == 0.0) den = 1e-30;
            C d = num / den;
            z[i] -= d;
            shift = std::max(shift, std::abs(d));
        }
        if (shift < 1e-15 * radius) break;
    }
    // Newton polish tightens clusters the simultaneous iteration leaves loose.
    for (int i = 0; i < n; ++i) {
        for (int it = 0; it < 8; ++it) {
            C df;
            C p = eval(z[i], df);
            if (std::abs(df) < 1e-300) break;
            C d = p / df;
            z[i] -= d;
            if (std::abs(d) < 1e-16 * (1.0 + std::abs(z[i]))) break;
        }
    }
    std::sort(z.begin(), z.end(), [](const C& a, const C& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return z;
}

CVec eigenvalues(const Mat& a) {
    int n = a.rows();
    if (n == 0) return {};
    // Faddeev-LeVerrier: M_1 = A, c_{n-1} = -tr M_1; M_{k+1} = A (M_k + c_{n-k} I).
    std::vector<double> c(n + 1, 0.0);
    c[n] = 1.0;
    Mat m = a;
    for (int k = 1; k <= n; ++k) {
        if (k > 1) {
            Mat t = m;
            for (int i = 0; i < n; ++i) t(i, i) += c[n - k + 1];
            m = a * t;
        }
        double tr = 0.0;
        for (int i = 0; i < n; ++i) tr += m(i, i);
        c[n - k] = -tr / k;
    }
    CVec coeffs(n + 1);
    for (int i = 0; i <= n; ++i) coeffs[i] = c[i];
    return poly_roots(coeffs);
}

} // namespace orthant
