#pragma once

#include <complex>
#include <vector>

namespace orthant {

using Vec = std::vector<double>;
using CVec = std::vector<std::complex<double>>;

// Dense row-major matrix; dimensions here are step-set dimensions (d <= ~16),
// so no effort is spent on blocking or expression templates.
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols, double fill = 0.0) : r_(rows), c_(cols), a_(static_cast<size_t>(rows) * cols, fill) {}

    static Mat identity(int n);

    int rows() const { return r_; }
    int cols() const { return c_; }

    double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
    double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

    Vec col(int j) const;
    Vec row(int i) const;

    bool same_shape(const Mat& o) const { return r_ == o.r_ && c_ == o.c_; }

private:
    int r_ = 0, c_ = 0;
    std::vector<double> a_;
};

Mat operator*(const Mat& a, const Mat& b);
Mat operator+(const Mat& a, const Mat& b);
Mat operator-(const Mat& a, const Mat& b);
Vec operator*(const Mat& a, const Vec& x);
Mat transpose(const Mat& a);
Mat scale(const Mat& a, double s);

double inf_norm(const Mat& a);
double inf_norm(const Vec& x);
double dot(const Vec& a, const Vec& b);
double norm2(const Vec& x);

// LU with partial pivoting; throws Error(numeric) when the pivot collapses.
Vec solve(Mat a, Vec b);

// Eigenvalues of a general real square matrix: characteristic polynomial by
// Faddeev-LeVerrier, roots by Durand-Kerner with Newton polish. Adequate for
// the small well-scaled matrices produced by Jacobian products.
CVec eigenvalues(const Mat& a);

// Roots of a complex-coefficient polynomial c[0] + c[1] x + ... + c[n] x^n.
CVec poly_roots(const CVec& coeffs);

} // namespace orthant
