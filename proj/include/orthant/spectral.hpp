#pragma once

#include "orthant/linalg.hpp"

#include <utility>
#include <vector>

namespace orthant {

// Cyclic Jacobi eigendecomposition of a symmetric matrix. Returns eigenvalues
// in ascending order with matching orthonormal eigenvectors as the columns of
// the returned matrix. If off_history is given, the off-diagonal Frobenius
// norm after each sweep is appended (it decreases monotonically).
std::pair<Vec, Mat> sym_eig(const Mat& a, std::vector<double>* off_history = nullptr);

// Real power of a symmetric matrix through its eigendecomposition. Integer
// powers accept any spectrum (negative ones need an invertible matrix);
// fractional powers require positive-definite input.
Mat sym_power(const Mat& a, double p);

// Euclidean reflection in the hyperplane orthogonal to u: I - 2 u u^T/<u,u>.
Mat reflection(const Vec& u);

// Geometry induced by the normalized covariance matrix `delta`: wall normals
// u_i = delta^{1/2} e_i (unit vectors, pairwise inner products delta_ij), the
// reflections they generate, and the interior angle between walls i and j,
// which is pi - arccos(delta_ij).
struct AngleGeometry {
    Mat delta;
    Mat half;                     // delta^{1/2}
    std::vector<Vec> normals;     // u_i = columns of half
    std::vector<Mat> reflections; // reflection in u_i
    Mat wall_angles;              // pi - arccos(delta_ij), zero diagonal
};

AngleGeometry angle_geometry(const Mat& delta);

// Max-norm of s^T g s - g: how far s is from preserving the bilinear form g.
double isometry_residual(const Mat& s, const Mat& g);

} // namespace orthant
