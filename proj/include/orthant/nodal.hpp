#pragma once

#include "orthant/coxeter.hpp"
#include "orthant/laurent.hpp"
#include "orthant/linalg.hpp"
#include "orthant/spectral.hpp"

#include <string>
#include <vector>

namespace orthant {

// Verdict on whether the spherical section of the cone is a chamber of a
// finite reflection group. In that case the lowest Dirichlet eigenvalue of
// the section and the excursion exponent follow in closed form.
struct NodalResult {
    bool is_nodal = false;
    int dim = 0;                            // ambient dimension (sphere S^{dim-1})
    std::vector<std::string> coxeter_type;  // sorted component type names
    std::string group_name;                 // " x "-joined, diagram order
    Int group_order = 0;                    // |W| when finite
    long long k = 0;                        // reflection hyperplane count
    double lambda1 = 0.0;                   // k (dim - 2 + k)
    double alpha = 0.0;                     // excursion exponent
    std::string failure_reason;             // set when not nodal
};

// Excursion exponent from the eigenvalue: 1 + sqrt(lambda1 + (d/2 - 1)^2).
double exponent(double lambda1, int d);

// Core decision from outward unit wall normals living in R^ambient. The
// normal count may be below the ambient dimension (prismatic chambers).
NodalResult classify_nodal_normals(const std::vector<Vec>& normals, int ambient);

// Decision from the wall geometry of a covariance matrix.
NodalResult classify_nodal(const AngleGeometry& geo);

// Decision from the Gram matrix of outward unit wall normals (unit diagonal,
// positive semidefinite; rank deficiency allowed). `ambient` is the walk
// dimension the cone lives in.
NodalResult classify_nodal_gram(const Mat& gram, int ambient);

// One row of the admissible wall-angle catalog. Parametric families keep the
// symbolic expressions and use m = -1 (parameter k) or m = -2 (parameter k')
// in the denominator list; concrete rows carry the integer values.
struct CatalogRow {
    std::vector<int> m;          // angle denominators, upper triangle row-major
    std::string angles;          // "pi/3, pi/2, ..." display form
    std::string type;            // group, product form
    std::string k_expr;          // reflection count (symbolic when parametric)
    std::string lambda_expr;     // lambda_1 (symbolic when parametric)
    long long k = 0;             // concrete values; 0 when parametric
    long long lambda1 = 0;
    std::string note;
    bool parametric = false;
};

// Full catalogs for d = 2, 3, 4 in classification order.
std::vector<CatalogRow> catalog_tuples(int d);

// Gram matrix realizing a catalog row; parametric slots take the supplied
// values (angle pi/k_param, pi/k2_param).
Mat catalog_gram(const CatalogRow& row, int d, int k_param = 2, int k2_param = 2);

// Weyl-chamber analyses. Type 'A': walls x_i = x_{i+1} inside R^d (d-1
// normals). Type 'B': adds the wall x_1 = 0. Exponents come out d^2/2 and
// d^2 + d/2.
NodalResult weyl_chamber(char type, int d);

// Product of the linear forms of the arrangement hyperplanes, one factor per
// +- root pair. Exact rational coefficients when every scaled root entry is
// recognizably rational; double coefficients otherwise.
struct PolyP0 {
    bool exact = false;
    PolyQ rational;  // valid in exact mode
    PolyD numeric;   // always valid
    long long degree = 0;
};

// `roots` is a full root system (both signs), e.g. RootClosure::roots.
PolyP0 build_P0(const std::vector<Vec>& roots, long long cap = 24);

// Max |coefficient| of the Laplacian of p relative to the largest
// coefficient of p. Exactly zero in rational mode when p is harmonic.
double check_harmonic(const PolyP0& p);

} // namespace orthant
