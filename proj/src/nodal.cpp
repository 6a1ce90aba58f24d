#include "orthant/nodal.hpp"

#include "orthant/errors.hpp"
#include "orthant/rational.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <sstream>

namespace orthant {

double exponent(double lambda1, int d) {
    if (lambda1 < 0.0) fail_domain("eigenvalue must be nonnegative");
    if (d < 1) fail_domain("dimension must be positive");
    double h = d / 2.0 - 1.0;
    return 1.0 + std::sqrt(lambda1 + h * h);
}

NodalResult classify_nodal_normals(const std::vector<Vec>& normals, int ambient) {
    if (ambient < 1) fail_domain("ambient dimension must be positive");
    NodalResult res;
    res.dim = ambient;

    const int r = static_cast<int>(normals.size());
    if (r == 0) {
        // No wall at all: the whole sphere.
        res.is_nodal = true;
        res.group_name = "trivial";
        res.group_order = 1;
        res.k = 0;
        res.lambda1 = 0.0;
        res.alpha = exponent(0.0, ambient);
        return res;
    }

    std::vector<Vec> unit(normals.begin(), normals.end());
    for (Vec& u : unit) {
        double n = norm2(u);
        if (n < 1e-12) fail_domain("zero wall normal");
        for (double& v : u) v /= n;
    }

    Mat gram(r, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) gram(i, j) = dot(unit[i], unit[j]);

    CoxeterDiagram diag = build_diagram(gram);
    if (!diag.recognized()) {
        res.failure_reason = "a wall angle is not recognized as a rational multiple of pi";
        return res;
    }
    if (!diag.chamber_shaped()) {
        res.failure_reason =
            "a wall angle has the form k*pi/m with k > 1: the cone is not a chamber";
        return res;
    }

    Classification cls = classify(diag);
    if (!cls.conclusive) {
        res.failure_reason = cls.reason;
        return res;
    }
    res.group_name = cls.name;
    for (const ComponentType& c : cls.components) res.coxeter_type.push_back(c.name);
    std::sort(res.coxeter_type.begin(), res.coxeter_type.end());
    if (!cls.finite) {
        res.failure_reason = "the wall reflection group is infinite";
        return res;
    }
    res.group_order = cls.order;

    RootClosure rc = generate_roots(unit);
    if (!rc.complete)
        fail_numeric("root closure did not stabilize for a group classified finite");
    long long k = static_cast<long long>(rc.roots.size() / 2);
    if (Int(static_cast<long>(k)) != cls.reflections)
        fail_numeric("root closure count disagrees with the classified reflection count");

    res.is_nodal = true;
    res.k = k;
    res.lambda1 = static_cast<double>(k) * (ambient - 2 + k);
    res.alpha = exponent(res.lambda1, ambient);
    return res;
}

NodalResult classify_nodal(const AngleGeometry& geo) {
    return classify_nodal_normals(geo.normals, geo.delta.rows());
}

NodalResult classify_nodal_gram(const Mat& gram, int ambient) {
    const int r = gram.rows();
    if (gram.cols() != r) fail_domain("Gram matrix must be square");
    for (int i = 0; i < r; ++i) {
        if (std::fabs(gram(i, i) - 1.0) > 1e-9)
            fail_domain("Gram matrix must have unit diagonal");
        for (int j = 0; j < i; ++j)
            if (std::fabs(gram(i, j) - gram(j, i)) > 1e-12)
                fail_domain("Gram matrix must be symmetric");
    }
    if (r == 0) return classify_nodal_normals({}, ambient);

    auto [lam, vecs] = sym_eig(gram);
    if (lam.front() < -1e-9) fail_domain("Gram matrix is not positive semidefinite");
    // Factor gram = N^T N with N = diag(sqrt(lam)) V^T; normals are the
    // columns of N, realized in R^r.
    std::vector<Vec> normals(r, Vec(r, 0.0));
    for (int i = 0; i < r; ++i)
        for (int row = 0; row < r; ++row)
            normals[i][row] = std::sqrt(std::max(lam[row], 0.0)) * vecs(i, row);
    return classify_nodal_normals(normals, ambient);
}

namespace {

std::string angle_str(int m) {
    if (m == -1) return "pi/k";
    if (m == -2) return "pi/k'";
    return "pi/" + std::to_string(m);
}

CatalogRow make_row(std::vector<int> ms, std::string type, std::string k_expr,
                    std::string lambda_expr, long long k, long long lambda1,
                    std::string note = "") {
    CatalogRow row;
    row.m = std::move(ms);
    for (size_t i = 0; i < row.m.size(); ++i) {
        if (i) row.angles += ", ";
        row.angles += angle_str(row.m[i]);
    }
    row.type = std::move(type);
    row.k_expr = std::move(k_expr);
    row.lambda_expr = std::move(lambda_expr);
    row.k = k;
    row.lambda1 = lambda1;
    row.note = std::move(note);
    for (int m : row.m)
        if (m < 0) row.parametric = true;
    return row;
}

} // namespace

std::vector<CatalogRow> catalog_tuples(int d) {
    std::vector<CatalogRow> rows;
    switch (d) {
    case 2:
        rows.push_back(make_row({}, "trivial", "0", "0", 0, 0, "no wall: the full circle"));
        {
            CatalogRow half = make_row({}, "Z/2Z", "1", "1", 1, 1, "single wall: the half circle");
            rows.push_back(half);
        }
        rows.push_back(make_row({-1}, "I2(k)", "k", "k^2", 0, 0, "wedge of angle pi/k, k >= 2"));
        return rows;
    case 3:
        rows.push_back(make_row({2, 2, 2}, "Z/2Z x Z/2Z x Z/2Z", "3", "12", 3, 12));
        rows.push_back(make_row({2, 2, -1}, "Z/2Z x I2(k)", "k+1", "(k+1)(k+2)", 0, 0, "k >= 2"));
        rows.push_back(make_row({3, 2, 3}, "A3", "6", "42", 6, 42));
        rows.push_back(make_row({3, 2, 4}, "B3", "9", "90", 9, 90));
        rows.push_back(make_row({5, 2, 3}, "H3", "15", "240", 15, 240));
        return rows;
    case 4:
        rows.push_back(make_row({2, 2, 2, 2, 2, 2}, "(Z/2Z)^4", "4", "24", 4, 24));
        rows.push_back(make_row({2, 2, 2, 2, 2, -1}, "(Z/2Z)^2 x I2(k)", "k+2", "(k+2)(k+4)",
                                0, 0, "k >= 2"));
        rows.push_back(make_row({-1, 2, 2, 2, 2, -2}, "I2(k) x I2(k')", "k+k'",
                                "(k+k')(k+k'+2)", 0, 0, "k, k' >= 2"));
        rows.push_back(make_row({2, 2, 2, 2, 3, 3}, "A3 x Z/2Z", "7", "63", 7, 63));
        rows.push_back(make_row({2, 2, 2, 2, 3, 4}, "B3 x Z/2Z", "10", "120", 10, 120));
        rows.push_back(make_row({2, 2, 2, 2, 3, 5}, "H3 x Z/2Z", "16", "288", 16, 288));
        rows.push_back(make_row({3, 2, 2, 3, 2, 3}, "A4", "10", "120", 10, 120));
        rows.push_back(make_row({3, 2, 2, 3, 2, 4}, "B4", "16", "288", 16, 288,
                                "16 reflections force 16*(4-2+16) = 288, the same "
                                "eigenvalue as the H3 x Z/2Z row; tables quoting 272 "
                                "contradict their own reflection count"));
        rows.push_back(make_row({3, 3, 3, 2, 2, 2}, "D4", "12", "168", 12, 168));
        rows.push_back(make_row({3, 2, 2, 4, 2, 3}, "F4", "24", "624", 24, 624));
        rows.push_back(make_row({5, 2, 2, 3, 2, 3}, "H4", "60", "3720", 60, 3720));
        return rows;
    default:
        fail_domain("catalog limited to d <= 4; use analyze for general d");
    }
}

Mat catalog_gram(const CatalogRow& row, int d, int k_param, int k2_param) {
    if (d == 2 && row.m.empty()) {
        // The wall-free and single-wall rows.
        if (row.k == 0) return Mat(0, 0);
        Mat g(1, 1);
        g(0, 0) = 1.0;
        return g;
    }
    size_t need = static_cast<size_t>(d) * (d - 1) / 2;
    if (row.m.size() != need) fail_domain("catalog row does not match the dimension");
    Mat g = Mat::identity(d);
    size_t idx = 0;
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            int m = row.m[idx++];
            if (m == -1) m = k_param;
            if (m == -2) m = k2_param;
            if (m < 2) fail_domain("angle denominator must be at least 2");
            double a = -std::cos(M_PI / m);
            g(i, j) = g(j, i) = a;
        }
    return g;
}

NodalResult weyl_chamber(char type, int d) {
    if (d < 2) fail_domain("Weyl chambers need dimension >= 2");
    char t = static_cast<char>(std::toupper(static_cast<unsigned char>(type)));
    if (t != 'A' && t != 'B') fail_domain("Weyl chamber type must be A or B");

    std::vector<Vec> normals;
    if (t == 'B') {
        Vec n(d, 0.0);
        n[0] = -1.0; // outward normal of the wall x_1 = 0
        normals.push_back(std::move(n));
    }
    const double inv = 1.0 / std::sqrt(2.0);
    for (int i = 0; i + 1 < d; ++i) {
        Vec n(d, 0.0);
        n[i] = inv;
        n[i + 1] = -inv;
        normals.push_back(std::move(n));
    }
    return classify_nodal_normals(normals, d);
}

namespace {

// Canonical representative of a +- root pair: first significant entry
// positive, scaled so the largest |entry| is 1.
Vec canonical_root(const Vec& root) {
    double m = 0.0;
    for (double v : root) m = std::max(m, std::fabs(v));
    if (m < 1e-12) fail_domain("zero root");
    Vec out = root;
    for (double& v : out) v /= m;
    for (double v : out) {
        if (std::fabs(v) > 1e-9) {
            if (v < 0.0)
                for (double& w : out) w = -w;
            break;
        }
    }
    return out;
}

bool same_vec(const Vec& a, const Vec& b, double tol = 1e-7) {
    for (size_t i = 0; i < a.size(); ++i)
        if (std::fabs(a[i] - b[i]) > tol) return false;
    return true;
}

} // namespace

PolyP0 build_P0(const std::vector<Vec>& roots, long long cap) {
    if (roots.empty()) fail_domain("empty root system");
    const int dim = static_cast<int>(roots[0].size());

    std::vector<Vec> reps;
    for (const Vec& r : roots) {
        Vec c = canonical_root(r);
        bool dup = false;
        for (const Vec& q : reps)
            if (same_vec(c, q)) {
                dup = true;
                break;
            }
        if (!dup) reps.push_back(std::move(c));
    }
    if (static_cast<long long>(reps.size()) > cap)
        fail_budget("root system has " + std::to_string(reps.size()) +
                    " hyperplanes, above the expansion cap " + std::to_string(cap));

    // Try exact rational coefficients per linear form.
    std::vector<std::vector<Rat>> rational(reps.size());
    bool exact = true;
    for (size_t i = 0; i < reps.size() && exact; ++i) {
        std::vector<Rat> coeffs(dim);
        for (int j = 0; j < dim && exact; ++j) {
            if (std::fabs(reps[i][j]) < 1e-12) {
                coeffs[j] = Rat(0);
                continue;
            }
            auto r = recognize_rational(reps[i][j], 64, 1e-9);
            if (!r)
                exact = false;
            else
                coeffs[j] = *r;
        }
        if (exact) {
            // Clear denominators; the overall scale of P0 is immaterial.
            Int l(1);
            for (const Rat& c : coeffs) {
                Int den = c.get_den();
                l = l / gcd(l, den) * den;
            }
            for (Rat& c : coeffs) {
                c *= Rat(l);
                c.canonicalize();
            }
            rational[i] = std::move(coeffs);
        }
    }

    PolyP0 p;
    p.degree = static_cast<long long>(reps.size());
    if (exact) {
        p.exact = true;
        PolyQ prod = PolyQ::constant(dim, Rat(1));
        for (const auto& coeffs : rational) prod = prod * PolyQ::linear(coeffs);
        p.rational = prod;
        PolyD mirror(dim);
        for (const auto& [e, c] : prod.terms()) mirror.add_term(e, c.get_d());
        p.numeric = mirror;
    } else {
        PolyD prod = PolyD::constant(dim, 1.0);
        for (const Vec& rep : reps) prod = prod * PolyD::linear(rep);
        p.numeric = prod;
    }
    return p;
}

double check_harmonic(const PolyP0& p) {
    if (p.exact) {
        PolyQ lap = p.rational.laplacian();
        if (lap.empty()) return 0.0;
        double denom = p.rational.max_abs_coeff();
        return lap.max_abs_coeff() / denom;
    }
    PolyD lap = p.numeric.laplacian();
    if (lap.empty()) return 0.0;
    double denom = p.numeric.max_abs_coeff();
    return lap.max_abs_coeff() / denom;
}

} // namespace orthant
