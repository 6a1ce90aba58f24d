#include "orthant/critical.hpp"

#include "orthant/errors.hpp"

#include <cmath>

namespace orthant {

StepFn StepFn::from(const WalkModel& m) {
    StepFn f;
    f.dim = m.dim;
    f.steps = m.steps;
    for (const Rat& w : m.weights) f.weights.push_back(w.get_d());
    return f;
}

namespace {

double monomial(const std::vector<int>& s, const Vec& x) {
    double m = 1.0;
    for (size_t i = 0; i < s.size(); ++i)
        if (s[i] != 0) m *= std::pow(x[i], s[i]);
    return m;
}

} // namespace

double StepFn::value(const Vec& x) const {
    double v = 0.0;
    for (size_t k = 0; k < steps.size(); ++k) v += weights[k] * monomial(steps[k], x);
    return v;
}

Vec StepFn::gradient(const Vec& x) const {
    Vec g(dim, 0.0);
    for (size_t k = 0; k < steps.size(); ++k) {
        double m = weights[k] * monomial(steps[k], x);
        for (int i = 0; i < dim; ++i)
            if (steps[k][i] != 0) g[i] += steps[k][i] * m / x[i];
    }
    return g;
}

Mat StepFn::hessian(const Vec& x) const {
    Mat h(dim, dim);
    for (size_t k = 0; k < steps.size(); ++k) {
        const auto& s = steps[k];
        double m = weights[k] * monomial(s, x);
        for (int i = 0; i < dim; ++i) {
            if (s[i] == 0) continue;
            for (int j = 0; j < dim; ++j) {
                if (s[j] == 0) continue;
                double c = i == j ? double(s[i]) * (s[i] - 1) : double(s[i]) * s[j];
                h(i, j) += c * m / (x[i] * x[j]);
            }
        }
    }
    return h;
}

Vec StepFn::mean_step() const {
    Vec mu(dim, 0.0);
    for (size_t k = 0; k < steps.size(); ++k)
        for (int i = 0; i < dim; ++i) mu[i] += weights[k] * steps[k][i];
    return mu;
}

CriticalPoint critical_point_from(const StepFn& f, Vec start) {
    const double tol = 1e-12;
    const int max_iter = 200;
    Vec x = std::move(start);
    for (double v : x)
        if (!(v > 0.0)) fail_domain("critical point search requires a positive start");

    Vec g = f.gradient(x);
    for (int it = 1; it <= max_iter; ++it) {
        if (inf_norm(g) < tol) {
            CriticalPoint cp;
            cp.x = x;
            cp.rho = f.value(x);
            cp.iterations = it - 1;
            return cp;
        }
        Mat h = f.hessian(x);
        Vec step = solve(h, g); // descend: x - t*step
        double t = 1.0;
        bool moved = false;
        for (int halve = 0; halve < 40; ++halve, t *= 0.5) {
            Vec cand(f.dim);
            bool positive = true;
            for (int i = 0; i < f.dim; ++i) {
                cand[i] = x[i] - t * step[i];
                if (cand[i] <= 1e-9) { positive = false; break; }
            }
            if (!positive) continue;
            Vec gc = f.gradient(cand);
            if (inf_norm(gc) < inf_norm(g)) {
                x = std::move(cand);
                g = std::move(gc);
                moved = true;
                break;
            }
        }
        if (!moved) fail_numeric("critical point iteration stalled");
    }
    fail_numeric("critical point iteration did not converge");
}

CriticalPoint critical_point(const StepFn& f) {
    return critical_point_from(f, Vec(f.dim, 1.0));
}

Mat covariance(const StepFn& f, const Vec& x0) {
    Mat h = f.hessian(x0);
    for (int i = 0; i < f.dim; ++i)
        if (!(h(i, i) > 0.0))
            fail_numeric("degenerate second derivative along axis " + std::to_string(i));
    Mat a(f.dim, f.dim);
    for (int i = 0; i < f.dim; ++i) {
        a(i, i) = 1.0;
        for (int j = i + 1; j < f.dim; ++j)
            a(i, j) = a(j, i) = h(i, j) / std::sqrt(h(i, i) * h(j, j));
    }
    return a;
}

StepFn reweight(const StepFn& f, const CriticalPoint& cp) {
    StepFn out;
    out.dim = f.dim;
    out.steps = f.steps;
    for (size_t k = 0; k < f.steps.size(); ++k)
        out.weights.push_back(f.weights[k] * monomial(f.steps[k], cp.x) / cp.rho);
    return out;
}

} // namespace orthant
