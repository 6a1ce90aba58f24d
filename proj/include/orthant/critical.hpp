#pragma once

#include "orthant/linalg.hpp"
#include "orthant/model.hpp"

namespace orthant {

// Double-precision evaluator for a weighted step set. Used both for the
// original model and for its exponentially tilted (reweighted) form, whose
// weights are in general irrational.
struct StepFn {
    int dim = 0;
    std::vector<std::vector<int>> steps;
    std::vector<double> weights;

    static StepFn from(const WalkModel& m);

    double value(const Vec& x) const;
    Vec gradient(const Vec& x) const;
    Mat hessian(const Vec& x) const;
    Vec mean_step() const; // sum_s w(s) s
};

struct CriticalPoint {
    Vec x;            // the positive critical point
    double rho = 0.0; // value of the step function there
    int iterations = 0;
};

// Damped Newton for the positive critical point (all partials vanish),
// started at (1,...,1). Components are kept positive and each step must
// shrink the gradient norm. Throws Error(numeric) if the iteration fails
// to reach ||grad||_inf < 1e-12 within 200 steps.
CriticalPoint critical_point(const StepFn& f);
CriticalPoint critical_point_from(const StepFn& f, Vec start);

// Normalized second-derivative matrix at x0: unit diagonal, off-diagonal
// entries H_ij / sqrt(H_ii H_jj) with H the Hessian. Equals the step
// correlation matrix of the tilted walk.
Mat covariance(const StepFn& f, const Vec& x0);

// Exponential tilt by the critical point: w(s) -> w(s) x0^s / rho.
// The result has value 1 and critical point (1,...,1); applying it twice
// is the identity up to rounding.
StepFn reweight(const StepFn& f, const CriticalPoint& cp);

} // namespace orthant
