#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "orthant/critical.hpp"
#include "orthant/errors.hpp"

#include <cmath>
#include <random>

using namespace orthant;

namespace {

WalkModel simple2() {
    return parse_model(R"({"dim":2,"steps":[[1,0],[-1,0],[0,1],[0,-1]]})");
}

// chi = (3x + 1/x + y + 1/y)/6: critical point (1/sqrt(3), 1), value 1/sqrt(3)+1/3.
WalkModel skewed2() {
    return parse_model(R"({"dim":2,"steps":[[1,0],[-1,0],[0,1],[0,-1]],"weights":[3,1,1,1]})");
}

} // namespace

TEST_CASE("gradient and hessian match finite differences") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(0.4, 1.6);
    WalkModel m = parse_model(
        R"({"dim":3,"steps":[[1,0,0],[-1,1,0],[0,-1,1],[1,1,-1],[0,0,-1],[-1,0,0]],"weights":[1,2,3,1,2,3]})");
    StepFn f = StepFn::from(m);
    const double h = 1e-6;
    for (int rep = 0; rep < 10; ++rep) {
        Vec x{u(rng), u(rng), u(rng)};
        Vec g = f.gradient(x);
        Mat hess = f.hessian(x);
        for (int i = 0; i < 3; ++i) {
            Vec xp = x, xm = x;
            xp[i] += h;
            xm[i] -= h;
            CHECK(g[i] == doctest::Approx((f.value(xp) - f.value(xm)) / (2 * h)).epsilon(1e-5));
            Vec gp = f.gradient(xp), gm = f.gradient(xm);
            for (int j = 0; j < 3; ++j)
                CHECK(hess(j, i) == doctest::Approx((gp[j] - gm[j]) / (2 * h)).epsilon(1e-4));
        }
    }
}

TEST_CASE("critical point of the symmetric walk is all-ones") {
    CriticalPoint cp = critical_point(StepFn::from(simple2()));
    CHECK(cp.x[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cp.x[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cp.rho == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("critical point matches a closed form") {
    CriticalPoint cp = critical_point(StepFn::from(skewed2()));
    CHECK(cp.x[0] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
    CHECK(cp.x[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cp.rho == doctest::Approx(1.0 / std::sqrt(3.0) + 1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("critical point is insensitive to the start") {
    StepFn f = StepFn::from(skewed2());
    CriticalPoint a = critical_point(f);
    CriticalPoint b = critical_point_from(f, Vec{0.2, 2.5});
    CHECK(a.x[0] == doctest::Approx(b.x[0]).epsilon(1e-11));
    CHECK(a.x[1] == doctest::Approx(b.x[1]).epsilon(1e-11));
    CHECK_THROWS_AS(critical_point_from(f, Vec{-1.0, 1.0}), Error);
}

TEST_CASE("covariance has unit diagonal and detects correlation sign") {
    // Steps biased toward (1,1)/(-1,-1) correlate the coordinates positively.
    WalkModel m = parse_model(R"({"dim":2,"steps":[[1,1],[-1,-1],[1,-1],[-1,1]],"weights":[2,2,1,1]})");
    StepFn f = StepFn::from(m);
    CriticalPoint cp = critical_point(f);
    Mat a = covariance(f, cp.x);
    CHECK(a(0, 0) == 1.0);
    CHECK(a(1, 1) == 1.0);
    CHECK(a(0, 1) == doctest::Approx(a(1, 0)));
    CHECK(a(0, 1) > 0.0);
    // Uncorrelated axis walk gives the identity.
    StepFn g = StepFn::from(simple2());
    Mat id = covariance(g, critical_point(g).x);
    CHECK(id(0, 1) == doctest::Approx(0.0));
}

TEST_CASE("reweighting centers the walk") {
    StepFn f = StepFn::from(skewed2());
    CriticalPoint cp = critical_point(f);
    StepFn t = reweight(f, cp);
    Vec ones(2, 1.0);
    CHECK(t.value(ones) == doctest::Approx(1.0).epsilon(1e-12));
    Vec mu = t.mean_step();
    CHECK(std::fabs(mu[0]) < 1e-12);
    CHECK(std::fabs(mu[1]) < 1e-12);
    // Idempotent: tilting the tilted walk changes nothing.
    CriticalPoint cp2 = critical_point(t);
    CHECK(cp2.x[0] == doctest::Approx(1.0).epsilon(1e-10));
    StepFn t2 = reweight(t, cp2);
    for (size_t k = 0; k < t.weights.size(); ++k)
        CHECK(t2.weights[k] == doctest::Approx(t.weights[k]).epsilon(1e-10));
    // Covariance is unchanged by the tilt (computed at the new critical point).
    Mat a = covariance(f, cp.x);
    Mat b = covariance(t, cp2.x);
    CHECK(inf_norm(a - b) < 1e-9);
}

TEST_CASE("drifting walk still has an interior critical point") {
    // Strong drift toward +x: critical point moves but stays positive.
    WalkModel m = parse_model(R"({"dim":2,"steps":[[1,0],[-1,0],[0,1],[0,-1]],"weights":[10,1,1,1]})");
    StepFn f = StepFn::from(m);
    CriticalPoint cp = critical_point(f);
    CHECK(cp.x[0] == doctest::Approx(std::sqrt(0.1)).epsilon(1e-10));
    CHECK(inf_norm(f.gradient(cp.x)) < 1e-12);
    CHECK(cp.rho < 1.0); // tilting a drifting walk always costs rate
}
