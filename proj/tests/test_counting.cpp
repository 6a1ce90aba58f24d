#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "orthant/counting.hpp"
#include "orthant/critical.hpp"
#include "orthant/errors.hpp"
#include "orthant/model.hpp"

#include <cmath>

using namespace orthant;

namespace {

const char* kSimple2 = R"({"dim": 2, "steps": [[1,0],[-1,0],[0,1],[0,-1]]})";
const char* kSimple3 = R"({"dim": 3,
  "steps": [[1,0,0],[-1,0,0],[0,1,0],[0,-1,0],[0,0,1],[0,0,-1]]})";
const char* kTandem2 = R"({"dim": 2, "steps": [[-1,0],[1,-1],[0,1]]})";
const char* kWeighted2 = R"({"dim": 2,
  "steps": [[1,0],[-1,0],[0,1],[0,-1]], "weights": [3, 1, 1, 1]})";
const char* kSqrt70 = R"({
  "dim": 3,
  "steps": [[-1,-1,-1],[-1,1,-1],[-1,-1,0],[0,1,0],[1,-1,0],[1,-1,1],[1,1,1]]
})";
const char* kSkew4 = R"({
  "dim": 4,
  "steps": [[1,1,0,0],[0,-1,1,0],[0,0,-1,1],[-1,1,1,0],[0,-1,1,-1],[1,1,-1,0],[-1,-1,-1,0]]
})";
const char* kFiveStep4 = R"({
  "dim": 4,
  "steps": [[0,0,0,-1],[1,0,-1,0],[-1,1,0,0],[0,0,1,0],[0,-1,0,1]]
})";

std::vector<long long> origin(int d) { return std::vector<long long>(d, 0); }

} // namespace

TEST_CASE("pinned unweighted excursion counts at the origin") {
    WalkModel m = parse_model(kSimple2);
    CountTable t = count_excursions(m, origin(2), origin(2), 10);
    // Catalan(n) * Catalan(n+1) at length 2n, zero at odd lengths.
    std::vector<long long> want = {1, 0, 2, 0, 10, 0, 70, 0, 588, 0, 5544};
    REQUIRE(t.raw.size() == want.size());
    for (size_t n = 0; n < want.size(); ++n) CHECK(t.raw[n] == Int(static_cast<long>(want[n])));
    CHECK(t.period == 2);
    CHECK(t.denom == 4); // uniform weights 1/4
    CHECK(t.value(2) == Rat(1, 8));
    CHECK(t.value(0) == 1);

    WalkModel td = parse_model(kTandem2);
    CountTable tt = count_excursions(td, origin(2), origin(2), 12);
    std::vector<long long> want3 = {1, 0, 0, 1, 0, 0, 5, 0, 0, 42, 0, 0, 462};
    for (size_t n = 0; n < want3.size(); ++n) CHECK(tt.raw[n] == Int(static_cast<long>(want3[n])));
    CHECK(tt.period == 3);

    WalkModel s3 = parse_model(kSimple3);
    CountTable t3 = count_excursions(s3, origin(3), origin(3), 8);
    std::vector<long long> want33 = {1, 0, 3, 0, 24, 0, 285, 0, 4242};
    for (size_t n = 0; n < want33.size(); ++n) CHECK(t3.raw[n] == Int(static_cast<long>(want33[n])));
}

TEST_CASE("dynamic program agrees with exhaustive enumeration") {
    struct Case {
        const char* src;
        std::vector<long long> from, to;
    };
    std::vector<Case> cases = {
        {kSimple2, {0, 0}, {0, 0}},     {kSimple2, {1, 0}, {0, 1}},
        {kSimple2, {2, 3}, {0, 0}},     {kTandem2, {0, 0}, {0, 0}},
        {kTandem2, {1, 1}, {2, 0}},     {kSimple3, {0, 0, 0}, {0, 0, 0}},
        {kSqrt70, {0, 0, 0}, {0, 0, 0}},{kSqrt70, {1, 2, 1}, {0, 1, 0}},
        {kSkew4, {0, 0, 0, 0}, {0, 0, 0, 0}},
        {kFiveStep4, {0, 0, 0, 0}, {0, 0, 0, 0}},
        {kFiveStep4, {1, 0, 1, 0}, {0, 1, 0, 1}},
        {kWeighted2, {0, 0}, {0, 0}},
    };
    for (const Case& c : cases) {
        WalkModel m = parse_model(c.src);
        CAPTURE(c.src);
        int n = 8;
        CountTable t = count_excursions(m, c.from, c.to, n);
        std::vector<Int> ref = brute_force_raw(m, c.from, c.to, n);
        REQUIRE(ref.size() == t.raw.size());
        for (int i = 0; i <= n; ++i) {
            CAPTURE(i);
            CHECK(t.raw[i] == ref[i]);
        }
    }
}

TEST_CASE("weighted counts are exact path-weight sums") {
    WalkModel m = parse_model(kWeighted2);
    CountTable t = count_excursions(m, origin(2), origin(2), 6);
    CHECK(t.denom == 6);
    // Two-step loops: (e1,-e1) with weight 3*1 and (e2,-e2) with weight 1*1.
    CHECK(t.raw[2] == 4);
    CHECK(t.value(2) == Rat(1, 9));
    // The unweighted switch counts the same paths with unit weights.
    CountOptions opts;
    opts.unweighted = true;
    CountTable u = count_excursions(m, origin(2), origin(2), 6, opts);
    CHECK(u.denom == 1);
    CHECK(u.raw[2] == 2);
    std::vector<Int> ref = brute_force_raw(m, origin(2), origin(2), 6, true);
    for (int i = 0; i <= 6; ++i) CHECK(u.raw[i] == ref[i]);
}

TEST_CASE("threaded evaluation is bit-identical to sequential") {
    WalkModel m = parse_model(kSimple3);
    CountOptions seq, par;
    seq.threads = 1;
    par.threads = 4;
    CountTable a = count_excursions(m, origin(3), origin(3), 60, seq);
    CountTable b = count_excursions(m, origin(3), origin(3), 60, par);
    REQUIRE(a.raw.size() == b.raw.size());
    for (size_t n = 0; n < a.raw.size(); ++n) CHECK(a.raw[n] == b.raw[n]);
}

TEST_CASE("degenerate endpoints and horizons") {
    WalkModel m = parse_model(kSimple2);
    CountTable t0 = count_excursions(m, origin(2), origin(2), 0);
    REQUIRE(t0.raw.size() == 1);
    CHECK(t0.raw[0] == 1);
    CHECK(t0.period == 0);

    CountTable t1 = count_excursions(m, {1, 0}, {0, 0}, 0);
    CHECK(t1.raw[0] == 0);

    // Target too far for the horizon: every layer box is empty.
    CountTable far = count_excursions(m, origin(2), {9, 0}, 4);
    for (const Int& v : far.raw) CHECK(v == 0);

    CHECK_THROWS_AS(count_excursions(m, {-1, 0}, origin(2), 4), Error);
    CHECK_THROWS_AS(count_excursions(m, origin(2), {0, -2}, 4), Error);
    CHECK_THROWS_AS(count_excursions(m, {0, 0, 0}, origin(2), 4), Error);
    CHECK_THROWS_AS(count_excursions(m, origin(2), origin(2), -1), Error);
}

TEST_CASE("memory budget is enforced before allocation") {
    WalkModel m = parse_model(kSimple3);
    CountOptions opts;
    opts.budget_bytes = 1 << 10; // 1 KiB cannot hold any useful layer
    try {
        count_excursions(m, origin(3), origin(3), 100, opts);
        FAIL("expected a budget error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::budget);
    }
}

TEST_CASE("empirical exponent and growth for the simple planar walk") {
    WalkModel m = parse_model(kSimple2);
    CountTable t = count_excursions(m, origin(2), origin(2), 400);
    CriticalPoint cp = critical_point(StepFn::from(m));
    CHECK(cp.rho == doctest::Approx(1.0).epsilon(1e-12));
    AsymptoticFit fit = estimate_asymptotics(t, cp.rho);
    CHECK(fit.period == 2);
    CHECK(std::abs(fit.alpha_hat - 3.0) < 1e-4);
    CHECK(std::abs(fit.rho_hat - 1.0) < 1e-4);
    CHECK(fit.window_hi == 398); // largest n with raw[n] and raw[n+2] nonzero is 398
    CHECK(fit.window_lo >= 199);
}

TEST_CASE("empirical exponent for the two-queue tandem walk") {
    WalkModel m = parse_model(kTandem2);
    CountTable t = count_excursions(m, origin(2), origin(2), 400);
    AsymptoticFit fit = estimate_asymptotics(t, 1.0);
    CHECK(fit.period == 3);
    CHECK(std::abs(fit.alpha_hat - 4.0) < 1e-4);
    CHECK(std::abs(fit.rho_hat - 1.0) < 1e-4);
}

TEST_CASE("fit refuses tables with too little data") {
    WalkModel m = parse_model(kSimple2);
    CountTable t = count_excursions(m, origin(2), origin(2), 20);
    try {
        estimate_asymptotics(t, 1.0);
        FAIL("expected a domain error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::domain);
    }
    CHECK_THROWS_AS(estimate_asymptotics(t, 0.0), Error);
}
