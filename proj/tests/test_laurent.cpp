#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "orthant/laurent.hpp"

#include <random>

using namespace orthant;

namespace {

PolyD random_poly(int nvars, int nterms, std::mt19937& rng) {
    std::uniform_int_distribution<int> e(-2, 2);
    std::uniform_real_distribution<double> c(-1.0, 1.0);
    PolyD p(nvars);
    for (int t = 0; t < nterms; ++t) {
        std::vector<int> exp(nvars);
        for (int& v : exp) v = e(rng);
        p.add_term(exp, c(rng));
    }
    return p;
}

std::vector<double> random_point(int nvars, std::mt19937& rng) {
    std::uniform_real_distribution<double> u(0.3, 1.7); // stay away from 0
    std::vector<double> x(nvars);
    for (double& v : x) v = u(rng);
    return x;
}

} // namespace

TEST_CASE("add_term merges and erases cancellations") {
    PolyQ p(2);
    p.add_term({1, 0}, Rat(1, 2));
    p.add_term({1, 0}, Rat(1, 2));
    CHECK(p.size() == 1);
    CHECK(p.terms().begin()->second == Rat(1));
    p.add_term({1, 0}, Rat(-1));
    CHECK(p.empty());
    p.add_term({0, 1}, Rat(0));
    CHECK(p.empty());
}

TEST_CASE("product is the evaluation homomorphism") {
    std::mt19937 rng(5);
    for (int rep = 0; rep < 50; ++rep) {
        PolyD p = random_poly(3, 6, rng);
        PolyD q = random_poly(3, 6, rng);
        PolyD pq = p * q;
        PolyD sum = p + q;
        auto x = random_point(3, rng);
        CHECK(pq.eval(x) == doctest::Approx(p.eval(x) * q.eval(x)).epsilon(1e-10));
        CHECK(sum.eval(x) == doctest::Approx(p.eval(x) + q.eval(x)).epsilon(1e-10));
    }
}

TEST_CASE("dx matches finite differences") {
    std::mt19937 rng(9);
    for (int rep = 0; rep < 20; ++rep) {
        PolyD p = random_poly(2, 5, rng);
        auto x = random_point(2, rng);
        for (int j = 0; j < 2; ++j) {
            double h = 1e-6;
            auto xp = x, xm = x;
            xp[j] += h;
            xm[j] -= h;
            double fd = (p.eval(xp) - p.eval(xm)) / (2 * h);
            CHECK(p.dx(j).eval(x) == doctest::Approx(fd).epsilon(1e-5));
        }
    }
}

TEST_CASE("laplacian annihilates harmonic polynomials") {
    // x^2 - y^2 and x*y are harmonic in 2 vars.
    PolyQ p(2);
    p.add_term({2, 0}, Rat(1));
    p.add_term({0, 2}, Rat(-1));
    CHECK(p.laplacian().empty());
    PolyQ q(2);
    q.add_term({1, 1}, Rat(1));
    CHECK(q.laplacian().empty());
    // x^2 alone is not: Laplacian is the constant 2.
    PolyQ r(2);
    r.add_term({2, 0}, Rat(1));
    auto lap = r.laplacian();
    CHECK(lap.size() == 1);
    CHECK(lap.terms().begin()->second == Rat(2));
}

TEST_CASE("exact evaluation agrees with double evaluation") {
    PolyQ p(2);
    p.add_term({1, 0}, Rat(1, 3));
    p.add_term({-1, 1}, Rat(2, 5));
    p.add_term({0, -2}, Rat(-1, 7));
    std::vector<Rat> x{Rat(3, 2), Rat(4, 5)};
    Rat exact = eval_exact(p, x);
    std::vector<double> xd{1.5, 0.8};
    CHECK(exact.get_d() == doctest::Approx(p.eval(xd)).epsilon(1e-12));
    // Spot value: 1/3*(3/2) + 2/5*(2/3)*(4/5) + (-1/7)*(25/16)
    Rat expect = Rat(1, 3) * Rat(3, 2) + Rat(2, 5) * Rat(2, 3) * Rat(4, 5) - Rat(1, 7) * Rat(25, 16);
    CHECK(exact == expect);
}

TEST_CASE("degree and linear constructors") {
    PolyQ l = PolyQ::linear({Rat(1), Rat(0), Rat(-2)});
    CHECK(l.size() == 2);
    CHECK(l.total_degree() == 1);
    PolyQ c = PolyQ::constant(3, Rat(5));
    CHECK(c.total_degree() == 0);
    CHECK(eval_exact(c, {Rat(9), Rat(9), Rat(9)}) == Rat(5));
}
