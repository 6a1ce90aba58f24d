#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "orthant/coxeter.hpp"
#include "orthant/spectral.hpp"

#include <cmath>

using namespace orthant;

namespace {

double edge_cos(int m) { return -std::cos(M_PI / m); } // covariance entry for label m

// Path diagram: d = ms.size()+1 walls, consecutive pairs labeled ms[i].
Mat chain(const std::vector<int>& ms) {
    int d = static_cast<int>(ms.size()) + 1;
    Mat a = Mat::identity(d);
    for (size_t i = 0; i < ms.size(); ++i)
        a(i, i + 1) = a(i + 1, i) = edge_cos(ms[i]);
    return a;
}

// Branched diagram: node 0 is the center; arm lengths in `arms`, labels all 3.
Mat star(const std::vector<int>& arms) {
    int d = 1;
    for (int a : arms) d += a;
    Mat m = Mat::identity(d);
    int next = 1;
    for (int a : arms) {
        int prev = 0;
        for (int s = 0; s < a; ++s) {
            m(prev, next) = m(next, prev) = edge_cos(3);
            prev = next++;
        }
    }
    return m;
}

Classification classify_delta(const Mat& delta) { return classify(build_diagram(delta)); }

void check_type(const Mat& delta, const std::string& name, long order, long reflections) {
    Classification c = classify_delta(delta);
    REQUIRE(c.conclusive);
    CHECK(c.name == name);
    CHECK(c.finite);
    CHECK(c.order == Int(order));
    CHECK(c.reflections == Int(reflections));
}

void check_infinite(const Mat& delta) {
    Classification c = classify_delta(delta);
    REQUIRE(c.conclusive);
    CHECK_FALSE(c.finite);
}

} // namespace

TEST_CASE("build_diagram recognizes unit-numerator angles") {
    Mat delta = chain({3, 4});
    CoxeterDiagram d = build_diagram(delta);
    CHECK(d.at(0, 1).m == 3);
    CHECK(d.at(0, 1).k == 1);
    CHECK(d.at(1, 2).m == 4);
    CHECK(d.at(0, 2).m == 2); // orthogonal
    CHECK(d.recognized());
    CHECK(d.chamber_shaped());
}

TEST_CASE("build_diagram recognizes obtuse-numerator angles via cosines") {
    Mat delta = Mat::identity(2);
    delta(0, 1) = delta(1, 0) = 0.5; // wall angle 2*pi/3
    CoxeterDiagram d = build_diagram(delta);
    CHECK(d.at(0, 1).m == 3);
    CHECK(d.at(0, 1).k == 2);
    CHECK(d.recognized());
    CHECK_FALSE(d.chamber_shaped());

    delta(0, 1) = delta(1, 0) = (std::sqrt(5.0) - 1.0) / 4.0; // cos(2pi/5) wall... angle 2pi/5
    d = build_diagram(delta);
    CHECK(d.at(0, 1).m == 5);
}

TEST_CASE("build_diagram leaves unmatched angles unrecognized") {
    Mat delta = Mat::identity(3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j) delta(i, j) = -1.0 / 3.0;
    CoxeterDiagram d = build_diagram(delta);
    CHECK(d.at(0, 1).kind == EdgeLabel::Kind::unrecognized);
    CHECK_FALSE(d.recognized());
    Classification c = classify(d);
    CHECK_FALSE(c.conclusive);
    CHECK(!c.reason.empty());

    Mat irr = Mat::identity(3);
    irr(0, 2) = irr(2, 0) = std::sqrt(70.0) / 10.0; // theta/pi irrational
    CHECK(build_diagram(irr).at(0, 2).kind == EdgeLabel::Kind::unrecognized);
}

TEST_CASE("large single-numerator labels are still found") {
    Mat delta = Mat::identity(2);
    delta(0, 1) = delta(1, 0) = edge_cos(7);
    CoxeterDiagram d = build_diagram(delta);
    CHECK(d.at(0, 1).m == 7);
    check_type(delta, "I2(7)", 14, 7);
}

TEST_CASE("classify matches the finite catalog on paths") {
    check_type(Mat::identity(3), "Z/2Z x Z/2Z x Z/2Z", 8, 3);
    check_type(chain({3}), "A2", 6, 3);
    check_type(chain({4}), "B2", 8, 4);
    check_type(chain({5}), "I2(5)", 10, 5);
    check_type(chain({6}), "G2", 12, 6);
    check_type(chain({3, 3}), "A3", 24, 6);
    check_type(chain({3, 3, 3}), "A4", 120, 10);
    check_type(chain({4, 3}), "B3", 48, 9);
    check_type(chain({3, 3, 4}), "B4", 384, 16);
    check_type(chain({3, 4, 3}), "F4", 1152, 24);
    check_type(chain({5, 3}), "H3", 120, 15);
    check_type(chain({5, 3, 3}), "H4", 14400, 60);
}

TEST_CASE("classify matches the finite catalog on branched trees") {
    check_type(star({1, 1, 1}), "D4", 192, 12);
    check_type(star({1, 1, 2}), "D5", 1920, 20);
    check_type(star({1, 1, 4}), "D7", 322560, 42);
    check_type(star({1, 2, 2}), "E6", 51840, 36);
    check_type(star({1, 2, 3}), "E7", 2903040, 63);
    check_type(star({1, 2, 4}), "E8", 696729600, 120);
}

TEST_CASE("classify rejects affine and indefinite shapes") {
    // Circuit: affine A2.
    Mat tri = Mat::identity(3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j) tri(i, j) = edge_cos(3);
    check_infinite(tri);
    check_infinite(chain({3, 5, 3}));    // interior 5
    check_infinite(chain({5, 3, 3, 3})); // 5-chain of rank 5
    check_infinite(chain({3, 6}));       // affine G2
    check_infinite(chain({4, 3, 4}));    // two 4s
    check_infinite(chain({4, 4}));       // affine B2/C2
    check_infinite(chain({3, 3, 4, 3})); // interior 4 off the F4 slot
    check_infinite(star({2, 2, 2}));     // affine E6
    check_infinite(star({1, 3, 3}));     // affine E7
    check_infinite(star({1, 2, 5}));     // affine E8
    check_infinite(star({1, 1, 1, 1}));  // affine D4: degree-4 center
}

TEST_CASE("classify handles products") {
    // A2 on nodes {0,1}, I2(5) on nodes {2,3}, lone wall {4}.
    Mat delta = Mat::identity(5);
    delta(0, 1) = delta(1, 0) = edge_cos(3);
    delta(2, 3) = delta(3, 2) = edge_cos(5);
    Classification c = classify_delta(delta);
    REQUIRE(c.conclusive);
    CHECK(c.name == "A2 x I2(5) x Z/2Z");
    CHECK(c.components.size() == 3);
    CHECK(c.order == Int(120));
    CHECK(c.reflections == Int(9));
    // One infinite factor poisons the whole group.
    Mat mix = Mat::identity(5);
    mix(0, 1) = mix(1, 0) = edge_cos(3);
    for (int i = 2; i < 5; ++i)
        for (int j = 2; j < 5; ++j)
            if (i != j) mix(i, j) = edge_cos(3);
    Classification ci = classify_delta(mix);
    REQUIRE(ci.conclusive);
    CHECK_FALSE(ci.finite);
}

TEST_CASE("infinite_reflection_test certifies the unrecognized-cosine case") {
    Mat delta = Mat::identity(3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j) delta(i, j) = -1.0 / 3.0;
    InfiniteTest t = infinite_reflection_test(delta);
    CHECK(t.applicable);
    CHECK(t.witness);
    CHECK(t.proves_infinite());
    CHECK(t.value == doctest::Approx(-1.0 / 3.0));

    // A separated pair makes the test inapplicable even with a bad entry.
    Mat sep = Mat::identity(3);
    sep(0, 1) = sep(1, 0) = -1.0 / 3.0;
    InfiniteTest ts = infinite_reflection_test(sep);
    CHECK_FALSE(ts.applicable);
    CHECK(ts.witness);
    CHECK_FALSE(ts.proves_infinite());

    // Rank 2 is always inapplicable: I2(m) escapes the admissible set.
    Mat two = Mat::identity(2);
    two(0, 1) = two(1, 0) = edge_cos(7);
    CHECK_FALSE(infinite_reflection_test(two).applicable);

    // Admissible entries yield no witness.
    InfiniteTest ok = infinite_reflection_test(chain({3, 4}));
    CHECK(ok.applicable);
    CHECK_FALSE(ok.witness);
}

TEST_CASE("root closure counts reflections of each finite type") {
    auto roots_of = [](const Mat& delta) {
        RootClosure rc = generate_roots(angle_geometry(delta).normals);
        REQUIRE(rc.complete);
        return rc.roots.size();
    };
    CHECK(roots_of(chain({3, 3})) == 2 * 6);        // A3
    CHECK(roots_of(chain({4, 3})) == 2 * 9);        // B3
    CHECK(roots_of(chain({5, 3})) == 2 * 15);       // H3
    CHECK(roots_of(chain({3, 3, 3})) == 2 * 10);    // A4
    CHECK(roots_of(chain({3, 3, 4})) == 2 * 16);    // B4
    CHECK(roots_of(star({1, 1, 1})) == 2 * 12);     // D4
    CHECK(roots_of(chain({3, 4, 3})) == 2 * 24);    // F4
    CHECK(roots_of(chain({5, 3, 3})) == 2 * 60);    // H4
    Mat i7 = Mat::identity(2);
    i7(0, 1) = i7(1, 0) = edge_cos(7);
    CHECK(roots_of(i7) == 2 * 7);
}

TEST_CASE("root closure reports overflow for infinite groups") {
    Mat delta = Mat::identity(3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j) delta(i, j) = -1.0 / 3.0;
    RootClosure rc = generate_roots(angle_geometry(delta).normals, 500);
    CHECK_FALSE(rc.complete);
}

TEST_CASE("matrix closure reproduces group orders") {
    auto order_of = [](const Mat& delta, size_t cap = 20000) {
        GroupClosure gc = matrix_group_closure(angle_geometry(delta).reflections, cap);
        REQUIRE(gc.complete);
        return gc.order();
    };
    CHECK(order_of(Mat::identity(3)) == 8);      // (Z/2Z)^3
    CHECK(order_of(chain({3})) == 6);            // A2
    CHECK(order_of(chain({5, 3})) == 120);       // H3
    CHECK(order_of(chain({3, 3, 3})) == 120);    // A4
    CHECK(order_of(star({1, 1, 1})) == 192);     // D4
    CHECK(order_of(chain({3, 3, 4})) == 384);    // B4
    CHECK(order_of(chain({3, 4, 3})) == 1152);   // F4
    CHECK(order_of(chain({5, 3, 3})) == 14400);  // H4
}

TEST_CASE("matrix closure reports overflow for infinite groups") {
    Mat delta = Mat::identity(3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j) delta(i, j) = -1.0 / 3.0;
    GroupClosure gc = matrix_group_closure(angle_geometry(delta).reflections, 2000);
    CHECK_FALSE(gc.complete);
}

TEST_CASE("reflection groups of d walls have order at least 2^d") {
    // Equality exactly when all walls are orthogonal.
    auto order_of = [](const Mat& delta) {
        return matrix_group_closure(angle_geometry(delta).reflections).order();
    };
    CHECK(order_of(Mat::identity(4)) == 16);
    CHECK(order_of(chain({3, 3, 3})) > 16);
    Mat near = Mat::identity(3);
    near(0, 1) = near(1, 0) = edge_cos(3);
    CHECK(order_of(near) == 12); // A2 x Z/2Z: 12 > 2^3
    CHECK(order_of(near) > 8);
}
