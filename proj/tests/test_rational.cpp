#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "orthant/errors.hpp"
#include "orthant/rational.hpp"

#include <cmath>

using namespace orthant;

TEST_CASE("rat_parse accepts integers and fractions") {
    CHECK(rat_parse("3") == Rat(3));
    CHECK(rat_parse("-7") == Rat(-7));
    CHECK(rat_parse("1/4") == Rat(1, 4));
    CHECK(rat_parse("-2/6") == Rat(-1, 3)); // canonicalized
    CHECK(rat_parse("+5/10") == Rat(1, 2));
    CHECK(rat_str(rat_parse("-2/6")) == "-1/3");
    CHECK(rat_str(Rat(4)) == "4");
}

TEST_CASE("rat_parse rejects malformed input") {
    CHECK_THROWS_AS(rat_parse(""), Error);
    CHECK_THROWS_AS(rat_parse("1.5"), Error);
    CHECK_THROWS_AS(rat_parse("abc"), Error);
    CHECK_THROWS_AS(rat_parse("1/0"), Error);
    CHECK_THROWS_AS(rat_parse("1/2/3"), Error);
    CHECK_THROWS_AS(rat_parse("2 / 3"), Error);
    try {
        rat_parse("x");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::parse);
    }
}

TEST_CASE("rat_pow handles negative exponents") {
    CHECK(rat_pow(Rat(2, 3), 3) == Rat(8, 27));
    CHECK(rat_pow(Rat(2, 3), 0) == Rat(1));
    CHECK(rat_pow(Rat(2, 3), -2) == Rat(9, 4));
    CHECK(rat_pow(Rat(-1, 2), 3) == Rat(-1, 8));
    CHECK_THROWS_AS(rat_pow(Rat(0), -1), Error);
}

TEST_CASE("recognize_rational finds small denominators and rejects noise") {
    auto r = recognize_rational(1.0 / 3.0, 1000, 1e-9);
    REQUIRE(r.has_value());
    CHECK(*r == Rat(1, 3));
    CHECK(*recognize_rational(-0.4, 1000, 1e-9) == Rat(-2, 5));
    CHECK(*recognize_rational(2.0 / 5.0, 1000, 1e-9) == Rat(2, 5));
    CHECK(*recognize_rational(355.0 / 113.0, 1000, 1e-9) == Rat(355, 113));
    CHECK(*recognize_rational(7.0, 10, 1e-9) == Rat(7));
    CHECK(!recognize_rational(std::sqrt(0.5), 1000, 1e-9).has_value());
    CHECK(!recognize_rational(std::sqrt(70.0) / 10.0, 1000, 1e-9).has_value());
    CHECK(!recognize_rational(M_PI, 1000, 1e-9).has_value());
    // Denominator cap respected: 1/401 is not recognized with cap 400.
    CHECK(!recognize_rational(1.0 / 401.0, 400, 1e-9).has_value());
    CHECK(recognize_rational(1.0 / 400.0, 400, 1e-9).has_value());
}

TEST_CASE("int_log matches log on representable values") {
    CHECK(int_log(Int(1)) == doctest::Approx(0.0));
    CHECK(int_log(Int(1000000)) == doctest::Approx(std::log(1e6)));
    // 100! has ~158 digits; check against lgamma.
    Int f = 1;
    for (int i = 2; i <= 100; ++i) f *= i;
    CHECK(int_log(f) == doctest::Approx(std::lgamma(101.0)).epsilon(1e-12));
}
