#include <catch2/catch_amalgamated.hpp>

#include "schmidtflat/numeric.hpp"
#include "schmidtflat/quadratic.hpp"
#include "schmidtflat/angles.hpp"

using namespace schmidtflat;

TEST_CASE("rational parsing and formatting round-trips") {
    auto r = parse_rational("22/7");
    REQUIRE(r);
    CHECK(format_rational(*r) == "22/7");
    CHECK(*parse_rational("-3") == Rational(-3));
    CHECK(*parse_rational("0.25") == Rational(1, 4));
    CHECK(*parse_rational("-1.5e-2") == Rational(-3, 200));
    CHECK(!parse_rational("1/0"));
    CHECK(!parse_rational("abc"));
}

TEST_CASE("isqrt and rational floor") {
    CHECK(isqrt(BigInt(0)) == 0);
    CHECK(isqrt(BigInt(35)) == 5);
    CHECK(isqrt(BigInt(36)) == 6);
    BigInt big = BigInt("123456789123456789");
    BigInt root = isqrt(big);
    CHECK(root * root <= big);
    CHECK((root + 1) * (root + 1) > big);
    CHECK(floor_rational(Rational(7, 2)) == 3);
    CHECK(floor_rational(Rational(-7, 2)) == -4);
    CHECK(floor_rational(Rational(-6, 2)) == -3);
}

TEST_CASE("quadratic field arithmetic is exact") {
    // x = golden ratio - 1 = (-1 + sqrt(5))/2 satisfies x^2 = 1 - x
    QuadExt x(Rational(-1, 2), Rational(1, 2), 5);
    CHECK(x * x == QuadExt(Rational(1)) - x);
    CHECK((x / x) == QuadExt(Rational(1)));
    CHECK(x.sign() == 1);
    CHECK((-x).sign() == -1);
    // 7/5 < sqrt(2): mixed-sign exact comparison
    QuadExt y(Rational(7, 5), Rational(-1), 2);
    CHECK(y.sign() == -1);
    QuadExt z(Rational(17, 12), Rational(-1), 2);  // 17/12 > sqrt(2)
    CHECK(z.sign() == 1);
}

TEST_CASE("quadratic field floor") {
    QuadExt root5(Rational(0), Rational(1), 5);
    CHECK(root5.floor() == 2);
    CHECK((-root5).floor() == -3);
    QuadExt phi(Rational(1, 2), Rational(1, 2), 5);
    CHECK(phi.floor() == 1);
    // floor(100*(3-sqrt(5))/2) = floor(38.19...) = 38
    QuadExt alpha(Rational(3, 2), Rational(-1, 2), 5);
    CHECK((QuadExt(Rational(100)) * alpha).floor() == 38);
    for (int n = 1; n <= 200; ++n) {
        QuadExt v = QuadExt(Rational(n)) * alpha;
        double approx = v.to_double();
        CHECK(v.floor() == BigInt(static_cast<long long>(std::floor(approx))));
    }
}

TEST_CASE("quadratic field parsing") {
    auto g = parse_quadext("(-1+1*sqrt(5))/2");
    REQUIRE(g);
    CHECK(*g == QuadExt(Rational(-1, 2), Rational(1, 2), 5));
    CHECK(*parse_quadext("3/4") == QuadExt(Rational(3, 4)));
    CHECK(*parse_quadext("(1-sqrt(2))/3") == QuadExt(Rational(1, 3), Rational(-1, 3), 2));
    CHECK(*parse_quadext("(sqrt(3))/2") == QuadExt(Rational(0), Rational(1, 2), 3));
    CHECK(!parse_quadext("(1+sqrt(5)"));
}

TEST_CASE("angle helpers respect the mod-pi metric") {
    CHECK(angle_dist(0.1, kPi - 0.1) == Catch::Approx(0.2));
    CHECK(angle_dist(0.3, 0.3) == 0.0);
    CHECK(vertical_angle(0, 1) == Catch::Approx(0.0));
    CHECK(vertical_angle(1, 0) == Catch::Approx(kPi / 2));
    CHECK(vertical_angle(1, 1) == Catch::Approx(kPi / 4));
    CHECK(vertical_angle(-1, 1) == Catch::Approx(3 * kPi / 4));
    // rotating by the vertical angle kills the first component
    double h, v;
    rotate_holonomy(3.0, 2.0, vertical_angle(3.0, 2.0), h, v);
    CHECK(std::fabs(h) < 1e-12);
    CHECK(std::fabs(v) == Catch::Approx(std::hypot(3.0, 2.0)));
}
