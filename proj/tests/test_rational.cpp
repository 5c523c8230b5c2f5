#include <doctest.h>

#include "mergelab/rational.hpp"

using namespace mergelab;

TEST_CASE("parsing decimal strings yields exact reduced fractions") {
    CHECK(Rational::parse("1.62") == Rational(81, 50));
    CHECK(Rational::parse("2") == Rational(2, 1));
    CHECK(Rational::parse("17/10") == Rational(17, 10));
    CHECK(Rational::parse("1.7") == Rational(17, 10));
    CHECK(Rational::parse("1.70") == Rational(17, 10));
    CHECK(Rational::parse("1.618") == Rational(809, 500));
    CHECK(Rational(4, 2) == Rational(2, 1));
}

TEST_CASE("malformed rationals are rejected") {
    CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("x"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1."), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1.2.3"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("-1"), std::invalid_argument);
    CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("ordering and scaled comparisons cross-multiply exactly") {
    CHECK(Rational(17, 10) < Rational(2, 1));
    CHECK(!(Rational(81, 50) < Rational(1619, 1000)));
    CHECK(Rational(81, 50) >= Rational(1619, 1000));

    // y <= alpha*z at the boundary, with operands too big for 64-bit products
    std::uint64_t big = std::uint64_t{1} << 62;
    CHECK(le_scaled(2 * (big / 2), Rational(2, 1), big / 2));
    CHECK(!lt_scaled(2 * (big / 2), Rational(2, 1), big / 2));
    CHECK(le_scaled(3, Rational(3, 2), 2));   // 2*3 <= 3*2
    CHECK(!lt_scaled(3, Rational(3, 2), 2));
}

TEST_CASE("floor division and ceilings") {
    CHECK(floor_div(9, Rational(3, 1)) == 3);
    CHECK(floor_div(10, Rational(3, 1)) == 3);
    CHECK(floor_div(9, Rational(27, 10)) == 3);  // floor(90/27)
    CHECK(ceil_value(Rational(3, 1)) == 3);
    CHECK(ceil_value(Rational(27, 10)) == 3);
    CHECK(add_int(Rational(17, 10), 1) == Rational(27, 10));
}

TEST_CASE("canonical rendering") {
    CHECK(Rational(81, 50).str() == "81/50");
    CHECK(Rational(2, 1).str() == "2");
    CHECK(Rational::parse("1.7").str() == "17/10");
}
