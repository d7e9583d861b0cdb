#include "doctest.h"

#include <stdexcept>

#include "gridups/rational.hpp"

using gridups::Rational;

TEST_CASE("rationals print in lowest terms") {
    CHECK(gridups::to_string(Rational(2, 4)) == "1/2");
    CHECK(gridups::to_string(Rational(-6, 3)) == "-2");
    CHECK(gridups::to_string(Rational(0)) == "0");
    CHECK(gridups::to_string(Rational(3, -9)) == "-1/3");
}

TEST_CASE("parse_rational accepts p and p/q") {
    CHECK(gridups::parse_rational("1/2") == Rational(1, 2));
    CHECK(gridups::parse_rational(" -3/6 ") == Rational(-1, 2));
    CHECK(gridups::parse_rational("+7") == Rational(7));
    CHECK(gridups::parse_rational("0") == Rational(0));
}

TEST_CASE("parse_rational rejects malformed text") {
    for (const char* bad : {"", "1/", "/2", "1/0", "a", "1.5", "1/2/3", "2 /3"})
        CHECK_THROWS_AS(gridups::parse_rational(bad), std::invalid_argument);
}

TEST_CASE("round trip through text") {
    for (const auto& r : {Rational(5, 7), Rational(-11, 4), Rational(13)})
        CHECK(gridups::parse_rational(gridups::to_string(r)) == r);
    CHECK(gridups::is_integer(Rational(4, 2)));
    CHECK_FALSE(gridups::is_integer(Rational(1, 2)));
    CHECK(gridups::to_double(Rational(1, 4)) == doctest::Approx(0.25));
}
