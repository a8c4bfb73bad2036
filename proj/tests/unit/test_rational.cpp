#include <doctest.h>

#include <limits>
#include <random>
#include <stdexcept>

#include "orbihall/errors.hpp"
#include "orbihall/rational.hpp"

using orbihall::rational;

TEST_CASE("rational normalizes to lowest terms with positive denominator") {
    rational r(6, -8);
    CHECK(r.num() == -3);
    CHECK(r.den() == 4);
    CHECK(rational(0, -5) == rational(0));
    CHECK_THROWS_AS(rational(1, 0), std::invalid_argument);
}

TEST_CASE("rational string form is always p/q") {
    CHECK(rational(1, 3).str() == "1/3");
    CHECK(rational(2).str() == "2/1");
    CHECK(rational(-7, 14).str() == "-1/2");
    CHECK(rational::parse("  4/6 ") == rational(2, 3));
    CHECK(rational::parse("-5") == rational(-5));
    CHECK_THROWS_AS(rational::parse("1/"), orbihall::validation_error);
    CHECK_THROWS_AS(rational::parse("x"), orbihall::validation_error);
}

TEST_CASE("rational arithmetic and ordering") {
    rational a(1, 2), b(1, 3);
    CHECK(a + b == rational(5, 6));
    CHECK(a - b == rational(1, 6));
    CHECK(a * b == rational(1, 6));
    CHECK(a / b == rational(3, 2));
    CHECK(b < a);
    CHECK(-a < b);
    CHECK_THROWS(a / rational(0));
}

TEST_CASE("floor, frac and the (0,1] representative") {
    CHECK(orbihall::floor(rational(-1, 3)) == -1);
    CHECK(orbihall::frac(rational(-1, 3)) == rational(2, 3));
    CHECK(orbihall::frac(rational(7, 3)) == rational(1, 3));
    CHECK(orbihall::unit_interval_rep(rational(0)) == rational(1));
    CHECK(orbihall::unit_interval_rep(rational(3)) == rational(1));
    CHECK(orbihall::unit_interval_rep(rational(-1, 4)) == rational(3, 4));
}

TEST_CASE("overflow is detected, never wrapped") {
    const auto big = std::numeric_limits<std::int64_t>::max() / 2;
    rational x(big, 1);
    CHECK_THROWS_AS(x * rational(4), std::overflow_error);
    CHECK_THROWS_AS(rational(1, big) + rational(1, big - 1), std::overflow_error);
}

TEST_CASE("field axioms on random rationals") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> num(-50, 50), den(1, 40);
    for (int i = 0; i < 500; ++i) {
        rational a(num(rng), den(rng)), b(num(rng), den(rng)), c(num(rng), den(rng));
        CHECK(a + b == b + a);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        if (b != rational(0)) CHECK((a / b) * b == a);
        CHECK(orbihall::frac(a) + rational(orbihall::floor(a)) == a);
    }
}
