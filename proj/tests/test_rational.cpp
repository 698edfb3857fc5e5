#include "nefcone/errors.hpp"
#include "nefcone/matrix.hpp"
#include "nefcone/rational.hpp"

#include <doctest.h>

#include <random>

using namespace nefcone;

TEST_CASE("parse and print rationals") {
    CHECK(parse_rational("3/6") == make_rational(1, 2));
    CHECK(parse_rational(" -4 ") == Rational(-4));
    CHECK(to_string(make_rational(-6, 4)) == "-3/2");
    CHECK(to_string(Rational(5)) == "5");
    CHECK_THROWS(parse_rational("1/0"));
    CHECK_THROWS(parse_rational("abc"));
    CHECK_THROWS(parse_rational(""));
}

TEST_CASE("floor, ceil and frac agree with the integer division oracle") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> num(-1000, 1000), den(1, 97);
    for (int i = 0; i < 500; ++i) {
        const long p = num(rng), q = den(rng);
        const Rational r = make_rational(p, q);
        // floor division on longs, written out by hand
        long fl = p / q;
        if (p % q != 0 && p < 0) {
            --fl;
        }
        CHECK(floor(r) == fl);
        CHECK(ceil(r) == (p % q == 0 ? fl : fl + 1));
        CHECK(frac(r) == r - fl);
        CHECK(frac(r) >= 0);
        CHECK(frac(r) < 1);
    }
}

TEST_CASE("gcd, lcm and content") {
    CHECK(gcd(Integer(12), Integer(-18)) == 6);
    CHECK(lcm(Integer(4), Integer(6)) == 12);
    CHECK(content({Integer(0), Integer(-4), Integer(6)}) == 2);
    CHECK(content({Integer(0), Integer(0)}) == 0);
    CHECK_THROWS_AS(to_integer(make_rational(1, 3)), PreconditionError);
}

TEST_CASE("unimodular inverse round trip on random products of elementary matrices") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> pick(0, 4), coef(-3, 3);
    for (int trial = 0; trial < 50; ++trial) {
        IntMatrix m = IntMatrix::identity(5);
        for (int step = 0; step < 8; ++step) {
            const int i = pick(rng), j = pick(rng);
            if (i == j) {
                continue;
            }
            IntMatrix e = IntMatrix::identity(5);
            e(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = coef(rng);
            m = m * e;
        }
        const IntMatrix inv = unimodular_inverse(m);
        CHECK(m * inv == IntMatrix::identity(5));
        CHECK(inv * m == IntMatrix::identity(5));
    }
    CHECK_THROWS_AS(unimodular_inverse(IntMatrix{{2, 0}, {0, 1}}), PreconditionError);
}

TEST_CASE("determinant and rank") {
    const RatMatrix a = to_rational(IntMatrix{{1, 2, 3}, {4, 5, 6}, {7, 8, 10}});
    CHECK(determinant(a) == -3);
    CHECK(rank(to_rational(IntMatrix{{1, 2}, {2, 4}})) == 1);
    CHECK_THROWS_AS(IntMatrix({{1, 2}, {3}}), DimensionError);
}
