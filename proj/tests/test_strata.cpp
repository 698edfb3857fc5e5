#include "nefcone/errors.hpp"
#include "nefcone/strata.hpp"

#include <doctest.h>

using namespace nefcone;
using namespace nefcone::strata;

namespace {

std::vector<long> prime_divisors(long n) {
    std::vector<long> out;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) {
                n /= p;
            }
        }
    }
    if (n > 1) {
        out.push_back(n);
    }
    return out;
}

// |SL(2, Z/n)| = n^3 prod_{p | n} (1 - 1/p^2)
Rational sl2_product_formula(long n) {
    Rational r = Rational(n) * n * n;
    for (const long p : prime_divisors(n)) {
        r *= 1 - make_rational(1, p * p);
    }
    return r;
}

// Jordan totient J_k(n) = n^k prod_{p | n} (1 - p^{-k}), the number of primitive vectors in (Z/n)^k.
Rational jordan_totient(long n, int k) {
    Rational r = 1;
    for (int i = 0; i < k; ++i) {
        r *= n;
    }
    for (const long p : prime_divisors(n)) {
        Rational pk = 1;
        for (int i = 0; i < k; ++i) {
            pk *= p;
        }
        r *= 1 - 1 / pk;
    }
    return r;
}

} // namespace

TEST_CASE("group order against the product formula") {
    for (long n = 1; n <= 16; ++n) {
        CHECK(Rational(sl2_order(n)) == sl2_product_formula(n));
        CHECK(group_order_psl2(n) == (n >= 3 ? sl2_order(n) / 2 : sl2_order(n)));
    }
    CHECK(group_order_psl2(3) == 12);
    CHECK(group_order_psl2(5) == 60);
    CHECK_THROWS_AS(sl2_order(kMaxEnumerationLevel + 1), ResourceError);
    CHECK_THROWS_AS(sl2_order(0), PreconditionError);
}

TEST_CASE("mu(n1) divides mu(n2) when n1 divides n2") {
    for (long n1 = 1; n1 <= 12; ++n1) {
        for (long n2 = n1; n2 <= 12; n2 += n1) {
            CHECK(group_order_psl2(n2) % group_order_psl2(n1) == 0);
        }
    }
}

TEST_CASE("boundary degree") {
    CHECK(boundary_degree(12, 1, 3) == 8);
    CHECK(boundary_degree(3, 1, 4) == 0);
    for (long n = 1; n <= 10; ++n) {
        CHECK(boundary_degree(1, 0, n) == Rational(group_order_psl2(n)) / 12);
    }
}

TEST_CASE("cusp counts against the Jordan totient") {
    CHECK(enumerate_cusps(1, 2).primitive_vectors == 3);
    CHECK(enumerate_cusps(1, 2).classes == 3);
    CHECK(enumerate_cusps(1, 3).primitive_vectors == 8);
    CHECK(enumerate_cusps(1, 3).classes == 4);
    CHECK(enumerate_cusps(2, 3).primitive_vectors == 80);
    CHECK(enumerate_cusps(2, 3).classes == 40);
    for (int g = 1; g <= 3; ++g) {
        for (long n = 1; n <= (g == 3 ? 5 : 9); ++n) {
            const auto c = enumerate_cusps(g, n);
            const Rational j = jordan_totient(n, 2 * g);
            CHECK(Rational(c.primitive_vectors) == j);
            // only at n <= 2 is every primitive vector its own negative
            CHECK(Rational(c.classes) == (n <= 2 ? j : j / 2));
        }
    }
    CHECK_THROWS_AS(enumerate_cusps(4, 30), ResourceError);
}

TEST_CASE("Satake strata") {
    const auto s = satake_strata(3, 3);
    REQUIRE(s.size() == 4);
    CHECK(s[0].genus_of_stratum == 3);
    CHECK(s[0].dimension == 6);
    CHECK(s[0].kind == "interior");
    CHECK(s[1].dimension == 3);
    CHECK(s[1].index_set_size == enumerate_cusps(3, 3).classes);
    CHECK_FALSE(s[3].index_set_size.has_value());
    CHECK_FALSE(satake_strata(4, 30)[1].index_set_size.has_value());
}

TEST_CASE("fiber inventories") {
    for (long n = 3; n <= 5; ++n) {
        const Integer n2 = Integer(n) * n;
        const auto a = fiber_type(PointType::IIIa, n);
        CHECK(a.total() == n2);
        const auto b = fiber_type(PointType::IIIb, n);
        REQUIRE(b.components.size() == 2);
        CHECK(b.components[0].kind == SurfaceKind::p2);
        CHECK(b.components[0].count == 2 * n2);
        CHECK(b.components[1].kind == SurfaceKind::p2_blown_up);
        CHECK(b.components[1].count == n2);
        CHECK(fiber_type(PointType::II, n).total() == n);
        CHECK(fiber_type(PointType::I, n).components.front().kind == SurfaceKind::abelian);
    }
    CHECK(fiber_type(PointType::IIIb, 2).total() == 8);
    CHECK(fiber_type(PointType::IIIb, 1).total() == 2);
    CHECK(fiber_type(PointType::I, 2).components.front().kind == SurfaceKind::kummer);
    CHECK_FALSE(fiber_type(PointType::II, 2).specified);
    CHECK_FALSE(fiber_type(PointType::IIIa, 1).specified);
    CHECK(parse_point_type("IIIb") == PointType::IIIb);
    CHECK_THROWS_AS(parse_point_type("IV"), PreconditionError);
}

TEST_CASE("Shioda model pairing") {
    for (long n = 1; n <= 5; ++n) {
        const ShiodaModel m(n);
        const Rational deg = Rational(group_order_psl2(n)) / 12;
        CHECK(m.classes().size() == static_cast<std::size_t>(2 + n * n));
        CHECK(m.pairing("F", "F") == 0);
        CHECK(m.pairing(section_name(0, 0), "F") == 1);
        CHECK(m.pairing(section_name(n - 1, n - 1), section_name(n - 1, n - 1)) == -deg);
        CHECK(m.pairing("pull_LX", section_name(0, 0)) == deg);
        const auto& t = m.table();
        for (std::size_t i = 0; i < t.rows(); ++i) {
            for (std::size_t j = 0; j < t.cols(); ++j) {
                CHECK(t(i, j) == t(j, i));
            }
        }
    }
    CHECK_THROWS_AS(ShiodaModel(2).pairing("L_5_5", "F"), PreconditionError);
}

TEST_CASE("minus nD on the Shioda model") {
    for (long n = 1; n <= 4; ++n) {
        const auto r = check_minus_nD_nef(n);
        CHECK(r.section_degree == 0);
        CHECK(r.fiber_degree == Rational(2 * n * n));
        CHECK(r.nef_on_model);
    }
}
