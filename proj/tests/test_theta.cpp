#include "nefcone/charts.hpp"
#include "nefcone/errors.hpp"
#include "nefcone/exactfan.hpp"
#include "nefcone/theta.hpp"

#include <doctest.h>

#include <random>

using namespace nefcone;
using namespace nefcone::theta;

namespace {

const std::vector<std::string> kVars = {"T1", "T2", "T4", "T5", "T6"};

// Generator index in sigma3 for each boundary chart variable.
std::size_t generator_of(const std::string& v) {
    if (v == "T1") return 0;
    if (v == "T2") return 1;
    if (v == "T4") return 3;
    if (v == "T5") return 4;
    return 5;
}

// n/2 (y g y - e g e) with y = nu (q + m', 1) and e = nu e3: the exponent of T_k in
// the nu-chart, computed from the generator matrices directly.
Rational exponent_oracle(const IntVector& q, const ThetaCharacteristic& ch, const Integer& n, const std::string& var,
                         long n_idx, long m_idx) {
    const RatMatrix g = fan::standard_cone(3).sym_generators()[generator_of(var)].matrix();
    const RatVector y = {q[0] + ch.m_prime()[0] + m_idx, q[1] + ch.m_prime()[1] + n_idx, 1};
    const RatVector e = {Rational(m_idx), Rational(n_idx), 1};
    auto form = [&](const RatVector& v) -> Rational {
        Rational s = 0;
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = 0; j < 3; ++j) {
                s += v[i] * g(i, j) * v[j];
            }
        }
        return s;
    };
    return Rational(n) / 2 * (form(y) - form(e));
}

std::vector<ThetaCharacteristic> characteristics(long p) {
    std::vector<ThetaCharacteristic> out;
    for (long a = 0; a < 2 * p; ++a) {
        for (long b = 0; b < 2 * p; ++b) {
            const RatVector mp = {make_rational(a, 2 * p), make_rational(b, 2 * p)};
            const RatVector mpp = {make_rational(b, 2 * p), make_rational((a + 1) % (2 * p), 2 * p)};
            out.emplace_back(mp, mpp, p);
        }
    }
    return out;
}

} // namespace

TEST_CASE("characteristic validation") {
    CHECK_THROWS_AS(ThetaCharacteristic({make_rational(1, 3)}, {0}, 1), PreconditionError);
    CHECK_NOTHROW(ThetaCharacteristic({make_rational(1, 6)}, {0}, 3));
    CHECK_THROWS_AS(ThetaCharacteristic({0, 0}, {0}, 1), DimensionError);
    CHECK_THROWS_AS(ThetaCharacteristic({0}, {0}, 0), PreconditionError);
    const SectionSpec s{{ThetaCharacteristic({make_rational(1, 4)}, {0}, 2),
                         ThetaCharacteristic({make_rational(1, 6)}, {0}, 3)},
                        72};
    CHECK(s.scale() == 6);
    CHECK_FALSE(s.level_divisible_8p2());
    CHECK(SectionSpec{s.factors, 288}.level_divisible_8p2());
}

TEST_CASE("t-exponents of a theta term against the series written out") {
    const ThetaCharacteristic ch({make_rational(1, 2), make_rational(-1, 4)}, {make_rational(1, 4), 0}, 2);
    const Integer n = 32;
    for (long q1 = -3; q1 <= 3; ++q1) {
        for (long q2 = -3; q2 <= 3; ++q2) {
            const Rational x1 = q1 + make_rational(1, 2), x2 = q2 - make_rational(1, 4);
            const auto t = term_exponents_t({q1, q2}, ch, n);
            CHECK(t.exponents.at("t11") == x1 * x1 * n / 2);
            CHECK(t.exponents.at("t12") == x1 * x2 * n);
            CHECK(t.exponents.at("t22") == x2 * x2 * n / 2);
            CHECK(t.exponents.at("t13") == x1 * n);
            CHECK(t.exponents.at("t23") == x2 * n);
            CHECK(t.phase == frac(x1 * make_rational(1, 4)));
        }
    }
}

TEST_CASE("T-exponents against the displayed boundary formulas") {
    const ThetaCharacteristic ch({make_rational(1, 2), 0}, {0, make_rational(1, 2)}, 1);
    const Integer n = 8;
    for (long q1 = -3; q1 <= 3; ++q1) {
        for (long q2 = -3; q2 <= 3; ++q2) {
            const Rational x1 = q1 + make_rational(1, 2), x2 = q2;
            const auto t = term_exponents_T({q1, q2}, ch, n);
            CHECK(t.exponents.at("T1") == x1 * x1 * n / 2);
            CHECK(t.exponents.at("T2") == x2 * x2 * n / 2);
            CHECK(t.exponents.at("T4") == x2 * (x2 - 2) * n / 2);
            CHECK(t.exponents.at("T5") == x1 * (x1 - 2) * n / 2);
            CHECK(t.exponents.at("T6") == (x1 - x2) * (x1 - x2) * n / 2);
        }
    }
}

TEST_CASE("T-exponents are the t-exponents pushed through the inverse chart") {
    const auto inv = charts::invert(charts::chart_embedding(3));
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<long> qd(-5, 5);
    for (const auto& ch : characteristics(2)) {
        const long q1 = qd(rng), q2 = qd(rng);
        const auto t = term_exponents_t({q1, q2}, ch, 32);
        const auto big_t = term_exponents_T({q1, q2}, ch, 32);
        for (const auto& var : kVars) {
            const std::size_t k = generator_of(var);
            Rational pushed = 0;
            for (std::size_t r = 0; r < inv.target_vars.size(); ++r) {
                const auto it = t.exponents.find(inv.target_vars[r]);
                if (it != t.exponents.end()) {
                    pushed += it->second * inv.exponents(r, k);
                }
            }
            CHECK(big_t.exponents.at(var) == pushed);
        }
        CHECK(t.phase == big_t.phase);
    }
}

TEST_CASE("exponent polynomials in shifted charts match the generator oracle") {
    for (const auto& ch : characteristics(1)) {
        for (long n_idx = -2; n_idx <= 2; ++n_idx) {
            for (long m_idx = -2; m_idx <= 2; ++m_idx) {
                for (const auto& var : kVars) {
                    const auto f = exponent_polynomial(ch, 8, var, n_idx, m_idx);
                    for (long q1 = -2; q1 <= 2; ++q1) {
                        for (long q2 = -2; q2 <= 2; ++q2) {
                            CHECK(f({q1, q2}) == exponent_oracle({q1, q2}, ch, 8, var, n_idx, m_idx));
                        }
                    }
                }
            }
        }
    }
    CHECK_THROWS_AS(exponent_polynomial(ThetaCharacteristic::zero(2), 8, "T3"), PreconditionError);
}

TEST_CASE("T2 exponent is the square (2pq + j)^2 at level 8p^2") {
    for (long p = 1; p <= 3; ++p) {
        const Integer n = 8 * p * p;
        for (long j = 0; j < 2 * p; ++j) {
            const ThetaCharacteristic ch({0, make_rational(j, 2 * p)}, {0, 0}, p);
            for (long q2 = -4; q2 <= 4; ++q2) {
                const auto t = term_exponents_T({0, q2}, ch, n);
                CHECK(t.exponents.at("T2") == Rational((2 * p * q2 + j) * (2 * p * q2 + j)));
            }
        }
    }
}

TEST_CASE("valuation of a product is the brute-force minimum over the product box") {
    const int r = 2;
    const auto chars = characteristics(1);
    for (std::size_t a = 0; a < chars.size(); ++a) {
        for (std::size_t b = a; b < chars.size(); ++b) {
            const SectionSpec spec{{chars[a], chars[b]}, 8};
            for (const auto& var : kVars) {
                const auto fa = exponent_polynomial(chars[a], 8, var);
                const auto fb = exponent_polynomial(chars[b], 8, var);
                std::optional<Rational> best;
                for (long i = -r; i <= r; ++i)
                    for (long j = -r; j <= r; ++j)
                        for (long k = -r; k <= r; ++k)
                            for (long l = -r; l <= r; ++l) {
                                const Rational v = fa({i, j}) + fb({k, l});
                                if (!best || v < *best) {
                                    best = v;
                                }
                            }
                const auto v = valuation(spec, var, r);
                CHECK(v.certified);
                CHECK(v.value == *best);
                CHECK(v.certificates.size() == 2);
                SectionSpec squared = spec;
                squared.power = 2;
                CHECK(valuation(squared, var, r).value == 2 * *best);
            }
        }
    }
}

TEST_CASE("valuation certificate") {
    const ThetaCharacteristic ch({make_rational(1, 2), 0}, {0, 0}, 1);
    const SectionSpec spec{{ch}, 8};
    const auto v = valuation(spec, "T2", 3);
    REQUIRE(v.certificates.size() == 1);
    const auto& c = v.certificates.front();
    CHECK(c.method == "rank-one");
    CHECK(c.w == IntVector{0, 1});
    CHECK(c.alpha == 4);
    CHECK(c.global_minimum == v.value);
    CHECK(v.value == 0);
    // far from the standard chart the vertex leaves a small box
    CHECK_THROWS_AS(valuation(spec, "T5", 1, 0, 9), InconclusiveError);
    CHECK_NOTHROW(valuation(spec, "T5", 12, 0, 9));
    CHECK_THROWS_AS(valuation(spec, "T2", 0), PreconditionError);
}

TEST_CASE("extension certificate at level 8p^2") {
    for (long p = 1; p <= 2; ++p) {
        const Integer n = 8 * p * p;
        for (const auto& a : characteristics(p)) {
            const auto rep = check_extension(SectionSpec{{a, a}, n}, {{0, 0}, {0, 1}, {0, -1}}, 3);
            CHECK(rep.passed);
            CHECK(rep.p == p);
            for (const auto& c : rep.charts) {
                CHECK(c.min_exponent >= 0);
                CHECK(is_integer(c.min_exponent));
            }
        }
    }
}

TEST_CASE("extension certificate refuses levels outside 8p^2 Z") {
    const SectionSpec spec{{ThetaCharacteristic({make_rational(1, 2), 0}, {0, 0}, 1)}, 4};
    CHECK_THROWS_WITH_AS(check_extension(spec, {{0, 0}}), doctest::Contains("8p^2"), PreconditionError);
    const SectionSpec level8{spec.factors, 8};
    CHECK_THROWS_AS(check_extension(level8, {{1, 0}}), PreconditionError);
    // in the chart nu(1, 0) the T2 exponent 4 x2 (x2 + 2) is negative at x2 = -1
    CHECK(exponent_polynomial(level8.factors.front(), 8, "T2", 1, 0)({0, -1}) == -4);
    // at level 4 the T1 exponent 2 (q1 + 1/2)^2 is not integral
    const auto f = exponent_polynomial(spec.factors.front(), 4, "T1");
    CHECK_FALSE(is_integer(f({0, 0})));
}

TEST_CASE("form order") {
    CHECK(form_order(2, 3) == make_rational(3, 2));
    CHECK_THROWS_AS(form_order(0, 1), PreconditionError);
}
