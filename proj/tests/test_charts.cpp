#include "nefcone/charts.hpp"
#include "nefcone/errors.hpp"
#include "nefcone/exactfan.hpp"
#include "nefcone/siegel.hpp"
#include "nefcone/theta.hpp"

#include <doctest.h>

#include <random>

using namespace nefcone;
using namespace nefcone::charts;

namespace {

// Columns: Sym coordinates of the generators of the standard cone.
IntMatrix generator_columns(int g) {
    const auto gens = fan::standard_cone(g).generators();
    IntMatrix m(gens.front().size(), gens.size());
    for (std::size_t j = 0; j < gens.size(); ++j) {
        for (std::size_t i = 0; i < gens[j].size(); ++i) {
            m(i, j) = gens[j][i];
        }
    }
    return m;
}

std::vector<Complex> random_torus_point(std::mt19937_64& rng, std::size_t k) {
    std::uniform_real_distribution<double> r(0.5, 1.5), a(-3.0, 3.0);
    std::vector<Complex> out;
    for (std::size_t i = 0; i < k; ++i) {
        out.push_back(std::polar(r(rng), a(rng)));
    }
    return out;
}

BlockPeriodPoint random_point(std::mt19937_64& rng, std::size_t g) {
    return BlockPeriodPoint::split(theta::random_siegel_point(g, rng));
}

} // namespace

TEST_CASE("chart embedding of sigma3, hand-typed table") {
    // T1 = t11 t12 t13, T2 = t12 t22 t23, T3 = t13 t23 t33, T4 = 1/t23, T5 = 1/t13, T6 = 1/t12
    const IntMatrix expected{{1, 1, 1, 0, 0, 0}, {0, 1, 0, 1, 1, 0}, {0, 0, 1, 0, 1, 1},
                             {0, 0, 0, 0, -1, 0}, {0, 0, -1, 0, 0, 0}, {0, -1, 0, 0, 0, 0}};
    const MonomialMap e = chart_embedding(3);
    CHECK(e.exponents == expected);
    CHECK(e.source_vars == t_vars(3));
    CHECK(e.is_unimodular());
}

TEST_CASE("inverse chart, hand-typed table") {
    // t11 = T1 T5 T6, t12 = 1/T6, t13 = 1/T5, t22 = T2 T4 T6, t23 = 1/T4, t33 = T3 T4 T5
    const IntMatrix expected{{1, 0, 0, 0, 1, 1}, {0, 0, 0, 0, 0, -1}, {0, 0, 0, 0, -1, 0},
                             {0, 1, 0, 1, 0, 1}, {0, 0, 0, -1, 0, 0}, {0, 0, 1, 1, 1, 0}};
    const MonomialMap inv = invert(chart_embedding(3));
    CHECK(inv.exponents == expected);
    CHECK(inv.row("t33") == IntVector{0, 0, 1, 1, 1, 0});
    CHECK_THROWS_AS(inv.row("t44"), PreconditionError);
}

TEST_CASE("chart exponents are dual to the cone generators") {
    for (const int g : {2, 3}) {
        const MonomialMap e = chart_embedding(g);
        const std::size_t k = e.exponents.rows();
        CHECK(e.exponents * generator_columns(g) == IntMatrix::identity(k));
    }
}

TEST_CASE("charts compose to the identity on random torus points") {
    std::mt19937_64 rng(5);
    for (const int g : {2, 3}) {
        const MonomialMap e = chart_embedding(g);
        const MonomialMap inv = invert(e);
        CHECK(invert(inv) == e);
        for (int trial = 0; trial < 25; ++trial) {
            const auto t = random_torus_point(rng, e.source_vars.size());
            const auto back = inv.evaluate(e.evaluate(t));
            for (std::size_t i = 0; i < t.size(); ++i) {
                CHECK(std::abs(back[i] - t[i]) < 1e-12);
            }
        }
        CHECK(compose(e, inv).exponents == IntMatrix::identity(e.source_vars.size()));
    }
}

TEST_CASE("evaluate refuses a negative power of zero") {
    const MonomialMap e = chart_embedding(2);
    CHECK_THROWS_AS(e.evaluate({1.0, 0.0, 1.0}), PreconditionError);
}

TEST_CASE("boundary projection is the dual of lambda") {
    const MonomialMap d = dual_of_lattice_map(fan::lambda_on_n5(), fan::sigma3_prime(), fan::standard_cone(2));
    CHECK(d.exponents == boundary_projection().exponents);
    // T1 T5, T2 T4, T6 by hand
    CHECK(boundary_projection().exponents == IntMatrix{{1, 0, 0, 1, 0}, {0, 1, 1, 0, 0}, {0, 0, 0, 0, 1}});
    // the identity on N5 does not map sigma3' into sigma2
    CHECK_THROWS(dual_of_lattice_map(fan::LatticeMap(IntMatrix::identity(5)), fan::sigma3_prime(),
                                     fan::standard_cone(2)));
}

TEST_CASE("nu chart agrees with conjugation by nu") {
    for (long a = -2; a <= 2; ++a) {
        for (long b = -2; b <= 2; ++b) {
            const auto chart = nu_chart(a, b);
            const IntMatrix nu = fan::nu_matrix(a, b);
            const fan::SymMatrix x{{1, 2, 3}, {2, 5, 7}, {3, 7, 11}};
            const RatMatrix oracle = to_rational(nu).transpose() * x.matrix() * to_rational(nu);
            CHECK(fan::SymMatrix::from_coords(3, chart.apply(x.coords())).matrix() == oracle);
        }
    }
}

TEST_CASE("block split round trip") {
    std::mt19937_64 rng(13);
    const ComplexMatrix tau = theta::random_siegel_point(3, rng);
    CHECK((BlockPeriodPoint::split(tau).assemble() - tau).norm() < 1e-15);
}

TEST_CASE("parabolic block formulas agree with the full symplectic action") {
    std::mt19937_64 rng(17);
    const std::vector<ParabolicElement> elements = {
        make_g1(IntMatrix{{1, 0}, {0, 1}}, IntMatrix{{1, 0}, {0, 0}}, IntMatrix{{0, 0}, {0, 0}}, IntMatrix{{1, 0}, {0, 1}}),
        make_g1(IntMatrix{{1, 1}, {0, 1}}, IntMatrix{{0, 0}, {0, 0}}, IntMatrix{{0, 0}, {0, 0}}, IntMatrix{{1, 0}, {-1, 1}}),
        make_g1(IntMatrix{{0, 0}, {0, 1}}, IntMatrix{{-1, 0}, {0, 0}}, IntMatrix{{1, 0}, {0, 0}}, IntMatrix{{0, 0}, {0, 1}}),
        make_g2(-1),
        make_g2(1),
        make_g3({1, -2}, {0, 3}),
        make_g3({0, 1}, {2, 0}),
        make_g4(5),
    };
    for (int trial = 0; trial < 10; ++trial) {
        const BlockPeriodPoint p = random_point(rng, 3);
        for (const auto& el : elements) {
            const ComplexMatrix block = parabolic_act(el, p).assemble();
            const ComplexMatrix full = symplectic_act(el.to_symplectic(3), p.assemble());
            CHECK((block - full).norm() < 1e-10 * (1.0 + full.norm()));
            CHECK(is_symplectic(el.to_symplectic(3)));
        }
    }
}

TEST_CASE("g4 with s in nZ fixes the boundary coordinate") {
    std::mt19937_64 rng(19);
    const BlockPeriodPoint p = random_point(rng, 3);
    for (const long n : {1L, 3L, 8L}) {
        const auto q = parabolic_act(make_g4(2 * n), p);
        CHECK(std::abs(boundary_coordinate(q, n) - boundary_coordinate(p, n)) < 1e-12);
    }
    CHECK(std::abs(boundary_coordinate(parabolic_act(make_g4(1), p), 2) + boundary_coordinate(p, 2)) < 1e-12);
}

TEST_CASE("parabolic element validation") {
    CHECK_THROWS_AS(make_g2(2).validate(3), PreconditionError);
    CHECK_THROWS_AS(make_g3({1}, {0, 0}).validate(3), DimensionError);
    CHECK_THROWS_AS(make_g1(IntMatrix{{2, 0}, {0, 1}}, IntMatrix{{0, 0}, {0, 0}}, IntMatrix{{0, 0}, {0, 0}},
                            IntMatrix{{1, 0}, {0, 1}})
                        .validate(3),
                    PreconditionError);
}
