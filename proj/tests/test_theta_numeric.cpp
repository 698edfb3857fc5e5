#include "nefcone/errors.hpp"
#include "nefcone/siegel.hpp"
#include "nefcone/theta.hpp"

#include <doctest.h>

#include <numbers>
#include <random>

using namespace nefcone;
using namespace nefcone::theta;

namespace {

constexpr double kPi = std::numbers::pi;

// Jacobi triple product:
//   sum_k e^{pi i k^2 t + 2 pi i k w} = prod_m (1 - q^{2m}) (1 + q^{2m-1} e^{2 pi i w}) (1 + q^{2m-1} e^{-2 pi i w}),
// q = e^{pi i t}.
Complex triple_product(Complex t, Complex w) {
    const Complex q = std::exp(Complex(0, kPi) * t);
    const Complex u = std::exp(Complex(0, 2 * kPi) * w);
    Complex prod = 1;
    Complex q_odd = q;      // q^{2m-1}
    Complex q_even = q * q; // q^{2m}
    for (int m = 1; m < 400; ++m) {
        prod *= (1.0 - q_even) * (1.0 + q_odd * u) * (1.0 + q_odd / u);
        q_odd *= q * q;
        q_even *= q * q;
    }
    return prod;
}

// One-variable theta with characteristic through the triple product:
// Theta_{a,b}(t, z) = e^{pi i a^2 t + 2 pi i a (z + b)} theta(t, z + b + a t).
Complex theta_1d_oracle(Complex t, Complex z, double a, double b) {
    return std::exp(Complex(0, kPi) * a * a * t + Complex(0, 2 * kPi) * a * (z + b)) * triple_product(t, z + b + a * t);
}

ThetaCharacteristic half_char(long a2, long b2) {
    return ThetaCharacteristic({make_rational(a2, 2)}, {make_rational(b2, 2)}, 1);
}

} // namespace

TEST_CASE("one-variable theta against the triple product") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> re(-0.5, 0.5), im(0.4, 2.0), zr(-1.0, 1.0);
    for (int trial = 0; trial < 40; ++trial) {
        const Complex t(re(rng), im(rng));
        const Complex z(zr(rng), zr(rng) * 0.5);
        ComplexMatrix tau(1, 1);
        tau(0, 0) = t;
        ComplexRow zr_row(1);
        zr_row(0) = z;
        for (long a2 = 0; a2 <= 1; ++a2) {
            for (long b2 = 0; b2 <= 1; ++b2) {
                const auto v = theta_numeric(tau, zr_row, half_char(a2, b2), radius_for_tolerance(tau));
                const Complex oracle = theta_1d_oracle(t, z, 0.5 * a2, 0.5 * b2);
                CHECK(std::abs(v.value() - oracle) <= 1e-11 * (1.0 + std::abs(oracle)));
            }
        }
    }
}

TEST_CASE("diagonal period matrices factor into one-variable thetas") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> re(-0.5, 0.5), im(0.5, 1.5);
    for (int trial = 0; trial < 20; ++trial) {
        ComplexMatrix tau = ComplexMatrix::Zero(2, 2);
        tau(0, 0) = Complex(re(rng), im(rng));
        tau(1, 1) = Complex(re(rng), im(rng));
        ComplexRow z(2);
        z << Complex(re(rng), re(rng)), Complex(re(rng), re(rng));
        const ThetaCharacteristic ch({make_rational(1, 2), 0}, {0, make_rational(1, 2)}, 1);
        const auto v = theta_numeric(tau, z, ch, radius_for_tolerance(tau));
        const Complex oracle = theta_1d_oracle(tau(0, 0), z(0), 0.5, 0.0) * theta_1d_oracle(tau(1, 1), z(1), 0.0, 0.5);
        CHECK(std::abs(v.value() - oracle) <= 1e-11 * (1.0 + std::abs(oracle)));
    }
}

TEST_CASE("large imaginary z is carried in the log scale") {
    ComplexMatrix tau(1, 1);
    tau(0, 0) = Complex(0.1, 1.0);
    ComplexRow z(1);
    z(0) = Complex(0.2, 40.0);
    const auto v = theta_numeric(tau, z, half_char(0, 0), radius_for_tolerance(tau));
    const Complex oracle = theta_1d_oracle(tau(0, 0), z(0) - 40.0 * tau(0, 0), 0.0, 0.0);
    // Theta(z + k tau) = e^{-pi i k^2 tau - 2 pi i k z} Theta(z) with k = 40
    const Complex log_factor = Complex(0, -kPi) * 1600.0 * tau(0, 0) - Complex(0, 2 * kPi) * 40.0 * (z(0) - 40.0 * tau(0, 0));
    const double expected_log_abs = log_factor.real() + std::log(std::abs(oracle));
    CHECK(std::abs(v.log_abs() - expected_log_abs) < 1e-9 * std::abs(expected_log_abs));
    CHECK(v.log_scale > 100.0);
}

TEST_CASE("tail bound is honored under radius doubling") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 30; ++trial) {
        const ComplexMatrix tau = random_siegel_point(2, rng);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        ComplexRow z(2);
        z << Complex(u(rng), u(rng)), Complex(u(rng), u(rng));
        const ThetaCharacteristic ch({make_rational(1, 2), make_rational(1, 2)}, {0, make_rational(1, 2)}, 1);
        const int r = radius_for_tolerance(tau);
        const auto a = theta_numeric(tau, z, ch, r);
        const auto b = theta_numeric(tau, z, ch, 2 * r);
        CHECK(a.relative_tail <= kDefaultTailTolerance);
        const double diff = std::abs(a.mantissa - b.mantissa * std::exp(b.log_scale - a.log_scale));
        CHECK(diff <= a.tail_bound + a.rounding_bound + b.rounding_bound);
        // the bound itself decreases with the radius
        CHECK(tail_bound_for_radius(tau, 2 * r) <= tail_bound_for_radius(tau, r));
    }
}

TEST_CASE("truncation errors are reported, not hidden") {
    ComplexMatrix tau(1, 1);
    tau(0, 0) = Complex(0.0, 0.05);
    ComplexRow z = ComplexRow::Zero(1);
    CHECK_THROWS_AS(theta_numeric(tau, z, half_char(0, 0), 1), InconclusiveError);
    CHECK_THROWS_AS(radius_for_tolerance(tau, 1e-14, 3), ResourceError);
    ComplexMatrix bad(1, 1);
    bad(0, 0) = Complex(0.0, -1.0);
    CHECK_THROWS_AS(theta_numeric(bad, z, half_char(0, 0), 5), PreconditionError);
}

TEST_CASE("quasi-periodicity on random samples") {
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<int> kd(-1, 1);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    for (const long n : {4L, 8L}) {
        for (int trial = 0; trial < 20; ++trial) {
            const ComplexMatrix tau = random_siegel_point(2, rng);
            ComplexRow z(2);
            z << Complex(u(rng), u(rng)), Complex(u(rng), u(rng));
            const IntVector k = {n * kd(rng), n * kd(rng)};
            const IntVector kp = {n * kd(rng), n * kd(rng)};
            const ThetaCharacteristic ch({make_rational(1, 2), 0}, {make_rational(1, 2), make_rational(1, 2)}, 1);
            CHECK(quasi_periodicity_residual(tau, z, ch, k, kp) < 1e-8);
        }
    }
}

TEST_CASE("transformation report") {
    for (const long n : {4L, 8L}) {
        const SectionSpec spec{{ThetaCharacteristic({make_rational(1, 2), 0}, {0, make_rational(1, 2)}, 1),
                                ThetaCharacteristic({0, make_rational(1, 2)}, {make_rational(1, 2), 0}, 1)},
                               n};
        const auto samples = random_transform_samples(spec, 12, 99);
        const auto rep = check_transformations(spec, samples);
        CHECK(rep.passed);
        CHECK(rep.checks.size() == 12);
        for (const auto& s : samples) {
            CHECK(is_symplectic(s.gamma));
        }
    }
    const SectionSpec wrong_level{{ThetaCharacteristic({make_rational(1, 2), 0}, {0, 0}, 1)}, 2};
    CHECK_THROWS_AS(check_transformations(wrong_level, random_transform_samples(wrong_level, 1, 1)), PreconditionError);
}

TEST_CASE("random Siegel points lie in H_d") {
    std::mt19937_64 rng(43);
    for (int i = 0; i < 20; ++i) {
        const ComplexMatrix tau = random_siegel_point(3, rng);
        CHECK(in_siegel_space(tau));
        CHECK(min_imag_eigenvalue(tau) >= 0.5 - 1e-12);
    }
}
