#include "nefcone/errors.hpp"
#include "nefcone/kernels/gaussian_row.hpp"
#include "nefcone/theta.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace nefcone::theta {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kUnitRoundoff = std::numeric_limits<double>::epsilon() / 2;

Eigen::VectorXd to_double(const RatVector& v) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
        out(static_cast<Eigen::Index>(i)) = v[i].get_d();
    }
    return out;
}

double real_exponent(const Eigen::MatrixXd& y, const Eigen::VectorXd& v, const Eigen::VectorXd& x) {
    return -kPi * x.dot(y * x) - 2.0 * kPi * x.dot(v);
}

} // namespace

Complex ThetaValue::value() const {
    return mantissa * std::exp(log_scale);
}

double ThetaValue::log_abs() const {
    return std::log(std::abs(mantissa)) + log_scale;
}

double tail_bound_for_radius(const ComplexMatrix& tau, int radius) {
    require_siegel(tau);
    if (radius < 0) {
        throw PreconditionError("truncation radius must be non-negative");
    }
    const auto d = static_cast<double>(tau.rows());
    const double lambda = min_imag_eigenvalue(tau);
    const double big_lambda = max_imag_eigenvalue(tau);
    const double r = radius + 0.5;
    // Union over the coordinate that leaves the box: a two-sided 1-d Gaussian tail
    // times full 1-d sums in the other directions, then relative to the smallest
    // possible central term.
    const double one_tail = 2.0 / (1.0 - std::exp(-2.0 * kPi * lambda * r)) * std::exp(-kPi * lambda * r * r);
    const double full = 2.0 + 1.0 / std::sqrt(lambda);
    return d * one_tail * std::pow(full, d - 1.0) * std::exp(kPi * big_lambda * d / 4.0);
}

int radius_for_tolerance(const ComplexMatrix& tau, double tolerance, int max_radius) {
    for (int r = 1; r <= max_radius; ++r) {
        if (tail_bound_for_radius(tau, r) < tolerance) {
            return r;
        }
    }
    throw ResourceError("no truncation radius <= " + std::to_string(max_radius) + " reaches tail tolerance " +
                        std::to_string(tolerance) + " (Im tau too degenerate)");
}

ThetaValue theta_numeric(const ComplexMatrix& tau, const ComplexRow& z, const ThetaCharacteristic& ch, int radius,
                         double tolerance) {
    require_siegel(tau);
    const Eigen::Index d = tau.rows();
    if (z.size() != d || static_cast<Eigen::Index>(ch.size()) != d) {
        throw DimensionError("tau, z and the characteristic must have matching sizes");
    }
    if (radius < 1) {
        throw PreconditionError("truncation radius must be >= 1");
    }
    ThetaValue out;
    out.radius = radius;
    out.relative_tail = tail_bound_for_radius(tau, radius);
    if (!(out.relative_tail <= tolerance)) {
        throw InconclusiveError("tail bound " + std::to_string(out.relative_tail) + " at radius " +
                                std::to_string(radius) + " exceeds tolerance " + std::to_string(tolerance));
    }

    const Eigen::MatrixXd y = tau.imag();
    const Eigen::VectorXd v = z.imag().transpose();
    const Eigen::VectorXd mp = to_double(ch.m_prime());
    const Eigen::VectorXcd w = z.transpose() + to_double(ch.m_dblprime()).cast<Complex>();

    // Terms peak at x* = -Y^-1 Im z; centre the box on the nearest lattice point.
    const Eigen::VectorXd x_star = -y.ldlt().solve(v);
    out.log_scale = real_exponent(y, v, x_star);
    out.center.resize(static_cast<std::size_t>(d));
    Eigen::VectorXd c(d);
    for (Eigen::Index i = 0; i < d; ++i) {
        c(i) = std::nearbyint(x_star(i) - mp(i));
        out.center[static_cast<std::size_t>(i)] = static_cast<long>(c(i));
    }

    const Eigen::Index last = d - 1;
    const Complex tau_dd = tau(last, last);
    const auto width = static_cast<std::size_t>(2 * radius + 1);
    std::vector<long> outer(static_cast<std::size_t>(last), -radius);
    Complex sum(0.0, 0.0);
    double abs_sum = 0.0;
    double arg_max = 0.0;
    bool done = false;
    while (!done) {
        Eigen::VectorXcd u(d);
        for (Eigen::Index i = 0; i < last; ++i) {
            u(i) = c(i) + static_cast<double>(outer[static_cast<std::size_t>(i)]) + mp(i);
        }
        u(last) = c(last) + mp(last);
        const Complex q0 = 0.5 * u.dot(tau * u) + u.dot(w); // dot conjugates its first argument; u is real
        const Complex q1 = (tau * u)(last) + w(last);
        kernels::RowCoefficients k;
        k.c0 = -2.0 * kPi * q0.imag() - out.log_scale;
        k.c1 = -2.0 * kPi * q1.imag();
        k.c2 = -kPi * tau_dd.imag();
        k.d0 = q0.real() - std::nearbyint(q0.real());
        k.d1 = q1.real();
        k.d2 = 0.5 * tau_dd.real();
        const auto row = kernels::gaussian_row(k, -radius, width);
        sum += Complex(row.re, row.im);
        abs_sum += row.abs_sum;
        arg_max = std::max({arg_max, std::abs(k.c0) + std::abs(out.log_scale), std::abs(q0.real())});
        out.terms += width;

        done = true;
        for (std::size_t i = outer.size(); i-- > 0;) {
            if (outer[i] < radius) {
                ++outer[i];
                done = false;
                break;
            }
            outer[i] = -radius;
        }
    }
    out.mantissa = sum;
    out.tail_bound = out.relative_tail * std::exp(real_exponent(y, v, c + mp) - out.log_scale);
    // Summation error plus the error of the exponential and phase arguments.
    out.rounding_bound =
        (static_cast<double>(out.terms) + 16.0 + 8.0 * (1.0 + arg_max)) * kUnitRoundoff * abs_sum;
    return out;
}

double relative_difference(const ThetaValue& a, const ThetaValue& b) {
    if (a.mantissa == Complex(0.0, 0.0)) {
        throw InconclusiveError("relative difference against a zero theta value");
    }
    return std::abs(1.0 - b.mantissa / a.mantissa * std::exp(b.log_scale - a.log_scale));
}

Complex quasi_periodicity_exponent(const ComplexMatrix& tau, const ComplexRow& z, const IntVector& k,
                                   const IntVector& k_prime) {
    const Eigen::Index d = tau.rows();
    if (z.size() != d || static_cast<Eigen::Index>(k.size()) != d || static_cast<Eigen::Index>(k_prime.size()) != d) {
        throw DimensionError("quasi-periodicity: size mismatch");
    }
    Eigen::VectorXcd kv(d), kp(d);
    for (Eigen::Index i = 0; i < d; ++i) {
        kv(i) = k[static_cast<std::size_t>(i)].get_d();
        kp(i) = k_prime[static_cast<std::size_t>(i)].get_d();
    }
    const Complex quad = (kv.transpose() * tau * kv)(0, 0);
    const Complex lin = (kv.transpose() * (z.transpose() + kp))(0, 0);
    return Complex(0.0, 2.0 * kPi) * (-0.5 * quad - lin);
}

namespace {

ComplexRow shifted_z(const ComplexMatrix& tau, const ComplexRow& z, const IntVector& k, const IntVector& k_prime) {
    ComplexRow out = z;
    for (Eigen::Index i = 0; i < z.size(); ++i) {
        const auto si = static_cast<std::size_t>(i);
        out(i) += k_prime[si].get_d();
        for (Eigen::Index j = 0; j < z.size(); ++j) {
            out(i) += k[static_cast<std::size_t>(j)].get_d() * tau(j, i);
        }
    }
    return out;
}

struct LogProduct {
    Complex mantissa{1.0, 0.0};
    double log_scale = 0.0;
};

LogProduct product_value(const ComplexMatrix& tau, const ComplexRow& z, const std::vector<ThetaCharacteristic>& factors,
                         double tolerance) {
    const int r = radius_for_tolerance(tau, tolerance);
    LogProduct p;
    for (const auto& ch : factors) {
        const auto t = theta_numeric(tau, z, ch, r, tolerance);
        p.mantissa *= t.mantissa;
        p.log_scale += t.log_scale;
    }
    return p;
}

void require_multiple(const IntVector& v, const Integer& n, std::size_t d, const char* name) {
    if (v.size() != d) {
        throw DimensionError(std::string(name) + " has the wrong length");
    }
    for (const auto& x : v) {
        if (x % n != 0) {
            throw PreconditionError(std::string(name) + " must lie in " + to_string(n) + "Z^" + std::to_string(d));
        }
    }
}

void require_level_element(const IntMatrix& gamma, const Integer& n, std::size_t d) {
    if (gamma.rows() != 2 * d || gamma.cols() != 2 * d) {
        throw DimensionError("gamma must be " + std::to_string(2 * d) + "x" + std::to_string(2 * d));
    }
    if (!is_symplectic(gamma)) {
        throw PreconditionError("gamma is not symplectic");
    }
    for (std::size_t i = 0; i < 2 * d; ++i) {
        for (std::size_t j = 0; j < 2 * d; ++j) {
            if ((gamma(i, j) - (i == j ? 1 : 0)) % n != 0) {
                throw PreconditionError("gamma is not congruent to the identity mod " + to_string(n));
            }
        }
    }
}

} // namespace

double quasi_periodicity_residual(const ComplexMatrix& tau, const ComplexRow& z, const ThetaCharacteristic& ch,
                                  const IntVector& k, const IntVector& k_prime, double tolerance) {
    const Complex e = quasi_periodicity_exponent(tau, z, k, k_prime);
    const int r = radius_for_tolerance(tau, tolerance);
    const auto base = theta_numeric(tau, z, ch, r, tolerance);
    const auto moved = theta_numeric(tau, shifted_z(tau, z, k, k_prime), ch, r, tolerance);
    return std::abs(1.0 - base.mantissa / moved.mantissa * std::exp(e + base.log_scale - moved.log_scale));
}

TransformReport check_transformations(const SectionSpec& spec, const std::vector<TransformSample>& samples,
                                      double comparison_tolerance, double tail_tolerance) {
    spec.validate();
    if (!spec.level_divisible_4p2()) {
        const Integer p = spec.scale();
        throw PreconditionError("level condition n = 0 mod 4p^2 fails for n = " + to_string(spec.level) + ", p = " +
                                to_string(p));
    }
    const std::size_t d = spec.factors.front().size();
    const double f = static_cast<double>(spec.factors.size());
    TransformReport report;
    report.passed = true;
    for (const auto& s : samples) {
        require_siegel(s.tau);
        if (static_cast<std::size_t>(s.tau.rows()) != d || static_cast<std::size_t>(s.z.size()) != d) {
            throw DimensionError("sample point has the wrong size");
        }
        require_multiple(s.k, spec.level, d, "k");
        require_multiple(s.k_prime, spec.level, d, "k'");
        require_level_element(s.gamma, spec.level, d);

        TransformCheck c;
        const auto base = product_value(s.tau, s.z, spec.factors, tail_tolerance);

        const auto moved = product_value(s.tau, shifted_z(s.tau, s.z, s.k, s.k_prime), spec.factors, tail_tolerance);
        const Complex e = f * quasi_periodicity_exponent(s.tau, s.z, s.k, s.k_prime);
        c.lattice_residual = std::abs(1.0 - base.mantissa / moved.mantissa * std::exp(e + base.log_scale - moved.log_scale));

        const auto bl = blocks(s.gamma);
        const ComplexMatrix kmat = bl.c * s.tau + bl.d;
        Eigen::FullPivLU<ComplexMatrix> lu(kmat);
        const ComplexMatrix k_inv = lu.inverse();
        const ComplexMatrix tau_new = symplectic_act(s.gamma, s.tau);
        const ComplexRow z_new = s.z * k_inv;
        const auto image = product_value(tau_new, z_new, spec.factors, tail_tolerance);
        const Complex quad = (s.z * k_inv * bl.c * s.z.transpose())(0, 0);
        const double expected = 0.5 * f * std::log(std::abs(lu.determinant())) - kPi * f * quad.imag();
        const double observed = std::log(std::abs(image.mantissa)) + image.log_scale -
                                std::log(std::abs(base.mantissa)) - base.log_scale;
        c.modular_residual = std::abs(std::expm1(observed - expected));

        c.passed = c.lattice_residual < comparison_tolerance && c.modular_residual < comparison_tolerance;
        report.passed = report.passed && c.passed;
        report.checks.push_back(c);
    }
    return report;
}

ComplexMatrix random_siegel_point(std::size_t d, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    const auto n = static_cast<Eigen::Index>(d);
    Eigen::MatrixXd a(n, n), x(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            a(i, j) = u(rng);
        }
        for (Eigen::Index j = 0; j <= i; ++j) {
            x(i, j) = x(j, i) = u(rng);
        }
    }
    const Eigen::MatrixXd y = 0.5 * Eigen::MatrixXd::Identity(n, n) + a.transpose() * a;
    ComplexMatrix tau(n, n);
    tau.real() = x;
    tau.imag() = y;
    return tau;
}

std::vector<TransformSample> random_transform_samples(const SectionSpec& spec, std::size_t count, std::uint64_t seed) {
    spec.validate();
    const std::size_t d = spec.factors.front().size();
    const Integer& n = spec.level;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    std::uniform_int_distribution<int> unit(-1, 1);
    std::uniform_int_distribution<int> kind(0, d > 1 ? 3 : 2);
    std::uniform_int_distribution<std::size_t> index(0, d - 1);

    std::vector<TransformSample> out;
    for (std::size_t s = 0; s < count; ++s) {
        TransformSample t;
        t.tau = random_siegel_point(d, rng);
        t.z.resize(static_cast<Eigen::Index>(d));
        for (std::size_t i = 0; i < d; ++i) {
            t.z(static_cast<Eigen::Index>(i)) = Complex(u(rng), u(rng));
        }
        for (std::size_t i = 0; i < d; ++i) {
            t.k.push_back(n * unit(rng));
            t.k_prime.push_back(n * unit(rng));
        }
        t.gamma = IntMatrix::identity(2 * d);
        const std::size_t i = index(rng);
        switch (kind(rng)) {
        case 1: // ((1, nS), (0, 1)) with S = E_ii
            t.gamma(i, d + i) = n;
            break;
        case 2: // ((1, 0), (nS, 1))
            t.gamma(d + i, i) = n;
            break;
        case 3: { // diag(U, t(U)^-1) with U = 1 + n E_ij
            const std::size_t j = (i + 1) % d;
            t.gamma(i, j) = n;
            t.gamma(d + j, d + i) = -n;
            break;
        }
        default:
            break;
        }
        out.push_back(std::move(t));
    }
    return out;
}

} // namespace nefcone::theta
