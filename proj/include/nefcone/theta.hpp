#pragma once

// Theta characteristics and the series
//   Theta_{m'm''}(tau, z) = sum_q e^{2 pi i [ (q+m') tau t(q+m') / 2 + (q+m') t(z+m'') ]}
// on H_{g-1} x C^{g-1}: exact exponent calculus of single terms in the t- and
// T-coordinates of the boundary chart, certified boundary valuations, and a
// truncated numeric evaluator for the transformation laws.

#include "nefcone/charts.hpp"
#include "nefcone/rational.hpp"
#include "nefcone/siegel.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace nefcone::theta {

constexpr double kDefaultTailTolerance = 1e-14;
constexpr double kDefaultComparisonTolerance = 1e-8;

/// (m', m'') with 2p m' and 2p m'' integral.
class ThetaCharacteristic {
  public:
    ThetaCharacteristic(RatVector m_prime, RatVector m_dblprime, Integer denominator_scale);
    /// The zero characteristic of length d.
    static ThetaCharacteristic zero(std::size_t d);

    const RatVector& m_prime() const { return m_prime_; }
    const RatVector& m_dblprime() const { return m_dblprime_; }
    const Integer& denominator_scale() const { return p_; }
    std::size_t size() const { return m_prime_.size(); }

  private:
    RatVector m_prime_;
    RatVector m_dblprime_;
    Integer p_;
};

struct ThetaTerm {
    IntVector q;
    std::map<std::string, Rational> exponents;
    /// Coefficient is e^{2 pi i phase}; phase is reduced to [0, 1).
    Rational phase;
};

/// A product of theta series viewed as a section at level n, raised to `power`.
struct SectionSpec {
    std::vector<ThetaCharacteristic> factors;
    Integer level;
    int power = 1;

    /// lcm of the factors' denominator scales.
    Integer scale() const;
    bool level_divisible_4p2() const;
    bool level_divisible_8p2() const;
    /// Throws PreconditionError on empty or inconsistent factors.
    void validate() const;
};

struct FormOrder {
    int weight;
    Rational vanishing_order;
    Rational order() const { return vanishing_order / weight; }
};

/// Exponents of t11, t12, t22, t13, t23 (generally t_ij, t_i,g for i <= j < g).
ThetaTerm term_exponents_t(const IntVector& q, const ThetaCharacteristic& ch, const Integer& n);
/// Exponents of T1, T2, T4, T5, T6 in the chart of sigma3'. Needs g - 1 = 2.
ThetaTerm term_exponents_T(const IntVector& q, const ThetaCharacteristic& ch, const Integer& n);

/// f(q) = t(q) a q + b.q + c with a symmetric rational.
struct QuadraticPolynomial {
    RatMatrix a;
    RatVector b;
    Rational c;

    Rational operator()(const IntVector& q) const;
};

/// Boundary chart variables for which valuations are defined.
const std::vector<std::string>& chart_variables();

/// Exponent of `variable` in the chart of rho(t(nu) sigma3 nu), nu = nu(n_idx, m_idx),
/// as a polynomial in q. The standard chart is (0, 0).
QuadraticPolynomial exponent_polynomial(const ThetaCharacteristic& ch, const Integer& n, const std::string& variable,
                                        const Integer& n_idx = 0, const Integer& m_idx = 0);

/// Proof that the box minimum of one factor is its minimum over all of Z^d.
struct MinimumCertificate {
    /// "constant" or "rank-one".
    std::string method;
    /// For rank one: f(q) = alpha s^2 + beta s + gamma with s = w.q.
    IntVector w;
    Rational alpha, beta, gamma;
    /// Range of s over the box, and the integer minimizers of the 1-d problem.
    Integer s_lo, s_hi;
    std::vector<Integer> s_minimizers;
    Rational global_minimum;
};

struct Valuation {
    Rational value;
    /// One box point per factor attaining the minimum.
    std::vector<IntVector> attained_at;
    std::vector<MinimumCertificate> certificates;
    bool certified = false;
};

/// Minimum exponent of `variable` over the box [-R, R]^(d * #factors), certified
/// global. Throws InconclusiveError when the box does not contain a global
/// minimizer or the exponent form admits no certificate.
Valuation valuation(const SectionSpec& spec, const std::string& variable, int box_radius, const Integer& n_idx = 0,
                    const Integer& m_idx = 0);

struct ChartExtension {
    Integer n_idx, m_idx;
    Rational min_exponent;
    bool nonnegative = false;
    bool integral = false;
    bool certified = false;
    bool passed = false;
};

struct ExtensionReport {
    Integer p;
    std::vector<ChartExtension> charts;
    bool passed = false;
};

/// For each chart nu(0, m) checks that the T2 exponent is a non-negative
/// integer at every point of a certified box. Charts with n_idx != 0 are
/// rejected: there the T2 exponent n/2 x2 (x2 + 2 n_idx) takes negative values.
ExtensionReport check_extension(const SectionSpec& spec, const std::vector<std::pair<Integer, Integer>>& charts,
                                int box_radius = 4);

Rational form_order(int weight, const Rational& vanishing_order);

// ---------------------------------------------------------------- numeric

/// mantissa * e^{log_scale}. Bounds are absolute, in units of e^{log_scale}.
struct ThetaValue {
    Complex mantissa;
    double log_scale = 0.0;
    double tail_bound = 0.0;
    double rounding_bound = 0.0;
    /// tail_bound divided by the modulus of the largest term in the box.
    double relative_tail = 0.0;
    int radius = 0;
    IntVector center;
    std::size_t terms = 0;

    /// May overflow for large log_scale.
    Complex value() const;
    double log_abs() const;
};

/// Relative tail bound at truncation radius R (independent of z).
double tail_bound_for_radius(const ComplexMatrix& tau, int radius);
/// Smallest radius whose relative tail bound is below tolerance; throws
/// ResourceError beyond max_radius.
int radius_for_tolerance(const ComplexMatrix& tau, double tolerance = kDefaultTailTolerance, int max_radius = 400);

/// Truncated sum over a box of radius R centred on the dominant term.
/// Throws PreconditionError outside Siegel space and InconclusiveError when
/// the relative tail bound exceeds tolerance.
ThetaValue theta_numeric(const ComplexMatrix& tau, const ComplexRow& z, const ThetaCharacteristic& ch, int radius,
                         double tolerance = kDefaultTailTolerance);

/// |a - b| / |a|, computed without leaving log scale.
double relative_difference(const ThetaValue& a, const ThetaValue& b);

/// Exponent E with Theta(tau, z + k tau + k') = e^E Theta(tau, z) when k.m'' and
/// m'.k' are integral.
Complex quasi_periodicity_exponent(const ComplexMatrix& tau, const ComplexRow& z, const IntVector& k,
                                   const IntVector& k_prime);

/// Residual |Theta(z + k tau + k') - e^E Theta(z)| / |Theta(z + k tau + k')|.
double quasi_periodicity_residual(const ComplexMatrix& tau, const ComplexRow& z, const ThetaCharacteristic& ch,
                                  const IntVector& k, const IntVector& k_prime,
                                  double tolerance = kDefaultTailTolerance);

struct TransformSample {
    IntMatrix gamma;
    IntVector k, k_prime;
    ComplexMatrix tau;
    ComplexRow z;
};

struct TransformCheck {
    double lattice_residual = 0.0;
    double modular_residual = 0.0;
    bool passed = false;
};

struct TransformReport {
    std::vector<TransformCheck> checks;
    bool passed = false;
};

/// For the product of the spec's factors: the lattice shift by (k, k') gives
/// exactly the displayed factor, and gamma in Gamma(n) changes the modulus by
/// |det(C tau + D)|^{f/2} |e^{pi i f z (C tau + D)^{-1} C t(z)}| for f factors.
TransformReport check_transformations(const SectionSpec& spec, const std::vector<TransformSample>& samples,
                                      double comparison_tolerance = kDefaultComparisonTolerance,
                                      double tail_tolerance = kDefaultTailTolerance);

/// Random point of H_d: Re tau uniform in [-1/2, 1/2], Im tau = 1/2 + t(A) A.
ComplexMatrix random_siegel_point(std::size_t d, std::mt19937_64& rng);
/// Seeded samples with gamma a random generator of Gamma(n) and k, k' in n Z^d.
std::vector<TransformSample> random_transform_samples(const SectionSpec& spec, std::size_t count,
                                                      std::uint64_t seed);

} // namespace nefcone::theta
