#include "nefcone/theta.hpp"

#include "nefcone/errors.hpp"
#include "nefcone/exactfan.hpp"

#include <algorithm>
#include <set>

namespace nefcone::theta {

ThetaCharacteristic::ThetaCharacteristic(RatVector m_prime, RatVector m_dblprime, Integer denominator_scale)
    : m_prime_(std::move(m_prime)), m_dblprime_(std::move(m_dblprime)), p_(std::move(denominator_scale)) {
    if (m_prime_.size() != m_dblprime_.size()) {
        throw DimensionError("characteristic: m' and m'' have different lengths");
    }
    if (m_prime_.empty()) {
        throw DimensionError("characteristic must have length >= 1");
    }
    if (p_ < 1) {
        throw PreconditionError("denominator scale p must be positive");
    }
    for (const auto* v : {&m_prime_, &m_dblprime_}) {
        for (const auto& x : *v) {
            if (!is_integer(Rational(2 * p_) * x)) {
                throw PreconditionError("characteristic entry " + to_string(x) + " is not in (1/" +
                                        to_string(Integer(2 * p_)) + ")Z");
            }
        }
    }
}

ThetaCharacteristic ThetaCharacteristic::zero(std::size_t d) {
    return {RatVector(d, 0), RatVector(d, 0), 1};
}

Integer SectionSpec::scale() const {
    Integer p = 1;
    for (const auto& f : factors) {
        p = lcm(p, f.denominator_scale());
    }
    return p;
}

bool SectionSpec::level_divisible_4p2() const {
    const Integer p = scale();
    return level % (4 * p * p) == 0;
}

bool SectionSpec::level_divisible_8p2() const {
    const Integer p = scale();
    return level % (8 * p * p) == 0;
}

void SectionSpec::validate() const {
    if (factors.empty()) {
        throw PreconditionError("section needs at least one theta factor");
    }
    for (const auto& f : factors) {
        if (f.size() != factors.front().size()) {
            throw DimensionError("theta factors have characteristics of different lengths");
        }
    }
    if (level < 1) {
        throw PreconditionError("level must be positive");
    }
    if (power < 1) {
        throw PreconditionError("power must be positive");
    }
}

namespace {

void check_q(const IntVector& q, const ThetaCharacteristic& ch) {
    if (q.size() != ch.size()) {
        throw DimensionError("lattice point has length " + std::to_string(q.size()) + ", characteristic has length " +
                             std::to_string(ch.size()));
    }
}

RatVector shifted(const IntVector& q, const ThetaCharacteristic& ch) {
    RatVector x(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
        x[i] = q[i] + ch.m_prime()[i];
    }
    return x;
}

Rational phase_of(const RatVector& x, const ThetaCharacteristic& ch) {
    Rational r = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        r += x[i] * ch.m_dblprime()[i];
    }
    return frac(r);
}

std::string t_name(std::size_t i, std::size_t j) {
    return "t" + std::to_string(i + 1) + std::to_string(j + 1);
}

// Calls f(q) for every q in [-r, r]^d in lexicographic order.
template <typename F>
void for_each_in_box(std::size_t d, int r, F&& f) {
    IntVector q(d, -r);
    while (true) {
        f(static_cast<const IntVector&>(q));
        std::size_t i = d;
        while (i > 0) {
            --i;
            if (q[i] < r) {
                q[i] += 1;
                break;
            }
            q[i] = -r;
            if (i == 0) {
                return;
            }
        }
        if (d == 0) {
            return;
        }
    }
}

// Affine form l(q) = coef . q + c.
struct Affine {
    RatVector coef;
    Rational c;
};

QuadraticPolynomial product(const Affine& u, const Affine& v, const Rational& scale) {
    const std::size_t d = u.coef.size();
    QuadraticPolynomial p{RatMatrix(d, d), RatVector(d, 0), scale * u.c * v.c};
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            p.a(i, j) = scale * (u.coef[i] * v.coef[j] + u.coef[j] * v.coef[i]) / 2;
        }
        p.b[i] = scale * (u.coef[i] * v.c + v.coef[i] * u.c);
    }
    return p;
}

void add_scaled(QuadraticPolynomial& acc, const QuadraticPolynomial& p, const Rational& s) {
    for (std::size_t i = 0; i < acc.b.size(); ++i) {
        for (std::size_t j = 0; j < acc.b.size(); ++j) {
            acc.a(i, j) += s * p.a(i, j);
        }
        acc.b[i] += s * p.b[i];
    }
    acc.c += s * p.c;
}

std::size_t chart_index(const std::string& variable) {
    static const std::vector<std::pair<std::string, std::size_t>> index = {
        {"T1", 0}, {"T2", 1}, {"T4", 3}, {"T5", 4}, {"T6", 5}};
    for (const auto& [name, k] : index) {
        if (name == variable) {
            return k;
        }
    }
    throw PreconditionError("unknown boundary chart variable '" + variable + "' (expected T1, T2, T4, T5 or T6)");
}

struct FactorMinimum {
    Rational value;
    IntVector at;
    MinimumCertificate certificate;
};

FactorMinimum certified_minimum(const QuadraticPolynomial& f, int r) {
    const std::size_t d = f.b.size();
    FactorMinimum out;
    bool first = true;
    for_each_in_box(d, r, [&](const IntVector& q) {
        const Rational v = f(q);
        if (first || v < out.value) {
            out.value = v;
            out.at = q;
            first = false;
        }
    });

    MinimumCertificate& cert = out.certificate;
    std::size_t pivot = d;
    for (std::size_t i = 0; i < d && pivot == d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            if (f.a(i, j) != 0) {
                pivot = i;
                break;
            }
        }
    }
    if (pivot == d) {
        if (std::any_of(f.b.begin(), f.b.end(), [](const Rational& x) { return x != 0; })) {
            throw InconclusiveError("exponent is linear and unbounded below; no valuation");
        }
        cert.method = "constant";
        cert.global_minimum = f.c;
        return out;
    }

    cert.method = "rank-one";
    cert.w = fan::primitive(f.a.row(pivot));
    for (const auto& x : cert.w) {
        if (x != 0) {
            if (x < 0) {
                for (auto& y : cert.w) {
                    y = -y;
                }
            }
            break;
        }
    }
    const Rational w_p = cert.w[pivot];
    cert.alpha = f.a(pivot, pivot) / (w_p * w_p);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            if (f.a(i, j) != cert.alpha * cert.w[i] * cert.w[j]) {
                throw InconclusiveError("quadratic part of the exponent has rank > 1; no minimality certificate");
            }
        }
    }
    if (cert.alpha < 0) {
        throw InconclusiveError("exponent is unbounded below along w");
    }
    cert.beta = f.b[pivot] / w_p;
    for (std::size_t i = 0; i < d; ++i) {
        if (f.b[i] != cert.beta * cert.w[i]) {
            throw InconclusiveError("linear part of the exponent is not along the quadratic direction");
        }
    }
    cert.gamma = f.c;

    Integer w1 = 0;
    for (const auto& x : cert.w) {
        w1 += abs(x);
    }
    cert.s_lo = -w1 * r;
    cert.s_hi = w1 * r;

    // alpha s^2 + beta s is convex in s; its integer minimizers straddle -beta / (2 alpha).
    const Rational vertex = -cert.beta / (2 * cert.alpha);
    auto g = [&](const Integer& s) -> Rational { return cert.alpha * s * s + cert.beta * s + cert.gamma; };
    const Integer lo = floor(vertex), hi = ceil(vertex);
    cert.global_minimum = std::min(g(lo), g(hi));
    for (const Integer& s : {lo, hi}) {
        if (g(s) == cert.global_minimum &&
            std::find(cert.s_minimizers.begin(), cert.s_minimizers.end(), s) == cert.s_minimizers.end()) {
            cert.s_minimizers.push_back(s);
        }
    }
    if (out.value != cert.global_minimum) {
        throw InconclusiveError("inconclusive, enlarge box: box minimum " + to_string(out.value) +
                                " exceeds the global minimum " + to_string(cert.global_minimum) + " attained at w.q = " +
                                to_string(cert.s_minimizers.front()));
    }
    return out;
}

} // namespace

Rational QuadraticPolynomial::operator()(const IntVector& q) const {
    if (q.size() != b.size()) {
        throw DimensionError("polynomial evaluated at a point of the wrong length");
    }
    Rational v = c;
    for (std::size_t i = 0; i < q.size(); ++i) {
        v += b[i] * q[i];
        for (std::size_t j = 0; j < q.size(); ++j) {
            v += a(i, j) * q[i] * q[j];
        }
    }
    return v;
}

ThetaTerm term_exponents_t(const IntVector& q, const ThetaCharacteristic& ch, const Integer& n) {
    check_q(q, ch);
    const RatVector x = shifted(q, ch);
    const std::size_t d = x.size();
    ThetaTerm term{q, {}, phase_of(x, ch)};
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i; j < d; ++j) {
            term.exponents[t_name(i, j)] = (i == j ? Rational(1, 2) : Rational(1)) * x[i] * x[j] * n;
        }
        term.exponents[t_name(i, d)] = x[i] * n;
    }
    return term;
}

ThetaTerm term_exponents_T(const IntVector& q, const ThetaCharacteristic& ch, const Integer& n) {
    check_q(q, ch);
    if (ch.size() != 2) {
        throw DimensionError("T-coordinate exponents are defined for characteristics of length 2");
    }
    const RatVector x = shifted(q, ch);
    const Rational half(1, 2);
    ThetaTerm term{q, {}, phase_of(x, ch)};
    term.exponents["T1"] = half * x[0] * x[0] * n;
    term.exponents["T2"] = half * x[1] * x[1] * n;
    term.exponents["T4"] = half * x[1] * (x[1] - 2) * n;
    term.exponents["T5"] = half * x[0] * (x[0] - 2) * n;
    term.exponents["T6"] = half * (x[0] - x[1]) * (x[0] - x[1]) * n;
    return term;
}

const std::vector<std::string>& chart_variables() {
    static const std::vector<std::string> vars = {"T1", "T2", "T4", "T5", "T6"};
    return vars;
}

QuadraticPolynomial exponent_polynomial(const ThetaCharacteristic& ch, const Integer& n, const std::string& variable,
                                        const Integer& n_idx, const Integer& m_idx) {
    if (ch.size() != 2) {
        throw DimensionError("boundary chart exponents are defined for characteristics of length 2");
    }
    const std::size_t k = chart_index(variable);
    const auto gens = fan::standard_cone(3).sym_generators();
    const RatVector gen = fan::gl_conjugate(gens[k], fan::nu_matrix(n_idx, m_idx)).coords();

    // x~ = (q1 + m1', q2 + m2', 1); the t_ij exponent is n x~_i x~_j (halved on the
    // diagonal), and t33 carries no exponent.
    std::vector<Affine> xt(3, Affine{RatVector(2, 0), 0});
    for (std::size_t i = 0; i < 2; ++i) {
        xt[i].coef[i] = 1;
        xt[i].c = ch.m_prime()[i];
    }
    xt[2].c = 1;
    QuadraticPolynomial f{RatMatrix(2, 2), RatVector(2, 0), 0};
    std::size_t idx = 0;
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = i; j < 3; ++j, ++idx) {
            if (i == 2 && j == 2) {
                continue;
            }
            const Rational s = (i == j ? Rational(1, 2) : Rational(1)) * n;
            add_scaled(f, product(xt[i], xt[j], s), gen[idx]);
        }
    }
    return f;
}

Valuation valuation(const SectionSpec& spec, const std::string& variable, int box_radius, const Integer& n_idx,
                    const Integer& m_idx) {
    spec.validate();
    chart_index(variable);
    if (box_radius < 1) {
        throw PreconditionError("box radius must be >= 1");
    }
    Valuation v;
    v.value = 0;
    for (const auto& ch : spec.factors) {
        const auto m = certified_minimum(exponent_polynomial(ch, spec.level, variable, n_idx, m_idx), box_radius);
        v.value += m.value;
        v.attained_at.push_back(m.at);
        v.certificates.push_back(m.certificate);
    }
    v.value *= spec.power;
    v.certified = true;
    return v;
}

ExtensionReport check_extension(const SectionSpec& spec, const std::vector<std::pair<Integer, Integer>>& charts,
                                int box_radius) {
    spec.validate();
    ExtensionReport report;
    report.p = spec.scale();
    if (!spec.level_divisible_8p2()) {
        const Integer m = 8 * report.p * report.p;
        throw PreconditionError("level condition n = 0 mod 8p^2 fails: " + to_string(spec.level) + " mod " +
                                to_string(m) + " = " + to_string(Integer(spec.level % m)));
    }
    if (charts.empty()) {
        throw PreconditionError("no charts to check");
    }
    for (const auto& [n_idx, m_idx] : charts) {
        if (n_idx != 0) {
            throw PreconditionError("extension is certified on the charts nu(0, m) only; got nu(" + to_string(n_idx) +
                                    ", " + to_string(m_idx) + ")");
        }
    }
    report.passed = true;
    for (const auto& [n_idx, m_idx] : charts) {
        ChartExtension c{n_idx, m_idx, 0};
        Rational frac_total = 0;
        bool constant_fracs = true;
        for (const auto& ch : spec.factors) {
            const auto f = exponent_polynomial(ch, spec.level, "T2", n_idx, m_idx);
            std::set<Rational> fracs;
            for_each_in_box(ch.size(), box_radius, [&](const IntVector& q) { fracs.insert(frac(f(q))); });
            constant_fracs = constant_fracs && fracs.size() == 1;
            frac_total += *fracs.begin();
        }
        c.integral = constant_fracs && is_integer(frac_total);
        try {
            c.min_exponent = valuation(spec, "T2", box_radius, n_idx, m_idx).value;
            c.certified = true;
        } catch (const InconclusiveError&) {
            c.certified = false;
        }
        c.nonnegative = c.certified && c.min_exponent >= 0;
        c.passed = c.certified && c.nonnegative && c.integral;
        report.passed = report.passed && c.passed;
        report.charts.push_back(c);
    }
    return report;
}

Rational form_order(int weight, const Rational& vanishing_order) {
    if (weight <= 0) {
        throw PreconditionError("weight must be positive");
    }
    if (vanishing_order < 0) {
        throw PreconditionError("vanishing order must be non-negative");
    }
    return vanishing_order / weight;
}

} // namespace nefcone::theta
