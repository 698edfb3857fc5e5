#include "nefcone/charts.hpp"

#include "nefcone/errors.hpp"

#include <cmath>
#include <numbers>
#include <utility>

namespace nefcone::charts {

MonomialMap::MonomialMap(std::vector<std::string> source, std::vector<std::string> target, IntMatrix e)
    : source_vars(std::move(source)), target_vars(std::move(target)), exponents(std::move(e)) {
    if (exponents.rows() != target_vars.size() || exponents.cols() != source_vars.size()) {
        throw DimensionError("monomial map: exponent matrix is " + std::to_string(exponents.rows()) + "x" +
                             std::to_string(exponents.cols()) + " but there are " + std::to_string(target_vars.size()) +
                             " targets and " + std::to_string(source_vars.size()) + " sources");
    }
}

bool MonomialMap::is_unimodular() const {
    if (exponents.rows() != exponents.cols()) {
        return false;
    }
    const Integer det = determinant(exponents);
    return det == 1 || det == -1;
}

namespace {

Complex int_power(Complex z, const Integer& e) {
    if (e == 0) {
        return {1.0, 0.0};
    }
    if (e < 0) {
        if (z == Complex(0.0, 0.0)) {
            throw PreconditionError("negative power of a zero coordinate");
        }
        return 1.0 / int_power(z, -e);
    }
    Complex result(1.0, 0.0);
    Integer k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t()) != 0) {
            result *= z;
        }
        z *= z;
        k >>= 1;
    }
    return result;
}

std::vector<std::string> default_vars(const std::string& prefix, std::size_t count) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(prefix + std::to_string(i + 1));
    }
    return out;
}

} // namespace

std::vector<Complex> MonomialMap::evaluate(const std::vector<Complex>& source_values) const {
    if (source_values.size() != source_vars.size()) {
        throw DimensionError("monomial map evaluated at a point with the wrong number of coordinates");
    }
    std::vector<Complex> out(target_vars.size(), Complex(1.0, 0.0));
    for (std::size_t i = 0; i < target_vars.size(); ++i) {
        for (std::size_t j = 0; j < source_vars.size(); ++j) {
            out[i] *= int_power(source_values[j], exponents(i, j));
        }
    }
    return out;
}

IntVector MonomialMap::row(const std::string& target_var) const {
    for (std::size_t i = 0; i < target_vars.size(); ++i) {
        if (target_vars[i] == target_var) {
            return exponents.row(i);
        }
    }
    throw PreconditionError("monomial map has no target variable " + target_var);
}

std::vector<std::string> t_vars(int g) {
    if (g == 2) {
        return {"t11", "t12", "t22"};
    }
    if (g == 3) {
        return {"t11", "t12", "t13", "t22", "t23", "t33"};
    }
    throw PreconditionError("torus coordinates only defined for g = 2 or 3");
}

MonomialMap chart_embedding(int g) {
    if (g == 3) {
        //                  t11 t12 t13 t22 t23 t33
        return MonomialMap(t_vars(3), {"T1", "T2", "T3", "T4", "T5", "T6"},
                           IntMatrix{{1, 1, 1, 0, 0, 0},      // T1 = t11 t13 t12
                                     {0, 1, 0, 1, 1, 0},      // T2 = t22 t23 t12
                                     {0, 0, 1, 0, 1, 1},      // T3 = t33 t13 t23
                                     {0, 0, 0, 0, -1, 0},     // T4 = 1/t23
                                     {0, 0, -1, 0, 0, 0},     // T5 = 1/t13
                                     {0, -1, 0, 0, 0, 0}});   // T6 = 1/t12
    }
    if (g == 2) {
        return MonomialMap(t_vars(2), {"S1", "S2", "S3"},
                           IntMatrix{{1, 1, 0},     // S1 = t11 t12
                                     {0, 1, 1},     // S2 = t22 t12
                                     {0, -1, 0}});  // S3 = 1/t12
    }
    throw PreconditionError("chart embedding only defined for g = 2 or 3, got " + std::to_string(g));
}

MonomialMap invert(const MonomialMap& map) {
    if (!map.is_unimodular()) {
        throw PreconditionError("monomial map is not invertible: exponent matrix is not unimodular");
    }
    return MonomialMap(map.target_vars, map.source_vars, unimodular_inverse(map.exponents));
}

MonomialMap compose(const MonomialMap& first, const MonomialMap& second) {
    if (second.source_vars != first.target_vars) {
        throw DimensionError("compose: variables of the intermediate torus do not match");
    }
    return MonomialMap(first.source_vars, second.target_vars, second.exponents * first.exponents);
}

MonomialMap boundary_projection() {
    return MonomialMap({"T1", "T2", "T4", "T5", "T6"}, {"S1", "S2", "S3"},
                       IntMatrix{{1, 0, 0, 1, 0},    // S1 = T1 T5
                                 {0, 1, 1, 0, 0},    // S2 = T2 T4
                                 {0, 0, 0, 0, 1}});  // S3 = T6
}

MonomialMap dual_of_lattice_map(const fan::LatticeMap& f, const fan::Cone& source_cone, const fan::Cone& target_cone) {
    if (f.source_rank != source_cone.ambient_rank() || f.target_rank != target_cone.ambient_rank()) {
        throw DimensionError("dual_of_lattice_map: lattice map does not match the cones' ambient lattices");
    }
    const auto& targets = target_cone.generators();
    std::vector<RatVector> cols;
    for (const auto& gen : targets) {
        cols.push_back(to_rational(gen));
    }
    const RatMatrix basis = from_columns(cols, target_cone.ambient_rank());
    const auto& sources = source_cone.generators();
    IntMatrix e(targets.size(), sources.size());
    for (std::size_t j = 0; j < sources.size(); ++j) {
        const auto image = f.apply(to_rational(sources[j]));
        const auto coeffs = solve_full_column_rank(basis, image);
        if (!coeffs) {
            throw PreconditionError("image of generator " + std::to_string(j + 1) + " of " + source_cone.label() +
                                    " is not in the span of " + target_cone.label());
        }
        for (std::size_t i = 0; i < targets.size(); ++i) {
            const Rational& c = (*coeffs)[i];
            if (!is_integer(c) || c < 0) {
                throw PreconditionError("image of generator " + std::to_string(j + 1) + " of " + source_cone.label() +
                                        " is not a non-negative integer combination of the generators of " +
                                        target_cone.label());
            }
            e(i, j) = c.get_num();
        }
    }
    auto source_vars = source_cone.dual_vars().empty() ? default_vars("x", sources.size()) : source_cone.dual_vars();
    auto target_vars = target_cone.dual_vars().empty() ? default_vars("y", targets.size()) : target_cone.dual_vars();
    return MonomialMap(std::move(source_vars), std::move(target_vars), std::move(e));
}

fan::LatticeMap nu_chart(const Integer& n_idx, const Integer& m_idx) {
    const IntMatrix nu = fan::nu_matrix(n_idx, m_idx);
    IntMatrix m(6, 6);
    for (std::size_t k = 0; k < 6; ++k) {
        RatVector e(6, 0);
        e[k] = 1;
        const auto image = fan::gl_conjugate(fan::SymMatrix::from_coords(3, e), nu).coords();
        for (std::size_t i = 0; i < 6; ++i) {
            m(i, k) = to_integer(image[i]);
        }
    }
    return fan::LatticeMap(std::move(m));
}

BlockPeriodPoint BlockPeriodPoint::split(const ComplexMatrix& tau) {
    if (tau.rows() != tau.cols() || tau.rows() < 2) {
        throw DimensionError("block split needs a square period matrix of size >= 2");
    }
    const Eigen::Index h = tau.rows() - 1;
    return {tau.topLeftCorner(h, h), tau.block(h, 0, 1, h), tau(h, h)};
}

ComplexMatrix BlockPeriodPoint::assemble() const {
    const Eigen::Index h = tau1.rows();
    if (tau1.cols() != h || tau2.cols() != h) {
        throw DimensionError("inconsistent block sizes in period point");
    }
    ComplexMatrix tau(h + 1, h + 1);
    tau.topLeftCorner(h, h) = tau1;
    tau.block(h, 0, 1, h) = tau2;
    tau.block(0, h, h, 1) = tau2.transpose();
    tau(h, h) = tau3;
    return tau;
}

namespace {

ComplexMatrix to_complex(const IntMatrix& m) {
    ComplexMatrix out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j).get_d();
        }
    }
    return out;
}

ComplexRow to_complex_row(const IntVector& v) {
    ComplexRow out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
        out(static_cast<Eigen::Index>(i)) = v[i].get_d();
    }
    return out;
}

void require_square(const IntMatrix& m, std::size_t h, const char* name) {
    if (m.rows() != h || m.cols() != h) {
        throw DimensionError(std::string("g1 block ") + name + " must be " + std::to_string(h) + "x" + std::to_string(h));
    }
}

IntMatrix g1_block_matrix(const G1Payload& p) {
    const std::size_t h = p.a.rows();
    IntMatrix m(2 * h, 2 * h);
    for (std::size_t i = 0; i < h; ++i) {
        for (std::size_t j = 0; j < h; ++j) {
            m(i, j) = p.a(i, j);
            m(i, h + j) = p.b(i, j);
            m(h + i, j) = p.c(i, j);
            m(h + i, h + j) = p.d(i, j);
        }
    }
    return m;
}

} // namespace

void ParabolicElement::validate(int g) const {
    if (g < 2) {
        throw PreconditionError("parabolic elements need g >= 2");
    }
    const auto h = static_cast<std::size_t>(g - 1);
    std::visit(
        [h](const auto& p) {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, G1Payload>) {
                require_square(p.a, h, "A");
                require_square(p.b, h, "B");
                require_square(p.c, h, "C");
                require_square(p.d, h, "D");
                if (!is_symplectic(g1_block_matrix(p))) {
                    throw PreconditionError("g1 payload (A B; C D) is not symplectic");
                }
            } else if constexpr (std::is_same_v<P, G2Payload>) {
                if (p.sign != 1 && p.sign != -1) {
                    throw PreconditionError("g2 sign must be +1 or -1");
                }
            } else if constexpr (std::is_same_v<P, G3Payload>) {
                if (p.m.size() != h || p.n.size() != h) {
                    throw DimensionError("g3 vectors M, N must have length g-1");
                }
            }
        },
        payload);
}

IntMatrix ParabolicElement::to_symplectic(int g) const {
    validate(g);
    const auto h = static_cast<std::size_t>(g - 1);
    const std::size_t last = h;          // index of the "1" row in each half
    const auto gg = static_cast<std::size_t>(g);
    IntMatrix m = IntMatrix::identity(2 * gg);
    std::visit(
        [&](const auto& p) {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, G1Payload>) {
                for (std::size_t i = 0; i < h; ++i) {
                    for (std::size_t j = 0; j < h; ++j) {
                        m(i, j) = p.a(i, j);
                        m(i, gg + j) = p.b(i, j);
                        m(gg + i, j) = p.c(i, j);
                        m(gg + i, gg + j) = p.d(i, j);
                    }
                }
            } else if constexpr (std::is_same_v<P, G2Payload>) {
                m(last, last) = p.sign;
                m(gg + last, gg + last) = p.sign;
            } else if constexpr (std::is_same_v<P, G3Payload>) {
                for (std::size_t i = 0; i < h; ++i) {
                    m(i, gg + last) = p.n[i];          // t(N)
                    m(last, i) = p.m[i];               // M
                    m(last, gg + i) = p.n[i];          // N
                    m(gg + i, gg + last) = -p.m[i];    // -t(M)
                }
            } else {
                m(last, gg + last) = p.s;
            }
        },
        payload);
    return m;
}

ParabolicElement make_g1(IntMatrix a, IntMatrix b, IntMatrix c, IntMatrix d) {
    return {G1Payload{std::move(a), std::move(b), std::move(c), std::move(d)}};
}

ParabolicElement make_g2(int sign) {
    return {G2Payload{sign}};
}

ParabolicElement make_g3(IntVector m, IntVector n) {
    return {G3Payload{std::move(m), std::move(n)}};
}

ParabolicElement make_g4(Integer s) {
    return {G4Payload{std::move(s)}};
}

BlockPeriodPoint parabolic_act(const ParabolicElement& el, const BlockPeriodPoint& p) {
    const int g = p.genus();
    el.validate(g);
    require_siegel(p.assemble());
    BlockPeriodPoint out = p;
    std::visit(
        [&](const auto& pl) {
            using P = std::decay_t<decltype(pl)>;
            if constexpr (std::is_same_v<P, G1Payload>) {
                const ComplexMatrix a = to_complex(pl.a), b = to_complex(pl.b), c = to_complex(pl.c), d = to_complex(pl.d);
                const ComplexMatrix k = c * p.tau1 + d;
                Eigen::FullPivLU<ComplexMatrix> lu(k);
                if (!lu.isInvertible()) {
                    throw PreconditionError("C tau1 + D is singular");
                }
                const ComplexMatrix k_inv = lu.inverse();
                out.tau1 = (a * p.tau1 + b) * k_inv;
                out.tau1 = 0.5 * (out.tau1 + out.tau1.transpose()).eval();
                out.tau2 = p.tau2 * k_inv;
                out.tau3 = p.tau3 - (p.tau2 * k_inv * c * p.tau2.transpose())(0, 0);
            } else if constexpr (std::is_same_v<P, G2Payload>) {
                out.tau2 = static_cast<double>(pl.sign) * p.tau2;
            } else if constexpr (std::is_same_v<P, G3Payload>) {
                const ComplexRow m = to_complex_row(pl.m), n = to_complex_row(pl.n);
                out.tau2 = p.tau2 + m * p.tau1 + n;
                const Complex m_tau2 = (m * p.tau2.transpose())(0, 0);
                out.tau3 = p.tau3 + (m * p.tau1 * m.transpose())(0, 0) + m_tau2 + m_tau2 + (n * m.transpose())(0, 0);
            } else {
                out.tau3 = p.tau3 + pl.s.get_d();
            }
        },
        el.payload);
    if (!in_siegel_space(out.assemble())) {
        throw Error("parabolic action left Siegel space (numerical breakdown)");
    }
    return out;
}

Complex boundary_coordinate(const BlockPeriodPoint& p, const Integer& level) {
    if (level < 1) {
        throw PreconditionError("level must be positive");
    }
    return std::exp(Complex(0.0, 2.0 * std::numbers::pi) * p.tau3 / level.get_d());
}

} // namespace nefcone::charts
