#include "nefcone/exactfan.hpp"

#include "nefcone/errors.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

namespace nefcone::fan {

namespace {

void require_symmetric(const RatMatrix& m) {
    if (m.rows() != m.cols()) {
        throw PreconditionError("symmetric matrix must be square");
    }
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = i + 1; j < m.cols(); ++j) {
            if (m(i, j) != m(j, i)) {
                throw PreconditionError("matrix is not symmetric at (" + std::to_string(i + 1) + "," +
                                        std::to_string(j + 1) + ")");
            }
        }
    }
}

IntVector to_int_vector(const RatVector& v) {
    IntVector out;
    out.reserve(v.size());
    for (const auto& x : v) {
        out.push_back(to_integer(x));
    }
    return out;
}

} // namespace

SymMatrix::SymMatrix(RatMatrix m) : m_(std::move(m)) {
    require_symmetric(m_);
}

SymMatrix::SymMatrix(const IntMatrix& m) : SymMatrix(to_rational(m)) {}

SymMatrix::SymMatrix(std::initializer_list<std::initializer_list<long>> rows) : SymMatrix(RatMatrix(rows)) {}

SymMatrix SymMatrix::zero(std::size_t g) {
    return SymMatrix(RatMatrix(g, g));
}

std::size_t sym_coord_count(std::size_t g) {
    return g * (g + 1) / 2;
}

SymMatrix SymMatrix::from_coords(std::size_t g, const RatVector& coords) {
    if (coords.size() != sym_coord_count(g)) {
        throw DimensionError("expected " + std::to_string(sym_coord_count(g)) + " coordinates for Sym" +
                             std::to_string(g) + ", got " + std::to_string(coords.size()));
    }
    RatMatrix m(g, g);
    std::size_t k = 0;
    for (std::size_t i = 0; i < g; ++i) {
        for (std::size_t j = i; j < g; ++j) {
            m(i, j) = coords[k];
            m(j, i) = coords[k];
            ++k;
        }
    }
    return SymMatrix(std::move(m));
}

RatVector SymMatrix::coords() const {
    RatVector out;
    out.reserve(sym_coord_count(dim()));
    for (std::size_t i = 0; i < dim(); ++i) {
        for (std::size_t j = i; j < dim(); ++j) {
            out.push_back(m_(i, j));
        }
    }
    return out;
}

bool SymMatrix::is_integral() const {
    for (const auto& x : coords()) {
        if (!is_integer(x)) {
            return false;
        }
    }
    return true;
}

SymMatrix operator+(const SymMatrix& a, const SymMatrix& b) {
    if (a.dim() != b.dim()) {
        throw DimensionError("adding symmetric matrices of different size");
    }
    RatMatrix m(a.dim(), a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) {
            m(i, j) = a(i, j) + b(i, j);
        }
    }
    return SymMatrix(std::move(m));
}

SymMatrix operator*(const Rational& s, const SymMatrix& a) {
    RatMatrix m(a.dim(), a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) {
            m(i, j) = s * a(i, j);
        }
    }
    return SymMatrix(std::move(m));
}

IntVector primitive(const RatVector& v) {
    Integer den = 1;
    for (const auto& x : v) {
        den = lcm(den, x.get_den());
    }
    IntVector scaled;
    scaled.reserve(v.size());
    for (const auto& x : v) {
        scaled.push_back(to_integer(x * den));
    }
    const Integer g = content(scaled);
    if (g == 0) {
        throw PreconditionError("the zero vector has no primitive representative");
    }
    for (auto& x : scaled) {
        x /= g;
    }
    return scaled;
}

Cone::Cone(std::string label, std::size_t ambient_rank, std::vector<IntVector> generators,
           std::vector<std::string> dual_vars, std::size_t sym_genus)
    : label_(std::move(label)),
      ambient_rank_(ambient_rank),
      generators_(std::move(generators)),
      dual_vars_(std::move(dual_vars)),
      sym_genus_(sym_genus) {
    if (sym_genus_ != 0 && sym_coord_count(sym_genus_) != ambient_rank_) {
        throw DimensionError("ambient rank does not match Sym" + std::to_string(sym_genus_));
    }
    for (std::size_t k = 0; k < generators_.size(); ++k) {
        const auto& gen = generators_[k];
        if (gen.size() != ambient_rank_) {
            throw DimensionError("generator " + std::to_string(k + 1) + " of cone " + label_ + " has wrong length");
        }
        if (content(gen) != 1) {
            throw PreconditionError("generator " + std::to_string(k + 1) + " of cone " + label_ +
                                    " is zero or not primitive");
        }
    }
    if (!dual_vars_.empty() && dual_vars_.size() != generators_.size()) {
        throw DimensionError("cone " + label_ + ": one dual variable per generator required");
    }
}

Cone Cone::from_sym(std::string label, const std::vector<SymMatrix>& generators, std::vector<std::string> dual_vars) {
    if (generators.empty()) {
        throw PreconditionError("from_sym needs at least one generator to fix the genus");
    }
    const std::size_t g = generators.front().dim();
    std::vector<IntVector> gens;
    for (const auto& m : generators) {
        if (m.dim() != g) {
            throw DimensionError("cone generators of different sizes");
        }
        gens.push_back(to_int_vector(m.coords()));
    }
    return Cone(std::move(label), sym_coord_count(g), std::move(gens), std::move(dual_vars), g);
}

std::vector<SymMatrix> Cone::sym_generators() const {
    if (sym_genus_ == 0) {
        throw PreconditionError("cone " + label_ + " does not live in a space of symmetric matrices");
    }
    std::vector<SymMatrix> out;
    for (const auto& gen : generators_) {
        out.push_back(SymMatrix::from_coords(sym_genus_, to_rational(gen)));
    }
    return out;
}

bool Cone::is_simplicial() const {
    if (generators_.empty()) {
        return true;
    }
    std::vector<RatVector> cols;
    for (const auto& gen : generators_) {
        cols.push_back(to_rational(gen));
    }
    return rank(from_columns(cols, ambient_rank_)) == generators_.size();
}

std::vector<IntVector> Cone::normalized_key() const {
    auto key = generators_;
    std::sort(key.begin(), key.end());
    return key;
}

Cone cone_hull(std::string label, std::size_t ambient_rank, const std::vector<RatVector>& vectors,
               std::size_t sym_genus) {
    std::vector<IntVector> gens;
    for (const auto& v : vectors) {
        if (v.size() != ambient_rank) {
            throw DimensionError("cone_hull: vector of wrong length");
        }
        if (std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; })) {
            continue;
        }
        auto p = primitive(v);
        if (std::find(gens.begin(), gens.end(), p) == gens.end()) {
            gens.push_back(std::move(p));
        }
    }
    return Cone(std::move(label), ambient_rank, std::move(gens), {}, sym_genus);
}

Cone cone_hull(std::string label, const std::vector<SymMatrix>& vectors) {
    if (vectors.empty()) {
        throw PreconditionError("cone_hull needs at least one matrix to fix the genus");
    }
    const std::size_t g = vectors.front().dim();
    std::vector<RatVector> coords;
    for (const auto& m : vectors) {
        coords.push_back(m.coords());
    }
    return cone_hull(std::move(label), sym_coord_count(g), coords, g);
}

LatticeMap::LatticeMap(IntMatrix m) : source_rank(m.cols()), target_rank(m.rows()), matrix(std::move(m)) {}

IntVector LatticeMap::apply(const IntVector& v) const {
    return matrix * v;
}

RatVector LatticeMap::apply(const RatVector& v) const {
    return to_rational(matrix) * v;
}

LatticeMap LatticeMap::after(const LatticeMap& first) const {
    return LatticeMap(matrix * first.matrix);
}

Cone standard_cone(int g) {
    if (g == 2) {
        return Cone::from_sym("sigma2",
                              {
                                  SymMatrix{{1, 0}, {0, 0}},
                                  SymMatrix{{0, 0}, {0, 1}},
                                  SymMatrix{{1, -1}, {-1, 1}},
                              },
                              {"S1", "S2", "S3"});
    }
    if (g == 3) {
        return Cone::from_sym("sigma3",
                              {
                                  SymMatrix{{1, 0, 0}, {0, 0, 0}, {0, 0, 0}},
                                  SymMatrix{{0, 0, 0}, {0, 1, 0}, {0, 0, 0}},
                                  SymMatrix{{0, 0, 0}, {0, 0, 0}, {0, 0, 1}},
                                  SymMatrix{{0, 0, 0}, {0, 1, -1}, {0, -1, 1}},
                                  SymMatrix{{1, 0, -1}, {0, 0, 0}, {-1, 0, 1}},
                                  SymMatrix{{1, -1, 0}, {-1, 1, 0}, {0, 0, 0}},
                              },
                              {"T1", "T2", "T3", "T4", "T5", "T6"});
    }
    throw PreconditionError("standard cone only defined for g = 2 or 3, got " + std::to_string(g));
}

SymMatrix gl_conjugate(const SymMatrix& m, const IntMatrix& M) {
    if (M.rows() != m.dim() || M.cols() != m.dim()) {
        throw DimensionError("gl_conjugate: " + std::to_string(M.rows()) + "x" + std::to_string(M.cols()) +
                             " matrix acting on Sym" + std::to_string(m.dim()));
    }
    const RatMatrix Mq = to_rational(M);
    return SymMatrix(Mq.transpose() * m.matrix() * Mq);
}

Cone gl_conjugate(const Cone& c, const IntMatrix& M, std::string label) {
    std::vector<RatVector> images;
    for (const auto& gen : c.sym_generators()) {
        images.push_back(gl_conjugate(gen, M).coords());
    }
    std::vector<IntVector> gens;
    for (const auto& v : images) {
        gens.push_back(primitive(v));
    }
    return Cone(std::move(label), c.ambient_rank(), std::move(gens), c.dual_vars(), c.sym_genus());
}

Containment cone_contains(const Cone& c, const RatVector& v) {
    if (v.size() != c.ambient_rank()) {
        throw DimensionError("cone_contains: point has " + std::to_string(v.size()) + " coordinates, cone ambient rank " +
                             std::to_string(c.ambient_rank()));
    }
    if (c.generators().empty()) {
        const bool zero = std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
        return {zero, {}};
    }
    std::vector<RatVector> cols;
    for (const auto& gen : c.generators()) {
        cols.push_back(to_rational(gen));
    }
    const RatMatrix a = from_columns(cols, c.ambient_rank());
    if (rank(a) != cols.size()) {
        throw PreconditionError("cone " + c.label() + " is not simplicial");
    }
    auto x = solve_full_column_rank(a, v);
    if (!x) {
        return {false, {}};
    }
    for (const auto& coeff : *x) {
        if (coeff < 0) {
            return {false, {}};
        }
    }
    return {true, std::move(*x)};
}

Containment cone_contains(const Cone& c, const SymMatrix& m) {
    if (c.sym_genus() != m.dim()) {
        throw DimensionError("cone_contains: Sym" + std::to_string(m.dim()) + " point tested against cone " + c.label());
    }
    return cone_contains(c, m.coords());
}

LatticeMap n6_to_sym() {
    const Cone sigma3 = standard_cone(3);
    IntMatrix m(6, 6);
    for (std::size_t j = 0; j < 6; ++j) {
        for (std::size_t i = 0; i < 6; ++i) {
            m(i, j) = sigma3.generators()[j][i];
        }
    }
    return LatticeMap(std::move(m));
}

LatticeMap sym_to_n6() {
    return LatticeMap(unimodular_inverse(n6_to_sym().matrix));
}

LatticeMap rho() {
    IntMatrix m(5, 6);
    const std::size_t kept[5] = {0, 1, 3, 4, 5};
    for (std::size_t i = 0; i < 5; ++i) {
        m(i, kept[i]) = 1;
    }
    return LatticeMap(std::move(m));
}

LatticeMap lambda_on_sym() {
    // (m11, m12, m13, m22, m23, m33) -> (m11, m12, m22)
    IntMatrix m(3, 6);
    m(0, 0) = 1;
    m(1, 1) = 1;
    m(2, 3) = 1;
    return LatticeMap(std::move(m));
}

LatticeMap lambda_on_n5() {
    IntMatrix lift(6, 5);
    const std::size_t kept[5] = {0, 1, 3, 4, 5};
    for (std::size_t j = 0; j < 5; ++j) {
        lift(kept[j], j) = 1;
    }
    return lambda_on_sym().after(n6_to_sym()).after(LatticeMap(std::move(lift)));
}

IntVector project_rho(const IntVector& n6_point) {
    if (n6_point.size() != 6) {
        throw DimensionError("project_rho expects an N6 point with 6 coordinates");
    }
    return rho().apply(n6_point);
}

SymMatrix project_lambda(const SymMatrix& m) {
    if (m.dim() != 3) {
        throw DimensionError("project_lambda expects a 3x3 symmetric matrix");
    }
    return SymMatrix::from_coords(2, lambda_on_sym().apply(m.coords()));
}

Cone sigma3_prime() {
    std::vector<IntVector> gens;
    for (std::size_t k = 0; k < 5; ++k) {
        IntVector e(5, 0);
        e[k] = 1;
        gens.push_back(std::move(e));
    }
    return Cone("sigma3'", 5, std::move(gens), {"T1", "T2", "T4", "T5", "T6"});
}

IntMatrix nu_matrix(const Integer& n_idx, const Integer& m_idx) {
    IntMatrix nu = IntMatrix::identity(3);
    nu(0, 2) = m_idx;
    nu(1, 2) = n_idx;
    return nu;
}

Cone sigma3_prime_shifted(const Integer& n_idx, const Integer& m_idx) {
    const IntMatrix nu = nu_matrix(n_idx, m_idx);
    const auto gens = standard_cone(3).sym_generators();
    const LatticeMap to_n5 = rho().after(sym_to_n6());
    std::vector<IntVector> shifted;
    for (std::size_t k = 0; k < gens.size(); ++k) {
        if (k == 2) {
            continue; // a3 spans the kernel of rho and is fixed by nu
        }
        shifted.push_back(primitive(to_n5.apply(gl_conjugate(gens[k], nu).coords())));
    }
    const std::string label = "sigma3'(" + n_idx.get_str() + "," + m_idx.get_str() + ")";
    return Cone(label, 5, std::move(shifted), {"T1", "T2", "T4", "T5", "T6"});
}

std::vector<IntMatrix> gl_generators(int g) {
    if (g < 1) {
        throw PreconditionError("gl_generators: g must be positive");
    }
    const auto n = static_cast<std::size_t>(g);
    std::vector<IntMatrix> out;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) {
                continue;
            }
            IntMatrix t = IntMatrix::identity(n);
            t(i, j) = 1;
            out.push_back(t);
            t(i, j) = -1;
            out.push_back(t);
        }
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        IntMatrix p(n, n);
        for (std::size_t k = 0; k < n; ++k) {
            p(k, k) = 1;
        }
        p(i, i) = 0;
        p(i + 1, i + 1) = 0;
        p(i, i + 1) = 1;
        p(i + 1, i) = 1;
        out.push_back(p);
    }
    for (std::size_t i = 0; i < n; ++i) {
        IntMatrix d = IntMatrix::identity(n);
        d(i, i) = -1;
        out.push_back(d);
    }
    return out;
}

std::vector<Cone> fan_orbit_sample(int g, int word_length) {
    if (word_length < 0) {
        throw PreconditionError("word_length must be non-negative");
    }
    const Cone base = standard_cone(g);
    const auto generators = gl_generators(g);
    std::map<std::vector<IntVector>, Cone> seen;
    seen.emplace(base.normalized_key(), base);
    std::vector<Cone> frontier{base};
    for (int depth = 0; depth < word_length; ++depth) {
        std::vector<Cone> next;
        for (const auto& cone : frontier) {
            for (std::size_t k = 0; k < generators.size(); ++k) {
                Cone image = gl_conjugate(cone, generators[k], cone.label() + "*g" + std::to_string(k));
                auto key = image.normalized_key();
                if (seen.count(key) == 0) {
                    seen.emplace(std::move(key), image);
                    next.push_back(std::move(image));
                }
            }
        }
        frontier = std::move(next);
    }
    std::vector<Cone> out;
    out.reserve(seen.size());
    for (auto& [key, cone] : seen) {
        out.push_back(cone);
    }
    return out;
}

} // namespace nefcone::fan
