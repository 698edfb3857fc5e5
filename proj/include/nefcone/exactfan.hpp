#pragma once

// Symmetric matrices, simplicial rational cones, the standard second Voronoi
// cones for genus 2 and 3, the GL(g,Z) action and the lattice projections
// rho: N6 -> N5 and lambda: Sym3 -> Sym2.
//
// Coordinate conventions (used by every module):
//   * Sym_g coordinates are the upper-triangular entries in row order,
//     (m11, m12, m22) for g = 2 and (m11, m12, m13, m22, m23, m33) for g = 3.
//     These pair with the torus coordinates t_ij in the same order.
//   * N6 coordinates are taken w.r.t. the generators (a1, a2, a3, b1, b2, b3)
//     of the standard cone sigma3; N5 = N6 / Z a3 uses (a1, a2, b1, b2, b3).
//   * N3 = Sym2(Z), with cone sigma2 spanned by (c1, c2, c3).

#include "nefcone/matrix.hpp"
#include "nefcone/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace nefcone::fan {

class SymMatrix {
  public:
    SymMatrix() = default;
    /// Throws PreconditionError unless m is square and symmetric.
    explicit SymMatrix(RatMatrix m);
    explicit SymMatrix(const IntMatrix& m);
    SymMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static SymMatrix zero(std::size_t g);
    /// Inverse of coords(): rebuilds the matrix from upper-triangular entries.
    static SymMatrix from_coords(std::size_t g, const RatVector& coords);

    std::size_t dim() const { return m_.rows(); }
    const Rational& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
    const RatMatrix& matrix() const { return m_; }

    RatVector coords() const;
    bool is_integral() const;

    friend SymMatrix operator+(const SymMatrix& a, const SymMatrix& b);
    friend SymMatrix operator*(const Rational& s, const SymMatrix& a);
    friend bool operator==(const SymMatrix& a, const SymMatrix& b) { return a.m_ == b.m_; }

  private:
    RatMatrix m_;
};

std::size_t sym_coord_count(std::size_t g);

/// Rational polyhedral cone given by primitive integer generators in an
/// ambient lattice Z^r. When the ambient lattice is Sym_g(Z) the cone also
/// records g so that SymMatrix arguments can be converted.
class Cone {
  public:
    Cone(std::string label, std::size_t ambient_rank, std::vector<IntVector> generators,
         std::vector<std::string> dual_vars = {}, std::size_t sym_genus = 0);

    static Cone from_sym(std::string label, const std::vector<SymMatrix>& generators,
                         std::vector<std::string> dual_vars = {});

    const std::string& label() const { return label_; }
    std::size_t ambient_rank() const { return ambient_rank_; }
    const std::vector<IntVector>& generators() const { return generators_; }
    /// Names of the affine chart coordinates dual to the generators, if any.
    const std::vector<std::string>& dual_vars() const { return dual_vars_; }
    /// Genus g when the ambient lattice is Sym_g(Z), otherwise 0.
    std::size_t sym_genus() const { return sym_genus_; }

    std::vector<SymMatrix> sym_generators() const;
    bool is_simplicial() const;
    /// Generators sorted lexicographically; equal keys mean equal cones.
    std::vector<IntVector> normalized_key() const;

    friend bool operator==(const Cone& a, const Cone& b) { return a.normalized_key() == b.normalized_key(); }

  private:
    std::string label_;
    std::size_t ambient_rank_;
    std::vector<IntVector> generators_;
    std::vector<std::string> dual_vars_;
    std::size_t sym_genus_;
};

/// Cone spanned by arbitrary nonzero vectors: zero vectors are dropped, the
/// rest are made primitive and deduplicated.
Cone cone_hull(std::string label, std::size_t ambient_rank, const std::vector<RatVector>& vectors,
               std::size_t sym_genus = 0);
Cone cone_hull(std::string label, const std::vector<SymMatrix>& vectors);

IntVector primitive(const RatVector& v);

/// Integer linear map Z^source -> Z^target, applied as matrix * column.
struct LatticeMap {
    std::size_t source_rank = 0;
    std::size_t target_rank = 0;
    IntMatrix matrix;

    LatticeMap() = default;
    explicit LatticeMap(IntMatrix m);

    IntVector apply(const IntVector& v) const;
    RatVector apply(const RatVector& v) const;
    /// (*this) after first.
    LatticeMap after(const LatticeMap& first) const;
    friend bool operator==(const LatticeMap& a, const LatticeMap& b) { return a.matrix == b.matrix; }
};

Cone standard_cone(int g);

SymMatrix gl_conjugate(const SymMatrix& m, const IntMatrix& M);
Cone gl_conjugate(const Cone& c, const IntMatrix& M, std::string label);

struct Containment {
    bool contained = false;
    /// Non-negative coefficients w.r.t. the cone generators when contained.
    RatVector coefficients;
};

/// Exact membership test for simplicial cones; throws PreconditionError for
/// non-simplicial input.
Containment cone_contains(const Cone& c, const RatVector& v);
Containment cone_contains(const Cone& c, const SymMatrix& m);

/// The generators of sigma3 as columns: Sym3 coordinates of N6 basis vectors.
LatticeMap n6_to_sym();
LatticeMap sym_to_n6();
/// N6 -> N5, dropping the a3 coordinate.
LatticeMap rho();
/// Sym3 coordinates -> Sym2 coordinates (upper-left 2x2 block).
LatticeMap lambda_on_sym();
/// The map N5 -> Sym2 induced by lambda (well defined since lambda(a3) = 0).
LatticeMap lambda_on_n5();

IntVector project_rho(const IntVector& n6_point);
SymMatrix project_lambda(const SymMatrix& m);

/// rho(sigma3) in N5 coordinates, charted by (T1, T2, T4, T5, T6).
Cone sigma3_prime();
/// rho(t(nu) sigma3 nu) for nu = nu(n_idx, m_idx), in N5 coordinates.
Cone sigma3_prime_shifted(const Integer& n_idx, const Integer& m_idx);

/// nu(n, m) = ((1,0,m),(0,1,n),(0,0,1)).
IntMatrix nu_matrix(const Integer& n_idx, const Integer& m_idx);

/// Generating set of GL(g,Z) used for orbit samples, in this order:
/// elementary transvections I + E_ij (i != j) and their inverses, the
/// adjacent transpositions, and the sign changes of single basis vectors.
std::vector<IntMatrix> gl_generators(int g);

/// All distinct cones t(M) sigma_g M with M a product of at most
/// word_length generators, sorted by normalized key.
std::vector<Cone> fan_orbit_sample(int g, int word_length);

} // namespace nefcone::fan
