#pragma once

// Monomial maps between torus charts of the toroidal compactification and
// the action of the parabolic subgroup P(l0) on block coordinates of H_g.
//
// Variable order is fixed library-wide:
//   t-coordinates  t11, t12, t13, t22, t23, t33   (g = 3)
//                  t11, t12, t22                  (g = 2)
//   chart of sigma3:  T1 .. T6 (dual to a1, a2, a3, b1, b2, b3)
//   chart of sigma3': T1, T2, T4, T5, T6
//   chart of sigma2:  S1, S2, S3 (dual to c1, c2, c3)

#include "nefcone/exactfan.hpp"
#include "nefcone/siegel.hpp"

#include <complex>
#include <string>
#include <variant>
#include <vector>

namespace nefcone::charts {

/// target_i = prod_j source_j ^ exponents(i, j)
struct MonomialMap {
    std::vector<std::string> source_vars;
    std::vector<std::string> target_vars;
    IntMatrix exponents;

    MonomialMap() = default;
    MonomialMap(std::vector<std::string> source, std::vector<std::string> target, IntMatrix exponents);

    bool is_unimodular() const;
    /// Requires every source value with a negative exponent to be nonzero.
    std::vector<Complex> evaluate(const std::vector<Complex>& source_values) const;
    /// Exponent vector of the target variable with the given name.
    IntVector row(const std::string& target_var) const;

    friend bool operator==(const MonomialMap& a, const MonomialMap& b) {
        return a.source_vars == b.source_vars && a.target_vars == b.target_vars && a.exponents == b.exponents;
    }
};

std::vector<std::string> t_vars(int g);

/// The inclusion of the big torus into the affine chart of sigma_g.
MonomialMap chart_embedding(int g);
/// Throws PreconditionError for a non-unimodular exponent matrix.
MonomialMap invert(const MonomialMap& map);
/// Apply first, then second (second.source_vars must match first.target_vars).
MonomialMap compose(const MonomialMap& first, const MonomialMap& second);

/// (T1, T2, T4, T5, T6) -> (T1 T5, T2 T4, T6), the map of charts
/// sigma3' -> sigma2 induced by lambda.
MonomialMap boundary_projection();

/// Toric morphism of affine charts induced by f, which must send each source
/// generator to a non-negative integer combination of target generators.
MonomialMap dual_of_lattice_map(const fan::LatticeMap& f, const fan::Cone& source_cone, const fan::Cone& target_cone);

/// gamma -> t(nu) gamma nu on Sym3 coordinates.
fan::LatticeMap nu_chart(const Integer& n_idx, const Integer& m_idx);

/// tau = ((tau1, t(tau2)), (tau2, tau3)) with tau1 of size g-1.
struct BlockPeriodPoint {
    ComplexMatrix tau1;
    ComplexRow tau2;
    Complex tau3;

    static BlockPeriodPoint split(const ComplexMatrix& tau);
    ComplexMatrix assemble() const;
    int genus() const { return static_cast<int>(tau1.rows()) + 1; }
};

enum class ParabolicKind { g1, g2, g3, g4 };

struct G1Payload {
    IntMatrix a, b, c, d; // (A B; C D) in Sp(2(g-1), Z)
};
struct G2Payload {
    int sign = 1;
};
struct G3Payload {
    IntVector m, n; // row vectors of length g-1
};
struct G4Payload {
    Integer s;
};

struct ParabolicElement {
    std::variant<G1Payload, G2Payload, G3Payload, G4Payload> payload;

    ParabolicKind kind() const { return static_cast<ParabolicKind>(payload.index()); }
    /// Exact validity check (symplectic block for g1, sign +-1 for g2, lengths).
    void validate(int g) const;
    /// The element as a 2g x 2g integral symplectic matrix.
    IntMatrix to_symplectic(int g) const;
};

ParabolicElement make_g1(IntMatrix a, IntMatrix b, IntMatrix c, IntMatrix d);
ParabolicElement make_g2(int sign);
ParabolicElement make_g3(IntVector m, IntVector n);
ParabolicElement make_g4(Integer s);

/// Block formulas for the action of P(l0); the block "*" is filled in by symmetry.
BlockPeriodPoint parabolic_act(const ParabolicElement& el, const BlockPeriodPoint& p);

/// t3 = exp(2 pi i tau3 / n), the coordinate transverse to the boundary.
Complex boundary_coordinate(const BlockPeriodPoint& p, const Integer& level);

} // namespace nefcone::charts
