#pragma once

// Divisor classes aL - bD on the Voronoi compactification A*_g(n), test curves
// with exact intersection ledgers, level pullbacks, the canonical class and the
// boundary restriction of a class.

#include "nefcone/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nefcone::divisor {

/// L: weight-1 modular forms. D: boundary. H1: Humbert surface (g = 2).
/// B: boundary of A*_{g-1}(n). Mbar: the bundle L - nN. N: normal bundle of the
/// boundary component. ThetaNull: the theta-null divisor.
enum class Symbol { L, D, H1, B, Mbar, N, ThetaNull };

std::string to_string(Symbol s);
Symbol parse_symbol(const std::string& name);
const std::vector<Symbol>& all_symbols();
bool is_aux(Symbol s);

class DivisorClass {
  public:
    /// Throws PreconditionError unless g >= 2 and n >= 1.
    DivisorClass(int g, Integer n);
    /// a L - b D.
    static DivisorClass from_ab(int g, const Integer& n, const Rational& a, const Rational& b);

    int genus() const { return g_; }
    const Integer& level() const { return n_; }

    Rational coefficient(Symbol s) const;
    DivisorClass& set(Symbol s, const Rational& value);
    /// Coefficient of L and the b of aL - bD.
    Rational a() const { return coefficient(Symbol::L); }
    Rational b() const { return -coefficient(Symbol::D); }
    /// True iff some auxiliary symbol has a nonzero coefficient.
    bool has_aux() const;
    /// Symbols with nonzero coefficient.
    std::vector<Symbol> support() const;

    friend DivisorClass operator+(const DivisorClass& x, const DivisorClass& y);
    friend DivisorClass operator*(const Rational& s, const DivisorClass& x);
    friend bool operator==(const DivisorClass& x, const DivisorClass& y);

  private:
    int g_;
    Integer n_;
    std::map<Symbol, Rational> coeffs_; // zero entries are erased
};

std::string to_string(const DivisorClass& c);

struct CurveClass {
    std::string name;
    Integer level;
    std::map<Symbol, Rational> intersections;
    std::string provenance;
};

/// X(1) x {A}: L.C = 1/12, D.C = 1 at level 1; at level n, normalized by the
/// degree of the covering, D.C = 1/n.
CurveClass modular_curve(const Integer& level = 1);
/// A curve in a fiber of the boundary with H-degree d: L.C = 0, D.C = -2d/n.
CurveClass fiber_curve(const Integer& h_degree, const Integer& level = 1);
/// Level-n ledger of a level-1 curve through the pullback of classes.
CurveClass curve_at_level(const CurveClass& level_one, const Integer& level);

/// Throws PreconditionError naming the first symbol missing from the ledger,
/// or if the levels differ.
Rational intersect(const DivisorClass& c, const CurveClass& curve);

struct NefInequalities {
    Rational b;
    Rational slope; // a - 12 b / n
    bool b_nonnegative = false;
    bool slope_nonnegative = false;
};

struct NefVerdict {
    bool is_nef = false;
    NefInequalities inequalities;
    std::optional<CurveClass> witness;
    Rational witness_value; // (aL - bD).C for the witness, negative
    /// "theorem" for g = 2, 3 and "conjectural" otherwise.
    std::string status;
};

/// Exact nef test of aL - bD. Throws PreconditionError if auxiliary symbols are present.
NefVerdict nef_test(const DivisorClass& c);

/// Pullback along A*_g(n2) -> A*_g(n1): L, H1, Mbar, ThetaNull are fixed and
/// D, N, B scale by n2/n1.
DivisorClass pullback_level(const DivisorClass& c, const Integer& n1, const Integer& n2);

/// K = (g + 1) L - D.
DivisorClass canonical_class(int g, const Integer& n);
/// Where the formula for K is known to hold.
std::string canonical_class_caveat(int g, const Integer& n);

/// (g + 1) - 2^{g-2} (2^g + 1) / (n 2^{2g-5}), the L-coefficient of K after
/// eliminating D through the theta-null divisor.
Rational general_type_coefficient(int g, const Integer& n);

struct GeneralTypeEntry {
    int g;
    Integer n0; // general type for n >= n0
    Rational coefficient;
    bool positive;
    /// Entries where the sign of the coefficient alone does not decide the case.
    bool exceptional;
    std::string note;
};

const std::vector<GeneralTypeEntry>& general_type_table();

/// g = 2 only: eliminates D using 10L = 2H1 + nD.
DivisorClass humbert_decompose(const DivisorClass& c);

struct BoundaryRestriction {
    /// (a - b/n) L - b B on A*_{g-1}(n).
    std::map<Symbol, Rational> pullback;
    /// Coefficient b/n of Mbar.
    Rational mbar_coefficient;
    /// a L - b B - b N.
    std::map<Symbol, Rational> intermediate;
};

/// Requires g in {2, 3} and no auxiliary symbols.
BoundaryRestriction restrict_to_boundary(const DivisorClass& h);
/// Substitutes Mbar = L - nN into pullback + mbar_coefficient Mbar.
std::map<Symbol, Rational> expand_restriction(const BoundaryRestriction& r, const Integer& n);

/// (a - 12b/n) - (b/n)(1 - 12/(12 + eps)); eps > 0.
Rational margin(const Rational& a, const Rational& b, const Integer& n, const Rational& eps);

struct EpsilonBound {
    enum class Kind { none, bounded, unbounded };
    Kind kind = Kind::none;
    Rational supremum; // meaningful for bounded
};

/// Supremum of the eps > 0 with positive margin; b must be >= 0.
EpsilonBound max_epsilon(const Rational& a, const Rational& b, const Integer& n);

/// First index with a non-positive value; the sum must be <= 0.
std::size_t pigeonhole_boundary(const std::vector<Rational>& intersections);

} // namespace nefcone::divisor
