#pragma once

// Boundary combinatorics of A*_g(n): Satake strata, cusp counts, the group
// order mu(n) = |PSL(2, Z/n)|, component inventories of the degenerate fibers
// over the boundary, and the intersection model on the Shioda modular surface.

#include "nefcone/matrix.hpp"
#include "nefcone/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nefcone::strata {

/// Level cap for exhaustive enumerations.
constexpr long kMaxEnumerationLevel = 30;
/// Cap on n^(2g) for cusp enumeration.
constexpr long kMaxCuspVectors = 20'000'000;

struct StratumDescriptor {
    int genus_of_stratum;
    int dimension; // k(k+1)/2
    std::optional<Integer> index_set_size;
    std::string kind; // "interior" or "boundary"
};

struct CuspCount {
    /// Primitive vectors of (Z/n)^{2g}.
    Integer primitive_vectors;
    /// Their classes modulo v ~ -v, i.e. lines.
    Integer classes;
    std::string convention;
};

/// Throws ResourceError when n^(2g) exceeds kMaxCuspVectors.
CuspCount enumerate_cusps(int g, long n);

/// g + 1 descriptors for k = g, g-1, ..., 0. The corank-one count is filled in
/// from enumerate_cusps when the enumeration is within bounds.
std::vector<StratumDescriptor> satake_strata(int g, long n);

/// |SL(2, Z/n)| by enumeration (1 <= n <= kMaxEnumerationLevel).
Integer sl2_order(long n);
/// mu(n) = |PSL(2, Z/n)|: |SL(2, Z/n)| / 2 for n >= 3 and |SL(2, Z/n)| for n <= 2.
Integer group_order_psl2(long n);

/// deg_{X(n)}(aL - bB) = mu(n) (a/12 - b/n).
Rational boundary_degree(const Rational& a, const Rational& b, long n);

enum class PointType { I, II, IIIa, IIIb };
enum class SurfaceKind { abelian, elliptic_ruled, p1xp1, p2, p2_blown_up, kummer };

std::string to_string(PointType t);
PointType parse_point_type(const std::string& s);
std::string to_string(SurfaceKind k);

struct FiberComponent {
    SurfaceKind kind;
    Integer count;
};

struct FiberDescriptor {
    PointType point_type;
    Integer level;
    std::vector<FiberComponent> components;
    /// False when the inventory is not known (types II and IIIa at n <= 2).
    bool specified = true;
    std::string note;

    Integer total() const;
};

FiberDescriptor fiber_type(PointType t, long n);

/// Intersection numbers on span{F, pull_LX, L_ij} in the Shioda modular surface S(n).
class ShiodaModel {
  public:
    explicit ShiodaModel(long n);

    long level() const { return n_; }
    const Integer& mu() const { return mu_; }
    /// deg L on X(n) = mu(n) / 12.
    Rational deg_L_on_X() const { return Rational(mu_) / 12; }

    /// "F", "pull_LX", then "L_i_j" for i, j in 0..n-1.
    const std::vector<std::string>& classes() const { return names_; }
    std::size_t index(const std::string& name) const;
    Rational pairing(const std::string& x, const std::string& y) const;
    const RatMatrix& table() const { return table_; }
    /// Bilinear pairing of two coefficient vectors in the order of classes().
    Rational pair(const RatVector& x, const RatVector& y) const;

  private:
    long n_;
    Integer mu_;
    std::vector<std::string> names_;
    RatMatrix table_;
};

std::string section_name(long i, long j);

struct MinusNDReport {
    long n;
    Rational fiber_degree;
    Rational section_degree; // common value on every L_ij
    bool nef_on_model;
};

/// Degrees of 2 pull_LX + 2 sum L_ij on a fiber and on the sections.
MinusNDReport check_minus_nD_nef(long n);

} // namespace nefcone::strata
