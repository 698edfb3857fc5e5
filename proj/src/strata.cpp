#include "nefcone/strata.hpp"

#include "nefcone/errors.hpp"

#include <numeric>

namespace nefcone::strata {

namespace {

void require_enumerable(long n) {
    if (n < 1) {
        throw PreconditionError("level must be >= 1");
    }
    if (n > kMaxEnumerationLevel) {
        throw ResourceError("level " + std::to_string(n) + " exceeds the enumeration cap " +
                            std::to_string(kMaxEnumerationLevel));
    }
}

} // namespace

CuspCount enumerate_cusps(int g, long n) {
    if (g < 1) {
        throw PreconditionError("genus must be >= 1");
    }
    if (n < 1) {
        throw PreconditionError("level must be >= 1");
    }
    const int dim = 2 * g;
    long total = 1;
    for (int i = 0; i < dim; ++i) {
        if (total > kMaxCuspVectors / n) {
            throw ResourceError("cusp enumeration over (Z/" + std::to_string(n) + ")^" + std::to_string(dim) +
                                " exceeds the bound of " + std::to_string(kMaxCuspVectors) + " vectors");
        }
        total *= n;
    }
    CuspCount out;
    out.convention = "primitive vectors of (Z/n)^{2g}, counted alone and modulo v ~ -v";
    long primitive = 0;
    long self_negative = 0; // primitive v with v = -v
    std::vector<long> v(static_cast<std::size_t>(dim), 0);
    for (long idx = 0; idx < total; ++idx) {
        long rest = idx;
        long g_all = n;
        bool neg_equal = true;
        for (int i = 0; i < dim; ++i) {
            v[static_cast<std::size_t>(i)] = rest % n;
            rest /= n;
            g_all = std::gcd(g_all, v[static_cast<std::size_t>(i)]);
            neg_equal = neg_equal && (2 * v[static_cast<std::size_t>(i)]) % n == 0;
        }
        if (g_all == 1) {
            ++primitive;
            if (neg_equal) {
                ++self_negative;
            }
        }
    }
    out.primitive_vectors = primitive;
    out.classes = (primitive + self_negative) / 2;
    return out;
}

std::vector<StratumDescriptor> satake_strata(int g, long n) {
    if (g < 1) {
        throw PreconditionError("genus must be >= 1");
    }
    std::vector<StratumDescriptor> out;
    for (int k = g; k >= 0; --k) {
        StratumDescriptor s{k, k * (k + 1) / 2, std::nullopt, k == g ? "interior" : "boundary"};
        if (k == g) {
            s.index_set_size = 1;
        } else if (k == g - 1) {
            try {
                s.index_set_size = enumerate_cusps(g, n).classes;
            } catch (const ResourceError&) {
            }
        }
        out.push_back(s);
    }
    return out;
}

Integer sl2_order(long n) {
    require_enumerable(n);
    long count = 0;
    for (long a = 0; a < n; ++a) {
        for (long b = 0; b < n; ++b) {
            for (long c = 0; c < n; ++c) {
                for (long d = 0; d < n; ++d) {
                    if (((a * d - b * c) % n + n) % n == 1 % n) {
                        ++count;
                    }
                }
            }
        }
    }
    return count;
}

Integer group_order_psl2(long n) {
    const Integer sl = sl2_order(n);
    return n >= 3 ? Integer(sl / 2) : sl;
}

Rational boundary_degree(const Rational& a, const Rational& b, long n) {
    return Rational(group_order_psl2(n)) * (a / 12 - b / n);
}

std::string to_string(PointType t) {
    switch (t) {
    case PointType::I:
        return "I";
    case PointType::II:
        return "II";
    case PointType::IIIa:
        return "IIIa";
    case PointType::IIIb:
        return "IIIb";
    }
    return "?";
}

PointType parse_point_type(const std::string& s) {
    for (const PointType t : {PointType::I, PointType::II, PointType::IIIa, PointType::IIIb}) {
        if (to_string(t) == s) {
            return t;
        }
    }
    throw PreconditionError("unknown point type '" + s + "' (expected I, II, IIIa or IIIb)");
}

std::string to_string(SurfaceKind k) {
    switch (k) {
    case SurfaceKind::abelian:
        return "abelian";
    case SurfaceKind::elliptic_ruled:
        return "elliptic-ruled";
    case SurfaceKind::p1xp1:
        return "P1xP1";
    case SurfaceKind::p2:
        return "P2";
    case SurfaceKind::p2_blown_up:
        return "P2 blown up in 3 points";
    case SurfaceKind::kummer:
        return "Kummer";
    }
    return "?";
}

Integer FiberDescriptor::total() const {
    Integer t = 0;
    for (const auto& c : components) {
        t += c.count;
    }
    return t;
}

FiberDescriptor fiber_type(PointType t, long n) {
    if (n < 1) {
        throw PreconditionError("level must be >= 1");
    }
    FiberDescriptor f{t, n, {}, true, ""};
    const Integer nn = n;
    const Integer n2 = nn * nn;
    if (n >= 3) {
        switch (t) {
        case PointType::I:
            f.components = {{SurfaceKind::abelian, 1}};
            break;
        case PointType::II:
            f.components = {{SurfaceKind::elliptic_ruled, nn}};
            f.note = "a cycle of n elliptic ruled surfaces";
            break;
        case PointType::IIIa:
            f.components = {{SurfaceKind::p1xp1, n2}};
            break;
        case PointType::IIIb:
            f.components = {{SurfaceKind::p2, 2 * n2}, {SurfaceKind::p2_blown_up, n2}};
            break;
        }
        return f;
    }
    switch (t) {
    case PointType::I:
        f.components = {{SurfaceKind::kummer, 1}};
        f.note = "at level n <= 2 the abelian surface is replaced by its Kummer surface";
        break;
    case PointType::IIIb:
        f.components = {{SurfaceKind::p2, n == 2 ? 8 : 2}};
        f.note = "Kummer setting";
        break;
    default:
        f.specified = false;
        f.note = "inventory not specified at level n <= 2";
        break;
    }
    return f;
}

std::string section_name(long i, long j) {
    return "L_" + std::to_string(i) + "_" + std::to_string(j);
}

ShiodaModel::ShiodaModel(long n) : n_(n), mu_(group_order_psl2(n)) {
    names_ = {"F", "pull_LX"};
    for (long i = 0; i < n; ++i) {
        for (long j = 0; j < n; ++j) {
            names_.push_back(section_name(i, j));
        }
    }
    const std::size_t m = names_.size();
    table_ = RatMatrix(m, m);
    const Rational deg = deg_L_on_X();
    // F.F = 0 and pull_LX.pull_LX = 0; pull_LX.F = 0.
    for (std::size_t s = 2; s < m; ++s) {
        table_(0, s) = table_(s, 0) = 1;   // a section meets a fiber once
        table_(1, s) = table_(s, 1) = deg; // L_{X(n)} restricted to a section
        table_(s, s) = -deg;               // normal bundle of a section is -L_{X(n)}
        // distinct sections are disjoint (model assumption)
    }
}

std::size_t ShiodaModel::index(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i] == name) {
            return i;
        }
    }
    throw PreconditionError("no class '" + name + "' in the Shioda model of level " + std::to_string(n_));
}

Rational ShiodaModel::pairing(const std::string& x, const std::string& y) const {
    return table_(index(x), index(y));
}

Rational ShiodaModel::pair(const RatVector& x, const RatVector& y) const {
    if (x.size() != names_.size() || y.size() != names_.size()) {
        throw DimensionError("coefficient vectors must have one entry per class");
    }
    return std::inner_product(x.begin(), x.end(), (table_ * y).begin(), Rational(0));
}

MinusNDReport check_minus_nD_nef(long n) {
    const ShiodaModel model(n);
    const std::size_t m = model.classes().size();
    RatVector bundle(m, 2); // 2 pull_LX + 2 sum L_ij
    bundle[0] = 0;
    MinusNDReport r{n, 0, 0, false};
    RatVector fiber(m, 0);
    fiber[0] = 1;
    r.fiber_degree = model.pair(bundle, fiber);
    bool uniform = true;
    for (std::size_t s = 2; s < m; ++s) {
        RatVector section(m, 0);
        section[s] = 1;
        const Rational d = model.pair(bundle, section);
        if (s == 2) {
            r.section_degree = d;
        }
        uniform = uniform && d == r.section_degree;
    }
    if (!uniform) {
        throw Error("section degrees differ between sections");
    }
    r.nef_on_model = r.fiber_degree > 0 && r.section_degree >= 0;
    return r;
}

} // namespace nefcone::strata
