#include "nefcone/divisor.hpp"

#include "nefcone/errors.hpp"

#include <algorithm>

namespace nefcone::divisor {

namespace {

const std::vector<std::pair<Symbol, std::string>>& names() {
    static const std::vector<std::pair<Symbol, std::string>> n = {
        {Symbol::L, "L"},       {Symbol::D, "D"}, {Symbol::H1, "H1"},
        {Symbol::B, "B"},       {Symbol::Mbar, "Mbar"}, {Symbol::N, "N"},
        {Symbol::ThetaNull, "ThetaNull"}};
    return n;
}

// Symbols whose classes scale by n2/n1 under pullback (the rest are fixed).
bool scales_with_level(Symbol s) {
    return s == Symbol::D || s == Symbol::N || s == Symbol::B;
}

Rational power_of_two(int e) {
    Rational r = 1;
    for (int i = 0; i < std::abs(e); ++i) {
        r *= 2;
    }
    return e >= 0 ? r : Rational(1) / r;
}

void require_level(const Integer& n) {
    if (n < 1) {
        throw PreconditionError("level must be >= 1, got " + nefcone::to_string(n));
    }
}

} // namespace

std::string to_string(Symbol s) {
    for (const auto& [sym, name] : names()) {
        if (sym == s) {
            return name;
        }
    }
    return "?";
}

Symbol parse_symbol(const std::string& name) {
    for (const auto& [sym, n] : names()) {
        if (n == name) {
            return sym;
        }
    }
    throw PreconditionError("unknown divisor symbol '" + name + "'");
}

const std::vector<Symbol>& all_symbols() {
    static const std::vector<Symbol> s = {Symbol::L, Symbol::D, Symbol::H1, Symbol::B,
                                          Symbol::Mbar, Symbol::N, Symbol::ThetaNull};
    return s;
}

bool is_aux(Symbol s) {
    return s != Symbol::L && s != Symbol::D;
}

DivisorClass::DivisorClass(int g, Integer n) : g_(g), n_(std::move(n)) {
    if (g < 2) {
        throw PreconditionError("genus must be >= 2, got " + std::to_string(g));
    }
    require_level(n_);
}

DivisorClass DivisorClass::from_ab(int g, const Integer& n, const Rational& a, const Rational& b) {
    DivisorClass c(g, n);
    c.set(Symbol::L, a).set(Symbol::D, -b);
    return c;
}

Rational DivisorClass::coefficient(Symbol s) const {
    const auto it = coeffs_.find(s);
    return it == coeffs_.end() ? Rational(0) : it->second;
}

DivisorClass& DivisorClass::set(Symbol s, const Rational& value) {
    if (value == 0) {
        coeffs_.erase(s);
    } else {
        coeffs_[s] = value;
    }
    return *this;
}

bool DivisorClass::has_aux() const {
    return std::any_of(coeffs_.begin(), coeffs_.end(), [](const auto& kv) { return is_aux(kv.first); });
}

std::vector<Symbol> DivisorClass::support() const {
    std::vector<Symbol> out;
    for (const auto& kv : coeffs_) {
        out.push_back(kv.first);
    }
    return out;
}

DivisorClass operator+(const DivisorClass& x, const DivisorClass& y) {
    if (x.g_ != y.g_ || x.n_ != y.n_) {
        throw PreconditionError("adding divisor classes on different spaces");
    }
    DivisorClass out = x;
    for (const auto& [s, v] : y.coeffs_) {
        out.set(s, out.coefficient(s) + v);
    }
    return out;
}

DivisorClass operator*(const Rational& s, const DivisorClass& x) {
    DivisorClass out(x.g_, x.n_);
    for (const auto& [sym, v] : x.coeffs_) {
        out.set(sym, s * v);
    }
    return out;
}

bool operator==(const DivisorClass& x, const DivisorClass& y) {
    return x.g_ == y.g_ && x.n_ == y.n_ && x.coeffs_ == y.coeffs_;
}

std::string to_string(const DivisorClass& c) {
    std::string out;
    for (const Symbol s : all_symbols()) {
        const Rational v = c.coefficient(s);
        if (v == 0) {
            continue;
        }
        if (!out.empty()) {
            out += v < 0 ? " - " : " + ";
        } else if (v < 0) {
            out += "-";
        }
        const Rational m = abs(v);
        if (m != 1) {
            out += nefcone::to_string(m) + " ";
        }
        out += to_string(s);
    }
    return out.empty() ? "0" : out;
}

CurveClass modular_curve(const Integer& level) {
    CurveClass c{"modular curve X(1) x {A}", 1, {{Symbol::L, Rational(1, 12)}, {Symbol::D, 1}},
                 "base curve of a product family; every form of order > 1/12 vanishes on it"};
    return curve_at_level(c, level);
}

CurveClass fiber_curve(const Integer& h_degree, const Integer& level) {
    if (h_degree < 1) {
        throw PreconditionError("H-degree of a fiber curve must be >= 1");
    }
    CurveClass c{"fiber curve of H-degree " + nefcone::to_string(h_degree), 1,
                 {{Symbol::L, 0}, {Symbol::D, Rational(-2 * h_degree)}},
                 "curve in a boundary fiber; D restricts to -(2/n)H there"};
    return curve_at_level(c, level);
}

CurveClass curve_at_level(const CurveClass& level_one, const Integer& level) {
    require_level(level);
    if (level_one.level != 1) {
        throw PreconditionError("curve ledger must be given at level 1");
    }
    CurveClass out = level_one;
    out.level = level;
    for (auto& [s, v] : out.intersections) {
        if (scales_with_level(s)) {
            v /= level;
        }
    }
    return out;
}

Rational intersect(const DivisorClass& c, const CurveClass& curve) {
    if (c.level() != curve.level) {
        throw PreconditionError("class at level " + nefcone::to_string(c.level()) + " paired with curve at level " +
                                nefcone::to_string(curve.level));
    }
    Rational total = 0;
    for (const Symbol s : c.support()) {
        const auto it = curve.intersections.find(s);
        if (it == curve.intersections.end()) {
            throw PreconditionError("curve '" + curve.name + "' has no intersection number with " + to_string(s));
        }
        total += c.coefficient(s) * it->second;
    }
    return total;
}

NefVerdict nef_test(const DivisorClass& c) {
    if (c.has_aux()) {
        throw PreconditionError("nef test is defined on classes aL - bD; got " + to_string(c));
    }
    NefVerdict v;
    v.status = (c.genus() == 2 || c.genus() == 3) ? "theorem" : "conjectural";
    const Rational a = c.a(), b = c.b();
    v.inequalities.b = b;
    v.inequalities.slope = a - 12 * b / Rational(c.level());
    v.inequalities.b_nonnegative = b >= 0;
    v.inequalities.slope_nonnegative = v.inequalities.slope >= 0;
    v.is_nef = v.inequalities.b_nonnegative && v.inequalities.slope_nonnegative;
    if (!v.inequalities.b_nonnegative) {
        v.witness = fiber_curve(1, c.level());
    } else if (!v.inequalities.slope_nonnegative) {
        v.witness = modular_curve(c.level());
    }
    if (v.witness) {
        v.witness_value = intersect(c, *v.witness);
    }
    return v;
}

DivisorClass pullback_level(const DivisorClass& c, const Integer& n1, const Integer& n2) {
    require_level(n1);
    require_level(n2);
    if (c.level() != n1) {
        throw PreconditionError("class is at level " + nefcone::to_string(c.level()) + ", not " +
                                nefcone::to_string(n1));
    }
    if (n2 % n1 != 0) {
        throw PreconditionError("pullback needs n1 | n2; got " + nefcone::to_string(n1) + ", " + nefcone::to_string(n2));
    }
    const Rational ratio(n2, n1);
    DivisorClass out(c.genus(), n2);
    for (const Symbol s : c.support()) {
        out.set(s, scales_with_level(s) ? ratio * c.coefficient(s) : c.coefficient(s));
    }
    return out;
}

DivisorClass canonical_class(int g, const Integer& n) {
    return DivisorClass::from_ab(g, n, g + 1, 1);
}

std::string canonical_class_caveat(int g, const Integer& n) {
    if (g <= 4 && n >= 3) {
        return "A*_g(n) is smooth here, so K = (g+1)L - D holds everywhere";
    }
    return "K = (g+1)L - D holds away from the branch locus, including an open part of the boundary";
}

Rational general_type_coefficient(int g, const Integer& n) {
    if (g < 2) {
        throw PreconditionError("genus must be >= 2");
    }
    require_level(n);
    const Rational num = power_of_two(g - 2) * (power_of_two(g) + 1);
    const Rational den = Rational(n) * power_of_two(2 * g - 5);
    return Rational(g + 1) - num / den;
}

const std::vector<GeneralTypeEntry>& general_type_table() {
    static const std::vector<GeneralTypeEntry> table = [] {
        const std::vector<std::pair<int, long>> rows = {{2, 4}, {3, 3}, {4, 2}, {5, 2}, {6, 2}, {7, 1}};
        std::vector<GeneralTypeEntry> t;
        for (const auto& [g, n0] : rows) {
            GeneralTypeEntry e{g, n0, general_type_coefficient(g, n0), false, false, ""};
            e.positive = e.coefficient > 0;
            if (g == 4 && n0 == 2) {
                e.exceptional = true;
                e.note = "coefficient is positive, but the case is settled by the singularity analysis";
            } else if (g == 7 && n0 == 1) {
                e.exceptional = true;
                e.note = "coefficient is negative; the case needs a separate argument";
            }
            t.push_back(e);
        }
        return t;
    }();
    return table;
}

DivisorClass humbert_decompose(const DivisorClass& c) {
    if (c.genus() != 2) {
        throw PreconditionError("Humbert decomposition is only defined for g = 2");
    }
    const Rational n(c.level());
    const Rational d = c.coefficient(Symbol::D);
    DivisorClass out = c;
    out.set(Symbol::D, 0);
    out.set(Symbol::L, c.coefficient(Symbol::L) + 10 * d / n);
    out.set(Symbol::H1, c.coefficient(Symbol::H1) - 2 * d / n);
    return out;
}

namespace {

std::map<Symbol, Rational> drop_zeros(std::map<Symbol, Rational> m) {
    std::erase_if(m, [](const auto& kv) { return kv.second == 0; });
    return m;
}

} // namespace

BoundaryRestriction restrict_to_boundary(const DivisorClass& h) {
    if (h.genus() != 2 && h.genus() != 3) {
        throw PreconditionError("boundary restriction is implemented for g = 2, 3");
    }
    if (h.has_aux()) {
        throw PreconditionError("boundary restriction expects a class aL - bD");
    }
    const Rational a = h.a(), b = h.b(), n(h.level());
    BoundaryRestriction r;
    r.pullback = drop_zeros({{Symbol::L, a - b / n}, {Symbol::B, -b}});
    r.mbar_coefficient = b / n;
    r.intermediate = drop_zeros({{Symbol::L, a}, {Symbol::B, -b}, {Symbol::N, -b}});
    return r;
}

std::map<Symbol, Rational> expand_restriction(const BoundaryRestriction& r, const Integer& n) {
    std::map<Symbol, Rational> out = r.pullback;
    out[Symbol::L] += r.mbar_coefficient;
    out[Symbol::N] += -r.mbar_coefficient * n;
    return drop_zeros(std::move(out));
}

Rational margin(const Rational& a, const Rational& b, const Integer& n, const Rational& eps) {
    require_level(n);
    if (eps <= 0) {
        throw PreconditionError("epsilon must be positive, got " + nefcone::to_string(eps));
    }
    const Rational beta = b / Rational(n);
    return (a - 12 * beta) - beta * (1 - Rational(12) / (12 + eps));
}

EpsilonBound max_epsilon(const Rational& a, const Rational& b, const Integer& n) {
    require_level(n);
    if (b < 0) {
        throw PreconditionError("max_epsilon needs b >= 0");
    }
    EpsilonBound out;
    if (b == 0) {
        out.kind = a > 0 ? EpsilonBound::Kind::unbounded : EpsilonBound::Kind::none;
        return out;
    }
    // margin = delta - beta eps / (12 + eps) > 0  <=>  12 delta > eps (beta - delta)
    const Rational beta = b / Rational(n);
    const Rational delta = a - 12 * beta;
    if (delta <= 0) {
        out.kind = EpsilonBound::Kind::none;
    } else if (delta >= beta) {
        out.kind = EpsilonBound::Kind::unbounded;
    } else {
        out.kind = EpsilonBound::Kind::bounded;
        out.supremum = 12 * delta / (beta - delta);
    }
    return out;
}

std::size_t pigeonhole_boundary(const std::vector<Rational>& intersections) {
    if (intersections.empty()) {
        throw PreconditionError("pigeonhole needs a non-empty list");
    }
    Rational sum = 0;
    for (const auto& x : intersections) {
        sum += x;
    }
    if (sum > 0) {
        throw PreconditionError("sum of intersections is " + nefcone::to_string(sum) + " > 0");
    }
    for (std::size_t i = 0; i < intersections.size(); ++i) {
        if (intersections[i] <= 0) {
            return i;
        }
    }
    return intersections.size(); // unreachable: a non-positive sum has a non-positive term
}

} // namespace nefcone::divisor
