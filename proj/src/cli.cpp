#include "nefcone/cli.hpp"

#include "nefcone/charts.hpp"
#include "nefcone/divisor.hpp"
#include "nefcone/errors.hpp"
#include "nefcone/exactfan.hpp"
#include "nefcone/strata.hpp"
#include "nefcone/theta.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

namespace nefcone::cli {

namespace {

using Json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct Report {
    std::string command;
    Json inputs = Json::object();
    Json outputs = Json::object();
    std::vector<std::string> citations;
    bool exact = true;
    bool passed = true;
};

Json to_json(const Report& r) {
    Json j;
    j["command"] = r.command;
    j["inputs"] = r.inputs;
    j["outputs"] = r.outputs;
    j["citations"] = r.citations;
    j["exact"] = r.exact;
    j["passed"] = r.passed;
    return j;
}

// ---------------------------------------------------------------- citations

const std::string kNefCone = "nef cone of A*_g(n), g = 2, 3: aL - bD is nef iff b >= 0 and a - 12b/n >= 0";
const std::string kNefConjecture = "the same nef cone is conjectured for all g >= 2";
const std::string kModularCurve = "test curve X(1) x {A}: L.C = 1/12, D.C = 1";
const std::string kFiberCurve = "D restricted to a boundary fiber is -(2/n)H";
const std::string kCanonical = "canonical class K = (g+1)L - D";
const std::string kCanonicalNef = "K is nef for A*_2(n), n >= 4, and A*_3(n), n >= 3; ample for n >= 5 resp. n >= 4";
const std::string kGeneralType = "K = ((g+1) - 2^{g-2}(2^g+1)/(n 2^{2g-5})) L + (1/(n 2^{2g-5})) [theta-null]";
const std::string kGeneralTypeTable = "A_g(n) is of general type for g = 2..7 and n >= n0(g) = 4, 3, 2, 2, 2, 1";
const std::string kChartEmbedding = "torus embedding into the sigma3 chart: T1 = t11 t13 t12, ..., T6 = 1/t12";
const std::string kChartInverse = "inverse chart coordinates, t33 = T3 T4 T5";
const std::string kBoundaryProjection = "boundary projection (T1,T2,T4,T5,T6) -> (T1 T5, T2 T4, T6) induced by lambda";
const std::string kThetaExponents = "theta series terms in boundary chart coordinates";
const std::string kThetaExtension = "theta products extend across the boundary when n = 0 mod 8p^2";
const std::string kThetaSeries = "theta series with characteristic (m', m'') on H_{g-1} x C^{g-1}";
const std::string kQuasiPeriodicity = "Theta(tau, z + k tau + k') = e^{2 pi i [-k tau k/2 - k(z + k')]} Theta(tau, z)";
const std::string kThetaSections = "products of two theta series are sections of M(n) = L - nN for n = 0 mod 4p^2";
const std::string kSatake = "Satake compactification as a union of A_k(n), k <= g";
const std::string kCusps = "corank-one boundary components correspond to lines modulo Gamma_g(n)";
const std::string kFiberTypes = "fiber types of the boundary of A*_3(n) over A*_2(n)";
const std::string kKummer = "for n <= 2 the general fiber is a Kummer surface and type IIIb fibers are 8 copies of P2 at n = 2 and 2 copies at n = 1";
const std::string kShioda = "normal bundle of the boundary on the Shioda surface: 2 pi'* L_X(n) + 2 sum L_ij, L_ij^2 = -L_X(n)";
const std::string kBoundaryDegree = "deg_{X(n)}(aL - bB) = mu(n)(a/12 - b/n), mu(n) = |PSL(2, Z/n)|";
const std::string kHumbert = "10L = 2H1 + D on A*_2, so K = (3 - 10/n)L + (2/n)H1";
const std::string kRestriction = "H|_D = pi'*((a - b/n)L - bB) + (b/n) Mbar(n)";

// ---------------------------------------------------------------- json helpers

Json num(const Integer& z) {
    if (z.fits_slong_p()) {
        return z.get_si();
    }
    return z.get_str();
}

Json rat(const Rational& r) {
    return to_string(r);
}

Json int_vec(const IntVector& v) {
    Json j = Json::array();
    for (const auto& x : v) {
        j.push_back(num(x));
    }
    return j;
}

Json rat_vec(const RatVector& v) {
    Json j = Json::array();
    for (const auto& x : v) {
        j.push_back(rat(x));
    }
    return j;
}

Json int_matrix(const IntMatrix& m) {
    Json j = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        j.push_back(int_vec(m.row(i)));
    }
    return j;
}

Json to_json(const charts::MonomialMap& m) {
    return Json{{"source_vars", m.source_vars}, {"target_vars", m.target_vars}, {"exponent_matrix", int_matrix(m.exponents)}};
}

Json to_json(const divisor::DivisorClass& c) {
    Json coeffs = Json::object();
    for (const auto s : c.support()) {
        coeffs[divisor::to_string(s)] = rat(c.coefficient(s));
    }
    return Json{{"g", c.genus()}, {"n", num(c.level())}, {"coefficients", coeffs}, {"text", divisor::to_string(c)}};
}

Json to_json(const std::map<divisor::Symbol, Rational>& m) {
    Json j = Json::object();
    for (const auto& [s, v] : m) {
        j[divisor::to_string(s)] = rat(v);
    }
    return j;
}

Json to_json(const divisor::CurveClass& c) {
    return Json{{"name", c.name}, {"level", num(c.level)}, {"intersections", to_json(c.intersections)},
                {"provenance", c.provenance}};
}

Json to_json(const divisor::NefVerdict& v) {
    Json j{{"is_nef", v.is_nef},
           {"status", v.status},
           {"inequalities",
            {{"b", rat(v.inequalities.b)},
             {"b_nonnegative", v.inequalities.b_nonnegative},
             {"a_minus_12b_over_n", rat(v.inequalities.slope)},
             {"a_minus_12b_over_n_nonnegative", v.inequalities.slope_nonnegative}}}};
    if (v.witness) {
        j["witness"] = to_json(*v.witness);
        j["witness_intersection"] = rat(v.witness_value);
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

Json to_json(const strata::FiberDescriptor& f) {
    Json comps = Json::array();
    for (const auto& c : f.components) {
        comps.push_back({{"surface", strata::to_string(c.kind)}, {"count", num(c.count)}});
    }
    return Json{{"point_type", strata::to_string(f.point_type)},
                {"level", num(f.level)},
                {"specified", f.specified},
                {"components", comps},
                {"total", f.specified ? num(f.total()) : Json(nullptr)},
                {"note", f.note}};
}

Json complex_json(const Complex& z) {
    return Json::array({z.real(), z.imag()});
}

// ---------------------------------------------------------------- input parsing

Rational parse_rat_arg(const std::string& text, const std::string& what) {
    try {
        return parse_rational(text);
    } catch (const std::exception&) {
        throw UsageError("cannot parse " + what + " '" + text + "' as a rational number");
    }
}

Rational json_rat(const Json& j, const std::string& what) {
    if (j.is_number_integer()) {
        return Rational(j.get<long>());
    }
    if (j.is_string()) {
        return parse_rat_arg(j.get<std::string>(), what);
    }
    throw UsageError(what + " must be an integer or a \"p/q\" string");
}

RatVector parse_rat_list(const std::string& text, const std::string& what) {
    RatVector out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(parse_rat_arg(item, what));
    }
    if (out.empty()) {
        throw UsageError(what + " is empty");
    }
    return out;
}

Json load_json(const std::string& text_or_path) {
    std::string text = text_or_path;
    if (!text.empty() && text.front() != '{' && text.front() != '[') {
        std::ifstream in(text_or_path);
        if (!in) {
            throw UsageError("cannot read JSON file '" + text_or_path + "'");
        }
        text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw UsageError(std::string("invalid JSON input: ") + e.what());
    }
}

theta::ThetaCharacteristic characteristic_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("m_prime")) {
        throw UsageError("characteristic needs at least m_prime");
    }
    RatVector mp, mpp;
    for (const auto& x : j.at("m_prime")) {
        mp.push_back(json_rat(x, "m_prime entry"));
    }
    if (j.contains("m_dblprime")) {
        for (const auto& x : j.at("m_dblprime")) {
            mpp.push_back(json_rat(x, "m_dblprime entry"));
        }
    } else {
        mpp.assign(mp.size(), 0);
    }
    const Rational p = j.contains("p") ? json_rat(j.at("p"), "p") : Rational(1);
    return {mp, mpp, to_integer(p)};
}

struct ThetaInput {
    theta::SectionSpec spec;
    std::string variable = "T2";
    int box_radius = 4;
    std::vector<std::pair<Integer, Integer>> charts = {{0, 0}};
};

// Theta options shared by the theta subcommands.
struct ThetaFlags {
    std::string spec;
    std::string m_prime;
    std::string m_dblprime;
    long p = 1;
    long level = 0;
    std::string variable;
};

ThetaInput theta_input(const ThetaFlags& f, int box_radius_flag) {
    ThetaInput in;
    if (!f.spec.empty()) {
        const Json j = load_json(f.spec);
        if (!j.contains("characteristics") || !j.contains("level")) {
            throw UsageError("theta spec needs 'characteristics' and 'level'");
        }
        for (const auto& c : j.at("characteristics")) {
            in.spec.factors.push_back(characteristic_from_json(c));
        }
        in.spec.level = to_integer(json_rat(j.at("level"), "level"));
        if (j.contains("power")) {
            in.spec.power = j.at("power").get<int>();
        }
        if (j.contains("variable")) {
            in.variable = j.at("variable").get<std::string>();
        }
        if (j.contains("box_radius")) {
            in.box_radius = j.at("box_radius").get<int>();
        }
        if (j.contains("charts")) {
            in.charts.clear();
            for (const auto& c : j.at("charts")) {
                in.charts.emplace_back(to_integer(json_rat(c.at(0), "chart index")),
                                       to_integer(json_rat(c.at(1), "chart index")));
            }
        }
    } else {
        if (f.m_prime.empty() || f.level == 0) {
            throw UsageError("give either --spec or --m-prime and --level");
        }
        const RatVector mp = parse_rat_list(f.m_prime, "--m-prime");
        const RatVector mpp = f.m_dblprime.empty() ? RatVector(mp.size(), 0) : parse_rat_list(f.m_dblprime, "--m-dblprime");
        in.spec.factors.emplace_back(mp, mpp, f.p);
        in.spec.level = f.level;
    }
    if (!f.variable.empty()) {
        in.variable = f.variable;
    }
    if (box_radius_flag > 0) {
        in.box_radius = box_radius_flag;
    }
    return in;
}

Json spec_json(const theta::SectionSpec& s) {
    Json chars = Json::array();
    for (const auto& c : s.factors) {
        chars.push_back({{"m_prime", rat_vec(c.m_prime())}, {"m_dblprime", rat_vec(c.m_dblprime())},
                         {"p", num(c.denominator_scale())}});
    }
    return Json{{"characteristics", chars}, {"level", num(s.level)}, {"power", s.power}};
}

ComplexMatrix parse_tau(const std::string& text, std::size_t d) {
    if (text.empty()) {
        return Complex(0.0, 1.0) * ComplexMatrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    }
    const Json j = load_json(text);
    const auto n = static_cast<Eigen::Index>(j.size());
    ComplexMatrix tau(n, n);
    try {
        for (Eigen::Index r = 0; r < n; ++r) {
            for (Eigen::Index c = 0; c < n; ++c) {
                const auto& e = j.at(static_cast<std::size_t>(r)).at(static_cast<std::size_t>(c));
                tau(r, c) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
            }
        }
    } catch (const Json::exception& e) {
        throw UsageError(std::string("--tau must be a square array of [re, im] pairs: ") + e.what());
    }
    return tau;
}

ComplexRow parse_z(const std::string& text, std::size_t d) {
    ComplexRow z = ComplexRow::Zero(static_cast<Eigen::Index>(d));
    if (text.empty()) {
        return z;
    }
    const Json j = load_json(text);
    try {
        z.resize(static_cast<Eigen::Index>(j.size()));
        for (std::size_t i = 0; i < j.size(); ++i) {
            z(static_cast<Eigen::Index>(i)) = Complex(j.at(i).at(0).get<double>(), j.at(i).at(1).get<double>());
        }
    } catch (const Json::exception& e) {
        throw UsageError(std::string("--z must be an array of [re, im] pairs: ") + e.what());
    }
    return z;
}

// ---------------------------------------------------------------- commands

Report cmd_nef_check(int g, long n, const std::string& a, const std::string& b) {
    Report r;
    r.command = "nef-check";
    const auto c = divisor::DivisorClass::from_ab(g, n, parse_rat_arg(a, "--a"), parse_rat_arg(b, "--b"));
    r.inputs = {{"g", g}, {"n", n}, {"a", rat(c.a())}, {"b", rat(c.b())}};
    const auto v = divisor::nef_test(c);
    r.outputs = to_json(v);
    r.citations = {v.status == "theorem" ? kNefCone : kNefConjecture};
    if (!v.inequalities.b_nonnegative) {
        r.citations.push_back(kFiberCurve);
    } else if (!v.inequalities.slope_nonnegative) {
        r.citations.push_back(kModularCurve);
    }
    r.passed = v.is_nef;
    return r;
}

Report cmd_k_class(int g, long n) {
    Report r;
    r.command = "k-class";
    r.inputs = {{"g", g}, {"n", n}};
    const auto k = divisor::canonical_class(g, n);
    const auto v = divisor::nef_test(k);
    r.outputs["canonical_class"] = to_json(k);
    r.outputs["caveat"] = divisor::canonical_class_caveat(g, n);
    r.outputs["nef"] = v.is_nef;
    r.outputs["margin"] = rat(v.inequalities.slope);
    r.outputs["strictly_positive"] = v.inequalities.slope > 0 && v.inequalities.b > 0;
    if (g == 2) {
        r.outputs["humbert_form"] = to_json(divisor::humbert_decompose(k));
        r.citations.push_back(kHumbert);
    }
    r.outputs["verdict"] = to_json(v);
    r.citations.insert(r.citations.begin(), {kCanonical, kCanonicalNef});
    return r;
}

Json general_type_table_json(bool& consistent) {
    Json rows = Json::array();
    consistent = true;
    for (const auto& e : divisor::general_type_table()) {
        rows.push_back({{"g", e.g},
                        {"n0", num(e.n0)},
                        {"coefficient", rat(e.coefficient)},
                        {"sign", e.coefficient > 0 ? "+" : (e.coefficient < 0 ? "-" : "0")},
                        {"exceptional", e.exceptional},
                        {"note", e.note}});
        if (!e.exceptional && !e.positive) {
            consistent = false;
        }
        if (e.g == 7 && e.coefficient != Rational(-1, 16)) {
            consistent = false;
        }
    }
    return rows;
}

Report cmd_general_type(bool table, int g, long n) {
    Report r;
    r.command = "general-type";
    r.citations = {kGeneralType};
    if (table) {
        r.inputs = {{"table", true}};
        bool ok = true;
        r.outputs["table"] = general_type_table_json(ok);
        r.passed = ok;
        r.citations.push_back(kGeneralTypeTable);
        return r;
    }
    if (g == 0 || n == 0) {
        throw UsageError("general-type needs --table or both --g and --n");
    }
    r.inputs = {{"g", g}, {"n", n}};
    const Rational c = divisor::general_type_coefficient(g, n);
    r.outputs = {{"coefficient", rat(c)}, {"positive", c > 0}};
    r.passed = c > 0;
    return r;
}

// Expected exponent rows of the inverse chart, in the order (t11, t12, t13, t22, t23, t33)
// over (T1, ..., T6): t11 = T1 T5 T6, t12 = 1/T6, t13 = 1/T5, t22 = T2 T4 T6, t23 = 1/T4, t33 = T3 T4 T5.
IntMatrix expected_inverse_chart() {
    return IntMatrix{{1, 0, 0, 0, 1, 1}, {0, 0, 0, 0, 0, -1}, {0, 0, 0, 0, -1, 0},
                     {0, 1, 0, 1, 0, 1}, {0, 0, 0, -1, 0, 0}, {0, 0, 1, 1, 1, 0}};
}

// Columns are the Sym coordinates of the generators of the standard cone.
IntMatrix standard_generator_matrix(int g) {
    std::vector<RatVector> cols;
    for (const auto& s : fan::standard_cone(g).sym_generators()) {
        cols.push_back(s.coords());
    }
    return to_integer(from_columns(cols, fan::sym_coord_count(static_cast<std::size_t>(g))));
}

Report cmd_charts(int g, bool verify) {
    Report r;
    r.command = "charts";
    r.inputs = {{"g", g}, {"verify", verify}};
    const auto emb = charts::chart_embedding(g);
    r.outputs["chart_embedding"] = to_json(emb);
    r.citations = {kChartEmbedding};
    if (g == 3) {
        r.outputs["inverse"] = to_json(charts::invert(emb));
        r.outputs["boundary_projection"] = to_json(charts::boundary_projection());
        r.citations.push_back(kChartInverse);
        r.citations.push_back(kBoundaryProjection);
    }
    if (!verify) {
        return r;
    }
    Json checks = Json::array();
    auto check = [&](const std::string& name, bool ok) {
        checks.push_back({{"identity", name}, {"passed", ok}});
        r.passed = r.passed && ok;
    };
    // The chart exponents are the inverse of the generator matrix of the cone.
    const IntMatrix gens = g == 3 ? fan::n6_to_sym().matrix : standard_generator_matrix(2);
    check("chart embedding = inverse of the cone generator matrix", emb.exponents == unimodular_inverse(gens));
    check("chart embedding is unimodular", emb.is_unimodular());
    if (g == 3) {
        const auto inv = charts::invert(emb);
        check("inverse chart rows t11..t33", inv.exponents == expected_inverse_chart());
        check("t33 = T3 T4 T5", inv.row("t33") == IntVector{0, 0, 1, 1, 1, 0});
        const auto lambda = charts::dual_of_lattice_map(fan::lambda_on_n5(), fan::sigma3_prime(), fan::standard_cone(2));
        check("dual of lambda = boundary projection", lambda.exponents == charts::boundary_projection().exponents);
        r.outputs["dual_of_lambda"] = to_json(lambda);
    }
    r.outputs["checks"] = checks;
    return r;
}

Report cmd_theta_order(const ThetaFlags& f, int box_radius) {
    Report r;
    r.command = "theta order";
    const auto in = theta_input(f, box_radius);
    r.inputs = spec_json(in.spec);
    r.inputs["variable"] = in.variable;
    r.inputs["box_radius"] = in.box_radius;
    r.citations = {kThetaExponents};
    try {
        const auto v = theta::valuation(in.spec, in.variable, in.box_radius);
        Json at = Json::array();
        for (const auto& q : v.attained_at) {
            for (const auto& x : q) {
                at.push_back(num(x));
            }
        }
        Json certs = Json::array();
        for (const auto& c : v.certificates) {
            Json cj{{"method", c.method}, {"global_minimum", rat(c.global_minimum)}};
            if (c.method == "rank-one") {
                cj["w"] = int_vec(c.w);
                cj["alpha"] = rat(c.alpha);
                cj["beta"] = rat(c.beta);
                cj["gamma"] = rat(c.gamma);
                cj["s_range"] = Json::array({num(c.s_lo), num(c.s_hi)});
                cj["s_minimizers"] = int_vec(c.s_minimizers);
            }
            certs.push_back(cj);
        }
        r.outputs = {{"valuation", rat(v.value)}, {"attained_at", at}, {"certified", v.certified}, {"certificates", certs}};
    } catch (const InconclusiveError& e) {
        r.outputs = {{"valuation", nullptr}, {"attained_at", nullptr}, {"certified", false}, {"reason", e.what()}};
        r.passed = false;
    }
    return r;
}

Json extension_json(const theta::ExtensionReport& rep) {
    Json charts = Json::array();
    for (const auto& c : rep.charts) {
        charts.push_back({{"n_idx", num(c.n_idx)},
                          {"m_idx", num(c.m_idx)},
                          {"min_exponent", c.certified ? rat(c.min_exponent) : Json(nullptr)},
                          {"nonnegative", c.nonnegative},
                          {"integral", c.integral},
                          {"certified", c.certified},
                          {"passed", c.passed}});
    }
    return Json{{"p", num(rep.p)}, {"charts", charts}, {"passed", rep.passed}};
}

Report cmd_theta_certify(const ThetaFlags& f, int box_radius) {
    Report r;
    r.command = "theta certify";
    const auto in = theta_input(f, box_radius);
    r.inputs = spec_json(in.spec);
    Json ch = Json::array();
    for (const auto& [a, b] : in.charts) {
        ch.push_back(Json::array({num(a), num(b)}));
    }
    r.inputs["charts"] = ch;
    r.inputs["box_radius"] = in.box_radius;
    const auto rep = theta::check_extension(in.spec, in.charts, in.box_radius);
    r.outputs = extension_json(rep);
    r.citations = {kThetaExtension, kThetaExponents};
    r.passed = rep.passed;
    return r;
}

Report cmd_theta_eval(const ThetaFlags& f, const std::string& tau_text, const std::string& z_text, int radius,
                      double tolerance) {
    Report r;
    r.command = "theta eval";
    r.exact = false;
    const auto in = theta_input(f, 0);
    if (in.spec.factors.size() != 1) {
        throw UsageError("theta eval takes a single characteristic");
    }
    const auto& ch = in.spec.factors.front();
    const ComplexMatrix tau = parse_tau(tau_text, ch.size());
    const ComplexRow z = parse_z(z_text, ch.size());
    const int rad = radius > 0 ? radius : theta::radius_for_tolerance(tau, tolerance);
    r.inputs = spec_json(in.spec);
    r.inputs["radius"] = rad;
    r.inputs["tolerance"] = tolerance;
    const auto v = theta::theta_numeric(tau, z, ch, rad, tolerance);
    const auto v2 = theta::theta_numeric(tau, z, ch, 2 * rad, tolerance);
    const double change = std::abs(v.mantissa - v2.mantissa * std::exp(v2.log_scale - v.log_scale));
    const double allowed = v.tail_bound + v.rounding_bound + v2.rounding_bound;
    r.outputs = {{"value", complex_json(v.value())},
                 {"mantissa", complex_json(v.mantissa)},
                 {"log_scale", v.log_scale},
                 {"relative_tail_bound", v.relative_tail},
                 {"tail_bound", v.tail_bound},
                 {"rounding_bound", v.rounding_bound},
                 {"terms", v.terms},
                 {"doubling_change", change},
                 {"doubling_within_bound", change <= allowed}};
    r.citations = {kThetaSeries};
    r.passed = change <= allowed;
    return r;
}

Report cmd_theta_transform(const ThetaFlags& f, std::size_t samples, std::uint64_t seed, double tolerance) {
    Report r;
    r.command = "theta transform";
    r.exact = false;
    const auto in = theta_input(f, 0);
    r.inputs = spec_json(in.spec);
    r.inputs["samples"] = samples;
    r.inputs["seed"] = seed;
    r.inputs["tolerance"] = tolerance;
    const auto s = theta::random_transform_samples(in.spec, samples, seed);
    const auto rep = theta::check_transformations(in.spec, s, tolerance);
    double worst_lattice = 0, worst_modular = 0;
    for (const auto& c : rep.checks) {
        worst_lattice = std::max(worst_lattice, c.lattice_residual);
        worst_modular = std::max(worst_modular, c.modular_residual);
    }
    r.outputs = {{"checked", rep.checks.size()},
                 {"max_lattice_residual", worst_lattice},
                 {"max_modular_residual", worst_modular},
                 {"passed", rep.passed}};
    r.citations = {kQuasiPeriodicity, kThetaSections};
    r.passed = rep.passed;
    return r;
}

Json cusp_json(const strata::CuspCount& c) {
    return Json{{"primitive_vectors", num(c.primitive_vectors)}, {"classes", num(c.classes)}, {"convention", c.convention}};
}

Report cmd_strata(int g, long n) {
    Report r;
    r.command = "strata";
    r.inputs = {{"g", g}, {"n", n}};
    Json rows = Json::array();
    for (const auto& s : strata::satake_strata(g, n)) {
        rows.push_back({{"genus", s.genus_of_stratum},
                        {"dimension", s.dimension},
                        {"kind", s.kind},
                        {"index_set_size", s.index_set_size ? num(*s.index_set_size) : Json("not computed")}});
    }
    r.outputs["strata"] = rows;
    r.outputs["cusp_convention"] = "primitive vectors of (Z/n)^{2g} modulo v ~ -v";
    r.citations = {kSatake, kCusps};
    return r;
}

Report cmd_cusps(int g, long n) {
    Report r;
    r.command = "cusps";
    r.inputs = {{"g", g}, {"n", n}};
    r.outputs = cusp_json(strata::enumerate_cusps(g, n));
    r.citations = {kCusps};
    return r;
}

Report cmd_shioda(long n) {
    Report r;
    r.command = "shioda";
    r.inputs = {{"n", n}};
    const strata::ShiodaModel m(n);
    const auto s = strata::section_name(0, 0);
    r.outputs["mu"] = num(m.mu());
    r.outputs["deg_L_on_X"] = rat(m.deg_L_on_X());
    r.outputs["sections"] = n * n;
    r.outputs["pairing"] = {{"F.F", rat(m.pairing("F", "F"))},
                            {"L_ij.F", rat(m.pairing(s, "F"))},
                            {"L_ij.L_ij", rat(m.pairing(s, s))},
                            {"pull_LX.F", rat(m.pairing("pull_LX", "F"))},
                            {"pull_LX.L_ij", rat(m.pairing("pull_LX", s))},
                            {"pull_LX.pull_LX", rat(m.pairing("pull_LX", "pull_LX"))}};
    if (n > 1) {
        r.outputs["pairing"]["L_ij.L_kl"] = rat(m.pairing(s, strata::section_name(0, 1)));
    }
    r.outputs["model_assumption"] = "distinct sections are disjoint";
    const auto rep = strata::check_minus_nD_nef(n);
    r.outputs["minus_nD"] = {{"fiber_degree", rat(rep.fiber_degree)},
                             {"section_degree", rat(rep.section_degree)},
                             {"nef_on_model", rep.nef_on_model}};
    r.citations = {kShioda, kBoundaryDegree};
    r.passed = rep.nef_on_model;
    return r;
}

Report cmd_fiber_type(const std::string& type, long n) {
    Report r;
    r.command = "fiber-type";
    r.inputs = {{"point_type", type}, {"n", n}};
    r.outputs = to_json(strata::fiber_type(strata::parse_point_type(type), n));
    r.citations = {n >= 3 ? kFiberTypes : kKummer};
    return r;
}

// ---------------------------------------------------------------- reproduce

Report reproduce_boundary(int g, long n) {
    Report r;
    r.command = "reproduce thm0.2-boundary";
    r.inputs = {{"g", g}, {"n", n}};
    r.citations = {kNefCone, kModularCurve, kFiberCurve, kCanonical, kCanonicalNef};
    Json grid = Json::array();
    const Rational eps(1, 1000);
    for (const int gg : {2, 3}) {
        for (const long nn : {1L, 3L, 4L, 5L}) {
            std::vector<std::pair<Rational, Rational>> points;
            for (const Rational& b : {Rational(1), Rational(2), Rational(1, 2)}) {
                const Rational edge = 12 * b / nn;
                points.insert(points.end(), {{edge, b}, {edge - eps, b}, {edge + eps, b}});
            }
            points.insert(points.end(), {{1, 0}, {0, 0}, {-eps, 0}, {1, -eps}});
            for (const auto& [a, b] : points) {
                const auto v = divisor::nef_test(divisor::DivisorClass::from_ab(gg, nn, a, b));
                const bool expected = b >= 0 && nn * a >= 12 * b;
                const bool ok = v.is_nef == expected && (v.is_nef || (v.witness && v.witness_value < 0));
                r.passed = r.passed && ok;
                grid.push_back({{"g", gg}, {"n", nn}, {"a", rat(a)}, {"b", rat(b)}, {"is_nef", v.is_nef},
                                {"witness_intersection", v.witness ? rat(v.witness_value) : Json(nullptr)},
                                {"agrees", ok}});
            }
        }
    }
    r.outputs["grid"] = grid;
    const auto k = divisor::canonical_class(g, n);
    const auto v = divisor::nef_test(k);
    r.outputs["canonical_class"] = {{"class", divisor::to_string(k)}, {"nef", v.is_nef},
                                    {"margin", rat(v.inequalities.slope)}};
    return r;
}

Report reproduce_table() {
    Report r;
    r.command = "reproduce thm1.1-table";
    r.inputs = Json::object();
    bool ok = true;
    r.outputs["table"] = general_type_table_json(ok);
    r.passed = ok;
    r.citations = {kGeneralTypeTable, kGeneralType};
    return r;
}

Report reproduce_counts(long n) {
    Report r;
    r.command = "reproduce prop2.4-counts";
    r.inputs = {{"n", n}};
    Json types = Json::object();
    for (const auto t : {strata::PointType::I, strata::PointType::II, strata::PointType::IIIa, strata::PointType::IIIb}) {
        const auto f = strata::fiber_type(t, n);
        types[strata::to_string(t)] = to_json(f);
        const Integer n2 = Integer(n) * n;
        if (n >= 3 && t == strata::PointType::IIIa) {
            r.passed = r.passed && f.total() == n2;
        }
        if (n >= 3 && t == strata::PointType::IIIb) {
            r.passed = r.passed && f.total() == 3 * n2 && f.components.size() == 2 &&
                       f.components[0].count == 2 * n2 && f.components[1].count == n2;
        }
    }
    r.outputs["fiber_types"] = types;
    Json summary = Json::object();
    for (const char* t : {"IIIa", "IIIb"}) {
        summary[t] = types[t]["total"];
    }
    r.outputs["totals"] = summary;
    r.citations = {kFiberTypes, kKummer};
    return r;
}

Report reproduce_g2_ledger(long n) {
    Report r;
    r.command = "reproduce g2-proof-ledger";
    r.inputs = {{"n", n}};
    const Integer mu = strata::group_order_psl2(n);
    r.outputs["mu"] = num(mu);
    r.outputs["boundary_degree_12L_minus_B"] = rat(strata::boundary_degree(12, 1, n));
    const auto k = divisor::canonical_class(2, n);
    r.outputs["K"] = divisor::to_string(k);
    r.outputs["K_humbert"] = divisor::to_string(divisor::humbert_decompose(k));
    const auto res = divisor::restrict_to_boundary(k);
    const bool round_trip = divisor::expand_restriction(res, n) == res.intermediate;
    r.outputs["K_restricted"] = {{"pullback", to_json(res.pullback)}, {"mbar_coefficient", rat(res.mbar_coefficient)},
                                 {"intermediate", to_json(res.intermediate)}, {"round_trip", round_trip}};
    const auto rep = strata::check_minus_nD_nef(n);
    const Rational expected_fiber = Rational(2 * n * n);
    r.outputs["minus_nD"] = {{"fiber_degree", rat(rep.fiber_degree)}, {"section_degree", rat(rep.section_degree)},
                             {"nef_on_model", rep.nef_on_model}};
    r.passed = round_trip && rep.section_degree == 0 && rep.fiber_degree == expected_fiber;
    r.citations = {kBoundaryDegree, kHumbert, kRestriction, kShioda};
    return r;
}

Report reproduce_certificate(long p, int box_radius) {
    Report r;
    r.command = "reproduce prop2.5-certificate";
    const Integer n = 8 * p * p;
    r.inputs = {{"p", p}, {"n", num(n)}, {"box_radius", box_radius}};
    Json rows = Json::array();
    std::size_t count = 0;
    for (long j1 = 0; j1 < 2 * p; ++j1) {
        for (long j2 = 0; j2 < 2 * p; ++j2) {
            const RatVector mp = {Rational(j1, 2 * p), Rational(j2, 2 * p)};
            theta::SectionSpec spec{{theta::ThetaCharacteristic(mp, mp, p)}, n, 1};
            const auto rep = theta::check_extension(spec, {{0, -1}, {0, 0}, {0, 1}}, box_radius);
            r.passed = r.passed && rep.passed;
            ++count;
            rows.push_back({{"m_prime", rat_vec(mp)}, {"min_T2_exponent", rat(rep.charts[1].min_exponent)},
                            {"passed", rep.passed}});
        }
    }
    r.outputs = {{"characteristics", count}, {"results", rows}};
    r.citations = {kThetaExtension, kThetaExponents};
    return r;
}

// ---------------------------------------------------------------- rendering

void render_text(const Json& report, std::ostream& out) {
    out << report["command"].get<std::string>() << ": " << (report["passed"].get<bool>() ? "PASS" : "FAIL") << '\n';
    for (const auto& [key, value] : report["outputs"].items()) {
        if (value.is_array() && !value.empty() && value.front().is_object()) {
            out << key << ":\n";
            std::vector<std::string> cols;
            for (const auto& [k, v] : value.front().items()) {
                if (!v.is_structured()) {
                    cols.push_back(k);
                }
            }
            for (const auto& c : cols) {
                out << "  " << c;
            }
            out << '\n';
            for (const auto& row : value) {
                for (const auto& c : cols) {
                    const auto& cell = row.contains(c) ? row.at(c) : Json(nullptr);
                    out << "  " << (cell.is_string() ? cell.get<std::string>() : cell.dump());
                }
                out << '\n';
            }
        } else {
            out << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
        }
    }
    for (const auto& c : report["citations"]) {
        out << "cite: " << c.get<std::string>() << '\n';
    }
}

} // namespace

const std::vector<std::string>& reproduce_targets() {
    static const std::vector<std::string> t = {"thm0.2-boundary", "thm1.1-table", "prop2.4-counts", "g2-proof-ledger",
                                               "prop2.5-certificate"};
    return t;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact nef-cone and boundary computations for A*_g(n)", "nefcone"};
    app.fallthrough();
    app.require_subcommand(1);
    bool json = false;
    double tolerance = theta::kDefaultComparisonTolerance;
    std::uint64_t seed = 1;
    int box_radius = 0;
    app.add_flag("--json", json, "print the report as JSON");
    app.add_option("--tolerance", tolerance, "numeric comparison tolerance");
    app.add_option("--seed", seed, "seed for numeric sampling");
    app.add_option("--box-radius", box_radius, "radius of the lattice box for theta scans");

    int g = 0;
    long n = 0;
    std::string a_text, b_text;
    bool table = false, verify = false;
    std::string point_type, target;
    ThetaFlags tf;
    std::string tau_text, z_text;
    int radius = 0;
    std::size_t samples = 20;
    long p = 1;
    std::function<Report()> run;

    auto* nef = app.add_subcommand("nef-check", "nef test of aL - bD with a witness curve on failure");
    nef->add_option("--g", g, "genus")->required();
    nef->add_option("--n", n, "level")->required();
    nef->add_option("--a", a_text, "coefficient of L")->required();
    nef->add_option("--b", b_text, "b in aL - bD")->required();
    nef->callback([&] { run = [&] { return cmd_nef_check(g, n, a_text, b_text); }; });

    auto* kc = app.add_subcommand("k-class", "canonical class and its nef margin");
    kc->add_option("--g", g, "genus")->required();
    kc->add_option("--n", n, "level")->required();
    kc->callback([&] { run = [&] { return cmd_k_class(g, n); }; });

    auto* gt = app.add_subcommand("general-type", "L-coefficient of K in the general-type criterion");
    gt->add_flag("--table", table, "print the whole table");
    gt->add_option("--g", g, "genus");
    gt->add_option("--n", n, "level");
    gt->callback([&] { run = [&] { return cmd_general_type(table, g, n); }; });

    auto* ch = app.add_subcommand("charts", "monomial chart maps");
    g = 3;
    ch->add_option("--g", g, "genus (2 or 3)");
    ch->add_flag("--verify", verify, "check the chart identities");
    ch->callback([&] { run = [&] { return cmd_charts(g, verify); }; });

    auto* th = app.add_subcommand("theta", "theta series computations");
    th->require_subcommand(1);
    auto add_theta_flags = [&](CLI::App* sub) {
        sub->add_option("--spec", tf.spec, "JSON spec (inline or file path)");
        sub->add_option("--m-prime", tf.m_prime, "comma separated m'");
        sub->add_option("--m-dblprime", tf.m_dblprime, "comma separated m''");
        sub->add_option("--p", tf.p, "denominator scale");
        sub->add_option("--level", tf.level, "level n");
    };
    auto* th_order = th->add_subcommand("order", "certified valuation of a theta product along a boundary variable");
    add_theta_flags(th_order);
    th_order->add_option("--variable", tf.variable, "T1, T2, T4, T5 or T6");
    th_order->callback([&] { run = [&] { return cmd_theta_order(tf, box_radius); }; });
    auto* th_cert = th->add_subcommand("certify", "extension certificate over the charts nu(n, m)");
    add_theta_flags(th_cert);
    th_cert->callback([&] { run = [&] { return cmd_theta_certify(tf, box_radius); }; });
    auto* th_eval = th->add_subcommand("eval", "numeric value of a theta series");
    add_theta_flags(th_eval);
    th_eval->add_option("--tau", tau_text, "JSON [[[re, im], ...], ...]; default i*I");
    th_eval->add_option("--z", z_text, "JSON [[re, im], ...]; default 0");
    th_eval->add_option("--radius", radius, "truncation radius; default from the tail tolerance");
    th_eval->callback([&] {
        run = [&] {
            return cmd_theta_eval(tf, tau_text, z_text, radius,
                                  tolerance < theta::kDefaultComparisonTolerance ? tolerance
                                                                                 : theta::kDefaultTailTolerance);
        };
    });
    auto* th_tr = th->add_subcommand("transform", "randomized check of the transformation laws");
    add_theta_flags(th_tr);
    th_tr->add_option("--samples", samples, "number of samples");
    th_tr->callback([&] { run = [&] { return cmd_theta_transform(tf, samples, seed, tolerance); }; });

    auto* st = app.add_subcommand("strata", "Satake strata");
    st->add_option("--g", g, "genus")->required();
    st->add_option("--n", n, "level")->required();
    st->callback([&] { run = [&] { return cmd_strata(g, n); }; });

    auto* cu = app.add_subcommand("cusps", "cusp enumeration");
    cu->add_option("--g", g, "genus")->required();
    cu->add_option("--n", n, "level")->required();
    cu->callback([&] { run = [&] { return cmd_cusps(g, n); }; });

    auto* sh = app.add_subcommand("shioda", "intersection model on the Shioda modular surface");
    sh->add_option("--n", n, "level")->required();
    sh->callback([&] { run = [&] { return cmd_shioda(n); }; });

    auto* ft = app.add_subcommand("fiber-type", "component inventory of a boundary fiber");
    ft->add_option("type", point_type, "I, II, IIIa or IIIb")->required();
    ft->add_option("--n", n, "level")->required();
    ft->callback([&] { run = [&] { return cmd_fiber_type(point_type, n); }; });

    auto* rp = app.add_subcommand("reproduce", "composite checks");
    rp->add_option("target", target, "one of the reproduce targets")->required()->check(CLI::IsMember(reproduce_targets()));
    rp->add_option("--g", g, "genus (thm0.2-boundary)");
    rp->add_option("--n", n, "level");
    rp->add_option("--p", p, "denominator scale (prop2.5-certificate)");
    rp->callback([&] {
        run = [&] {
            if (target == "thm0.2-boundary") {
                return reproduce_boundary(g == 0 ? 2 : g, n == 0 ? 4 : n);
            }
            if (target == "thm1.1-table") {
                return reproduce_table();
            }
            if (target == "prop2.4-counts") {
                return reproduce_counts(n == 0 ? 3 : n);
            }
            if (target == "g2-proof-ledger") {
                return reproduce_g2_ledger(n == 0 ? 3 : n);
            }
            return reproduce_certificate(p, box_radius > 0 ? box_radius : 4);
        };
    });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    try {
        const Report rep = run();
        const Json j = to_json(rep);
        if (json) {
            out << j.dump(2) << '\n';
        } else {
            render_text(j, out);
        }
        return rep.passed ? 0 : 1;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace nefcone::cli
