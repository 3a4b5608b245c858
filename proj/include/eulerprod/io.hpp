#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "eulerprod/analytic.hpp"
#include "eulerprod/frob_analytic.hpp"

namespace eulerprod {

using Json = nlohmann::ordered_json;

// ---- exact scalars <-> JSON -------------------------------------------

inline Json to_json(const GaussianRational& z) {
    if (z.im == 0) return z.re.get_str();
    return Json{{"re", z.re.get_str()}, {"im", z.im.get_str()}};
}

inline GaussianRational gaussian_from_json(const Json& j) {
    if (j.is_string()) return GaussianRational(parse_rational(j.get<std::string>()));
    if (j.is_number_integer()) return GaussianRational(Rational(j.get<long>()));
    if (j.is_object()) {
        Rational re = j.contains("re") ? parse_rational(j.at("re").get<std::string>()) : Rational(0);
        Rational im = j.contains("im") ? parse_rational(j.at("im").get<std::string>()) : Rational(0);
        return {re, im};
    }
    throw ValidationError("expected a rational string or {re, im} object");
}

inline Json to_json(const Cyclotomic& z) {
    if (z.is_rational()) return z.coords()[0].get_str();
    Json coords = Json::array();
    for (const auto& c : z.coords()) coords.push_back(c.get_str());
    return Json{{"conductor", z.conductor()}, {"coords", coords}};
}

inline Cyclotomic cyclotomic_from_json(const Json& j) {
    if (j.is_string()) return Cyclotomic(parse_rational(j.get<std::string>()));
    if (j.is_number_integer()) return Cyclotomic(Rational(j.get<long>()));
    if (j.is_object() && j.contains("conductor")) {
        int n = j.at("conductor").get<int>();
        std::vector<Rational> coords;
        for (const auto& c : j.at("coords")) coords.push_back(parse_rational(c.get<std::string>()));
        return Cyclotomic::from_coords(n, std::move(coords));
    }
    if (j.is_object()) {
        GaussianRational g = gaussian_from_json(j);
        return Cyclotomic::from_gaussian(g);
    }
    throw ValidationError("expected a cyclotomic entry (string or {conductor, coords})");
}

// ---- specs -------------------------------------------------------------

inline EulerFactorSpec euler_factor_from_json(const Json& j) {
    std::string kind_str = j.value("kind", "poly");
    FactorKind kind;
    if (kind_str == "poly" || kind_str == "polynomial")
        kind = FactorKind::Polynomial;
    else if (kind_str == "rational" || kind_str == "rational-function")
        kind = FactorKind::RationalFunction;
    else if (kind_str == "reciprocal" || kind_str == "reciprocal-polynomial")
        kind = FactorKind::ReciprocalPolynomial;
    else
        throw ValidationError("unknown factor kind: " + kind_str);
    GPoly num, den;
    if (j.contains("num"))
        for (const auto& c : j.at("num")) num.push_back(gaussian_from_json(c));
    if (j.contains("den"))
        for (const auto& c : j.at("den")) den.push_back(gaussian_from_json(c));
    int depth_hint = j.value("depth_hint", 0);
    return EulerFactorSpec::make(kind, std::move(num), std::move(den), depth_hint);
}

inline Json to_json(const EulerFactorSpec& spec) {
    Json num = Json::array(), den = Json::array();
    for (const auto& c : spec.num) num.push_back(to_json(c));
    for (const auto& c : spec.den) den.push_back(to_json(c));
    const char* kind = spec.kind == FactorKind::Polynomial          ? "poly"
                       : spec.kind == FactorKind::RationalFunction ? "rational-function"
                                                                   : "reciprocal-polynomial";
    return Json{{"kind", kind}, {"num", num}, {"den", den}};
}

inline FiniteGroupData group_from_json(const Json& j) {
    FiniteGroupData g;
    const Json& classes = j.at("classes");
    const Json& power = j.at("power_map");
    if (classes.size() != power.size())
        throw ValidationError("power_map needs one row per class");
    for (std::size_t c = 0; c < classes.size(); ++c) {
        ConjClass cc;
        cc.size = classes[c].at("size").get<long>();
        cc.element_order = classes[c].at("order").get<int>();
        for (const auto& v : power[c]) cc.power.push_back(v.get<int>());
        g.classes.push_back(std::move(cc));
    }
    g.validate();
    return g;
}

inline CharacterTable table_from_json(const Json& j, const std::string& name = "") {
    CharacterTable t;
    t.name = name;
    t.group = group_from_json(j.at("group"));
    for (const auto& row : j.at("table")) {
        std::vector<Cyclotomic> values;
        for (const auto& v : row) values.push_back(cyclotomic_from_json(v));
        t.irreducibles.emplace_back(std::move(values));
    }
    int id = t.group.identity_class();
    for (const auto& chi : t.irreducibles) {
        if (chi.size() != t.group.classes.size())
            throw ValidationError("character row length does not match class count");
        const Cyclotomic& dim = chi.at(id);
        if (!dim.is_rational_integer())
            throw ValidationError("character dimension at identity must be a positive integer");
        t.dimensions.push_back(dim.rational_value().get_num().get_si());
    }
    t.validate();
    return t;
}

inline bool json_is_frobenian_spec(const Json& j) { return j.contains("group"); }

inline FrobenianFactorSpec frobenian_from_json(const Json& j) {
    FrobenianFactorSpec spec;
    spec.table = table_from_json(j);
    int max_degree = 0;
    for (const auto& c : j.at("coeffs")) max_degree = std::max(max_degree, c.at("degree").get<int>());
    spec.coeffs.assign(static_cast<std::size_t>(max_degree),
                       ClassFunction::constant(spec.table.class_count(), Cyclotomic()));
    for (const auto& c : j.at("coeffs")) {
        int degree = c.at("degree").get<int>();
        if (degree < 1) throw ValidationError("coefficient degree must be >= 1");
        std::vector<Cyclotomic> values;
        for (const auto& v : c.at("values")) values.push_back(cyclotomic_from_json(v));
        spec.coeffs[static_cast<std::size_t>(degree - 1)] = ClassFunction(std::move(values));
    }
    if (j.contains("exceptional"))
        for (const auto& e : j.at("exceptional"))
            spec.exceptional.emplace_back(e.at("p").get<long>(),
                                          euler_factor_from_json(e.at("factor")));
    if (j.contains("dirichlet")) {
        FrobenianFactorSpec::DirichletData dd;
        dd.modulus = j.at("dirichlet").at("modulus").get<long>();
        for (const auto& r : j.at("dirichlet").at("class_residues"))
            dd.class_residue.push_back(r.get<long>());
        spec.dirichlet = dd;
    }
    spec.validate_shape();
    return spec;
}

// ---- decompositions and reports ----------------------------------------

inline Json to_json(const RadiusEnclosure& r) {
    if (!r.finite) return "infinity";
    if (r.exact) return Json{{"exact", r.lo.get_str()}};
    return Json{{"lo", r.lo.get_str()}, {"hi", r.hi.get_str()}};
}

inline Json to_json(const ZetaDecomposition& d) {
    Json b = Json::array();
    for (const auto& v : d.b) b.push_back(to_json(v));
    Json out{{"kind", "zeta-decomposition"},
             {"depth", d.depth},
             {"b", b},
             {"all_integral", d.all_integral},
             {"radius", to_json(d.radius)}};
    if (d.epsilon > 0) {
        out["epsilon"] = d.epsilon.get_str();
        out["exceptional_prime_bound"] = d.exceptional_prime_bound.get_str();
    }
    return out;
}

inline ZetaDecomposition zeta_decomposition_from_json(const Json& j) {
    ZetaDecomposition d;
    d.depth = j.at("depth").get<int>();
    for (const auto& v : j.at("b")) d.b.push_back(gaussian_from_json(v));
    d.all_integral = j.value("all_integral", true);
    return d;
}

inline Json to_json(const FrobDecomposition& d) {
    auto matrix = [](const std::vector<std::vector<Cyclotomic>>& m) {
        Json rows = Json::array();
        for (const auto& row : m) {
            Json r = Json::array();
            for (const auto& v : row) r.push_back(to_json(v));
            rows.push_back(r);
        }
        return rows;
    };
    return Json{{"kind", "frobenian-decomposition"},
                {"depth", d.depth},
                {"r", matrix(d.r)},
                {"b", matrix(d.b)},
                {"all_integral", d.all_integral}};
}

inline FrobDecomposition frob_decomposition_from_json(const Json& j) {
    FrobDecomposition d;
    d.depth = j.at("depth").get<int>();
    for (const auto& row : j.at("b")) {
        std::vector<Cyclotomic> r;
        for (const auto& v : row) r.push_back(cyclotomic_from_json(v));
        d.b.push_back(std::move(r));
    }
    for (const auto& row : j.at("r")) {
        std::vector<Cyclotomic> r;
        for (const auto& v : row) r.push_back(cyclotomic_from_json(v));
        d.r.push_back(std::move(r));
    }
    d.all_integral = j.value("all_integral", true);
    return d;
}

inline Json to_json(const SingularityReport& rep) {
    Json entries = Json::array();
    for (const auto& e : rep.entries) {
        const char* kind = e.kind == SingularityKind::ZetaPower          ? "zeta-power"
                           : e.kind == SingularityKind::LPower           ? "L-power"
                                                                         : "exceptional-factor";
        entries.push_back(Json{{"location", e.location.get_str()},
                               {"order", to_json(e.order)},
                               {"kind", kind},
                               {"branch_cut", e.branch_cut},
                               {"possible_cancellation", e.possible_cancellation},
                               {"source", e.source}});
    }
    Json caveats = Json::array();
    for (const auto& c : rep.caveats) caveats.push_back(c);
    return Json{{"kind", "singularity-report"},
                {"entries", entries},
                {"caveats", caveats},
                {"branch_cut_needed", rep.branch_cut_needed}};
}

inline Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open input file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

}  // namespace eulerprod
