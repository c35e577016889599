#pragma once

#include "k3cov/weierstrass/analysis.hpp"

#include <fstream>

namespace k3cov {

// Curve input file: declared symbols, ordered definitions, the equation, the
// fibre locations and named section x-coordinates (explicit or pulled back
// along t -> unit * t).
struct SectionSpec {
    std::string name;
    std::optional<std::string> x;
    std::optional<std::pair<std::string, std::string>> pullback;  // (of, unit)
};

struct CurveFile {
    std::string name;
    std::string field = "rational";  // rational | cyc12 | rational-function (parameter m)
    std::vector<std::string> variables{"t"};
    std::vector<std::pair<std::string, std::string>> definitions;
    std::string curve;
    bool roots_of_unity_fibres = false;
    std::vector<std::pair<std::string, std::string>> fibres;  // (label, t-value)
    std::vector<SectionSpec> sections;
};

inline CurveFile curve_from_json(const nlohmann::json& j) {
    CurveFile c;
    try {
        c.name = j.at("name").get<std::string>();
        if (j.contains("field")) c.field = j.at("field").get<std::string>();
        if (c.field != "rational" && c.field != "cyc12" && c.field != "rational-function")
            throw ParseError("unknown coefficient field '" + c.field + "'", 0);
        if (j.contains("variables")) c.variables = j.at("variables").get<std::vector<std::string>>();
        if (j.contains("definitions"))
            for (const auto& d : j.at("definitions")) c.definitions.emplace_back(d.at("name").get<std::string>(), d.at("value").get<std::string>());
        c.curve = j.at("curve").get<std::string>();
        const auto& f = j.at("fibres");
        if (f.is_string()) {
            if (f.get<std::string>() != "roots-of-unity") throw ParseError("unknown fibre list '" + f.get<std::string>() + "'", 0);
            c.roots_of_unity_fibres = true;
        } else {
            for (const auto& e : f) c.fibres.emplace_back(e.at("label").get<std::string>(), e.at("t").get<std::string>());
        }
        if (j.contains("sections"))
            for (const auto& s : j.at("sections")) {
                SectionSpec spec;
                spec.name = s.at("name").get<std::string>();
                if (s.contains("x")) spec.x = s.at("x").get<std::string>();
                if (s.contains("pullback"))
                    spec.pullback = {s.at("pullback").at("of").get<std::string>(), s.at("pullback").at("unit").get<std::string>()};
                if (spec.x.has_value() == spec.pullback.has_value())
                    throw ParseError("section '" + spec.name + "' needs exactly one of x, pullback", 0);
                c.sections.push_back(spec);
            }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("curve file: ") + e.what(), 0);
    }
    return c;
}

inline nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MissingInput("cannot open " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path + ": " + e.what(), e.byte);
    }
}

inline CurveFile load_curve(const std::string& path) { return curve_from_json(read_json_file(path)); }

struct FibreReport {
    std::string label, t, node_x;
    unsigned order = 0;
    KodairaType type;
};

struct SectionReport {
    std::string name, origin, x;
    bool on_curve = false, two_torsion = false;
    long po = 0;
    std::vector<int> incidence;
    std::string certificate;
    std::vector<std::string> notes;
};

struct CurveReport {
    std::string name, field, curve, form, discriminant;
    int order_at_infinity = 0;
    std::vector<FibreReport> fibres;
    std::vector<SectionReport> sections;

    const SectionReport& section(const std::string& n) const {
        for (const auto& s : sections)
            if (s.name == n) return s;
        throw ComputationError("curve " + name + " has no section " + n);
    }
};

template <class K>
SymbolTable<K> build_symbols(const CurveFile& c) {
    SymbolTable<K> st;
    st.variables = c.variables;
    for (const auto& [name, value] : c.definitions) {
        if (st.index_of(name) || st.definitions.count(name)) throw ParseError("symbol '" + name + "' declared twice", 0);
        st.definitions[name] = parse_expression<K>(value, st);
    }
    return st;
}

template <class K>
K parse_constant(const std::string& s, const SymbolTable<K>& st) {
    auto v = parse_expression<K>(s, st);
    if (!v.is_constant()) throw ParseError("expected a constant: '" + s + "'", 0);
    return v.constant_value();
}

template <class K>
std::string certificate_str(const SectionCertificate<K>& c, const std::vector<std::string>& names) {
    if (c.two_torsion) return "cubic(x) = 0";
    if (!c.square) return "";
    const auto& sp = *c.square;
    return "constant (" + sp.c_num.str(names) + ")/(" + sp.c_den.str(names) + "), square root " + sp.s.str(names) +
           (sp.r.is_constant() ? "" : ", residue " + sp.r.str(names));
}

template <class K>
CurveReport analyze_curve_in(const CurveFile& c) {
    SymbolTable<K> st = build_symbols<K>(c);
    WModel<K> m = parse_model<K>(c.curve, st);
    const auto& names = st.variables;
    CurveReport rep;
    rep.name = c.name;
    rep.field = c.field;
    rep.curve = c.curve;
    rep.form = m.form == WModel<K>::Form::Short ? "short" : m.form == WModel<K>::Form::Factored ? "factored" : "general";
    rep.discriminant = m.discriminant().str(names);
    rep.order_at_infinity = order_at_infinity(m);

    std::vector<std::pair<std::string, RatFunc<K>>> cand;
    if (c.roots_of_unity_fibres) {
        if constexpr (std::is_same_v<K, Cyc12>) {
            cand = root_of_unity_candidates(m.nvars());
        } else {
            throw ParseError("roots-of-unity fibres need cyclotomic coefficients", 0);
        }
    } else {
        for (const auto& [label, t0] : c.fibres) cand.emplace_back(label, parse_expression<K>(t0, st));
    }
    auto fibres = singular_fibres(m, cand, c.roots_of_unity_fibres);
    for (const auto& f : fibres) rep.fibres.push_back({f.label, f.t0.str(names), f.node_x.str(names), f.order, f.type});

    std::map<std::string, RatFunc<K>> xs;
    for (const auto& s : c.sections) {
        if (xs.count(s.name)) throw ParseError("section '" + s.name + "' listed twice", 0);
        SectionReport r;
        r.name = s.name;
        RatFunc<K> x;
        if (s.x) {
            x = parse_expression<K>(*s.x, st);
            r.origin = "explicit";
        } else {
            auto it = xs.find(s.pullback->first);
            if (it == xs.end()) throw ParseError("pullback of unknown section '" + s.pullback->first + "'", 0);
            x = pullback_section(m, it->second, parse_constant<K>(s.pullback->second, st));
            r.origin = "pullback of " + s.pullback->first + " along t -> " + s.pullback->second + "*t";
        }
        xs[s.name] = x;
        r.x = x.str(names);
        auto cert = verify_section(m, x);
        r.on_curve = cert.on_curve;
        r.two_torsion = cert.two_torsion;
        r.certificate = certificate_str(cert, names);
        if (!cert.note.empty() && !cert.on_curve) r.notes.push_back(cert.note);
        if (r.on_curve) {
            r.po = section_po(m, x);
            auto inc = incidence_of(m, fibres, x);
            r.incidence = inc.incidence;
            r.notes.insert(r.notes.end(), inc.notes.begin(), inc.notes.end());
        }
        rep.sections.push_back(r);
    }
    return rep;
}

inline CurveReport analyze_curve(const CurveFile& c) {
    if (c.field == "cyc12") return analyze_curve_in<Cyc12>(c);
    if (c.field == "rational-function") return analyze_curve_in<FuncField>(c);
    return analyze_curve_in<Rational>(c);
}

inline nlohmann::ordered_json to_json(const CurveReport& r) {
    nlohmann::ordered_json j;
    j["name"] = r.name;
    j["field"] = r.field;
    j["curve"] = r.curve;
    j["form"] = r.form;
    // long expressions (function-field coefficients) are summarized
    j["discriminant"] = r.discriminant.size() <= 4000 ? r.discriminant : "(" + std::to_string(r.discriminant.size()) + " characters, omitted)";
    j["order_at_infinity"] = r.order_at_infinity;
    j["fibres"] = nlohmann::ordered_json::array();
    for (const auto& f : r.fibres)
        j["fibres"].push_back({{"label", f.label}, {"t", f.t}, {"type", f.type.str()}, {"order", f.order}, {"node_x", f.node_x}});
    j["sections"] = nlohmann::ordered_json::array();
    for (const auto& s : r.sections) {
        nlohmann::ordered_json e{{"name", s.name}, {"origin", s.origin}, {"x", s.x}, {"on_curve", s.on_curve}};
        if (s.on_curve) {
            e["two_torsion"] = s.two_torsion;
            e["po"] = s.po;
            std::string inc;
            for (int b : s.incidence) inc += char('0' + b);
            e["incidence"] = inc;
            e["certificate"] = s.certificate;
        }
        if (!s.notes.empty()) e["notes"] = s.notes;
        j["sections"].push_back(e);
    }
    return j;
}

}  // namespace k3cov
