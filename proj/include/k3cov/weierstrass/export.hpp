#pragma once

#include "k3cov/ellk3/heights.hpp"
#include "k3cov/weierstrass/curves.hpp"

namespace k3cov {

// Which verified sections of which curves make up an ellk3 fixture, plus the
// intersection numbers that cannot be derived from the equations.
struct FixtureRecipe {
    struct Source {
        std::string file;  // relative to the data directory
        std::vector<std::string> sections;
    };
    std::string name;
    std::vector<Source> curves;
    std::map<std::pair<std::string, std::string>, long> intersections;
    std::optional<Integer> expected_ns_det;
    std::vector<std::string> notes;
};

inline std::pair<std::string, std::string> parse_pair_key(const std::string& key) {
    auto dot = key.find('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 == key.size()) throw ParseError("intersection key must be 'A.B': '" + key + "'", 0);
    return {key.substr(0, dot), key.substr(dot + 1)};
}

inline FixtureRecipe recipe_from_json(const nlohmann::json& j) {
    FixtureRecipe r;
    try {
        r.name = j.at("name").get<std::string>();
        for (const auto& c : j.at("curves"))
            r.curves.push_back({c.at("file").get<std::string>(), c.value("sections", std::vector<std::string>{})});
        if (j.contains("intersections"))
            for (const auto& [k, v] : j.at("intersections").items()) r.intersections[parse_pair_key(k)] = v.get<long>();
        if (j.contains("expected_ns_det")) r.expected_ns_det = Integer(j.at("expected_ns_det").get<std::string>());
        if (j.contains("notes")) r.notes = j.at("notes").get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("recipe: ") + e.what(), 0);
    }
    if (r.curves.empty()) throw ParseError("recipe lists no curves", 0);
    return r;
}

inline FixtureRecipe load_recipe(const std::string& path) { return recipe_from_json(read_json_file(path)); }

struct ExportResult {
    EllipticK3Model model;
    std::vector<CurveReport> reports;
};

inline ExportResult export_fixture(const FixtureRecipe& recipe, const std::vector<CurveReport>& reports) {
    if (reports.size() != recipe.curves.size()) throw Error("one report per recipe curve expected");
    const auto& base = reports.front();
    std::vector<Fibre> fibres;
    std::map<std::string, std::size_t> position;
    for (const auto& f : base.fibres) {
        position[f.label] = fibres.size();
        fibres.push_back({f.label, f.type});
    }
    EllipticK3Model m;
    m.name = recipe.name;
    m.fibres = fibres;
    for (std::size_t c = 0; c < reports.size(); ++c) {
        const auto& rep = reports[c];
        if (rep.fibres.size() != fibres.size()) throw ComputationError("curves of " + recipe.name + " have different fibre sets");
        std::vector<std::size_t> perm;
        for (const auto& f : rep.fibres) {
            auto it = position.find(f.label);
            if (it == position.end() || !(fibres[it->second].type == f.type))
                throw ComputationError("fibre " + f.label + " of " + rep.name + " does not match " + base.name);
            perm.push_back(it->second);
        }
        for (const auto& n : recipe.curves[c].sections) {
            const auto& s = rep.section(n);
            if (!s.on_curve) throw ComputationError("unverified section present: " + n);
            if (m.has_section(n)) throw ComputationError("section " + n + " exported twice");
            SectionRecord r;
            r.name = n;
            r.po = s.po;
            r.torsion = s.two_torsion;
            r.incidence.assign(fibres.size(), 0);
            for (std::size_t k = 0; k < perm.size(); ++k) r.incidence[perm[k]] = s.incidence[k];
            m.sections.push_back(r);
        }
    }
    // a section verified on several curves must carry the same data on each
    for (const auto& rep : reports)
        for (const auto& s : rep.sections) {
            if (!s.on_curve || !m.has_section(s.name)) continue;
            const auto& r = m.section(s.name);
            std::vector<int> inc(fibres.size(), 0);
            for (std::size_t k = 0; k < rep.fibres.size(); ++k) inc[position.at(rep.fibres[k].label)] = s.incidence[k];
            if (r.po != s.po || r.incidence != inc || r.torsion != s.two_torsion)
                throw ComputationError("section " + s.name + " differs between the curves of " + recipe.name);
        }
    std::vector<std::string> supplied, derived, missing;
    for (const auto& [key, val] : recipe.intersections) {
        auto& a = m.section(key.first);
        m.section(key.second);
        if (val < 0) throw ComputationError("negative intersection number for (" + key.first + "." + key.second + ")");
        a.intersections[key.second] = val;
        m.section(key.second).intersections[key.first] = val;
        supplied.push_back(key.first + "." + key.second);
    }
    // a torsion section has height pairing 0 with everything
    for (std::size_t i = 0; i < m.sections.size(); ++i)
        for (std::size_t j = i + 1; j < m.sections.size(); ++j) {
            auto &P = m.sections[i], &Q = m.sections[j];
            if (!P.torsion && !Q.torsion) {
                if (!P.intersections.count(Q.name)) missing.push_back(P.name + "." + Q.name);
                continue;
            }
            Rational contr = 0;
            for (std::size_t v = 0; v < fibres.size(); ++v) contr += contribution(fibres[v].type, P.incidence[v], Q.incidence[v]);
            Rational pq = Rational(2 + P.po + Q.po) - contr;
            if (!is_integer(pq) || pq < 0)
                throw ComputationError("torsion section " + (P.torsion ? P.name : Q.name) + " is inconsistent with " +
                                       (P.torsion ? Q.name : P.name) + ": (P.Q) would be " + pq.get_str());
            long val = pq.get_num().get_si();
            if (auto it = P.intersections.find(Q.name); it != P.intersections.end() && it->second != val)
                throw ComputationError("supplied (" + P.name + "." + Q.name + ") contradicts torsion height 0");
            P.intersections[Q.name] = val;
            Q.intersections[P.name] = val;
            derived.push_back(P.name + "." + Q.name);
        }
    for (const auto& s : m.sections)
        if (s.torsion) {
            std::set<int> g;
            for (std::size_t v = 0; v < fibres.size(); ++v)
                if (s.incidence[v]) g.insert(static_cast<int>(v));
            if (!g.empty()) m.torsion_glue.push_back(g);
        }
    m.expected_ns_det = recipe.expected_ns_det;
    m.notes = recipe.notes;
    auto join = [](const std::vector<std::string>& v) {
        std::string s;
        for (const auto& e : v) s += (s.empty() ? "" : ", ") + e;
        return s;
    };
    std::string sources;
    for (const auto& c : recipe.curves) sources += (sources.empty() ? "" : ", ") + c.file;
    m.notes.push_back("generated from " + sources + "; incidences and (P.O) computed from the equations");
    if (!supplied.empty()) m.notes.push_back("intersection numbers supplied as input: " + join(supplied));
    if (!derived.empty()) m.notes.push_back("intersection numbers derived from torsion height 0: " + join(derived));
    if (!missing.empty()) m.notes.push_back("input required, not supplied: " + join(missing));
    m.validate();
    return {m, reports};
}

inline ExportResult export_fixture(const FixtureRecipe& recipe, const std::string& base_dir = data_dir()) {
    std::vector<CurveReport> reports;
    for (const auto& c : recipe.curves) reports.push_back(analyze_curve(load_curve(base_dir + "/" + c.file)));
    return export_fixture(recipe, reports);
}

}  // namespace k3cov
