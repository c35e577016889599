#pragma once

#include "k3cov/exactmath/rational.hpp"

#include <json.hpp>

#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace k3cov {

struct KodairaType {
    enum Kind { In, I0star } kind = In;
    int n = 1;

    static KodairaType I(int n) {
        if (n < 1) throw ParseError("I_n needs n >= 1", 0);
        return {In, n};
    }
    static KodairaType I0s() { return {I0star, 0}; }
    static KodairaType parse(const std::string& s) {
        std::string t;
        for (char c : s)
            if (c != '_' && c != ' ' && c != '^') t += c;
        if (t == "I0*" || t == "I0star") return I0s();
        if (t.size() >= 2 && (t[0] == 'I' || t[0] == 'i')) {
            std::size_t used = 0;
            int n = 0;
            try {
                n = std::stoi(t.substr(1), &used);
            } catch (const std::exception&) {
                throw ParseError("unknown Kodaira type '" + s + "'", 0);
            }
            if (used + 1 != t.size()) throw ParseError("unknown Kodaira type '" + s + "'", 0);
            return I(n);
        }
        throw ParseError("unknown Kodaira type '" + s + "'", 0);
    }

    int euler() const { return kind == In ? n : 6; }
    // number of non-identity components
    int root_rank() const { return kind == In ? n - 1 : 4; }
    bool reducible() const { return root_rank() > 0; }
    // component indices a section may meet: I_n 0..n-1, I_0* 0..3 (simple components)
    int section_components() const { return kind == In ? n : 4; }
    std::string str() const { return kind == In ? "I" + std::to_string(n) : "I0*"; }
    bool operator==(const KodairaType&) const = default;
};

struct Fibre {
    std::string label;
    KodairaType type;
};

struct SectionRecord {
    std::string name;
    long po = 0;
    std::vector<int> incidence;  // one entry per fibre of the model
    bool torsion = false;
    std::map<std::string, long> intersections;
};

class EllipticK3Model {
public:
    std::string name;
    std::vector<Fibre> fibres;
    std::vector<SectionRecord> sections;
    std::vector<std::set<int>> torsion_glue;  // fibre-index subsets (0-based)
    std::optional<Integer> expected_ns_det;
    std::vector<std::string> notes;

    EllipticK3Model() = default;
    EllipticK3Model(std::string n, std::vector<Fibre> f, std::vector<SectionRecord> s = {}) : name(std::move(n)), fibres(std::move(f)), sections(std::move(s)) {
        validate();
    }

    void validate() const {
        int e = 0;
        for (const auto& f : fibres) e += f.type.euler();
        if (e != 24) throw ComputationError("fibre configuration has Euler number " + std::to_string(e) + ", expected 24");
        std::set<std::string> names{"O"};
        for (const auto& s : sections) {
            if (!names.insert(s.name).second) throw ComputationError("duplicate section name " + s.name);
            if (s.po < 0) throw ComputationError("negative (P.O) for " + s.name);
            if (s.incidence.size() != fibres.size()) throw ComputationError("incidence of " + s.name + " has wrong length");
            for (std::size_t v = 0; v < fibres.size(); ++v)
                if (s.incidence[v] < 0 || s.incidence[v] >= fibres[v].type.section_components())
                    throw ComputationError("invalid component index for " + s.name + " at fibre " + fibres[v].label);
        }
        for (const auto& s : sections)
            for (const auto& [other, val] : s.intersections) {
                if (!names.count(other) || other == "O") throw ComputationError("intersection with unknown section " + other);
                const auto& o = section(other);
                auto it = o.intersections.find(s.name);
                if (it != o.intersections.end() && it->second != val)
                    throw ComputationError("asymmetric intersection data for " + s.name + ", " + other);
            }
        for (const auto& g : torsion_glue)
            for (int v : g)
                if (v < 0 || v >= static_cast<int>(fibres.size())) throw ComputationError("glue refers to missing fibre");
    }

    bool has_section(const std::string& n) const {
        for (const auto& s : sections)
            if (s.name == n) return true;
        return false;
    }
    const SectionRecord& section(const std::string& n) const {
        for (const auto& s : sections)
            if (s.name == n) return s;
        throw ComputationError("unknown section " + n);
    }
    SectionRecord& section(const std::string& n) {
        for (auto& s : sections)
            if (s.name == n) return s;
        throw ComputationError("unknown section " + n);
    }

    // (P.Q) for distinct sections; (P.P) = -2
    long intersection(const std::string& a, const std::string& b) const {
        if (a == b) return -2;
        if (a == "O") return section(b).po;
        if (b == "O") return section(a).po;
        const auto& s = section(a);
        if (auto it = s.intersections.find(b); it != s.intersections.end()) return it->second;
        const auto& t = section(b);
        if (auto it = t.intersections.find(a); it != t.intersections.end()) return it->second;
        throw ComputationError("intersection number unspecified: (" + a + "." + b + ")");
    }

    bool all_I2() const {
        for (const auto& f : fibres)
            if (!(f.type == KodairaType::I(2))) return false;
        return true;
    }
    std::vector<std::string> free_sections() const {
        std::vector<std::string> out;
        for (const auto& s : sections)
            if (!s.torsion) out.push_back(s.name);
        return out;
    }
    std::vector<std::string> torsion_sections() const {
        std::vector<std::string> out;
        for (const auto& s : sections)
            if (s.torsion) out.push_back(s.name);
        return out;
    }
};

inline nlohmann::ordered_json to_json(const EllipticK3Model& m) {
    nlohmann::ordered_json j;
    j["name"] = m.name;
    j["fibres"] = nlohmann::ordered_json::array();
    for (const auto& f : m.fibres) j["fibres"].push_back({{"label", f.label}, {"type", f.type.str()}});
    j["sections"] = nlohmann::ordered_json::array();
    for (const auto& s : m.sections) {
        nlohmann::ordered_json r;
        r["name"] = s.name;
        r["po"] = s.po;
        r["incidence"] = s.incidence;
        r["torsion"] = s.torsion;
        nlohmann::ordered_json in = nlohmann::ordered_json::object();
        for (const auto& [k, v] : s.intersections) in[k] = v;
        r["intersections"] = in;
        j["sections"].push_back(r);
    }
    if (!m.torsion_glue.empty()) {
        j["torsion_glue"] = nlohmann::ordered_json::array();
        for (const auto& g : m.torsion_glue) j["torsion_glue"].push_back(std::vector<int>(g.begin(), g.end()));
    }
    if (m.expected_ns_det) j["expected_ns_det"] = m.expected_ns_det->get_str();
    if (!m.notes.empty()) j["notes"] = m.notes;
    return j;
}

inline EllipticK3Model model_from_json(const nlohmann::json& j) {
    try {
        EllipticK3Model m;
        m.name = j.value("name", std::string("model"));
        for (const auto& f : j.at("fibres")) m.fibres.push_back({f.at("label").get<std::string>(), KodairaType::parse(f.at("type").get<std::string>())});
        if (j.contains("sections"))
            for (const auto& r : j.at("sections")) {
                SectionRecord s;
                s.name = r.at("name").get<std::string>();
                s.po = r.value("po", 0L);
                s.incidence = r.at("incidence").get<std::vector<int>>();
                s.torsion = r.value("torsion", false);
                if (r.contains("intersections"))
                    for (const auto& [k, v] : r.at("intersections").items()) s.intersections[k] = v.get<long>();
                m.sections.push_back(s);
            }
        if (j.contains("torsion_glue"))
            for (const auto& g : j.at("torsion_glue")) {
                auto v = g.get<std::vector<int>>();
                m.torsion_glue.emplace_back(v.begin(), v.end());
            }
        if (j.contains("expected_ns_det")) {
            const auto& d = j.at("expected_ns_det");
            m.expected_ns_det = d.is_string() ? Integer(d.get<std::string>()) : Integer(d.get<long>());
        }
        if (j.contains("notes")) m.notes = j.at("notes").get<std::vector<std::string>>();
        m.validate();
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed model file: ") + e.what(), 0);
    }
}

inline EllipticK3Model load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MissingInput("cannot open model file " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("model file is not valid JSON: ") + e.what(), e.byte);
    }
    return model_from_json(j);
}

inline void save_model(const EllipticK3Model& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ComputationError("cannot write " + path);
    out << to_json(m).dump(2) << "\n";
}

inline std::string data_dir() {
    if (const char* e = std::getenv("K3COV_DATA")) return e;
#ifdef K3COV_DATA_DIR
    return K3COV_DATA_DIR;
#else
    return "data";
#endif
}

// shipped fixture by name, e.g. "model_zeta12"
inline EllipticK3Model fixture(const std::string& name) { return load_model(data_dir() + "/models/" + name + ".json"); }

}  // namespace k3cov
