#pragma once

#include "k3cov/ellk3/divisor.hpp"

namespace k3cov {

enum class Construction { EvenBase, EvenPerturbed, OddBase, OddPerturbed, Unspecified };

inline std::string construction_name(Construction c) {
    switch (c) {
        case Construction::EvenBase: return "even-degree base NF + d/2 (O + P1 + P2 + P3)";
        case Construction::EvenPerturbed: return "even-degree base perturbed by a narrow section";
        case Construction::OddBase: return "odd-degree base NF + d (O + Q)";
        case Construction::OddPerturbed: return "odd-degree base perturbed by a narrow section";
        default: return "unspecified";
    }
}

struct PolarizationParams {
    Construction construction = Construction::Unspecified;
    long N = 0, d = 0;
    std::optional<long> qo;    // (Q.O) of the perturbing section
    std::string perturbation;  // its name
};

inline std::string class_str(const DivisorClass& c, const DivisorSpace& X) {
    std::string out;
    for (std::size_t i = 0; i < c.coeffs.size(); ++i) {
        const Rational& a = c.coeffs[i];
        if (a == 0) continue;
        std::string s = a.get_str();
        bool neg = s[0] == '-';
        if (neg) s = s.substr(1);
        if (s.find('/') != std::string::npos) s = "(" + s + ")";
        out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
        out += (s == "1" ? "" : s) + X.names()[i];
    }
    return out.empty() ? "0" : out;
}

// (P.Q) = 2 + (P.O) + (Q.O) - contr - <P,Q> with <P,Q> = 0
inline long orthogonal_intersection(const SectionRecord& p, const SectionRecord& q, const EllipticK3Model& m) {
    Rational contr = 0;
    for (std::size_t v = 0; v < m.fibres.size(); ++v) contr += contribution(m.fibres[v].type, p.incidence[v], q.incidence[v]);
    Rational pq = Rational(2 + p.po + q.po) - contr;
    if (!is_integer(pq) || pq < 0) throw ComputationError("sections " + p.name + ", " + q.name + " cannot be orthogonal: (P.Q) would be " + pq.get_str());
    return pq.get_num().get_si();
}

// Adds the third 2-torsion section when only two are listed (all-I_2 models).
inline EllipticK3Model with_full_two_torsion(EllipticK3Model m) {
    auto tors = m.torsion_sections();
    if (tors.size() >= 3) return m;
    if (tors.size() != 2 || !m.all_I2()) throw ComputationError("model " + m.name + " lacks the three 2-torsion sections");
    const SectionRecord a = m.section(tors[0]), b = m.section(tors[1]);
    std::string prefix = a.name;
    while (!prefix.empty() && std::isdigit(static_cast<unsigned char>(prefix.back()))) prefix.pop_back();
    std::string name;
    for (int k = 1;; ++k) {
        name = prefix + std::to_string(k);
        if (name != "O" && !m.has_section(name)) break;
    }
    SectionRecord t{name, 0, {}, true, {}};
    for (std::size_t v = 0; v < m.fibres.size(); ++v) t.incidence.push_back((a.incidence[v] + b.incidence[v]) % 2);
    if (a.po != 0 || b.po != 0) throw ComputationError("2-torsion sections must be disjoint from O");
    for (auto& s : m.sections) {
        long v = orthogonal_intersection(t, s, m);
        t.intersections[s.name] = v;
        s.intersections[name] = v;
    }
    m.sections.push_back(t);
    m.notes.push_back("section " + name + " = " + a.name + " + " + b.name + " added with intersections from torsion height 0");
    m.validate();
    return m;
}

// Adds a narrow section with (Q.O) = qo whose Shioda projection is orthogonal to
// every listed section.
inline EllipticK3Model with_narrow_section(EllipticK3Model m, const std::string& name, long qo) {
    if (qo < 0) throw ComputationError("(Q.O) must be non-negative");
    if (m.has_section(name)) throw ComputationError("section " + name + " already present");
    SectionRecord q{name, qo, std::vector<int>(m.fibres.size(), 0), false, {}};
    for (auto& s : m.sections) {
        long v = orthogonal_intersection(q, s, m);
        q.intersections[s.name] = v;
        s.intersections[name] = v;
    }
    m.sections.push_back(q);
    m.validate();
    return m;
}

inline std::vector<std::string> three_torsion_sections(const EllipticK3Model& m) {
    auto t = m.torsion_sections();
    if (t.size() != 3) throw ComputationError("model " + m.name + " lacks the three 2-torsion sections");
    return t;
}

// H = NF + d/2 (O + P1 + P2 + P3)
inline DivisorClass build_H_even_d(long N, long d, const DivisorSpace& X) {
    if (d % 2 != 0) throw ComputationError("d/2 not integral");
    if (d < 2) throw ComputationError("d must be at least 2");
    Rational half(d / 2);
    DivisorClass H = Rational(N) * fibre_class(X) + half * section_class(X, "O");
    for (const auto& p : three_torsion_sections(X.model())) H = H + half * section_class(X, p);
    return H;
}

// H = NF + d (O + Q) for a section Q of height 2 with (Q.O) = 2
inline DivisorClass build_H_odd_d(long N, long d, const DivisorSpace& X, const std::string& q = "Q_all") {
    if (d < 1) throw ComputationError("d must be positive");
    const auto& m = X.model();
    if (!m.has_section(q)) throw ComputationError("model " + m.name + " lacks the section " + q);
    if (m.section(q).po != 2 || height(q, m) != 2) throw ComputationError("section " + q + " must have height 2 and (Q.O) = 2");
    return Rational(N) * fibre_class(X) + Rational(d) * (section_class(X, "O") + section_class(X, q));
}

// H' = H + φ(Q') for a narrow section Q'
inline DivisorClass perturb(const DivisorClass& H, const std::string& qp, const DivisorSpace& X) {
    if (qp == "O") return H;
    if (!is_narrow(qp, X.model())) throw ComputationError("perturbing section " + qp + " is not narrow");
    DivisorClass D = shioda_projection(qp, X);
    if (intersect(H, D, X) != 0) throw ComputationError("H.φ(" + qp + ") is not zero");
    return H + D;
}

}  // namespace k3cov
