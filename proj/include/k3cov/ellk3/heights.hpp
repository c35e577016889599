#pragma once

#include "k3cov/ellk3/model.hpp"
#include "k3cov/exactmath/matrix.hpp"

#include <cctype>

namespace k3cov {

// Intersection matrix of the non-identity components of a fibre. For I_n these
// are Θ_1..Θ_{n-1} along the cycle; for I_0* the simple components Θ_1..Θ_3
// followed by the double component.
inline IntMatrix fibre_component_gram(const KodairaType& t) {
    std::size_t r = t.root_rank();
    IntMatrix g(r, r);
    for (std::size_t i = 0; i < r; ++i) g(i, i) = -2;
    if (t.kind == KodairaType::In) {
        for (std::size_t i = 0; i + 1 < r; ++i) g(i, i + 1) = g(i + 1, i) = 1;
    } else {
        for (std::size_t i = 0; i < 3; ++i) g(i, 3) = g(3, i) = 1;
    }
    return g;
}

// multiplicities of the non-identity components in the fibre class
inline std::vector<long> fibre_multiplicities(const KodairaType& t) {
    if (t.kind == KodairaType::In) return std::vector<long>(t.root_rank(), 1);
    return {1, 1, 1, 2};
}

inline Rational contribution(const KodairaType& t, int i, int j) {
    int m = t.section_components();
    if (i < 0 || j < 0 || i >= m || j >= m) throw ComputationError("invalid component index for " + t.str());
    if (i == 0 || j == 0) return 0;
    if (t.kind == KodairaType::In) {
        int a = std::min(i, j), b = std::max(i, j);
        return make_rational(a * (t.n - b), t.n);
    }
    return i == j ? Rational(1) : Rational(1, 2);
}

inline Rational height_pairing(const std::string& p, const std::string& q, const EllipticK3Model& m) {
    if (p == "O" || q == "O") return 0;
    const auto& P = m.section(p);
    const auto& Q = m.section(q);
    Rational contr = 0;
    for (std::size_t v = 0; v < m.fibres.size(); ++v) contr += contribution(m.fibres[v].type, P.incidence[v], Q.incidence[v]);
    if (p == q) return Rational(4 + 2 * P.po) - contr;
    return Rational(2 + P.po + Q.po - m.intersection(p, q)) - contr;
}

inline Rational height(const std::string& p, const EllipticK3Model& m) { return height_pairing(p, p, m); }

// integer combination of listed sections, e.g. "P+Q+Q'" or "2Q - P"
using SectionCombination = std::vector<std::pair<long, std::string>>;

inline SectionCombination parse_combination(const std::string& s, const EllipticK3Model& m) {
    SectionCombination out;
    std::size_t i = 0;
    auto skip = [&] {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    };
    skip();
    if (i == s.size()) throw ParseError("empty section combination", 0);
    bool first = true;
    while (i < s.size()) {
        long sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
            skip();
        } else if (!first) {
            throw ParseError("expected '+' or '-' in '" + s + "'", i);
        }
        long c = 1;
        if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            c = 0;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) c = 10 * c + (s[i++] - '0');
            skip();
            if (i < s.size() && s[i] == '*') {
                ++i;
                skip();
            }
        }
        std::size_t start = i;
        while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_' || s[i] == '\''))
            ++i;
        if (start == i) throw ParseError("expected a section name in '" + s + "'", start);
        std::string name = s.substr(start, i - start);
        if (name != "O" && !m.has_section(name)) throw ParseError("unknown section '" + name + "'", start);
        out.emplace_back(sign * c, name);
        first = false;
        skip();
    }
    return out;
}

inline Rational height_pairing(const SectionCombination& a, const SectionCombination& b, const EllipticK3Model& m) {
    Rational s = 0;
    for (const auto& [ca, na] : a)
        for (const auto& [cb, nb] : b) s += Rational(ca * cb) * height_pairing(na, nb, m);
    return s;
}

struct MWGram {
    std::vector<std::string> names;
    RatMatrix gram;
};

inline MWGram mwl_gram(const std::vector<std::string>& combos, const EllipticK3Model& m) {
    std::vector<SectionCombination> cs;
    for (const auto& c : combos) cs.push_back(parse_combination(c, m));
    MWGram g{combos, RatMatrix(combos.size(), combos.size())};
    for (std::size_t i = 0; i < cs.size(); ++i)
        for (std::size_t j = i; j < cs.size(); ++j) g.gram(i, j) = g.gram(j, i) = height_pairing(cs[i], cs[j], m);
    return g;
}

inline bool is_narrow(const SectionRecord& s) {
    for (int c : s.incidence)
        if (c != 0) return false;
    return true;
}
inline bool is_narrow(const std::string& p, const EllipticK3Model& m) { return p == "O" || is_narrow(m.section(p)); }

inline std::vector<int> double_incidence(const SectionRecord& s, const EllipticK3Model& m) {
    if (!m.all_I2()) throw ComputationError("component-group arithmetic implemented for I_2 only");
    return std::vector<int>(s.incidence.size(), 0);
}

}  // namespace k3cov
