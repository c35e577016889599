#pragma once

#include "k3cov/lattices/enumerate.hpp"
#include "k3cov/lattices/lattice.hpp"

#include <map>
#include <numeric>

namespace k3cov {

inline std::vector<IntVector> roots(const IntegralLattice& L) {
    if (!L.is_negative_definite()) throw ComputationError("enumeration requires definite form");
    std::vector<IntVector> out;
    enumerate_short_vectors(-L.rational_gram(), Rational(2), [&](const std::vector<long>& x, const Rational& v) {
        if (v != 2) return;
        IntVector r;
        for (long c : x) r.emplace_back(c);
        out.push_back(r);
    });
    std::sort(out.begin(), out.end());
    return out;
}

struct RootComponent {
    char type;
    std::size_t rank;
    std::size_t roots;
    std::string symbol() const { return type + std::to_string(rank); }
};

inline RootComponent classify_root_system(std::size_t rank, std::size_t count) {
    if (count == rank * (rank + 1)) return {'A', rank, count};
    if (rank >= 4 && count == 2 * rank * (rank - 1)) return {'D', rank, count};
    if ((rank == 6 && count == 72) || (rank == 7 && count == 126) || (rank == 8 && count == 240)) return {'E', rank, count};
    throw ComputationError("unrecognized root system of rank " + std::to_string(rank) + " with " + std::to_string(count) + " roots");
}

// Components in the order E, D, A with decreasing rank.
inline std::vector<RootComponent> root_components(const IntegralLattice& L) {
    auto rs = roots(L);
    std::size_t m = rs.size();
    std::vector<std::size_t> parent(m);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b)
            if (L.pair(rs[a], rs[b]) != 0) parent[find(a)] = find(b);
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t a = 0; a < m; ++a) groups[find(a)].push_back(a);
    std::vector<RootComponent> comps;
    for (const auto& [root, members] : groups) {
        RatMatrix span(members.size(), L.rank());
        for (std::size_t r = 0; r < members.size(); ++r)
            for (std::size_t c = 0; c < L.rank(); ++c) span(r, c) = Rational(rs[members[r]][c]);
        comps.push_back(classify_root_system(rank(span), members.size()));
    }
    auto order = [](char t) { return t == 'E' ? 0 : t == 'D' ? 1 : 2; };
    std::sort(comps.begin(), comps.end(), [&](const RootComponent& a, const RootComponent& b) {
        if (order(a.type) != order(b.type)) return order(a.type) < order(b.type);
        return a.rank > b.rank;
    });
    return comps;
}

// e.g. "D4 + A1^9"; "0" when there are no roots
inline std::string root_sublattice_type(const IntegralLattice& L) {
    auto comps = root_components(L);
    if (comps.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < comps.size();) {
        std::size_t j = i;
        while (j < comps.size() && comps[j].type == comps[i].type && comps[j].rank == comps[i].rank) ++j;
        if (!out.empty()) out += " + ";
        out += comps[i].symbol();
        if (j - i > 1) out += "^" + std::to_string(j - i);
        i = j;
    }
    return out;
}

}  // namespace k3cov
