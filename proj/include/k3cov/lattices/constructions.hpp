#pragma once

#include "k3cov/lattices/operations.hpp"

#include <set>

namespace k3cov {

// 1/2 (sum of the A_1 generators a_i, i in S), in coordinates of a lattice whose
// A_1 generators a_1.. start at position `offset`; indices in S are 1-based.
inline RatVector half_sum(std::size_t rank, std::size_t offset, const std::set<int>& S) {
    RatVector v(rank, Rational(0));
    for (int i : S) v.at(offset + i - 1) = Rational(1, 2);
    return v;
}

inline std::set<int> index_range(int lo, int hi) {
    std::set<int> s;
    for (int i = lo; i <= hi; ++i) s.insert(i);
    return s;
}

// U + A_1^12 glued by v1 = (a_1+...+a_8)/2 and v2 = (a_5+...+a_12)/2
inline Overlattice twelve_a1_overlattice() {
    IntegralLattice L = build_lattice("U + A_1^12");
    return overlattice(L, {half_sum(14, 2, index_range(1, 8)), half_sum(14, 2, index_range(5, 12))});
}

// Saturation of A_1^12 + ZD (D^2 = d2 < 0): the glue v1, v2 together with
// w = (D + sum_{i in S} a_i)/2 when S is nonempty. Coordinates a_1..a_12, D.
inline Overlattice a1_closure_with_vector(long d2, const std::set<int>& S) {
    IntMatrix g(13, 13);
    for (int i = 0; i < 12; ++i) g(i, i) = -2;
    g(12, 12) = d2;
    IntegralLattice L(g);
    std::vector<RatVector> glue{half_sum(13, 0, index_range(1, 8)), half_sum(13, 0, index_range(5, 12))};
    if (!S.empty()) {
        RatVector w = half_sum(13, 0, S);
        w[12] = Rational(1, 2);
        glue.push_back(w);
    }
    return overlattice(L, glue);
}

// the glue w exists iff its pairings with v1, v2 are integral and w^2 is even
inline bool closure_glue_admissible(long d2, const std::set<int>& S) {
    int lo = 0, hi = 0;
    for (int i : S) {
        if (i <= 8) ++lo;
        if (i >= 5) ++hi;
    }
    long n = static_cast<long>(S.size());
    return lo % 2 == 0 && hi % 2 == 0 && (d2 - 2 * n) % 8 == 0;
}

}  // namespace k3cov
