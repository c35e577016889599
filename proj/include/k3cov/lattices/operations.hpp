#pragma once

#include "k3cov/lattices/discriminant.hpp"

namespace k3cov {

struct Overlattice {
    IntegralLattice lattice;
    RatMatrix basis;  // columns: new basis in the coordinates of the original lattice
    Integer index;

    RatVector coordinates_of(const RatVector& x) const { return inverse(basis).apply(x); }
};

inline Integer common_denominator(const std::vector<RatVector>& vs) {
    Integer l = 1;
    for (const auto& v : vs)
        for (const auto& c : v) l = lcm_int(l, c.get_den());
    return l;
}

// Z-span of the lattice together with the glue vectors (given in L coordinates)
inline Overlattice overlattice(const IntegralLattice& L, const std::vector<RatVector>& glue) {
    std::size_t n = L.rank();
    Integer l = common_denominator(glue);
    IntMatrix M(n, n + glue.size());
    for (std::size_t i = 0; i < n; ++i) M(i, i) = l;
    for (std::size_t j = 0; j < glue.size(); ++j) {
        if (glue[j].size() != n) throw ComputationError("glue vector has wrong length");
        for (std::size_t i = 0; i < n; ++i) {
            Rational v = glue[j][i] * Rational(l);
            M(i, n + j) = v.get_num();
        }
    }
    IntMatrix span = column_span_basis(M);
    RatMatrix B = to_rational(span);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) B(i, j) /= Rational(l);
    RatMatrix G = B.transpose() * L.rational_gram() * B;
    auto Gi = to_integer(G);
    if (!Gi) throw ComputationError("glue vectors not admissible: non-integral pairing");
    for (std::size_t i = 0; i < n; ++i)
        if (mod2((*Gi)(i, i))) throw ComputationError("glue vectors not admissible: odd norm");
    Rational d = determinant(B);
    Rational idx = 1 / (d < 0 ? Rational(-d) : d);
    if (!is_integer(idx)) throw ComputationError("glue produced a sublattice");
    return {IntegralLattice(*Gi), B, idx.get_num()};
}

struct Sublattice {
    IntegralLattice lattice;
    IntMatrix basis;  // columns in the coordinates of the ambient lattice
};

inline bool is_primitive(const IntVector& v) {
    Integer g = 0;
    for (const auto& c : v) g = gcd_int(g, c);
    return g == 1;
}

// {x : x.v = 0 for every v in vs}
inline Sublattice orthogonal_complement(const IntegralLattice& L, const std::vector<IntVector>& vs) {
    std::size_t n = L.rank();
    IntMatrix rows(vs.size(), n);
    for (std::size_t r = 0; r < vs.size(); ++r) {
        if (vs[r].size() != n) throw ComputationError("vector is not in the lattice (wrong length)");
        IntVector gv = L.gram().apply(vs[r]);
        for (std::size_t j = 0; j < n; ++j) rows(r, j) = gv[j];
    }
    IntMatrix K = integer_kernel(rows);
    IntMatrix G = K.transpose() * L.gram() * K;
    if (determinant(G) == 0) throw ComputationError("orthogonal complement is degenerate");
    return {IntegralLattice(G), K};
}

inline Sublattice orthogonal_complement(const IntegralLattice& L, const IntVector& v) {
    bool zero = true;
    for (const auto& c : v)
        if (c != 0) zero = false;
    if (zero) throw ComputationError("zero vector");
    if (!is_primitive(v)) throw ComputationError("vector is not primitive");
    return orthogonal_complement(L, std::vector<IntVector>{v});
}

}  // namespace k3cov
