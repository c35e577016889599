#pragma once

#include "k3cov/lattices/enumerate.hpp"
#include "k3cov/lattices/operations.hpp"

#include <map>

namespace k3cov {

constexpr std::size_t kIsometryRankLimit = 8;

inline Integer round_rational(const Rational& x) { return floor_of(x + Rational(1, 2)); }

// LLL (delta = 3/4) on a positive-definite Gram matrix; returns the unimodular
// change of basis T (columns: reduced basis in old coordinates).
inline IntMatrix lll_reduce(const RatMatrix& g) {
    std::size_t n = g.rows();
    IntMatrix T = IntMatrix::identity(n);
    const Rational delta(3, 4);
    auto gso = [&](RatMatrix& mu, std::vector<Rational>& bn) {
        RatMatrix G = to_rational(T).transpose() * g * to_rational(T);
        mu = RatMatrix(n, n);
        bn.assign(n, Rational(0));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                Rational s = G(i, j);
                for (std::size_t k = 0; k < j; ++k) s -= mu(j, k) * mu(i, k) * bn[k];
                mu(i, j) = s / bn[j];
            }
            Rational s = G(i, i);
            for (std::size_t k = 0; k < i; ++k) s -= mu(i, k) * mu(i, k) * bn[k];
            bn[i] = s;
        }
    };
    RatMatrix mu;
    std::vector<Rational> bn;
    std::size_t k = 1;
    gso(mu, bn);
    while (k < n) {
        for (std::size_t j = k; j-- > 0;) {
            Integer r = round_rational(mu(k, j));
            if (r == 0) continue;
            T.add_col(k, j, Integer(-r));
            gso(mu, bn);
        }
        if (bn[k] >= (delta - mu(k, k - 1) * mu(k, k - 1)) * bn[k - 1]) {
            ++k;
        } else {
            T.swap_cols(k, k - 1);
            gso(mu, bn);
            k = std::max<std::size_t>(k - 1, 1);
        }
    }
    return T;
}

namespace detail {

inline std::map<Rational, std::size_t> norm_histogram(const RatMatrix& g, const Rational& bound) {
    std::map<Rational, std::size_t> h;
    enumerate_short_vectors(g, bound, [&](const std::vector<long>&, const Rational& v) { ++h[v]; });
    return h;
}

inline bool definite_isometric(const IntMatrix& g1, const IntMatrix& g2) {
    std::size_t n = g1.rows();
    RatMatrix G1 = to_rational(g1), G2 = to_rational(g2);
    IntMatrix T = lll_reduce(G1);
    RatMatrix R = to_rational(T).transpose() * G1 * to_rational(T);
    Rational maxn = 0;
    for (std::size_t i = 0; i < n; ++i) maxn = std::max(maxn, R(i, i));
    if (norm_histogram(G1, maxn) != norm_histogram(G2, maxn)) return false;

    std::map<Rational, std::vector<RatVector>> by_norm;
    enumerate_short_vectors(G2, maxn, [&](const std::vector<long>& x, const Rational& v) {
        RatVector r;
        for (long c : x) r.emplace_back(c);
        by_norm[v].push_back(r);
    });
    std::vector<RatVector> img;
    std::function<bool(std::size_t)> search = [&](std::size_t i) -> bool {
        if (i == n) return true;
        for (const auto& y : by_norm[R(i, i)]) {
            bool ok = true;
            for (std::size_t j = 0; j < i && ok; ++j) ok = dot(y, G2, img[j]) == R(i, j);
            if (!ok) continue;
            img.push_back(y);
            if (search(i + 1)) return true;
            img.pop_back();
        }
        return false;
    };
    // with equal determinants a Gram-preserving map of bases is unimodular
    return search(0);
}

struct HyperbolicSplit {
    Integer k;  // the split summand is U(k)
    Sublattice complement;
};

inline std::optional<HyperbolicSplit> split_hyperbolic(const IntegralLattice& L, long box = 2) {
    std::size_t n = L.rank();
    const IntMatrix& G = L.gram();
    std::vector<IntVector> vs;
    IntVector x(n, Integer(-box));
    for (;;) {
        vs.push_back(x);
        std::size_t i = 0;
        while (i < n) {
            x[i] += 1;
            if (x[i] <= box) break;
            x[i] = -box;
            ++i;
        }
        if (i == n) break;
    }
    auto weight = [](const IntVector& v) {
        Integer w = 0;
        for (const auto& c : v) w += abs_int(c);
        return w;
    };
    std::vector<std::pair<Integer, IntVector>> iso;
    for (const auto& v : vs) {
        if (!is_primitive(v) || dot(v, G, v) != 0) continue;
        Integer k = 0;
        for (const auto& c : G.apply(v)) k = gcd_int(k, c);
        iso.emplace_back(k, v);
    }
    std::stable_sort(iso.begin(), iso.end(), [&](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return weight(a.second) < weight(b.second);
    });
    std::size_t tries = 0;
    for (const auto& [k, e] : iso) {
        if (++tries > 64) break;
        IntVector ge = G.apply(e);
        for (const auto& f : vs) {
            Integer ef = 0;
            for (std::size_t i = 0; i < n; ++i) ef += ge[i] * f[i];
            if (ef != k) continue;
            Integer kf = 0;
            for (const auto& c : G.apply(f)) kf = gcd_int(kf, c);
            if (kf % k != 0) continue;
            Integer ff = dot(f, G, f);
            if (ff % (2 * k) != 0) continue;
            Integer s = ff / (2 * k);
            IntVector fp = f;
            for (std::size_t i = 0; i < n; ++i) fp[i] -= s * e[i];
            Sublattice c = orthogonal_complement(L, std::vector<IntVector>{e, fp});
            if (c.lattice.rank() + 2 != n || abs_int(c.lattice.det()) * k * k != abs_int(L.det())) continue;
            return HyperbolicSplit{k, c};
        }
    }
    return std::nullopt;
}

}  // namespace detail

// Exact isometry test for rank <= 8. Definite lattices are decided exactly;
// indefinite ones are reduced by splitting off hyperbolic planes U(k). A
// "true" is always certified; an indefinite pair with matching invariants for
// which no matching decomposition is found raises "isometry undecided".
inline bool is_isometric_small(const IntegralLattice& L1, const IntegralLattice& L2) {
    if (L1.rank() > kIsometryRankLimit || L2.rank() > kIsometryRankLimit)
        throw ComputationError("exceeds small-rank isometry limit");
    if (L1.rank() != L2.rank() || L1.det() != L2.det() || L1.signature() != L2.signature()) return false;
    if (L1.rank() == 0) return true;
    if (L1.is_positive_definite()) return detail::definite_isometric(L1.gram(), L2.gram());
    if (L1.is_negative_definite()) return detail::definite_isometric(-L1.gram(), -L2.gram());
    DiscriminantForm A1(L1), A2(L2);
    if (A1.invariant_factors() != A2.invariant_factors() || A1.q_histogram() != A2.q_histogram()) return false;
    auto s1 = detail::split_hyperbolic(L1), s2 = detail::split_hyperbolic(L2);
    if (s1 && s2 && s1->k == s2->k) {
        try {
            if (is_isometric_small(s1->complement.lattice, s2->complement.lattice)) return true;
        } catch (const ComputationError&) {
        }
    }
    throw ComputationError("isometry undecided: invariants agree but no matching hyperbolic decomposition found");
}

}  // namespace k3cov
