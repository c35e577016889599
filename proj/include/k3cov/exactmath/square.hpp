#pragma once

#include "k3cov/exactmath/ratfunc.hpp"

#include <optional>

namespace k3cov {

// p = (c_num / c_den) * s^2 * r, with r squarefree and monic in the main variable
template <class K>
struct SquarePart {
    MPoly<K> c_num, c_den, s, r;
};

namespace detail {

// c p = u^2 with u solved top-down from the leading coefficient c; needs no gcds
template <class K>
std::optional<std::pair<MPoly<K>, MPoly<K>>> coefficient_square_root(const MPoly<K>& p, std::size_t v) {
    std::size_t n = p.nvars();
    auto cs = p.coefficients_in(v);
    std::size_t deg = cs.size() - 1;
    if (deg % 2) return std::nullopt;
    std::size_t m = deg / 2;
    const MPoly<K>& c = cs[deg];
    std::vector<MPoly<K>> u(m + 1, MPoly<K>(n));
    u[m] = c;
    MPoly<K> two_c = c * K(2);
    for (std::size_t k = 1; k <= m; ++k) {
        std::size_t e = 2 * m - k;
        MPoly<K> acc = c * cs[e];
        for (std::size_t i = m - k + 1; i <= m; ++i) {
            std::size_t j = e - i;
            if (j <= m - k || j > m) continue;
            acc -= u[i] * u[j];
        }
        auto q = exact_divide(acc, two_c);
        if (!q) return std::nullopt;
        u[m - k] = *q;
    }
    MPoly<K> root = MPoly<K>::from_coefficients(n, v, u);
    if (root * root != c * p) return std::nullopt;
    return std::make_pair(c, root);
}

}  // namespace detail

// Square test over the coefficient ring of the main variable: returns (c, u)
// with c free of v and c * p == u^2, or nullopt when p is not a constant
// multiple of a square in Frac(R)[v].
template <class K>
std::optional<std::pair<MPoly<K>, MPoly<K>>> square_up_to_constant(const MPoly<K>& p, std::size_t v) {
    if (p.is_zero()) throw ComputationError("zero input");
    std::size_t n = p.nvars();
    if (p.involves_only(v)) {
        auto u = to_upoly(p, v);
        auto parts = squarefree_factors(u);
        UPoly<K> s(K(1));
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if ((i + 1) % 2 == 1 && parts[i].degree() > 0) return std::nullopt;
            for (std::size_t k = 0; k < (i + 1) / 2; ++k) s = s * parts[i];
        }
        K lc = u.lead();
        return std::make_pair(MPoly<K>(n, lc), from_upoly(s * lc, n, v));
    }
    return detail::coefficient_square_root(p, v);
}

template <class K>
SquarePart<K> poly_square_part(const MPoly<K>& p, std::size_t v) {
    if (p.is_zero()) throw ComputationError("zero input");
    std::size_t n = p.nvars();
    if (p.involves_only(v)) {
        auto u = to_upoly(p, v);
        auto parts = squarefree_factors(u);
        UPoly<K> s(K(1)), r(K(1));
        for (std::size_t i = 0; i < parts.size(); ++i) {
            std::size_t mult = i + 1;
            for (std::size_t k = 0; k < mult / 2; ++k) s = s * parts[i];
            if (mult % 2) r = r * parts[i];
        }
        return {MPoly<K>(n, u.lead()), MPoly<K>(n, K(1)), from_upoly(s, n, v), from_upoly(r, n, v)};
    }
    if (auto sq = square_up_to_constant(p, v)) {
        // c p = u^2 with v-leading coefficient of u equal to c
        return {MPoly<K>(n, K(1)), sq->first, sq->second, MPoly<K>(n, K(1))};
    }
    throw ComputationError("square part of a non-square polynomial with symbolic coefficients is not supported");
}

}  // namespace k3cov
