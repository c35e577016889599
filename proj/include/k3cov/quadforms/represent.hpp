#pragma once

#include "k3cov/quadforms/form.hpp"

#include <array>
#include <set>

namespace k3cov {

struct RepresentationReport {
    long bound = 0;
    long modulus = 1;
    std::vector<long> represented;
    std::vector<long> exceptions;
    // one witness per represented value
    std::map<long, std::vector<long>> witnesses;
    bool witnesses_verified = false;
    // set when Q(x) = 0 mod modulus was checked on all residue vectors
    std::optional<bool> congruence_certificate;

    bool represents(long n) const { return std::binary_search(represented.begin(), represented.end(), n); }
};

// the 29 critical integers of the 290 theorem
inline const std::array<long, 29>& critical_integers_290() {
    static const std::array<long, 29> v{1,  2,  3,  5,  6,  7,  10, 13,  14,  15,  17,  19,  21,  22, 23,
                                        26, 29, 30, 31, 34, 35, 37, 42, 58, 93, 110, 145, 203, 290};
    return v;
}

namespace detail {

using Witnesses = std::vector<std::optional<std::vector<long>>>;

// values of an orthogonal sum from the values of its summands
inline Witnesses sumset(const Witnesses& a, const Witnesses& b, std::size_t rank_a, std::size_t rank_b) {
    long bound = static_cast<long>(a.size()) - 1;
    Witnesses out(bound + 1);
    std::vector<long> av, bv;
    for (long v = 0; v <= bound; ++v) {
        if (a[v]) av.push_back(v);
        if (b[v]) bv.push_back(v);
    }
    for (long u : av)
        for (long w : bv) {
            if (u + w > bound) break;
            if (out[u + w]) continue;
            std::vector<long> x = *a[u];
            x.resize(rank_a + rank_b);
            for (std::size_t k = 0; k < rank_b; ++k) x[rank_a + k] = (*b[w])[k];
            out[u + w] = std::move(x);
        }
    return out;
}

inline Witnesses represented_values(const PosDefForm& f, long bound) {
    auto blocks = f.blocks();
    if (blocks.size() <= 1) return value_sweep(f, bound);
    Witnesses acc = value_sweep(f.restrict_to(blocks[0]), bound);
    std::vector<std::size_t> order = blocks[0];
    for (std::size_t k = 1; k < blocks.size(); ++k) {
        acc = sumset(acc, value_sweep(f.restrict_to(blocks[k]), bound), order.size(), blocks[k].size());
        order.insert(order.end(), blocks[k].begin(), blocks[k].end());
    }
    // back to the original coordinate order
    for (auto& w : acc) {
        if (!w) continue;
        std::vector<long> x(f.rank());
        for (std::size_t k = 0; k < order.size(); ++k) x[order[k]] = (*w)[k];
        w = std::move(x);
    }
    return acc;
}

}  // namespace detail

inline RepresentationReport represented_set(const PosDefForm& f, long bound) {
    if (bound < 1) throw ComputationError("bound must be at least 1");
    auto w = detail::represented_values(f, bound);
    RepresentationReport r;
    r.bound = bound;
    bool ok = true;
    for (long n = 1; n <= bound; ++n) {
        if (w[n]) {
            if (f.value(*w[n]) != n) ok = false;
            r.represented.push_back(n);
            r.witnesses[n] = *w[n];
        } else {
            r.exceptions.push_back(n);
        }
    }
    if (!ok) throw ComputationError("witness re-verification failed");
    r.witnesses_verified = true;
    return r;
}

inline bool check_290(const PosDefForm& f) {
    auto r = represented_set(f, 290);
    bool all = true;
    for (long c : critical_integers_290())
        if (!r.represents(c)) all = false;
    if (all && !r.exceptions.empty()) throw ComputationError("290 cross-check failed");
    return all;
}

// Q(x) = x^T g x = 0 mod m for every x, checked on all residue vectors in (Z/m)^n
inline bool congruence_certificate(const RatMatrix& g, long m) {
    std::size_t n = g.rows();
    if (m < 1) throw ComputationError("modulus must be positive");
    std::vector<std::vector<long>> c(n, std::vector<long>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Rational v = i == j ? g(i, j) : 2 * g(i, j);
            if (!is_integer(v)) throw ComputationError("form is not integer-valued");
            c[i][j] = Integer(v.get_num() % m).get_si();
        }
    long double total = std::pow(static_cast<long double>(m), static_cast<long double>(n));
    if (total > 5e7L) throw ComputationError("residue space too large for the congruence check");
    std::vector<long> x(n, 0);
    for (;;) {
        long s = 0;
        for (std::size_t i = 0; i < n; ++i) {
            s += c[i][i] * x[i] % m * x[i];
            for (std::size_t j = i + 1; j < n; ++j) s += c[i][j] * x[i] % m * x[j];
            s %= m;
        }
        if (s % m != 0) return false;
        std::size_t i = 0;
        while (i < n && ++x[i] == m) x[i++] = 0;
        if (i == n) return true;
    }
}

inline RepresentationReport scaled_representability(const PosDefForm& f, long modulus, long bound) {
    if (modulus < 1) throw ComputationError("modulus must be positive");
    RepresentationReport full = represented_set(f, bound), r;
    r.bound = bound;
    r.modulus = modulus;
    r.witnesses_verified = full.witnesses_verified;
    for (long v : full.represented)
        if (v % modulus == 0) {
            r.represented.push_back(v);
            r.witnesses[v] = full.witnesses[v];
        }
    for (long v : full.exceptions)
        if (v % modulus == 0) r.exceptions.push_back(v);
    if (modulus > 1) r.congruence_certificate = congruence_certificate(f.gram(), modulus);
    return r;
}

}  // namespace k3cov
