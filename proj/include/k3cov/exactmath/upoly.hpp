#pragma once

#include "k3cov/exactmath/poly.hpp"

#include <utility>
#include <vector>

namespace k3cov {

// Dense univariate polynomial over a field, lowest degree first, no trailing zeros.
template <class K>
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(std::vector<K> c) : c_(std::move(c)) { trim(); }
    explicit UPoly(const K& c) : c_{c} { trim(); }

    static UPoly x(unsigned k = 1) {
        std::vector<K> c(k + 1, K(0));
        c[k] = K(1);
        return UPoly(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const K& operator[](std::size_t k) const { return c_[k]; }
    const std::vector<K>& coeffs() const { return c_; }
    const K& lead() const { return c_.back(); }

    friend UPoly operator+(const UPoly& a, const UPoly& b) {
        std::vector<K> c(std::max(a.c_.size(), b.c_.size()), K(0));
        for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] = c[k] + a.c_[k];
        for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] = c[k] + b.c_[k];
        return UPoly(std::move(c));
    }
    friend UPoly operator-(const UPoly& a) {
        std::vector<K> c = a.c_;
        for (auto& v : c) v = -v;
        return UPoly(std::move(c));
    }
    friend UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }
    friend UPoly operator*(const UPoly& a, const UPoly& b) {
        if (a.is_zero() || b.is_zero()) return UPoly();
        std::vector<K> c(a.c_.size() + b.c_.size() - 1, K(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
        return UPoly(std::move(c));
    }
    friend UPoly operator*(const UPoly& a, const K& s) {
        std::vector<K> c = a.c_;
        for (auto& v : c) v = v * s;
        return UPoly(std::move(c));
    }
    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

    std::pair<UPoly, UPoly> divmod(const UPoly& b) const {
        if (b.is_zero()) throw ComputationError("polynomial division by zero");
        std::vector<K> r = c_;
        int db = b.degree();
        if (degree() < db) return {UPoly(), *this};
        std::vector<K> q(degree() - db + 1, K(0));
        K inv = K(1) / b.lead();
        for (int k = degree(); k >= db; --k) {
            K f = r[k] * inv;
            q[k - db] = f;
            if (is_zero_k(f)) continue;
            for (int j = 0; j <= db; ++j) r[k - db + j] = r[k - db + j] - f * b.c_[j];
        }
        return {UPoly(std::move(q)), UPoly(std::move(r))};
    }

    UPoly monic() const {
        if (is_zero()) return *this;
        return *this * (K(1) / lead());
    }

    UPoly derivative() const {
        if (c_.size() <= 1) return UPoly();
        std::vector<K> d(c_.size() - 1);
        for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * K(static_cast<long>(k));
        return UPoly(std::move(d));
    }

    K eval(const K& x) const {
        K v(0);
        for (std::size_t k = c_.size(); k-- > 0;) v = v * x + c_[k];
        return v;
    }

private:
    static bool is_zero_k(const K& v) { return k3cov::is_zero(v); }
    void trim() {
        while (!c_.empty() && is_zero_k(c_.back())) c_.pop_back();
    }
    std::vector<K> c_;
};

template <class K>
UPoly<K> gcd(UPoly<K> a, UPoly<K> b) {
    while (!b.is_zero()) {
        auto r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

namespace detail {

using ZPoly = std::vector<Integer>;

inline ZPoly primitive_integer_part(const UPoly<Rational>& a) {
    Integer l = 1;
    for (const auto& c : a.coeffs()) l = lcm_int(l, c.get_den());
    ZPoly z;
    Integer g = 0;
    for (const auto& c : a.coeffs()) {
        Rational v = c * Rational(l);
        z.push_back(v.get_num());
        g = gcd_int(g, z.back());
    }
    if (g > 1)
        for (auto& c : z) c /= g;
    return z;
}

inline void make_primitive(ZPoly& z) {
    Integer g = 0;
    for (const auto& c : z) g = gcd_int(g, c);
    if (g > 1)
        for (auto& c : z) c /= g;
}

// degree of gcd(a, b) mod p, or -1 when p divides a leading coefficient
inline int gcd_degree_mod(const ZPoly& a, const ZPoly& b, unsigned long p) {
    using u128 = unsigned __int128;
    auto reduce = [&](const ZPoly& z) {
        std::vector<unsigned long> r;
        for (const auto& c : z) r.push_back(mpz_fdiv_ui(c.get_mpz_t(), p));
        return r;
    };
    auto inv = [&](unsigned long x) {
        unsigned long r = 1, e = p - 2;
        while (e) {
            if (e & 1) r = static_cast<unsigned long>(u128(r) * x % p);
            x = static_cast<unsigned long>(u128(x) * x % p);
            e >>= 1;
        }
        return r;
    };
    auto u = reduce(a), v = reduce(b);
    if (u.back() == 0 || v.back() == 0) return -1;
    auto trim = [](std::vector<unsigned long>& w) {
        while (!w.empty() && w.back() == 0) w.pop_back();
    };
    while (!v.empty()) {
        unsigned long il = inv(v.back());
        while (u.size() >= v.size() && !u.empty()) {
            unsigned long q = static_cast<unsigned long>(u128(u.back()) * il % p);
            std::size_t shift = u.size() - v.size();
            for (std::size_t k = 0; k < v.size(); ++k)
                u[shift + k] = static_cast<unsigned long>((u[shift + k] + p - u128(q) * v[k] % p) % p);
            trim(u);
        }
        std::swap(u, v);
    }
    return static_cast<int>(u.size()) - 1;
}

}  // namespace detail

// over Q: a modular degree test settles the (common) coprime case; otherwise
// a primitive remainder sequence over Z avoids coefficient explosion
template <>
inline UPoly<Rational> gcd(UPoly<Rational> a, UPoly<Rational> b) {
    if (a.is_zero()) return b.is_zero() ? b : b.monic();
    if (b.is_zero()) return a.monic();
    if (a.degree() == 0 || b.degree() == 0) return UPoly<Rational>(Rational(1));
    detail::ZPoly u = detail::primitive_integer_part(a), v = detail::primitive_integer_part(b);
    for (unsigned long p : {2305843009213693951UL, 4611686018427387847UL, 1000000007UL})
        if (detail::gcd_degree_mod(u, v, p) == 0) return UPoly<Rational>(Rational(1));
    if (u.size() < v.size()) std::swap(u, v);
    while (!v.empty()) {
        // pseudo-remainder of u by v
        const Integer lv = v.back();
        while (u.size() >= v.size() && !u.empty()) {
            Integer lu = u.back();
            std::size_t shift = u.size() - v.size();
            for (auto& c : u) c *= lv;
            for (std::size_t k = 0; k < v.size(); ++k) u[shift + k] -= lu * v[k];
            while (!u.empty() && u.back() == 0) u.pop_back();
        }
        detail::make_primitive(u);
        std::swap(u, v);
    }
    std::vector<Rational> c;
    for (const auto& z : u) c.emplace_back(z);
    return UPoly<Rational>(std::move(c)).monic();
}

template <class K>
UPoly<K> exact_quotient(const UPoly<K>& a, const UPoly<K>& b) {
    auto [q, r] = a.divmod(b);
    if (!r.is_zero()) throw ComputationError("inexact polynomial division");
    return q;
}

// Yun: p = lc * prod a_i^i with a_i squarefree, monic and pairwise coprime
template <class K>
std::vector<UPoly<K>> squarefree_factors(const UPoly<K>& p) {
    if (p.is_zero()) throw ComputationError("zero input");
    std::vector<UPoly<K>> out;
    UPoly<K> f = p.monic();
    UPoly<K> d = f.derivative();
    if (d.is_zero()) return out;
    UPoly<K> a = gcd(f, d);
    UPoly<K> b = exact_quotient(f, a);
    UPoly<K> c = exact_quotient(d, a);
    UPoly<K> e = c - b.derivative();
    while (b.degree() > 0) {
        UPoly<K> g = gcd(b, e);
        out.push_back(g);
        b = exact_quotient(b, g);
        c = exact_quotient(e, g);
        e = c - b.derivative();
    }
    while (!out.empty() && out.back().degree() == 0) out.pop_back();
    return out;
}

template <class K>
UPoly<K> to_upoly(const MPoly<K>& p, std::size_t v) {
    if (!p.involves_only(v)) throw ComputationError("polynomial is not univariate");
    std::vector<K> c(p.degree_in(v) + 1, K(0));
    for (const auto& [m, val] : p.terms()) c[m.e[v]] = val;
    return UPoly<K>(std::move(c));
}

template <class K>
MPoly<K> from_upoly(const UPoly<K>& u, std::size_t nvars, std::size_t v) {
    MPoly<K> p(nvars);
    for (std::size_t k = 0; k < u.coeffs().size(); ++k) {
        Monomial m;
        m.e[v] = static_cast<std::uint16_t>(k);
        p += MPoly<K>::monomial(nvars, m, u[k]);
    }
    return p;
}

}  // namespace k3cov
