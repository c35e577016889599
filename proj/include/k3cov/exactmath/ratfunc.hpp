#pragma once

#include "k3cov/exactmath/upoly.hpp"

#include <map>
#include <set>

namespace k3cov {

template <class K>
std::set<std::size_t> variables_of(const MPoly<K>& p) {
    std::set<std::size_t> vs;
    for (const auto& [m, c] : p.terms())
        for (std::size_t k = 0; k < p.nvars(); ++k)
            if (m.e[k]) vs.insert(k);
    return vs;
}

// Quotient of polynomials. Reduced to lowest terms whenever numerator and
// denominator are univariate in a common variable; otherwise only obvious
// cancellations (constant or exactly dividing denominators) are applied.
template <class K>
class RatFunc {
public:
    RatFunc() = default;
    explicit RatFunc(std::size_t nvars) : num_(nvars), den_(nvars, K(1)) {}
    RatFunc(const MPoly<K>& p) : num_(p), den_(p.nvars(), K(1)) {}
    RatFunc(MPoly<K> n, MPoly<K> d) : num_(std::move(n)), den_(std::move(d)) {
        if (den_.is_zero()) throw ComputationError("zero denominator");
        normalize();
    }
    static RatFunc constant(std::size_t nvars, const K& c) { return RatFunc(MPoly<K>(nvars, c)); }

    const MPoly<K>& num() const { return num_; }
    const MPoly<K>& den() const { return den_; }
    std::size_t nvars() const { return num_.nvars(); }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    K constant_value() const { return num_.constant_value() / den_.constant_value(); }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a) { return RatFunc(-a.num_, a.den_, raw{}); }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw ComputationError("division by zero rational function");
        return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
    }
    friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ * b.den_ == b.num_ * a.den_; }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    RatFunc pow(int k) const {
        if (k < 0) return RatFunc(den_, num_).pow(-k);
        return RatFunc(num_.pow(k), den_.pow(k));
    }

    RatFunc derivative(std::size_t v) const {
        return RatFunc(num_.derivative(v) * den_ - num_ * den_.derivative(v), den_ * den_);
    }

    RatFunc scale_variable(std::size_t v, const K& s) const {
        return RatFunc(num_.scale_variable(v, s), den_.scale_variable(v, s));
    }

    // substitute variable v by a rational function
    RatFunc substitute(std::size_t v, const RatFunc& value) const {
        auto [n1, e1] = substitute_poly(num_, v, value);
        auto [n2, e2] = substitute_poly(den_, v, value);
        if (n2.is_zero()) throw ComputationError("pole at evaluation point");
        MPoly<K> d = value.den_;
        if (e1 >= e2) return RatFunc(n1, n2 * d.pow(e1 - e2));
        return RatFunc(n1 * d.pow(e2 - e1), n2);
    }

    std::string str(const std::vector<std::string>& names) const {
        if (den_.is_constant() && den_.constant_value() == K(1)) return num_.str(names);
        return "(" + num_.str(names) + ")/(" + den_.str(names) + ")";
    }

private:
    struct raw {};
    RatFunc(MPoly<K> n, MPoly<K> d, raw) : num_(std::move(n)), den_(std::move(d)) {}

    // p(v = n/d) * d^deg, deg
    static std::pair<MPoly<K>, unsigned> substitute_poly(const MPoly<K>& p, std::size_t v, const RatFunc& value) {
        auto cs = p.coefficients_in(v);
        unsigned deg = static_cast<unsigned>(cs.size() - 1);
        MPoly<K> acc(p.nvars());
        MPoly<K> npow(p.nvars(), K(1));
        std::vector<MPoly<K>> dpow(deg + 1, MPoly<K>(p.nvars(), K(1)));
        for (unsigned k = 1; k <= deg; ++k) dpow[k] = dpow[k - 1] * value.den_;
        for (unsigned k = 0; k <= deg; ++k) {
            if (!cs[k].is_zero()) acc += cs[k] * npow * dpow[deg - k];
            if (k < deg) npow = npow * value.num_;
        }
        return {acc, deg};
    }

    void normalize() {
        if (num_.is_zero()) {
            den_ = MPoly<K>(num_.nvars(), K(1));
            return;
        }
        if (den_.is_constant()) {
            K c = den_.constant_value();
            if (c != K(1)) {
                num_ *= K(1) / c;
                den_ = MPoly<K>(num_.nvars(), K(1));
            }
            return;
        }
        auto vs = variables_of(num_);
        auto vd = variables_of(den_);
        vs.insert(vd.begin(), vd.end());
        if (vs.size() == 1) {
            std::size_t v = *vs.begin();
            auto un = to_upoly(num_, v), ud = to_upoly(den_, v);
            auto g = gcd(un, ud);
            K lc = ud.lead();
            if (g.degree() > 0) {
                un = exact_quotient(un, g);
                ud = exact_quotient(ud, g);
                lc = ud.lead();
            }
            num_ = from_upoly(un * (K(1) / lc), num_.nvars(), v);
            den_ = from_upoly(ud * (K(1) / lc), num_.nvars(), v);
            return;
        }
        if (auto q = exact_divide(num_, den_)) {
            num_ = *q;
            den_ = MPoly<K>(num_.nvars(), K(1));
            return;
        }
        if (vd.size() == 1) cancel_content(*vd.begin());
    }

    // denominator univariate in v: cancel its gcd with the content of the
    // numerator over K[v], and make the denominator monic in v
    void cancel_content(std::size_t v) {
        std::map<Monomial, MPoly<K>> groups;
        for (const auto& [m, c] : num_.terms()) {
            Monomial rest = m, pure;
            rest.e[v] = 0;
            pure.e[v] = m.e[v];
            auto it = groups.try_emplace(rest, MPoly<K>(num_.nvars())).first;
            it->second += MPoly<K>::monomial(num_.nvars(), pure, c);
        }
        auto ud = to_upoly(den_, v);
        UPoly<K> g = ud;
        for (const auto& [rest, poly] : groups) {
            g = gcd(g, to_upoly(poly, v));
            if (g.degree() == 0) break;
        }
        K lc = ud.lead();
        if (g.degree() > 0) {
            MPoly<K> gm = from_upoly(g, num_.nvars(), v);
            num_ = *exact_divide(num_, gm);
            ud = exact_quotient(ud, g);
            lc = ud.lead();
        }
        num_ *= K(1) / lc;
        den_ = from_upoly(ud * (K(1) / lc), num_.nvars(), v);
    }

    MPoly<K> num_, den_;
};

template <class K>
bool is_zero(const RatFunc<K>& f) {
    return f.is_zero();
}

// assignments: variable index -> value; evaluated in index order
template <class K>
RatFunc<K> ratfunc_eval(RatFunc<K> f, const std::map<std::size_t, RatFunc<K>>& assignments) {
    for (const auto& [v, val] : assignments) f = f.substitute(v, val);
    return f;
}

}  // namespace k3cov
