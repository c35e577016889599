#pragma once

#include "k3cov/exactmath/cyc12.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace k3cov {

constexpr std::size_t kMaxVars = 8;

struct Monomial {
    std::array<std::uint16_t, kMaxVars> e{};

    unsigned degree() const {
        unsigned d = 0;
        for (auto x : e) d += x;
        return d;
    }
    friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }
    // graded lexicographic
    friend bool operator<(const Monomial& a, const Monomial& b) {
        unsigned da = a.degree(), db = b.degree();
        if (da != db) return da < db;
        return a.e < b.e;
    }
    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        Monomial m;
        for (std::size_t k = 0; k < kMaxVars; ++k) {
            unsigned s = unsigned(a.e[k]) + b.e[k];
            if (s > 65535) throw ComputationError("monomial exponent overflow");
            m.e[k] = static_cast<std::uint16_t>(s);
        }
        return m;
    }
    bool divides(const Monomial& b) const {
        for (std::size_t k = 0; k < kMaxVars; ++k)
            if (e[k] > b.e[k]) return false;
        return true;
    }
    Monomial operator/(const Monomial& b) const {
        Monomial m;
        for (std::size_t k = 0; k < kMaxVars; ++k) m.e[k] = static_cast<std::uint16_t>(e[k] - b.e[k]);
        return m;
    }
};

inline std::string coeff_str(const Rational& r) { return r.get_str(); }
inline std::string coeff_str(const Cyc12& c) { return c.is_rational() ? c.coeff(0).get_str() : "(" + c.str() + ")"; }

// Sparse multivariate polynomial; variables are positions 0..nvars-1 of an
// external symbol list.
template <class K>
class MPoly {
public:
    using Terms = std::map<Monomial, K>;

    MPoly() = default;
    explicit MPoly(std::size_t nvars) : n_(nvars) { check_nvars(); }
    MPoly(std::size_t nvars, const K& c) : n_(nvars) {
        check_nvars();
        if (!k3cov::is_zero(c)) t_[Monomial{}] = c;
    }

    static MPoly variable(std::size_t nvars, std::size_t v, unsigned power = 1) {
        MPoly p(nvars);
        Monomial m;
        m.e[v] = static_cast<std::uint16_t>(power);
        p.t_[m] = K(1);
        return p;
    }
    static MPoly monomial(std::size_t nvars, const Monomial& m, const K& c) {
        MPoly p(nvars);
        if (!k3cov::is_zero(c)) p.t_[m] = c;
        return p;
    }

    std::size_t nvars() const { return n_; }
    const Terms& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.degree() == 0); }
    K constant_value() const {
        if (!is_constant()) throw ComputationError("polynomial is not constant");
        return t_.empty() ? K(0) : t_.begin()->second;
    }
    K constant_term() const {
        auto it = t_.find(Monomial{});
        return it == t_.end() ? K(0) : it->second;
    }
    const Monomial& leading_monomial() const { return t_.rbegin()->first; }
    const K& leading_coeff() const { return t_.rbegin()->second; }

    unsigned degree_in(std::size_t v) const {
        unsigned d = 0;
        for (const auto& [m, c] : t_) d = std::max<unsigned>(d, m.e[v]);
        return d;
    }
    unsigned min_degree_in(std::size_t v) const {
        unsigned d = 65535;
        for (const auto& [m, c] : t_) d = std::min<unsigned>(d, m.e[v]);
        return t_.empty() ? 0 : d;
    }
    unsigned total_degree() const { return t_.empty() ? 0 : t_.rbegin()->first.degree(); }
    bool involves(std::size_t v) const { return degree_in(v) > 0; }
    bool involves_only(std::size_t v) const {
        for (const auto& [m, c] : t_)
            for (std::size_t k = 0; k < n_; ++k)
                if (k != v && m.e[k]) return false;
        return true;
    }

    MPoly& operator+=(const MPoly& o) {
        same(o);
        for (const auto& [m, c] : o.t_) add_term(m, c);
        return *this;
    }
    MPoly& operator-=(const MPoly& o) {
        same(o);
        for (const auto& [m, c] : o.t_) add_term(m, -c);
        return *this;
    }
    MPoly& operator*=(const K& s) {
        if (k3cov::is_zero(s)) {
            t_.clear();
            return *this;
        }
        for (auto& [m, c] : t_) c = c * s;
        return *this;
    }
    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    friend MPoly operator-(MPoly a) {
        for (auto& [m, c] : a.t_) c = -c;
        return a;
    }
    friend MPoly operator*(MPoly a, const K& s) { return a *= s; }
    friend MPoly operator*(const MPoly& a, const MPoly& b) {
        a.same(b);
        MPoly p(a.n_);
        for (const auto& [ma, ca] : a.t_)
            for (const auto& [mb, cb] : b.t_) p.add_term(ma * mb, ca * cb);
        return p;
    }
    friend bool operator==(const MPoly& a, const MPoly& b) { return a.n_ == b.n_ && a.t_ == b.t_; }
    friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

    MPoly pow(unsigned k) const {
        MPoly r(n_, K(1)), b = *this;
        while (k) {
            if (k & 1) r = r * b;
            k >>= 1;
            if (k) b = b * b;
        }
        return r;
    }

    // coefficients c_i (free of v) with p = sum c_i v^i
    std::vector<MPoly> coefficients_in(std::size_t v) const {
        std::vector<MPoly> out(degree_in(v) + 1, MPoly(n_));
        for (const auto& [m, c] : t_) {
            Monomial r = m;
            unsigned k = r.e[v];
            r.e[v] = 0;
            out[k].t_[r] = c;
        }
        return out;
    }
    static MPoly from_coefficients(std::size_t nvars, std::size_t v, const std::vector<MPoly>& cs) {
        MPoly p(nvars);
        for (std::size_t k = 0; k < cs.size(); ++k) p += cs[k] * variable(nvars, v, static_cast<unsigned>(k));
        return p;
    }

    MPoly derivative(std::size_t v) const {
        MPoly d(n_);
        for (const auto& [m, c] : t_) {
            if (!m.e[v]) continue;
            Monomial r = m;
            r.e[v] -= 1;
            d.add_term(r, c * K(static_cast<long>(m.e[v])));
        }
        return d;
    }

    // p(v -> s*v)
    MPoly scale_variable(std::size_t v, const K& s) const {
        MPoly out(n_);
        for (const auto& [m, c] : t_) {
            K f(1);
            for (unsigned k = 0; k < m.e[v]; ++k) f = f * s;
            out.add_term(m, c * f);
        }
        return out;
    }

    MPoly substitute(std::size_t v, const MPoly& value) const {
        same(value);
        auto cs = coefficients_in(v);
        MPoly r(n_);
        for (std::size_t k = cs.size(); k-- > 0;) r = r * value + cs[k];
        return r;
    }

    // exact quotient when b divides a, nullopt otherwise
    friend std::optional<MPoly> exact_divide(MPoly a, const MPoly& b) {
        if (b.is_zero()) throw ComputationError("division by zero polynomial");
        MPoly q(a.n_);
        const Monomial& lb = b.leading_monomial();
        K inv_lc = K(1) / b.leading_coeff();
        while (!a.is_zero()) {
            Monomial la = a.leading_monomial();
            if (!lb.divides(la)) return std::nullopt;
            MPoly term = monomial(a.n_, la / lb, a.leading_coeff() * inv_lc);
            q += term;
            a -= term * b;
        }
        return q;
    }

    std::string str(const std::vector<std::string>& names) const {
        if (t_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
            const auto& [m, c] = *it;
            std::string cs = coeff_str(c);
            bool neg = !cs.empty() && cs[0] == '-';
            if (!first) os << (neg ? " - " : " + ");
            else if (neg) os << "-";
            if (neg) cs = cs.substr(1);
            bool unit = cs == "1";
            if (!unit || m.degree() == 0) os << cs;
            bool star = !unit;
            for (std::size_t k = 0; k < n_; ++k) {
                if (!m.e[k]) continue;
                os << (star ? "*" : "") << names.at(k);
                if (m.e[k] > 1) os << "^" << unsigned(m.e[k]);
                star = true;
            }
            first = false;
        }
        return os.str();
    }

private:
    void add_term(const Monomial& m, const K& c) {
        if (k3cov::is_zero(c)) return;
        auto [it, fresh] = t_.try_emplace(m, c);
        if (!fresh) {
            it->second = it->second + c;
            if (k3cov::is_zero(it->second)) t_.erase(it);
        }
    }
    void same(const MPoly& o) const {
        if (o.n_ != n_) throw Error("polynomials over different variable lists");
    }
    void check_nvars() const {
        if (n_ > kMaxVars) throw Error("too many polynomial variables");
    }

    std::size_t n_ = 0;
    Terms t_;
};

template <class K>
bool is_zero(const MPoly<K>& p) {
    return p.is_zero();
}

}  // namespace k3cov
