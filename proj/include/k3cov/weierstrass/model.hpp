#pragma once

#include "k3cov/exactmath/expr.hpp"
#include "k3cov/exactmath/square.hpp"

namespace k3cov {

template <class K>
MPoly<K> with_nvars(const MPoly<K>& p, std::size_t n) {
    MPoly<K> out(n);
    for (const auto& [m, c] : p.terms()) {
        for (std::size_t k = n; k < p.nvars(); ++k)
            if (m.e[k]) throw ComputationError("polynomial involves a dropped variable");
        out += MPoly<K>::monomial(n, m, c);
    }
    return out;
}

template <class K>
RatFunc<K> with_nvars(const RatFunc<K>& f, std::size_t n) {
    return RatFunc<K>(with_nvars(f.num(), n), with_nvars(f.den(), n));
}

template <class K>
bool free_of(const RatFunc<K>& f, std::size_t v) {
    return f.num().degree_in(v) == 0 && f.den().degree_in(v) == 0;
}

// y^2 = x^3 + a2 x^2 + a4 x + a6 over K(params)[t], t = variable 0
template <class K>
struct WModel {
    enum class Form { Short, Factored, General };

    SymbolTable<K> symbols;
    std::size_t t = 0;
    RatFunc<K> a2, a4, a6;
    Form form = Form::General;
    std::vector<RatFunc<K>> roots;  // the e_i of a factored form y^2 = (x - e_1)(x - e_2)(x - e_3)
    std::string text;

    std::size_t nvars() const { return symbols.nvars(); }
    RatFunc<K> constant(const K& c) const { return RatFunc<K>::constant(nvars(), c); }

    RatFunc<K> cubic(const RatFunc<K>& x) const { return ((x + a2) * x + a4) * x + a6; }
    RatFunc<K> c4_factor() const { return a2 * a2 - constant(K(3)) * a4; }

    // Δ = -16 (4A^3 + 27B^2) for the short form, written directly in a2, a4, a6
    RatFunc<K> discriminant() const {
        if (form == Form::Factored) {
            RatFunc<K> p = constant(K(16));
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t j = i + 1; j < 3; ++j) p = p * (roots[i] - roots[j]).pow(2);
            return p;
        }
        auto k = [&](long v) { return constant(K(v)); };
        RatFunc<K> d = a2 * a2 * a4 * a4 - k(4) * a4.pow(3) - k(4) * a2.pow(3) * a6 + k(18) * a2 * a4 * a6 - k(27) * a6 * a6;
        return k(16) * d;
    }
};

namespace detail {

// top-level factors of a product, split at '*' outside parentheses
inline std::vector<std::string> split_product(const std::string& s) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(') {
            ++depth;
        } else if (c == ')') {
            --depth;
        } else if (depth == 0 && (c == '+' || c == '-' || c == '/' || c == '^')) {
            return {};
        }
        if (depth == 0 && c == '*') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace detail

// Parses "y^2 = <cubic in x>" over the declared symbols (variable 0 is t).
template <class K>
WModel<K> parse_model(const std::string& text, const SymbolTable<K>& symbols) {
    if (symbols.variables.empty() || symbols.variables[0] != "t") throw ParseError("first declared variable must be t", 0);
    auto eq = text.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'y^2 = ...'", 0);
    std::string lhs = text.substr(0, eq), rhs = text.substr(eq + 1);
    std::string l;
    for (char c : lhs)
        if (!std::isspace(static_cast<unsigned char>(c))) l += c;
    if (l != "y^2") throw ParseError("left-hand side must be y^2", 0);
    for (const auto& v : symbols.variables)
        if (v == "x" || v == "y") throw ParseError("x and y are reserved", 0);
    std::size_t n = symbols.nvars();
    SymbolTable<K> ext = symbols;
    ext.variables.push_back("x");
    for (auto& [name, def] : ext.definitions) def = with_nvars(def, n + 1);
    std::size_t xv = n;
    RatFunc<K> f;
    try {
        f = parse_expression(rhs, ext);
    } catch (const ParseError& e) {
        throw ParseError(e.what(), e.position + eq + 1);
    }
    if (f.den().degree_in(xv) != 0) throw ParseError("not a Weierstrass cubic: x in a denominator", eq + 1);
    auto cs = f.num().coefficients_in(xv);
    if (cs.size() != 4) throw ParseError("not a Weierstrass cubic: degree in x is " + std::to_string(cs.size() - 1), eq + 1);
    RatFunc<K> lead(cs[3], f.den());
    if (!lead.is_constant() || !(lead.constant_value() == K(1)))
        throw ParseError("not a Weierstrass cubic: leading coefficient must be 1", eq + 1);
    WModel<K> m;
    m.symbols = symbols;
    m.text = text;
    m.a2 = with_nvars(RatFunc<K>(cs[2], f.den()), n);
    m.a4 = with_nvars(RatFunc<K>(cs[1], f.den()), n);
    m.a6 = with_nvars(RatFunc<K>(cs[0], f.den()), n);
    for (const auto* a : {&m.a2, &m.a4, &m.a6})
        if (a->den().degree_in(0) != 0) throw ComputationError("Weierstrass coefficients must be polynomial in t");
    const std::array<unsigned, 3> bounds{4, 8, 12};
    const std::array<const RatFunc<K>*, 3> as{&m.a2, &m.a4, &m.a6};
    for (std::size_t i = 0; i < 3; ++i)
        if (as[i]->num().degree_in(0) > bounds[i])
            throw ComputationError("coefficient a" + std::to_string(2 * i + 2) + " exceeds t-degree " + std::to_string(bounds[i]));
    m.form = m.a2.is_zero() ? WModel<K>::Form::Short : WModel<K>::Form::General;
    // detect y^2 = (x - e1)(x - e2)(x - e3) to keep the roots
    auto factors = detail::split_product(rhs);
    if (!factors.empty()) {
        std::vector<RatFunc<K>> roots;
        RatFunc<K> scalar = RatFunc<K>::constant(n + 1, K(1));
        bool ok = true;
        for (const auto& fs : factors) {
            RatFunc<K> g = parse_expression(fs, ext);
            if (g.den().degree_in(xv) != 0) {
                ok = false;
                break;
            }
            auto gc = g.num().coefficients_in(xv);
            if (gc.size() == 1) {
                scalar = scalar * g;
                continue;
            }
            if (gc.size() != 2) {
                ok = false;
                break;
            }
            RatFunc<K> lc(gc[1], g.den());
            if (!lc.is_constant()) {
                ok = false;
                break;
            }
            scalar = scalar * lc;
            roots.push_back(with_nvars(-RatFunc<K>(gc[0], g.den()) / lc, n));
        }
        if (ok && roots.size() == 3 && scalar.is_constant() && scalar.constant_value() == K(1)) {
            m.form = WModel<K>::Form::Factored;
            m.roots = roots;
        }
    }
    if (m.discriminant().is_zero()) throw ComputationError("discriminant vanishes identically");
    return m;
}

}  // namespace k3cov
