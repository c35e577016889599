#pragma once

#include "k3cov/ellk3/model.hpp"
#include "k3cov/exactmath/funcfield.hpp"
#include "k3cov/weierstrass/model.hpp"

namespace k3cov {

template <class K>
struct FibrePoint {
    std::string label;
    RatFunc<K> t0;
    unsigned order = 0;
    KodairaType type;
    RatFunc<K> node_x;
};

template <class K>
RatFunc<K> eval_t(const RatFunc<K>& f, std::size_t t, const RatFunc<K>& t0) {
    return f.substitute(t, t0);
}

// vanishing order in t at t0 of a function that is polynomial in t
template <class K>
unsigned order_at(const RatFunc<K>& f, std::size_t t, const RatFunc<K>& t0, unsigned cap = 48) {
    if (f.is_zero()) throw ComputationError("order of the zero function");
    MPoly<K> p = f.num();
    for (unsigned k = 0; k <= cap; ++k) {
        if (!eval_t(RatFunc<K>(p), t, t0).is_zero()) return k;
        p = p.derivative(t);
    }
    throw ComputationError("vanishing order exceeds cap");
}

template <class K>
unsigned t_degree(const RatFunc<K>& f, std::size_t t) {
    if (f.den().degree_in(t) != 0) throw ComputationError("expected a polynomial in t");
    return f.num().degree_in(t);
}

// order of Δ at infinity from the degree-24 homogenization
template <class K>
int order_at_infinity(const WModel<K>& m) {
    if (m.form == WModel<K>::Form::Factored) {
        int o = 0;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = i + 1; j < 3; ++j) o += 2 * (4 - static_cast<int>(t_degree(m.roots[i] - m.roots[j], m.t)));
        return o;
    }
    return 24 - static_cast<int>(t_degree(m.discriminant(), m.t));
}

template <class K>
unsigned discriminant_order(const WModel<K>& m, const RatFunc<K>& t0) {
    if (m.form == WModel<K>::Form::Factored) {
        unsigned o = 0;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = i + 1; j < 3; ++j) {
                auto d = m.roots[i] - m.roots[j];
                o += 2 * order_at(d, m.t, t0);
            }
        return o;
    }
    return order_at(m.discriminant(), m.t, t0);
}

template <class K>
RatFunc<K> node_at(const WModel<K>& m, const RatFunc<K>& t0) {
    if (m.form == WModel<K>::Form::Factored) {
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = i + 1; j < 3; ++j)
                if (eval_t(m.roots[i] - m.roots[j], m.t, t0).is_zero()) return eval_t(m.roots[i], m.t, t0);
        throw ComputationError("no node at this fibre");
    }
    RatFunc<K> a = eval_t(m.a2, m.t, t0), b = eval_t(m.a4, m.t, t0), c = eval_t(m.a6, m.t, t0);
    RatFunc<K> k9 = m.constant(K(9)), k2 = m.constant(K(2)), k3 = m.constant(K(3));
    return (k9 * c - a * b) / (k2 * (a * a - k3 * b));
}

// Classifies the fibres at the given t-values. Every listed value must carry
// an I_2 fibre, and together they must account for all 24 zeros of Δ.
template <class K>
std::vector<FibrePoint<K>> singular_fibres(const WModel<K>& m, const std::vector<std::pair<std::string, RatFunc<K>>>& candidates,
                                           bool skip_smooth = false) {
    std::vector<FibrePoint<K>> out;
    int total = order_at_infinity(m);
    if (total > 0) throw ComputationError("fibre at t = infinity; model outside verifier scope");
    for (const auto& [label, t0] : candidates) {
        unsigned o = discriminant_order(m, t0);
        if (o == 0) {
            if (skip_smooth) continue;
            throw ComputationError("no singular fibre at t = " + label);
        }
        bool c4_zero = eval_t(m.c4_factor(), m.t, t0).is_zero();
        if (o != 2 || c4_zero) throw ComputationError("non-I2 fibre at t = " + label + "; model outside verifier scope");
        out.push_back({label, t0, o, KodairaType::I(2), node_at(m, t0)});
        total += static_cast<int>(o);
    }
    if (total != 24)
        throw ComputationError("discriminant zeros outside the listed fibres (accounted for " + std::to_string(total) + " of 24)");
    return out;
}

// candidate fibre locations t = 0 and the twelfth roots of unity
inline std::vector<std::pair<std::string, RatFunc<Cyc12>>> root_of_unity_candidates(std::size_t nvars) {
    std::vector<std::pair<std::string, RatFunc<Cyc12>>> c;
    c.emplace_back("0", RatFunc<Cyc12>::constant(nvars, Cyc12(0)));
    for (int k = 0; k < 12; ++k) c.emplace_back("zeta12^" + std::to_string(k), RatFunc<Cyc12>::constant(nvars, Cyc12::zeta_power(k)));
    return c;
}

template <class K>
struct SectionCertificate {
    bool on_curve = false;
    bool two_torsion = false;
    std::optional<SquarePart<K>> square;  // cubic(x) * den^4 = (c_num / c_den) s^2 r, r constant
    std::string note;
};

template <class K>
SectionCertificate<K> verify_section(const WModel<K>& m, const RatFunc<K>& x) {
    SectionCertificate<K> cert;
    RatFunc<K> r = m.cubic(x);
    if (r.is_zero()) {
        cert.on_curve = cert.two_torsion = true;
        cert.note = "y = 0";
        return cert;
    }
    // cubic(N/D) = P / D^3 is a constant times a square iff P D is
    MPoly<K> p = r.num() * r.den();
    // Euclid over a function field inflates degrees; there the coefficient
    // square root is used instead of a squarefree decomposition
    if (p.involves_only(m.t) && !std::is_same_v<K, FuncField>) {
        auto sp = poly_square_part(p, m.t);
        cert.on_curve = sp.r.degree_in(m.t) == 0;
        cert.square = sp;
    } else if (auto sq = detail::coefficient_square_root(p, m.t)) {
        std::size_t n = m.nvars();
        cert.on_curve = true;
        cert.square = SquarePart<K>{MPoly<K>(n, K(1)), sq->first, sq->second, MPoly<K>(n, K(1))};
    }
    if (!cert.on_curve) cert.note = "cubic(x) is not a constant times a square";
    return cert;
}

// (P.O) from the poles of x: a pole of order 2k at a finite point contributes
// k; at infinity x has weight 4
template <class K>
long section_po(const WModel<K>& m, const RatFunc<K>& x) {
    unsigned dd = x.den().degree_in(m.t), dn = x.is_zero() ? 0 : x.num().degree_in(m.t);
    if (dd % 2) throw ComputationError("x-coordinate has a pole of odd order");
    long po = dd / 2;
    long inf = static_cast<long>(dn) - static_cast<long>(dd) - 4;
    if (inf > 0) {
        if (inf % 2) throw ComputationError("x-coordinate has odd order at infinity");
        po += inf / 2;
    }
    return po;
}

template <class K>
struct IncidenceResult {
    std::vector<int> incidence;
    std::vector<std::string> notes;
};

template <class K>
IncidenceResult<K> incidence_of(const WModel<K>& m, const std::vector<FibrePoint<K>>& fibres, const RatFunc<K>& x) {
    IncidenceResult<K> res;
    for (const auto& f : fibres) {
        RatFunc<K> xv;
        try {
            xv = eval_t(x, m.t, f.t0);
        } catch (const ComputationError&) {
            res.incidence.push_back(0);
            res.notes.push_back("pole at t = " + f.label + ": meets the identity component where it meets the zero section");
            continue;
        }
        res.incidence.push_back(xv == f.node_x ? 1 : 0);
    }
    return res;
}

template <class K>
std::vector<K> roots_of_unity();
template <>
inline std::vector<Rational> roots_of_unity<Rational>() {
    return {Rational(1), Rational(-1)};
}
template <>
inline std::vector<FuncField> roots_of_unity<FuncField>() {
    return {FuncField(1), FuncField(-1)};
}
template <>
inline std::vector<Cyc12> roots_of_unity<Cyc12>() {
    std::vector<Cyc12> v;
    for (int k = 0; k < 12; ++k) v.push_back(Cyc12::zeta_power(k));
    return v;
}

// Pullback of a section along t -> unit * t. On the short form, the model is
// carried to itself by (x, t) -> (lambda x, unit t) when A(unit t) = lambda^-2 A(t)
// and B(unit t) = lambda^-3 B(t).
template <class K>
RatFunc<K> pullback_section(const WModel<K>& m, const RatFunc<K>& x, const K& unit) {
    if (unit == K(1)) return x;
    auto k = [&](const K& v) { return m.constant(v); };
    RatFunc<K> A = m.a4 - m.a2 * m.a2 / k(K(3));
    RatFunc<K> B = k(K(2)) * m.a2.pow(3) / k(K(27)) - m.a2 * m.a4 / k(K(3)) + m.a6;
    RatFunc<K> ut = RatFunc<K>(MPoly<K>::variable(m.nvars(), m.t)) * k(unit);
    RatFunc<K> As = eval_t(A, m.t, ut), Bs = eval_t(B, m.t, ut);
    for (const K& lambda : roots_of_unity<K>()) {
        K l2 = lambda * lambda, l3 = l2 * lambda;
        if (!(As * k(l2) == A) || !(Bs * k(l3) == B)) continue;
        RatFunc<K> xs = x + m.a2 / k(K(3));
        return k(lambda) * eval_t(xs, m.t, ut) - m.a2 / k(K(3));
    }
    throw ComputationError("model not invariant under the substitution");
}

}  // namespace k3cov
