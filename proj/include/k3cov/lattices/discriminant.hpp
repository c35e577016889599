#pragma once

#include "k3cov/lattices/lattice.hpp"

#include <functional>
#include <optional>
#include <set>

namespace k3cov {

// L^v / L with q in Q/2Z and b in Q/Z. Elements are rational vectors in the
// coordinates of L; coordinates are reduced into [0,1).
class DiscriminantForm {
public:
    explicit DiscriminantForm(const IntegralLattice& L) : gram_(L.rational_gram()) {
        SmithForm f = smith_normal_form(L.gram());
        if (f.rank != L.rank()) throw ComputationError("degenerate lattice");
        V_ = to_rational(f.V);
        Vinv_ = inverse(V_);
        for (std::size_t k = 0; k < f.rank; ++k) {
            Integer s = f.S(k, k);
            if (s == 1) continue;
            factors_.push_back(s);
            slot_.push_back(k);
            RatVector g = V_.col(k);
            for (auto& x : g) x /= Rational(s);
            generators_.push_back(reduce(g));
        }
    }

    const std::vector<Integer>& invariant_factors() const { return factors_; }
    const std::vector<RatVector>& generators() const { return generators_; }
    Integer order() const {
        Integer o = 1;
        for (const auto& s : factors_) o *= s;
        return o;
    }

    RatVector reduce(RatVector x) const {
        // reduce in the SNF-adapted basis so that representatives are canonical
        RatVector y = Vinv_.apply(x);
        for (auto& c : y) c -= Rational(floor_of(c));
        return V_.apply(y);
    }
    bool in_dual(const RatVector& x) const {
        for (const auto& c : gram_.apply(x))
            if (!is_integer(c)) return false;
        return true;
    }
    bool is_zero(const RatVector& x) const {
        for (const auto& c : Vinv_.apply(x))
            if (!is_integer(c)) return false;
        return true;
    }

    Rational q(const RatVector& x) const { return mod_rational(dot(x, gram_, x), Rational(2)); }
    Rational b(const RatVector& x, const RatVector& y) const { return mod_rational(dot(x, gram_, y), Rational(1)); }

    // coefficient tuple c with x == sum c_i g_i modulo L
    std::vector<Integer> coordinates(const RatVector& x) const {
        if (!in_dual(x)) throw ComputationError("vector is not in the dual lattice");
        RatVector y = Vinv_.apply(x);
        std::vector<Integer> c;
        for (std::size_t i = 0; i < slot_.size(); ++i) {
            Rational v = y[slot_[i]] * Rational(factors_[i]);
            c.push_back(floor_of(mod_rational(v, Rational(factors_[i]))));
        }
        return c;
    }
    RatVector element(const std::vector<Integer>& c) const {
        RatVector x(gram_.rows(), Rational(0));
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t k = 0; k < x.size(); ++k) x[k] += Rational(c[i]) * generators_[i][k];
        return reduce(x);
    }

    void for_each_element(const std::function<void(const std::vector<Integer>&)>& fn) const {
        std::vector<Integer> c(factors_.size(), Integer(0));
        for (;;) {
            fn(c);
            std::size_t i = 0;
            while (i < c.size()) {
                c[i] += 1;
                if (c[i] < factors_[i]) break;
                c[i] = 0;
                ++i;
            }
            if (i == c.size()) return;
        }
    }

    std::vector<Rational> q_values() const {
        std::vector<Rational> v;
        for (const auto& g : generators_) v.push_back(q(g));
        return v;
    }
    RatMatrix b_matrix() const {
        RatMatrix m(generators_.size(), generators_.size());
        for (std::size_t i = 0; i < generators_.size(); ++i)
            for (std::size_t j = 0; j < generators_.size(); ++j) m(i, j) = b(generators_[i], generators_[j]);
        return m;
    }

    // multiset of q over the whole group, a coarse isomorphism invariant
    std::multiset<Rational> q_histogram() const {
        std::multiset<Rational> h;
        for_each_element([&](const std::vector<Integer>& c) { h.insert(q(element(c))); });
        return h;
    }

    std::size_t ambient_rank() const { return gram_.rows(); }

private:
    RatMatrix gram_, V_, Vinv_;
    std::vector<Integer> factors_;
    std::vector<std::size_t> slot_;
    std::vector<RatVector> generators_;
};

inline DiscriminantForm discriminant_form(const IntegralLattice& L) { return DiscriminantForm(L); }

inline bool is_two_elementary(const IntegralLattice& L) {
    DiscriminantForm A(L);
    for (const auto& s : A.invariant_factors())
        if (s != 2) return false;
    return true;
}

inline Integer element_order(const DiscriminantForm& A, const RatVector& x) {
    Integer n = 1;
    RatVector y = x;
    while (!A.is_zero(y)) {
        for (std::size_t k = 0; k < y.size(); ++k) y[k] += x[k];
        n += 1;
        if (n > A.order()) throw ComputationError("element order exceeds group order");
    }
    return n;
}

inline Integer subgroup_order(const DiscriminantForm& A, const std::vector<RatVector>& gens) {
    std::set<std::vector<Integer>> seen;
    std::vector<std::vector<Integer>> frontier{A.coordinates(RatVector(A.ambient_rank(), Rational(0)))};
    seen.insert(frontier[0]);
    std::vector<std::vector<Integer>> gc;
    for (const auto& g : gens) gc.push_back(A.coordinates(g));
    const auto& f = A.invariant_factors();
    while (!frontier.empty()) {
        auto cur = frontier.back();
        frontier.pop_back();
        for (const auto& g : gc) {
            auto nxt = cur;
            for (std::size_t i = 0; i < nxt.size(); ++i) nxt[i] = (nxt[i] + g[i]) % f[i];
            if (seen.insert(nxt).second) frontier.push_back(nxt);
        }
    }
    return Integer(static_cast<unsigned long>(seen.size()));
}

// An anti-isometry A -> B, i.e. a group isomorphism with q_B(phi x) = -q_A(x),
// given as images of an independent generating set of A; nullopt when none
// exists. q on generators plus b on pairs determines q everywhere.
inline std::optional<std::vector<RatVector>> find_anti_isometry(const DiscriminantForm& A, const DiscriminantForm& B,
                                                                const std::vector<RatVector>& gens_A) {
    if (A.order() != B.order()) return std::nullopt;
    std::vector<RatVector> elems;
    B.for_each_element([&](const std::vector<Integer>& c) { elems.push_back(B.element(c)); });
    std::vector<Integer> ord_A;
    for (const auto& g : gens_A) ord_A.push_back(element_order(A, g));
    Integer prod = 1;
    for (const auto& o : ord_A) prod *= o;
    if (prod != A.order()) throw ComputationError("anti-isometry search needs an independent generating set");
    std::vector<Integer> ord_B;
    for (const auto& e : elems) ord_B.push_back(element_order(B, e));

    std::vector<RatVector> img;
    std::function<bool(std::size_t)> search = [&](std::size_t i) -> bool {
        if (i == gens_A.size()) return subgroup_order(B, img) == B.order();
        Rational want_q = mod_rational(-A.q(gens_A[i]), Rational(2));
        for (std::size_t e = 0; e < elems.size(); ++e) {
            if (ord_B[e] != ord_A[i] || B.q(elems[e]) != want_q) continue;
            bool ok = true;
            for (std::size_t j = 0; j < i && ok; ++j)
                ok = B.b(elems[e], img[j]) == mod_rational(-A.b(gens_A[i], gens_A[j]), Rational(1));
            if (!ok) continue;
            img.push_back(elems[e]);
            std::vector<RatVector> prefix(gens_A.begin(), gens_A.begin() + i + 1);
            if (subgroup_order(B, img) == subgroup_order(A, prefix) && search(i + 1)) return true;
            img.pop_back();
        }
        return false;
    };
    if (subgroup_order(A, gens_A) != A.order()) return std::nullopt;
    if (search(0)) return img;
    return std::nullopt;
}

inline std::optional<std::vector<RatVector>> find_anti_isometry(const DiscriminantForm& A, const DiscriminantForm& B) {
    return find_anti_isometry(A, B, A.generators());
}

}  // namespace k3cov
