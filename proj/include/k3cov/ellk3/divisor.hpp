#pragma once

#include "k3cov/ellk3/heights.hpp"

namespace k3cov {

// Divisor classes over the generators F, O, Θ_{v,k} (non-identity components of
// the reducible fibres) and the listed sections of a model.
class DivisorSpace {
public:
    explicit DivisorSpace(EllipticK3Model m) : model_(std::move(m)) {
        names_ = {"F", "O"};
        for (std::size_t v = 0; v < model_.fibres.size(); ++v) {
            const auto& t = model_.fibres[v].type;
            theta_start_.push_back(names_.size());
            for (int k = 1; k <= t.root_rank(); ++k) names_.push_back("Theta[" + std::to_string(v) + "," + std::to_string(k) + "]");
        }
        section_start_ = names_.size();
        for (const auto& s : model_.sections) names_.push_back(s.name);
        std::size_t n = names_.size();
        gram_ = IntMatrix(n, n);
        gram_(0, 1) = gram_(1, 0) = 1;
        gram_(1, 1) = -2;
        for (std::size_t v = 0; v < model_.fibres.size(); ++v) {
            IntMatrix c = fibre_component_gram(model_.fibres[v].type);
            for (std::size_t a = 0; a < c.rows(); ++a)
                for (std::size_t b = 0; b < c.rows(); ++b) gram_(theta_start_[v] + a, theta_start_[v] + b) = c(a, b);
        }
        for (std::size_t i = 0; i < model_.sections.size(); ++i) {
            const auto& s = model_.sections[i];
            std::size_t p = section_start_ + i;
            gram_(p, 0) = gram_(0, p) = 1;
            gram_(p, 1) = gram_(1, p) = s.po;
            for (std::size_t v = 0; v < model_.fibres.size(); ++v)
                if (s.incidence[v] > 0) {
                    std::size_t t = theta_start_[v] + s.incidence[v] - 1;
                    gram_(p, t) = gram_(t, p) = 1;
                }
            for (std::size_t j = 0; j < model_.sections.size(); ++j)
                gram_(p, section_start_ + j) = model_.intersection(s.name, model_.sections[j].name);
        }
    }

    const EllipticK3Model& model() const { return model_; }
    std::size_t size() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const IntMatrix& gram() const { return gram_; }

    std::size_t index_F() const { return 0; }
    std::size_t index_O() const { return 1; }
    // k = 1..root_rank
    std::size_t index_theta(std::size_t fibre, int k) const {
        const auto& t = model_.fibres.at(fibre).type;
        if (k < 1 || k > t.root_rank()) throw ComputationError("no such fibre component");
        return theta_start_[fibre] + k - 1;
    }
    std::size_t index_section(const std::string& s) const {
        if (s == "O") return index_O();
        for (std::size_t i = 0; i < model_.sections.size(); ++i)
            if (model_.sections[i].name == s) return section_start_ + i;
        throw ComputationError("unknown section " + s);
    }

private:
    EllipticK3Model model_;
    std::vector<std::string> names_;
    std::vector<std::size_t> theta_start_;
    std::size_t section_start_ = 0;
    IntMatrix gram_;
};

struct DivisorClass {
    RatVector coeffs;
    bool degenerate = false;

    bool integral() const {
        for (const auto& c : coeffs)
            if (!is_integer(c)) return false;
        return true;
    }
    DivisorClass& add(std::size_t i, const Rational& c) {
        coeffs.at(i) += c;
        return *this;
    }
    friend DivisorClass operator+(DivisorClass a, const DivisorClass& b) {
        if (a.coeffs.size() != b.coeffs.size()) throw ComputationError("divisor basis mismatch");
        for (std::size_t i = 0; i < b.coeffs.size(); ++i) a.coeffs[i] += b.coeffs[i];
        a.degenerate = false;
        return a;
    }
    friend DivisorClass operator*(const Rational& s, DivisorClass a) {
        for (auto& c : a.coeffs) c *= s;
        return a;
    }
    friend DivisorClass operator-(const DivisorClass& a, const DivisorClass& b) { return a + Rational(-1) * b; }
};

inline DivisorClass zero_class(const DivisorSpace& X) { return {RatVector(X.size(), Rational(0))}; }
inline DivisorClass basis_class(const DivisorSpace& X, std::size_t i) { return zero_class(X).add(i, 1); }
inline DivisorClass fibre_class(const DivisorSpace& X) { return basis_class(X, X.index_F()); }
inline DivisorClass section_class(const DivisorSpace& X, const std::string& s) { return basis_class(X, X.index_section(s)); }
inline DivisorClass theta_class(const DivisorSpace& X, std::size_t fibre, int k) { return basis_class(X, X.index_theta(fibre, k)); }

// Θ_{v,0} = F - sum of the non-identity components with multiplicities
inline DivisorClass identity_component_class(const DivisorSpace& X, std::size_t fibre) {
    DivisorClass d = fibre_class(X);
    auto mult = fibre_multiplicities(X.model().fibres.at(fibre).type);
    for (std::size_t k = 0; k < mult.size(); ++k) d.add(X.index_theta(fibre, static_cast<int>(k) + 1), -mult[k]);
    return d;
}

inline Rational intersect(const DivisorClass& a, const DivisorClass& b, const DivisorSpace& X) {
    if (a.coeffs.size() != X.size() || b.coeffs.size() != X.size()) throw ComputationError("divisor basis mismatch");
    return dot(a.coeffs, to_rational(X.gram()), b.coeffs);
}

// φ(P) = P - O - ((P.O)+2)F - (fibre corrections), orthogonal to O, F and all Θ.
inline DivisorClass shioda_projection(const std::string& p, const DivisorSpace& X) {
    if (p == "O") {
        DivisorClass z = zero_class(X);
        z.degenerate = true;
        return z;
    }
    const auto& m = X.model();
    const auto& s = m.section(p);
    DivisorClass d = section_class(X, p);
    d.add(X.index_O(), -1);
    d.add(X.index_F(), -(s.po + 2));
    for (std::size_t v = 0; v < m.fibres.size(); ++v) {
        const auto& t = m.fibres[v].type;
        if (!t.reducible() || s.incidence[v] == 0) continue;
        RatMatrix ci = inverse(to_rational(fibre_component_gram(t)));
        std::size_t k = s.incidence[v] - 1;
        for (std::size_t j = 0; j < ci.rows(); ++j) d.add(X.index_theta(v, static_cast<int>(j) + 1), -ci(j, k));
    }
    return d;
}

}  // namespace k3cov
