#pragma once

#include "k3cov/exactmath/expr.hpp"

namespace k3cov {

// Q(m): rational functions in one parameter, kept reduced with a monic
// denominator so that equality is structural.
class FuncField {
public:
    using P = UPoly<Rational>;

    FuncField() = default;
    FuncField(long v) : n_(Rational(v)), d_(Rational(1)) {}
    FuncField(const Rational& v) : n_(v), d_(Rational(1)) {}
    FuncField(P n, P d) : n_(std::move(n)), d_(std::move(d)) {
        if (d_.is_zero()) throw ComputationError("division by zero in Q(m)");
        normalize();
    }
    static FuncField generator() { return FuncField(P::x(), P(Rational(1))); }
    static const std::string& parameter_name() {
        static const std::string name = "m";
        return name;
    }

    const P& num() const { return n_; }
    const P& den() const { return d_; }
    bool is_zero() const { return n_.is_zero(); }
    bool is_rational() const { return n_.degree() <= 0 && d_.degree() == 0; }
    Rational rational_value() const { return n_.is_zero() ? Rational(0) : n_[0]; }

    friend FuncField operator+(const FuncField& a, const FuncField& b) {
        if (a.d_ == b.d_) return FuncField(a.n_ + b.n_, a.d_);
        return FuncField(a.n_ * b.d_ + b.n_ * a.d_, a.d_ * b.d_);
    }
    friend FuncField operator-(const FuncField& a) {
        FuncField r = a;
        r.n_ = -r.n_;
        return r;
    }
    friend FuncField operator-(const FuncField& a, const FuncField& b) { return a + (-b); }
    friend FuncField operator*(const FuncField& a, const FuncField& b) {
        if (a.is_zero() || b.is_zero()) return FuncField();
        if (a.d_.degree() == 0 && b.d_.degree() == 0) {
            FuncField r;
            r.n_ = a.n_ * b.n_;
            r.d_ = P(Rational(1));
            return r;
        }
        return FuncField(a.n_ * b.n_, a.d_ * b.d_);
    }
    friend FuncField operator/(const FuncField& a, const FuncField& b) {
        if (b.is_zero()) throw ComputationError("division by zero in Q(m)");
        return FuncField(a.n_ * b.d_, a.d_ * b.n_);
    }
    friend bool operator==(const FuncField& a, const FuncField& b) { return a.n_ == b.n_ && a.d_ == b.d_; }
    friend bool operator!=(const FuncField& a, const FuncField& b) { return !(a == b); }

    std::string str() const {
        auto ps = [](const P& p) {
            if (p.is_zero()) return std::string("0");
            std::string out;
            for (int k = p.degree(); k >= 0; --k) {
                const Rational& c = p[k];
                if (c == 0) continue;
                std::string cs = c.get_str();
                bool neg = cs[0] == '-';
                if (neg) cs = cs.substr(1);
                out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
                if (k == 0 || cs != "1") out += cs + (k ? "*" : "");
                if (k) out += parameter_name() + (k > 1 ? "^" + std::to_string(k) : "");
            }
            return out;
        };
        if (d_.degree() == 0) return ps(n_);
        return "(" + ps(n_) + ")/(" + ps(d_) + ")";
    }

private:
    void normalize() {
        if (n_.is_zero()) {
            d_ = P(Rational(1));
            return;
        }
        if (d_.degree() > 0) {
            P g = gcd(n_, d_);
            if (g.degree() > 0) {
                n_ = exact_quotient(n_, g);
                d_ = exact_quotient(d_, g);
            }
        }
        Rational lc = d_.lead();
        if (lc != 1) {
            Rational inv = 1 / lc;
            n_ = n_ * inv;
            d_ = d_ * inv;
        }
    }

    P n_, d_{Rational(1)};
};

inline bool is_zero(const FuncField& x) { return x.is_zero(); }
inline std::string to_string(const FuncField& x) { return x.str(); }
inline std::string coeff_str(const FuncField& x) { return x.is_rational() ? x.rational_value().get_str() : "(" + x.str() + ")"; }

template <>
struct ReservedConstant<FuncField> {
    static std::optional<FuncField> lookup(const std::string& name) {
        if (name == FuncField::parameter_name()) return FuncField::generator();
        return std::nullopt;
    }
};

}  // namespace k3cov
