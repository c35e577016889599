#pragma once

#include "k3cov/exactmath/rational.hpp"

#include <array>
#include <ostream>
#include <sstream>
#include <string>

namespace k3cov {

// Element a + b z + c z^2 + d z^3 of Q(z), z a primitive 12th root of unity,
// reduced modulo z^4 - z^2 + 1.
class Cyc12 {
public:
    Cyc12() = default;
    Cyc12(long v) { c_[0] = v; }
    Cyc12(const Rational& v) { c_[0] = v; }
    Cyc12(Rational a, Rational b, Rational c, Rational d) : c_{std::move(a), std::move(b), std::move(c), std::move(d)} {}

    static Cyc12 zeta_power(long k) {
        static const std::array<std::array<int, 4>, 6> low = {{
            {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {-1, 0, 1, 0}, {0, -1, 0, 1}}};
        long r = ((k % 12) + 12) % 12;
        int sign = r >= 6 ? -1 : 1;
        const auto& v = low[r % 6];
        return Cyc12(sign * v[0], sign * v[1], sign * v[2], sign * v[3]);
    }
    static Cyc12 zeta() { return zeta_power(1); }
    static Cyc12 i() { return zeta_power(3); }
    static Cyc12 zeta3() { return zeta_power(4); }
    static Cyc12 sqrt3() { return zeta_power(1) + zeta_power(11); }

    const Rational& coeff(int k) const { return c_[k]; }
    bool is_zero() const { return c_[0] == 0 && c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }
    bool is_rational() const { return c_[1] == 0 && c_[2] == 0 && c_[3] == 0; }

    Cyc12& operator+=(const Cyc12& o) {
        for (int k = 0; k < 4; ++k) c_[k] += o.c_[k];
        return *this;
    }
    Cyc12& operator-=(const Cyc12& o) {
        for (int k = 0; k < 4; ++k) c_[k] -= o.c_[k];
        return *this;
    }
    Cyc12& operator*=(const Cyc12& o) { return *this = *this * o; }
    Cyc12& operator/=(const Cyc12& o) { return *this = *this / o; }

    friend Cyc12 operator+(Cyc12 a, const Cyc12& b) { return a += b; }
    friend Cyc12 operator-(Cyc12 a, const Cyc12& b) { return a -= b; }
    friend Cyc12 operator-(Cyc12 a) {
        for (auto& x : a.c_) x = -x;
        return a;
    }
    friend Cyc12 operator*(const Cyc12& a, const Cyc12& b) {
        std::array<Rational, 7> p;
        for (int j = 0; j < 4; ++j) {
            if (a.c_[j] == 0) continue;
            for (int k = 0; k < 4; ++k) p[j + k] += a.c_[j] * b.c_[k];
        }
        Cyc12 out(p[0], p[1], p[2], p[3]);
        for (int e = 4; e < 7; ++e) {
            if (p[e] == 0) continue;
            Cyc12 z = zeta_power(e);
            for (int k = 0; k < 4; ++k) out.c_[k] += p[e] * z.c_[k];
        }
        return out;
    }
    friend Cyc12 operator/(const Cyc12& a, const Cyc12& b) { return a * b.inverse(); }
    friend bool operator==(const Cyc12& a, const Cyc12& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Cyc12& a, const Cyc12& b) { return !(a == b); }

    // the automorphism z -> z^k, k coprime to 12
    Cyc12 galois(int k) const {
        Cyc12 out;
        for (int j = 0; j < 4; ++j)
            if (c_[j] != 0) out += Cyc12(c_[j]) * zeta_power(static_cast<long>(k) * j);
        return out;
    }

    Rational norm() const {
        Cyc12 n = *this * galois(5) * galois(7) * galois(11);
        return n.c_[0];
    }

    Cyc12 inverse() const {
        if (is_zero()) throw ComputationError("division by zero in Q(zeta12)");
        Cyc12 conj = galois(5) * galois(7) * galois(11);
        Rational n = (*this * conj).c_[0];
        for (auto& x : conj.c_) x /= n;
        return conj;
    }

    // re-parseable: "1 + 2*zeta12 - zeta12^3"
    std::string str() const {
        static const char* names[] = {"", "zeta12", "zeta12^2", "zeta12^3"};
        std::ostringstream os;
        bool first = true;
        for (int k = 0; k < 4; ++k) {
            if (c_[k] == 0) continue;
            Rational a = c_[k] < 0 ? Rational(-c_[k]) : c_[k];
            os << (first ? (c_[k] < 0 ? "-" : "") : (c_[k] < 0 ? " - " : " + "));
            if (k == 0) os << a.get_str();
            else os << (a == 1 ? "" : a.get_str() + "*") << names[k];
            first = false;
        }
        if (first) os << "0";
        return os.str();
    }

private:
    std::array<Rational, 4> c_;
};

inline std::ostream& operator<<(std::ostream& os, const Cyc12& x) { return os << x.str(); }

inline bool is_zero(const Rational& r) { return r == 0; }
inline bool is_zero(const Cyc12& x) { return x.is_zero(); }
class FuncField;
bool is_zero(const FuncField& x);
inline std::string to_string(const Cyc12& x) { return x.str(); }

}  // namespace k3cov
