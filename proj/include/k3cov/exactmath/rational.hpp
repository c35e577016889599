#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace k3cov {

using Integer = mpz_class;
using Rational = mpq_class;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// malformed textual input (exit code 2 in the CLI)
struct ParseError : Error {
    std::size_t position;
    ParseError(const std::string& what, std::size_t pos)
        : Error(what + " at position " + std::to_string(pos)), position(pos) {}
};

// well-formed input on which a computation cannot proceed (exit code 3)
struct ComputationError : Error {
    using Error::Error;
};

// a required fixture or input file is absent (exit code 4)
struct MissingInput : Error {
    using Error::Error;
};

inline Rational make_rational(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational parse_rational(const std::string& s) {
    Rational r;
    if (s.empty() || r.set_str(s, 10) != 0 || r.get_den() == 0)
        throw ParseError("invalid rational '" + s + "'", 0);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline Integer floor_of(const Rational& r) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

// representative of r in [0, m)
inline Rational mod_rational(const Rational& r, const Rational& m) {
    Rational q = r / m;
    Rational out = r - Rational(floor_of(q)) * m;
    out.canonicalize();
    return out;
}

inline Integer abs_int(const Integer& z) { return z < 0 ? Integer(-z) : z; }

inline Integer gcd_int(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Integer lcm_int(const Integer& a, const Integer& b) {
    Integer l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

}  // namespace k3cov
