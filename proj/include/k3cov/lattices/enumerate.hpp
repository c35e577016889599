#pragma once

#include "k3cov/exactmath/matrix.hpp"

#include <functional>

namespace k3cov {

// Q(x) = sum_i d_i (x_i + sum_{j>i} mu_ij x_j)^2
struct RationalCholesky {
    std::vector<Rational> d;
    RatMatrix mu;

    explicit RationalCholesky(const RatMatrix& g) : d(g.rows()), mu(g.rows(), g.rows()) {
        std::size_t n = g.rows();
        for (std::size_t i = 0; i < n; ++i) {
            Rational s = g(i, i);
            for (std::size_t k = 0; k < i; ++k) s -= d[k] * mu(k, i) * mu(k, i);
            if (s <= 0) throw ComputationError("enumeration requires definite form");
            d[i] = s;
            for (std::size_t j = i + 1; j < n; ++j) {
                Rational t = g(i, j);
                for (std::size_t k = 0; k < i; ++k) t -= d[k] * mu(k, i) * mu(k, j);
                mu(i, j) = t / s;
            }
        }
    }
};

// Visits every nonzero x with x^T g x <= bound for positive-definite g, with
// exact rational box bounds at every level.
inline void enumerate_short_vectors(const RatMatrix& g, const Rational& bound,
                                    const std::function<void(const std::vector<long>&, const Rational&)>& visit) {
    std::size_t n = g.rows();
    if (n == 0) return;
    RationalCholesky ch(g);
    std::vector<long> x(n, 0);
    std::function<void(std::size_t, const Rational&)> rec = [&](std::size_t i, const Rational& rem) {
        Rational c = 0;
        for (std::size_t j = i + 1; j < n; ++j)
            if (x[j]) c -= ch.mu(i, j) * x[j];
        auto fits = [&](long v) {
            Rational t = Rational(v) - c;
            return ch.d[i] * t * t <= rem;
        };
        auto descend = [&](long v) {
            x[i] = v;
            Rational t = Rational(v) - c;
            Rational left = rem - ch.d[i] * t * t;
            if (i == 0) {
                bool nonzero = false;
                for (long xi : x)
                    if (xi) nonzero = true;
                if (nonzero) visit(x, bound - left);
            } else {
                rec(i - 1, left);
            }
        };
        long start = floor_of(c).get_si();
        for (long v = start; fits(v); --v) descend(v);
        for (long v = start + 1; fits(v); ++v) descend(v);
        x[i] = 0;
    };
    rec(n - 1, bound);
}

}  // namespace k3cov
