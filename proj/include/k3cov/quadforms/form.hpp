#pragma once

#include "k3cov/exactmath/matrix.hpp"
#include "k3cov/lattices/enumerate.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <optional>

namespace k3cov {

// Q(x) = x^T gram x, integer-valued and positive definite
class PosDefForm {
public:
    PosDefForm() = default;
    explicit PosDefForm(RatMatrix gram) : gram_(std::move(gram)) {
        std::size_t n = gram_.rows();
        if (gram_.cols() != n || !gram_.is_symmetric()) throw ComputationError("Gram matrix must be symmetric");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Rational v = i == j ? gram_(i, j) : 2 * gram_(i, j);
                if (!is_integer(v)) throw ComputationError("form is not integer-valued");
            }
        if (!is_positive_definite(gram_)) throw ComputationError("form is not positive definite");
        c_.assign(n, std::vector<long>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Rational v = i == j ? gram_(i, j) : 2 * gram_(i, j);
                if (!v.get_num().fits_slong_p()) throw ComputationError("Gram entry too large");
                c_[i][j] = v.get_num().get_si();
            }
    }
    static PosDefForm from_integer(const IntMatrix& g) { return PosDefForm(to_rational(g)); }
    // positive flip of a negative-definite Gram matrix
    static PosDefForm flipped(const IntMatrix& g) { return PosDefForm(to_rational(-g)); }

    std::size_t rank() const { return gram_.rows(); }
    const RatMatrix& gram() const { return gram_; }

    Integer value(const std::vector<long>& x) const {
        Integer s = 0;
        for (std::size_t i = 0; i < rank(); ++i) {
            if (!x[i]) continue;
            s += Integer(c_[i][i]) * x[i] * x[i];
            for (std::size_t j = i + 1; j < rank(); ++j)
                if (x[j]) s += Integer(c_[i][j]) * x[i] * x[j];
        }
        return s;
    }
    // coefficient of x_i^2 (i == j) or x_i x_j (i != j) in Q
    long coefficient(std::size_t i, std::size_t j) const { return c_[i][j]; }

    // indices of the orthogonal blocks, each sorted
    std::vector<std::vector<std::size_t>> blocks() const {
        std::size_t n = rank();
        std::vector<std::size_t> p(n);
        std::iota(p.begin(), p.end(), 0);
        std::function<std::size_t(std::size_t)> find = [&](std::size_t a) { return p[a] == a ? a : p[a] = find(p[a]); };
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (c_[i][j]) p[find(i)] = find(j);
        std::map<std::size_t, std::vector<std::size_t>> g;
        for (std::size_t i = 0; i < n; ++i) g[find(i)].push_back(i);
        std::vector<std::vector<std::size_t>> out;
        for (auto& [r, v] : g) out.push_back(v);
        return out;
    }
    PosDefForm restrict_to(const std::vector<std::size_t>& idx) const {
        RatMatrix g(idx.size(), idx.size());
        for (std::size_t a = 0; a < idx.size(); ++a)
            for (std::size_t b = 0; b < idx.size(); ++b) g(a, b) = gram_(idx[a], idx[b]);
        return PosDefForm(g);
    }

private:
    RatMatrix gram_;
    std::vector<std::vector<long>> c_;
};

// All x with 0 < Q(x) <= bound (both signs), exact.
inline std::vector<std::pair<std::vector<long>, Integer>> short_vectors(const PosDefForm& f, const Integer& bound) {
    if (bound < 0) throw ComputationError("bound must be nonnegative");
    std::vector<std::pair<std::vector<long>, Integer>> out;
    enumerate_short_vectors(f.gram(), Rational(bound), [&](const std::vector<long>& x, const Rational& v) {
        out.emplace_back(x, v.get_num());
    });
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second < b.second;
        return a.first < b.first;
    });
    return out;
}

namespace detail {

// For each 0 <= n <= bound, a vector x with Q(x) = n if one exists. Outer
// levels prune with a floating Cholesky bound widened by a safety margin;
// the innermost coordinate is scanned with exact integer arithmetic, so every
// recorded value is exact and (for the sizes involved) nothing is skipped.
inline std::vector<std::optional<std::vector<long>>> value_sweep(const PosDefForm& f, long bound) {
    std::size_t n = f.rank();
    std::vector<std::optional<std::vector<long>>> seen(bound + 1);
    seen[0] = std::vector<long>(n, 0);
    if (n == 0 || bound <= 0) return seen;
    std::vector<long double> d(n);
    std::vector<std::vector<long double>> mu(n, std::vector<long double>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        long double s = f.gram()(i, i).get_d();
        for (std::size_t k = 0; k < i; ++k) s -= d[k] * mu[k][i] * mu[k][i];
        d[i] = s;
        for (std::size_t j = i + 1; j < n; ++j) {
            long double t = f.gram()(i, j).get_d();
            for (std::size_t k = 0; k < i; ++k) t -= d[k] * mu[k][i] * mu[k][j];
            mu[i][j] = t / s;
        }
    }
    const long double margin = 1e-6L * (1 + bound);
    std::vector<long> x(n, 0);
    // Q = sum_i c_ii x_i^2 + sum_{i<j} c_ij x_i x_j; for the scan over x_0 with the
    // rest fixed, Q(x_0) = a x_0^2 + b x_0 + C
    auto scan = [&]() {
        long a = f.coefficient(0, 0), b = 0;
        for (std::size_t j = 1; j < n; ++j) b += f.coefficient(0, j) * x[j];
        long C = 0;
        for (std::size_t i = 1; i < n; ++i) {
            if (!x[i]) continue;
            C += f.coefficient(i, i) * x[i] * x[i];
            for (std::size_t j = i + 1; j < n; ++j) C += f.coefficient(i, j) * x[i] * x[j];
        }
        // minimum near -b/(2a); walk outward while the exact value stays <= bound
        long m = static_cast<long>(std::floor(-static_cast<long double>(b) / (2.0L * a)));
        auto val = [&](long t) { return (a * t + b) * t + C; };
        auto record = [&](long t, long v) {
            if (v > 0 && v <= bound && !seen[v]) {
                x[0] = t;
                seen[v] = x;
                x[0] = 0;
            }
        };
        for (long t = m; ; --t) {
            long v = val(t);
            if (v > bound) break;
            record(t, v);
        }
        for (long t = m + 1; ; ++t) {
            long v = val(t);
            if (v > bound) break;
            record(t, v);
        }
    };
    std::function<void(std::size_t, long double)> rec = [&](std::size_t i, long double rem) {
        if (i == 0) {
            scan();
            return;
        }
        long double c = 0;
        for (std::size_t j = i + 1; j < n; ++j) c -= mu[i][j] * x[j];
        long double r = std::sqrt(std::max<long double>(0, (rem + margin) / d[i]));
        long lo = static_cast<long>(std::ceil(c - r - 1e-9L)), hi = static_cast<long>(std::floor(c + r + 1e-9L));
        // Q(-x) = Q(x): at the top level only nonnegative x_{n-1} are needed
        if (i == n - 1) lo = std::max(lo, 0L);
        for (long v = lo; v <= hi; ++v) {
            x[i] = v;
            long double t = v - c;
            rec(i - 1, rem - d[i] * t * t);
        }
        x[i] = 0;
    };
    if (n == 1) {
        scan();
    } else {
        rec(n - 1, static_cast<long double>(bound));
    }
    return seen;
}

}  // namespace detail

}  // namespace k3cov
