#pragma once

#include "k3cov/exactmath/matrix.hpp"

namespace k3cov {

struct SmithForm {
    IntMatrix S, U, V;  // U * m * V == S
    std::size_t rank = 0;

    std::vector<Integer> invariant_factors() const {
        std::vector<Integer> d;
        for (std::size_t k = 0; k < rank; ++k) d.push_back(S(k, k));
        return d;
    }
};

inline SmithForm smith_normal_form(const IntMatrix& m) {
    SmithForm f{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols())};
    IntMatrix& S = f.S;
    std::size_t nr = m.rows(), nc = m.cols(), n = std::min(nr, nc);
    std::size_t k = 0;
    for (; k < n; ++k) {
        for (;;) {
            std::size_t pi = nr, pj = nc;
            for (std::size_t i = k; i < nr; ++i)
                for (std::size_t j = k; j < nc; ++j)
                    if (S(i, j) != 0 && (pi == nr || abs(S(i, j)) < abs(S(pi, pj)))) pi = i, pj = j;
            if (pi == nr) goto finished;
            S.swap_rows(k, pi);
            f.U.swap_rows(k, pi);
            S.swap_cols(k, pj);
            f.V.swap_cols(k, pj);

            bool clean = true;
            for (std::size_t i = k + 1; i < nr; ++i) {
                if (S(i, k) == 0) continue;
                Integer q = S(i, k) / S(k, k);
                S.add_row(i, k, -q);
                f.U.add_row(i, k, -q);
                if (S(i, k) != 0) clean = false;
            }
            for (std::size_t j = k + 1; j < nc; ++j) {
                if (S(k, j) == 0) continue;
                Integer q = S(k, j) / S(k, k);
                S.add_col(j, k, -q);
                f.V.add_col(j, k, -q);
                if (S(k, j) != 0) clean = false;
            }
            if (!clean) continue;

            bool divides = true;
            for (std::size_t i = k + 1; i < nr && divides; ++i)
                for (std::size_t j = k + 1; j < nc; ++j)
                    if (S(i, j) % S(k, k) != 0) {
                        S.add_row(k, i, Integer(1));
                        f.U.add_row(k, i, Integer(1));
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (S(k, k) < 0) {
            for (std::size_t j = 0; j < nc; ++j) S(k, j) = -S(k, j);
            for (std::size_t j = 0; j < nr; ++j) f.U(k, j) = -f.U(k, j);
        }
    }
finished:
    f.rank = k;
    return f;
}

inline IntMatrix integer_inverse(const IntMatrix& u) {
    auto inv = to_integer(inverse(to_rational(u)));
    if (!inv) throw ComputationError("matrix is not unimodular");
    return *inv;
}

// columns form a Z-basis of {x in Z^n : m x = 0}
inline IntMatrix integer_kernel(const IntMatrix& m) {
    SmithForm f = smith_normal_form(m);
    std::size_t n = m.cols();
    IntMatrix k(n, n - f.rank);
    for (std::size_t j = f.rank; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) k(i, j - f.rank) = f.V(i, j);
    return k;
}

// columns form a Z-basis of the Z-span of the columns of m
inline IntMatrix column_span_basis(const IntMatrix& m) {
    SmithForm f = smith_normal_form(m);
    IntMatrix uinv = integer_inverse(f.U);
    IntMatrix b(m.rows(), f.rank);
    for (std::size_t j = 0; j < f.rank; ++j)
        for (std::size_t i = 0; i < m.rows(); ++i) b(i, j) = uinv(i, j) * f.S(j, j);
    return b;
}

inline int mod2(const Integer& z) { return mpz_odd_p(z.get_mpz_t()) ? 1 : 0; }

inline std::size_t f2_rank(const IntMatrix& m) {
    std::vector<std::vector<char>> a(m.rows(), std::vector<char>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = static_cast<char>(mod2(m(i, j)));
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < a.size(); ++c) {
        std::size_t p = r;
        while (p < a.size() && !a[p][c]) ++p;
        if (p == a.size()) continue;
        std::swap(a[r], a[p]);
        for (std::size_t i = 0; i < a.size(); ++i)
            if (i != r && a[i][c])
                for (std::size_t j = c; j < m.cols(); ++j) a[i][j] ^= a[r][j];
        ++r;
    }
    return r;
}

}  // namespace k3cov
