#pragma once

#include "k3cov/exactmath/smith.hpp"

#include <cctype>
#include <string>
#include <vector>

namespace k3cov {

class IntegralLattice {
public:
    IntegralLattice() = default;
    explicit IntegralLattice(IntMatrix gram, std::vector<std::string> labels = {}) : gram_(std::move(gram)), labels_(std::move(labels)) {
        if (!gram_.is_symmetric()) throw ComputationError("Gram matrix is not symmetric");
        for (std::size_t i = 0; i < gram_.rows(); ++i)
            if (mod2(gram_(i, i))) throw ComputationError("Gram matrix is not even");
        if (determinant(gram_) == 0) throw ComputationError("degenerate lattice");
        if (!labels_.empty() && labels_.size() != gram_.rows()) throw Error("label count does not match rank");
    }

    std::size_t rank() const { return gram_.rows(); }
    const IntMatrix& gram() const { return gram_; }
    RatMatrix rational_gram() const { return to_rational(gram_); }
    const std::vector<std::string>& labels() const { return labels_; }
    Integer det() const { return determinant(gram_); }

    Integer pair(const IntVector& x, const IntVector& y) const { return dot(x, gram_, y); }
    Rational pair(const RatVector& x, const RatVector& y) const { return dot(x, rational_gram(), y); }

    IntegralLattice negate() const { return IntegralLattice(-gram_, labels_); }
    IntegralLattice scaled(const Integer& m) const { return IntegralLattice(m * gram_, labels_); }

    // signature (positive, negative) from the signs of an LDL^T pivot sequence
    std::pair<std::size_t, std::size_t> signature() const {
        RatMatrix a = rational_gram();
        std::size_t n = a.rows(), pos = 0, neg = 0;
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t p = k;
            while (p < n && a(p, p) == 0) ++p;
            if (p == n) {
                // all remaining diagonal zero: use an off-diagonal pair
                std::size_t i = k, j = n;
                for (std::size_t c = k + 1; c < n; ++c)
                    if (a(k, c) != 0) j = c;
                if (j == n) throw ComputationError("degenerate lattice");
                a.add_row(i, j, Rational(1));
                a.add_col(i, j, Rational(1));
                p = k;
            }
            a.swap_rows(k, p);
            a.swap_cols(k, p);
            Rational piv = a(k, k);
            (piv > 0 ? pos : neg)++;
            for (std::size_t i = k + 1; i < n; ++i) {
                if (a(i, k) == 0) continue;
                Rational f = a(i, k) / piv;
                a.add_row(i, k, -f);
                a.add_col(i, k, -f);
            }
        }
        return {pos, neg};
    }
    bool is_positive_definite() const { return k3cov::is_positive_definite(rational_gram()); }
    bool is_negative_definite() const { return k3cov::is_negative_definite(rational_gram()); }

private:
    IntMatrix gram_;
    std::vector<std::string> labels_;
};

inline IntMatrix block_diagonal(const std::vector<IntMatrix>& blocks) {
    std::size_t n = 0;
    for (const auto& b : blocks) n += b.rows();
    IntMatrix g(n, n);
    std::size_t o = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) g(o + i, o + j) = b(i, j);
        o += b.rows();
    }
    return g;
}

inline IntegralLattice direct_sum(const std::vector<IntegralLattice>& parts) {
    std::vector<IntMatrix> blocks;
    std::vector<std::string> labels;
    bool labelled = true;
    for (const auto& p : parts) {
        blocks.push_back(p.gram());
        if (p.labels().empty()) labelled = false;
        labels.insert(labels.end(), p.labels().begin(), p.labels().end());
    }
    return IntegralLattice(block_diagonal(blocks), labelled ? labels : std::vector<std::string>{});
}

namespace ade {

inline IntMatrix cartan_A(std::size_t n) {
    IntMatrix c(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        c(i, i) = 2;
        if (i + 1 < n) c(i, i + 1) = c(i + 1, i) = -1;
    }
    return c;
}

// D_n: chain 0-1-...-(n-2) with node n-1 attached to n-3
inline IntMatrix cartan_D(std::size_t n) {
    IntMatrix c = cartan_A(n);
    c(n - 2, n - 1) = c(n - 1, n - 2) = 0;
    c(n - 3, n - 1) = c(n - 1, n - 3) = -1;
    return c;
}

// E_n: chain 0-1-...-(n-2) with node n-1 attached to node 2
inline IntMatrix cartan_E(std::size_t n) {
    IntMatrix c = cartan_A(n);
    c(n - 2, n - 1) = c(n - 1, n - 2) = 0;
    c(2, n - 1) = c(n - 1, 2) = -1;
    return c;
}

}  // namespace ade

// Root lattices are negative definite: Gram = -Cartan.
inline IntegralLattice root_lattice(char type, std::size_t n) {
    IntMatrix c;
    if (type == 'A' && n >= 1) c = ade::cartan_A(n);
    else if (type == 'D' && n >= 4) c = ade::cartan_D(n);
    else if (type == 'E' && n >= 6 && n <= 8) c = ade::cartan_E(n);
    else throw ComputationError(std::string("invalid root lattice ") + type + std::to_string(n));
    return IntegralLattice(-c);
}

inline IntegralLattice hyperbolic_plane() { return IntegralLattice(IntMatrix{{0, 1}, {1, 0}}); }

// Grammar: sum := summand ('+' summand)*; summand := atom postfix*;
// atom := U | A[_]n | D[_]n | E[_]n | diag(d,...) | '(' sum ')';
// postfix := '(' m ')' scaling | '^' k repetition | '-' negation.
class LatticeSpecParser {
public:
    explicit LatticeSpecParser(std::string s) : s_(std::move(s)) {}

    IntegralLattice parse() {
        auto parts = sum();
        skip();
        if (p_ != s_.size()) fail("unexpected character");
        return direct_sum(parts);
    }

private:
    [[noreturn]] void fail(const std::string& w) const { throw ParseError("lattice spec: " + w, p_); }
    void skip() {
        while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
    }
    bool peek(char c) {
        skip();
        return p_ < s_.size() && s_[p_] == c;
    }
    bool accept(char c) {
        if (!peek(c)) return false;
        ++p_;
        return true;
    }
    long integer() {
        skip();
        bool neg = false;
        if (p_ < s_.size() && s_[p_] == '-') neg = true, ++p_;
        std::size_t st = p_;
        while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
        if (st == p_) fail("expected integer");
        long v = std::stol(s_.substr(st, p_ - st));
        return neg ? -v : v;
    }

    std::vector<IntegralLattice> sum() {
        std::vector<IntegralLattice> out;
        do {
            auto s = summand();
            out.insert(out.end(), s.begin(), s.end());
        } while (accept('+'));
        return out;
    }

    std::vector<IntegralLattice> summand() {
        std::vector<IntegralLattice> cur = atom();
        for (;;) {
            if (accept('(')) {
                long m = integer();
                if (peek('/')) fail("non-integral scaling is not an integral lattice");
                if (m == 0) fail("zero scaling");
                if (!accept(')')) fail("expected ')'");
                for (auto& l : cur) l = l.scaled(m);
            } else if (accept('^')) {
                long k = integer();
                if (k < 1) fail("repetition count must be positive");
                std::vector<IntegralLattice> rep;
                for (long i = 0; i < k; ++i) rep.insert(rep.end(), cur.begin(), cur.end());
                cur = rep;
            } else if (peek('-')) {
                ++p_;
                for (auto& l : cur) l = l.negate();
            } else {
                return cur;
            }
        }
    }

    std::vector<IntegralLattice> atom() {
        skip();
        if (p_ >= s_.size()) fail("unexpected end of spec");
        char c = s_[p_];
        if (c == '(') {
            ++p_;
            auto inner = sum();
            if (!accept(')')) fail("expected ')'");
            return {direct_sum(inner)};
        }
        if (s_.compare(p_, 5, "diag(") == 0) {
            p_ += 5;
            std::vector<IntMatrix> entries;
            do {
                long d = integer();
                entries.push_back(IntMatrix{{d}});
            } while (accept(','));
            if (!accept(')')) fail("expected ')'");
            try {
                return {IntegralLattice(block_diagonal(entries))};
            } catch (const ComputationError& e) {
                fail(e.what());
            }
        }
        if (c == 'U') {
            ++p_;
            return {hyperbolic_plane()};
        }
        if (c == 'A' || c == 'D' || c == 'E') {
            ++p_;
            if (p_ < s_.size() && s_[p_] == '_') ++p_;
            std::size_t st = p_;
            while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
            if (st == p_) fail("expected root lattice index");
            long n = std::stol(s_.substr(st, p_ - st));
            try {
                return {root_lattice(c, static_cast<std::size_t>(n))};
            } catch (const ComputationError&) {
                p_ = st;
                fail("invalid root lattice index");
            }
        }
        fail("unknown lattice atom");
    }

    std::string s_;
    std::size_t p_ = 0;
};

inline IntegralLattice build_lattice(const std::string& spec) { return LatticeSpecParser(spec).parse(); }

}  // namespace k3cov
