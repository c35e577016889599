#include "k3cov/exactmath.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace k3cov;

namespace {

IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int lo, int hi) {
    std::uniform_int_distribution<int> dist(lo, hi);
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = dist(rng);
    return m;
}

bool is_diagonal_chain(const SmithForm& f) {
    const auto& S = f.S;
    for (std::size_t i = 0; i < S.rows(); ++i)
        for (std::size_t j = 0; j < S.cols(); ++j)
            if (i != j && S(i, j) != 0) return false;
    for (std::size_t k = 0; k + 1 < f.rank; ++k)
        if (S(k + 1, k + 1) % S(k, k) != 0) return false;
    for (std::size_t k = f.rank; k < std::min(S.rows(), S.cols()); ++k)
        if (S(k, k) != 0) return false;
    return true;
}

SymbolTable<Cyc12> t_only() { return {{"t"}, {}}; }

}  // namespace

TEST(Smith, IdentityIsFixed) {
    auto f = smith_normal_form(IntMatrix::identity(3));
    EXPECT_EQ(f.S, IntMatrix::identity(3));
    EXPECT_EQ(f.U, IntMatrix::identity(3));
    EXPECT_EQ(f.V, IntMatrix::identity(3));
}

TEST(Smith, RankOne) {
    auto f = smith_normal_form(IntMatrix{{-2}});
    ASSERT_EQ(f.rank, 1u);
    EXPECT_EQ(f.S(0, 0), 2);
}

TEST(Smith, HyperbolicPlusTwelveA1) {
    IntMatrix g(14, 14);
    g(0, 1) = g(1, 0) = 1;
    for (int k = 2; k < 14; ++k) g(k, k) = -2;
    auto f = smith_normal_form(g);
    auto d = f.invariant_factors();
    ASSERT_EQ(d.size(), 14u);
    EXPECT_EQ(d[0], 1);
    EXPECT_EQ(d[1], 1);
    for (int k = 2; k < 14; ++k) EXPECT_EQ(d[k], 2);
}

TEST(Smith, RandomSoundness) {
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t r = 1 + trial % 5, c = 1 + (trial * 7) % 6;
        IntMatrix m = random_matrix(rng, r, c, -9, 9);
        auto f = smith_normal_form(m);
        EXPECT_EQ(f.U * m * f.V, f.S);
        EXPECT_EQ(abs_int(determinant(f.U)), 1);
        EXPECT_EQ(abs_int(determinant(f.V)), 1);
        EXPECT_TRUE(is_diagonal_chain(f));
        if (r == c) {
            Integer prod = 1;
            for (std::size_t k = 0; k < r; ++k) prod *= f.S(k, k);
            EXPECT_EQ(prod, abs_int(determinant(m)));
        }
    }
}

TEST(Smith, KernelAndSpan) {
    IntMatrix m{{2, 4, 6}, {1, 2, 3}};
    IntMatrix k = integer_kernel(m);
    EXPECT_EQ(k.cols(), 2u);
    for (std::size_t j = 0; j < k.cols(); ++j) {
        auto v = m.apply(k.col(j));
        EXPECT_EQ(v[0], 0);
        EXPECT_EQ(v[1], 0);
    }
    IntMatrix span = column_span_basis(IntMatrix{{2, 0, 4}, {0, 2, 2}});
    EXPECT_EQ(span.cols(), 2u);
    EXPECT_EQ(abs_int(determinant(span)), 4);
}

TEST(F2, SmallCases) {
    EXPECT_EQ(f2_rank(IntMatrix(3, 4)), 0u);
    EXPECT_EQ(f2_rank(IntMatrix::identity(8)), 8u);
    EXPECT_EQ(f2_rank(IntMatrix{{2, 4}, {6, 8}}), 0u);
    EXPECT_EQ(f2_rank(IntMatrix{{1, 1, 0}, {0, 1, 1}, {1, 0, 1}}), 2u);
}

TEST(F2, AgreesWithBruteForce) {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 40; ++trial) {
        IntMatrix m = random_matrix(rng, 4, 5, 0, 3);
        // brute force: largest number of rows whose nonempty subsets all have nonzero xor
        std::size_t best = 0;
        for (unsigned mask = 1; mask < 16u; ++mask) {
            std::vector<unsigned> rows;
            for (unsigned i = 0; i < 4; ++i)
                if (mask >> i & 1) rows.push_back(i);
            bool independent = true;
            for (unsigned sub = 1; sub < (1u << rows.size()) && independent; ++sub) {
                bool zero = true;
                for (std::size_t j = 0; j < 5; ++j) {
                    int x = 0;
                    for (std::size_t b = 0; b < rows.size(); ++b)
                        if (sub >> b & 1) x ^= mod2(m(rows[b], j));
                    if (x) zero = false;
                }
                if (zero) independent = false;
            }
            if (independent) best = std::max(best, rows.size());
        }
        EXPECT_EQ(f2_rank(m), best);
    }
}

TEST(Cyc12Field, Relations) {
    Cyc12 i = Cyc12::i(), z3 = Cyc12::zeta3(), r3 = Cyc12::sqrt3(), z = Cyc12::zeta();
    EXPECT_EQ(i * i, Cyc12(-1));
    EXPECT_EQ(z3 * z3 + z3 + Cyc12(1), Cyc12(0));
    EXPECT_EQ(r3 * r3, Cyc12(3));
    Cyc12 p(1);
    for (int k = 0; k < 12; ++k) p *= z;
    EXPECT_EQ(p, Cyc12(1));
    EXPECT_EQ(z.inverse(), Cyc12::zeta_power(11));
    EXPECT_EQ(z3 * z3, Cyc12::zeta_power(8));
    EXPECT_EQ(Cyc12::zeta_power(4) + Cyc12::zeta_power(2) - Cyc12::zeta_power(2), z3);
}

TEST(Cyc12Field, InverseOfGenericElement) {
    Cyc12 x(make_rational(3), make_rational(-1, 2), make_rational(5), make_rational(2, 7));
    EXPECT_EQ(x * x.inverse(), Cyc12(1));
    EXPECT_EQ(x.norm(), (x * x.galois(5) * x.galois(7) * x.galois(11)).coeff(0));
    EXPECT_THROW(Cyc12(0).inverse(), ComputationError);
}

TEST(SquarePart, Trivial) {
    auto sym = t_only();
    auto p = parse_expression<Cyc12>("t^2 + 2*t + 1", sym).num();
    auto sp = poly_square_part(p, 0);
    EXPECT_EQ(sp.s, parse_expression<Cyc12>("t + 1", sym).num());
    EXPECT_TRUE(sp.r.is_constant());
    auto q = poly_square_part(parse_expression<Cyc12>("t^3", sym).num(), 0);
    EXPECT_EQ(q.s, parse_expression<Cyc12>("t", sym).num());
    EXPECT_EQ(q.r, parse_expression<Cyc12>("t", sym).num());
    EXPECT_THROW(poly_square_part(MPoly<Cyc12>(1), 0), ComputationError);
}

TEST(SquarePart, HeightFourSectionCubic) {
    auto sym = t_only();
    auto x = parse_expression<Cyc12>("2*sqrt3*t^2", sym);
    auto cubic = parse_expression<Cyc12>("x*(x^2 - 3*(t^4+1)*x + 3*(t^8+t^4+1))",
                                         SymbolTable<Cyc12>{{"t"}, {{"x", x}}});
    auto sp = poly_square_part(cubic.num(), 0);
    EXPECT_EQ(sp.r, MPoly<Cyc12>(1, Cyc12(1)));
    EXPECT_EQ(sp.c_num, MPoly<Cyc12>(1, Cyc12(6) * Cyc12::sqrt3()));
    EXPECT_EQ(sp.s, parse_expression<Cyc12>("t*(t^4 - sqrt3*t^2 + 1)", sym).num());
}

TEST(SquarePart, RoundTripRandomProducts) {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> coeff(-4, 4);
    auto sym = t_only();
    MPoly<Rational> t = MPoly<Rational>::variable(1, 0);
    for (int trial = 0; trial < 25; ++trial) {
        MPoly<Rational> p(1, Rational(coeff(rng) == 0 ? 3 : 2));
        for (int f = 0; f < 3; ++f) {
            MPoly<Rational> lin = t + MPoly<Rational>(1, Rational(coeff(rng)));
            int mult = 1 + (trial + f) % 3;
            p = p * lin.pow(mult);
        }
        auto sp = poly_square_part(p, 0);
        MPoly<Rational> back = sp.c_num * sp.s * sp.s * sp.r;
        EXPECT_EQ(back, p);
        EXPECT_EQ(sp.r.leading_coeff(), 1);
        auto rf = squarefree_factors(to_upoly(sp.r, 0));
        EXPECT_LE(rf.size(), 1u);
    }
}

TEST(SquarePart, SymbolicCoefficients) {
    SymbolTable<Rational> sym{{"t", "a"}, {}};
    auto p = parse_expression<Rational>("3*a*(t^2 - a)^2*(t + a^2)^2", sym).num();
    auto sq = square_up_to_constant(p, 0);
    ASSERT_TRUE(sq.has_value());
    EXPECT_EQ(sq->second * sq->second, sq->first * p);
    auto bad = parse_expression<Rational>("(t^2 - a)*(t - 1)^2", sym).num();
    EXPECT_FALSE(square_up_to_constant(bad, 0).has_value());
    auto sp = poly_square_part(p, 0);
    EXPECT_EQ(sp.s * sp.s * sp.c_num, sp.c_den * p);
}

TEST(RatFuncEval, FamilySectionAtFibre) {
    SymbolTable<Rational> sym{{"t", "alpha", "beta", "gamma"}, {}};
    sym.definitions["a"] = parse_expression<Rational>("alpha^2", sym);
    sym.definitions["b"] = parse_expression<Rational>("beta^2", sym);
    sym.definitions["c"] = parse_expression<Rational>("gamma^2", sym);
    auto x = parse_expression<Rational>("4*(t^2-a)*(t^2-b)*(t^2-c)*(t^2-a*b*c)/t^2", sym);
    auto at = ratfunc_eval(x, {{0, RatFunc<Rational>(MPoly<Rational>::variable(4, 1))}});
    EXPECT_TRUE(at.is_zero());
    auto k = RatFunc<Rational>::constant(4, make_rational(5, 3));
    EXPECT_EQ(ratfunc_eval(k, {{0, RatFunc<Rational>(MPoly<Rational>::variable(4, 2))}}), k);
    auto inv = parse_expression<Rational>("1/t", sym);
    EXPECT_THROW(ratfunc_eval(inv, {{0, RatFunc<Rational>::constant(4, 0)}}), ComputationError);
}

TEST(RatFunc, ReducesUnivariate) {
    auto sym = t_only();
    auto f = parse_expression<Cyc12>("(t^2 - 1)/(2*t - 2)", sym);
    EXPECT_TRUE(f.is_polynomial());
    EXPECT_EQ(f, parse_expression<Cyc12>("(t + 1)/2", sym));
    auto g = parse_expression<Cyc12>("(zeta3*t)^3", sym);
    EXPECT_EQ(g, parse_expression<Cyc12>("t^3", sym));
}

TEST(Parser, Errors) {
    auto sym = t_only();
    try {
        parse_expression<Cyc12>("t + * 2", sym);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.position, 4u);
    }
    EXPECT_THROW(parse_expression<Cyc12>("(t + 1", sym), ParseError);
    EXPECT_THROW(parse_expression<Cyc12>("u + 1", sym), ParseError);
    EXPECT_THROW(parse_expression<Rational>("sqrt3", SymbolTable<Rational>{{"t"}, {}}), ParseError);
    EXPECT_THROW(parse_expression<Cyc12>("t/0", sym), ParseError);
    EXPECT_NO_THROW(parse_expression<Cyc12>("  t ^ 2 -3 * t^4 ", sym));
}

TEST(FuncField, ReducedArithmetic) {
    FuncField m = FuncField::generator();
    FuncField one(1);
    FuncField r = (m * m - one) / (m - one);
    EXPECT_EQ(r, m + one);
    EXPECT_EQ(r.den().degree(), 0);
    FuncField q = one / (m * FuncField(make_rational(3, 2)) + one);
    EXPECT_EQ(q.den().lead(), 1);
    EXPECT_EQ(q * (m * FuncField(make_rational(3, 2)) + one), one);
    EXPECT_EQ((m - m).str(), "0");
    EXPECT_EQ((m * m - FuncField(2)).str(), "m^2 - 2");
    EXPECT_THROW(one / (m - m), ComputationError);
}

TEST(FuncField, ParsesParameter) {
    SymbolTable<FuncField> st;
    st.variables = {"t"};
    auto f = parse_expression<FuncField>("(t^2 - m^2)/(t - m)", st);
    EXPECT_EQ(f, parse_expression<FuncField>("t + m", st));
    EXPECT_THROW(parse_expression<FuncField>("sqrt3", st), ParseError);
}

TEST(UPoly, RationalGcdPaths) {
    using P = UPoly<Rational>;
    P x = P::x();
    P a = (x - P(Rational(1))) * (x + P(make_rational(1, 3)));
    P b = (x - P(Rational(1))) * (x * x + P(Rational(5)));
    EXPECT_EQ(gcd(a, b), x - P(Rational(1)));
    EXPECT_EQ(gcd(a, x * x + P(Rational(5))), P(Rational(1)));
    EXPECT_EQ(gcd(P(), b).lead(), 1);
}
