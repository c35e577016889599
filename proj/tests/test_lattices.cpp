#include "k3cov/lattices.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace k3cov;

TEST(LatticeSpec, Hyperbolic) {
    auto U = build_lattice("U");
    EXPECT_EQ(U.gram(), (IntMatrix{{0, 1}, {1, 0}}));
    EXPECT_EQ(U.det(), -1);
}

TEST(LatticeSpec, ScaledSum) {
    auto L = build_lattice("U(2)^2 + A_1^4");
    EXPECT_EQ(L.rank(), 8u);
    EXPECT_EQ(abs_int(L.det()), 256);
    EXPECT_EQ(L.signature(), std::make_pair(std::size_t(2), std::size_t(6)));
    EXPECT_EQ(build_lattice("A2+A1").rank(), 3u);
    EXPECT_EQ(build_lattice("E8").det(), 1);
    EXPECT_EQ(build_lattice("D_4").det(), 4);
    EXPECT_TRUE(build_lattice("A_2-").is_positive_definite());
    EXPECT_EQ(build_lattice("diag(-2,-4)").det(), 8);
}

TEST(LatticeSpec, Errors) {
    EXPECT_THROW(build_lattice("A_2(1/2)"), ParseError);
    EXPECT_THROW(build_lattice("U("), ParseError);
    EXPECT_THROW(build_lattice("A_0"), ParseError);
    EXPECT_THROW(build_lattice("D_3"), ParseError);
    EXPECT_THROW(build_lattice("X"), ParseError);
    EXPECT_THROW(build_lattice("diag(1)"), ParseError);
    try {
        build_lattice("U + Q");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.position, 4u);
    }
}

TEST(Discriminant, A1) {
    auto A = discriminant_form(build_lattice("A_1"));
    ASSERT_EQ(A.invariant_factors().size(), 1u);
    EXPECT_EQ(A.invariant_factors()[0], 2);
    EXPECT_EQ(A.q_values()[0], make_rational(3, 2));
}

TEST(Discriminant, Unimodular) {
    EXPECT_EQ(discriminant_form(build_lattice("U")).order(), 1);
    EXPECT_EQ(discriminant_form(build_lattice("E8")).order(), 1);
}

TEST(Discriminant, TranscendentalShape) {
    auto L = build_lattice("U(2)^2 + A_1^4");
    auto A = discriminant_form(L);
    EXPECT_EQ(A.invariant_factors(), std::vector<Integer>(8, Integer(2)));
    auto h = A.q_histogram();
    EXPECT_GT(h.count(make_rational(3, 2)), 0u);
    std::size_t half_integral = 0;
    for (const auto& q : A.q_values())
        if (!is_integer(q)) ++half_integral;
    EXPECT_EQ(half_integral, 4u);
}

TEST(Discriminant, OrderMatchesDeterminant) {
    for (const char* spec : {"A_2", "A_3 + A_1", "D_5", "E_6", "E_7", "U(3) + A_2(2)", "A_1^5 + U(2)"}) {
        auto L = build_lattice(spec);
        auto A = discriminant_form(L);
        EXPECT_EQ(A.order(), abs_int(L.det())) << spec;
        // q(x+y) - q(x) - q(y) == 2 b(x,y) mod 2
        for (const auto& x : A.generators())
            for (const auto& y : A.generators()) {
                RatVector s(x.size());
                for (std::size_t i = 0; i < x.size(); ++i) s[i] = x[i] + y[i];
                EXPECT_EQ(mod_rational(A.q(s) - A.q(x) - A.q(y) - 2 * A.b(x, y), Rational(2)), 0);
            }
    }
}

TEST(Discriminant, StableUnderBasisChange) {
    std::mt19937 rng(3);
    auto L = build_lattice("A_2 + A_1^2 + D_4");
    auto A = discriminant_form(L);
    for (int trial = 0; trial < 5; ++trial) {
        IntMatrix T = IntMatrix::identity(L.rank());
        std::uniform_int_distribution<int> pick(0, static_cast<int>(L.rank()) - 1), f(-2, 2);
        for (int s = 0; s < 12; ++s) {
            int i = pick(rng), j = pick(rng);
            if (i != j) T.add_col(i, j, Integer(f(rng)));
        }
        IntegralLattice M(T.transpose() * L.gram() * T);
        auto B = discriminant_form(M);
        EXPECT_EQ(B.invariant_factors(), A.invariant_factors());
        EXPECT_EQ(B.q_histogram(), A.q_histogram());
    }
}

TEST(TwoElementary, Cases) {
    EXPECT_TRUE(is_two_elementary(build_lattice("A_1^12")));
    EXPECT_FALSE(is_two_elementary(build_lattice("A_2")));
    auto ns = twelve_a1_overlattice();
    EXPECT_TRUE(is_two_elementary(ns.lattice));
}

TEST(Overlattice, TwelveA1Glue) {
    auto ns = twelve_a1_overlattice();
    EXPECT_EQ(abs_int(ns.lattice.det()), 256);
    EXPECT_EQ(ns.index, 4);
    auto L = build_lattice("U + A_1^12");
    EXPECT_EQ(ns.index * ns.index * abs_int(ns.lattice.det()), abs_int(L.det()));
}

TEST(Overlattice, EmptyAndInadmissible) {
    auto L = build_lattice("A_2 + A_1");
    auto same = overlattice(L, {});
    EXPECT_EQ(same.index, 1);
    EXPECT_EQ(same.lattice.det(), L.det());
    EXPECT_THROW(overlattice(build_lattice("A_1"), {RatVector{Rational(1, 2)}}), ComputationError);
    // D_4 from A_1^4 via (a1+a2+a3+a4)/2
    auto d4 = overlattice(build_lattice("A_1^4"), {RatVector(4, Rational(1, 2))});
    EXPECT_EQ(d4.lattice.det(), 4);
    EXPECT_EQ(roots(d4.lattice).size(), 24u);
}

TEST(Complement, SumOfFourA1) {
    auto L = build_lattice("U(2)^2 + A_1^4");
    IntVector v{0, 0, 0, 0, 1, 1, 1, 1};
    EXPECT_EQ(L.pair(v, v), -8);
    auto c = orthogonal_complement(L, v);
    EXPECT_EQ(c.lattice.rank(), 7u);
    EXPECT_TRUE(is_isometric_small(c.lattice, build_lattice("U(2)^2 + A_3(2)")));
}

TEST(Complement, SmallCases) {
    auto L = build_lattice("A_1^2");
    auto c = orthogonal_complement(L, IntVector{1, 0});
    EXPECT_EQ(c.lattice.gram(), (IntMatrix{{-2}}));
    EXPECT_THROW(orthogonal_complement(build_lattice("U"), std::vector<IntVector>{{1, 0}}), ComputationError);
    EXPECT_THROW(orthogonal_complement(L, IntVector{0, 0}), ComputationError);
    EXPECT_THROW(orthogonal_complement(L, IntVector{2, 0}), ComputationError);
}

TEST(Roots, Counts) {
    for (std::size_t n = 1; n <= 8; ++n) EXPECT_EQ(roots(root_lattice('A', n)).size(), n * (n + 1)) << n;
    for (std::size_t n = 4; n <= 8; ++n) EXPECT_EQ(roots(root_lattice('D', n)).size(), 2 * n * (n - 1)) << n;
    EXPECT_EQ(roots(root_lattice('E', 6)).size(), 72u);
    EXPECT_EQ(roots(root_lattice('E', 7)).size(), 126u);
    EXPECT_EQ(roots(root_lattice('E', 8)).size(), 240u);
    EXPECT_THROW(roots(build_lattice("U")), ComputationError);
}

TEST(Roots, Types) {
    EXPECT_EQ(root_sublattice_type(build_lattice("E8")), "E8");
    EXPECT_EQ(root_sublattice_type(build_lattice("A_1 + A_2 + D_4")), "D4 + A2 + A1");
    EXPECT_EQ(root_sublattice_type(build_lattice("A_1^3")), "A1^3");
    EXPECT_EQ(root_sublattice_type(build_lattice("A_2(2)")), "0");
}

TEST(Roots, PersistenceUnderGlue) {
    for (long d2 : {-6L, -8L, -10L, -12L}) {
        bool seen = false;
        // orbit representatives: first x of a1..a4, y of a5..a8, z of a9..a12
        for (int x = 0; x <= 4; ++x)
            for (int y = 0; y <= 4; ++y)
                for (int z = 0; z <= 4; ++z) {
                    std::set<int> S;
                    for (int i = 1; i <= x; ++i) S.insert(i);
                    for (int i = 1; i <= y; ++i) S.insert(4 + i);
                    for (int i = 1; i <= z; ++i) S.insert(8 + i);
                    if (S.empty() || !closure_glue_admissible(d2, S)) continue;
                    // S in the glue code makes D/2 a lattice vector
                    if ((x == 4 && y == 4 && z == 0) || (x == 0 && y == 4 && z == 4) || (x == 4 && y == 0 && z == 4)) continue;
                    seen = true;
                    auto L = a1_closure_with_vector(d2, S).lattice;
                    EXPECT_EQ(roots(L).size(), 24u) << d2 << " " << x << y << z;
                    EXPECT_EQ(root_sublattice_type(L), "A1^12");
                }
        EXPECT_TRUE(seen);
        EXPECT_EQ(root_sublattice_type(a1_closure_with_vector(d2, {}).lattice), "A1^12");
    }
    auto d4 = a1_closure_with_vector(-2, {1, 5, 9});
    EXPECT_EQ(root_sublattice_type(d4.lattice), "D4 + A1^9");
    auto a3 = a1_closure_with_vector(-4, {1, 2});
    EXPECT_EQ(root_sublattice_type(a3.lattice), "A3 + A1^10");
}

TEST(Isometry, Basic) {
    EXPECT_TRUE(is_isometric_small(build_lattice("A_1 + A_2"), build_lattice("A_2 + A_1")));
    EXPECT_FALSE(is_isometric_small(build_lattice("A_1^4"), build_lattice("D_4")));
    EXPECT_TRUE(is_isometric_small(build_lattice("U + A_1"), build_lattice("A_1 + U")));
    EXPECT_FALSE(is_isometric_small(build_lattice("U(2)"), build_lattice("U")));
    EXPECT_THROW(is_isometric_small(build_lattice("E8 + A1"), build_lattice("E8 + A1")), ComputationError);
    // D_4 relabelled by a unimodular change of basis
    IntMatrix T = IntMatrix::identity(4);
    T.add_col(0, 1, Integer(1));
    T.add_col(3, 2, Integer(-1));
    IntegralLattice M(T.transpose() * build_lattice("D_4").gram() * T);
    EXPECT_TRUE(is_isometric_small(M, build_lattice("D_4")));
}
