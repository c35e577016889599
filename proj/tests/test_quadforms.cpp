#include "k3cov/lattices.hpp"
#include "k3cov/quadforms.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace k3cov;

namespace {

PosDefForm half_A() {
    RatMatrix A = to_rational(IntMatrix{{4, 0, 2, 2}, {0, 4, 2, 0}, {2, 2, 4, 0}, {2, 0, 0, 6}});
    return PosDefForm(Rational(1, 2) * A);
}

PosDefForm positive_mwl0() { return PosDefForm::flipped(build_lattice("A_1(2)^2 + A_2(2)^2").gram()); }

}  // namespace

TEST(ShortVectors, Rank1) {
    auto v = short_vectors(PosDefForm(RatMatrix{{1}}), 4);
    ASSERT_EQ(v.size(), 4u);
    EXPECT_EQ(v[0].second, 1);
    EXPECT_EQ(v[3].second, 4);
}

TEST(ShortVectors, Hexagonal) {
    PosDefForm f(RatMatrix::from_rows({{Rational(1), Rational(-1, 2)}, {Rational(-1, 2), Rational(1)}}));
    EXPECT_EQ(short_vectors(f, 1).size(), 6u);
    EXPECT_EQ(f.value({1, 1}), 1);
}

TEST(ShortVectors, HalfAHasNoOne) {
    auto v = short_vectors(half_A(), 2);
    ASSERT_FALSE(v.empty());
    for (const auto& [x, q] : v) EXPECT_EQ(q, 2);
}

TEST(ShortVectors, RejectsBadForms) {
    EXPECT_THROW(PosDefForm(RatMatrix{{1, 0}, {0, -1}}), ComputationError);
    EXPECT_THROW(PosDefForm(RatMatrix::from_rows({{Rational(1, 2)}})), ComputationError);
}

TEST(ShortVectors, AgreesWithBruteForce) {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t n = 1 + trial % 4;
        RatMatrix g(n, n);
        std::uniform_int_distribution<int> dg(1, 5);
        for (std::size_t i = 0; i < n; ++i) g(i, i) = dg(rng);
        PosDefForm f(g);
        long bound = 30;
        std::map<long, long> expected;
        std::vector<long> box(n);
        for (std::size_t i = 0; i < n; ++i) box[i] = static_cast<long>(std::sqrt(double(bound) / g(i, i).get_d())) + 1;
        std::vector<long> x(n);
        std::function<void(std::size_t)> rec = [&](std::size_t i) {
            if (i == n) {
                long v = f.value(x).get_si();
                if (v > 0 && v <= bound) ++expected[v];
                return;
            }
            for (long t = -box[i]; t <= box[i]; ++t) {
                x[i] = t;
                rec(i + 1);
            }
        };
        rec(0);
        std::map<long, long> got;
        for (const auto& [y, v] : short_vectors(f, bound)) ++got[v.get_si()];
        EXPECT_EQ(got, expected);
        auto r = represented_set(f, bound);
        for (long v = 1; v <= bound; ++v) EXPECT_EQ(r.represents(v), expected.count(v) > 0);
    }
}

TEST(ValueSweep, AgreesWithExactEnumeration) {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t n = 2 + trial % 4;
        // random unimodular change of basis of a diagonal plus A_2 block form
        IntMatrix g(n, n);
        for (std::size_t i = 0; i < n; ++i) g(i, i) = 2 + trial % 3;
        g(0, 1) = g(1, 0) = -1;
        IntMatrix T = IntMatrix::identity(n);
        std::uniform_int_distribution<int> pick(0, static_cast<int>(n) - 1), c(-1, 1);
        for (int s = 0; s < 6; ++s) {
            int i = pick(rng), j = pick(rng);
            if (i != j) T.add_col(i, j, Integer(c(rng)));
        }
        IntMatrix h = T.transpose() * g * T;
        RatMatrix hr = to_rational(h);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) hr(i, j) /= 2;
        PosDefForm f(hr);
        std::set<long> exact;
        for (const auto& [y, v] : short_vectors(f, 60)) exact.insert(v.get_si());
        auto r = represented_set(f, 60);
        EXPECT_EQ(std::set<long>(r.represented.begin(), r.represented.end()), exact);
    }
}

TEST(Represented, FourSquares) {
    PosDefForm f(to_rational(IntMatrix::identity(4)));
    auto r = represented_set(f, 50);
    EXPECT_TRUE(r.exceptions.empty());
    EXPECT_TRUE(r.witnesses_verified);
    EXPECT_TRUE(check_290(f));
}

TEST(Represented, PositiveMwl0MultiplesOfFour) {
    auto r = represented_set(positive_mwl0(), 100);
    for (long n = 1; n <= 100; ++n) EXPECT_EQ(r.represents(n), n % 4 == 0) << n;
    auto s = scaled_representability(positive_mwl0(), 4, 400);
    EXPECT_TRUE(s.exceptions.empty());
    EXPECT_EQ(s.represented.size(), 100u);
    EXPECT_TRUE(*s.congruence_certificate);
}

TEST(Represented, QuarterFormUniversal) {
    // 2x^2 + (y^2 - yz + z^2) + (u^2 - uv + v^2)
    RatMatrix q(5, 5);
    q(0, 0) = 2;
    for (std::size_t k : {1u, 3u}) {
        q(k, k) = q(k + 1, k + 1) = 1;
        q(k, k + 1) = q(k + 1, k) = Rational(-1, 2);
    }
    EXPECT_TRUE(check_290(PosDefForm(q)));
}

TEST(Represented, HalfAMissesOnlyOne) {
    auto r = represented_set(half_A(), 2000);
    EXPECT_EQ(r.exceptions, std::vector<long>{1});
    EXPECT_FALSE(check_290(half_A()));
}

TEST(Represented, Monotone) {
    auto a = represented_set(half_A(), 200), b = represented_set(half_A(), 400);
    std::vector<long> prefix;
    for (long v : b.represented)
        if (v <= 200) prefix.push_back(v);
    EXPECT_EQ(prefix, a.represented);
}

TEST(Represented, ModulusOneIsPlain) {
    auto a = represented_set(half_A(), 100), b = scaled_representability(half_A(), 1, 100);
    EXPECT_EQ(a.represented, b.represented);
    EXPECT_EQ(a.exceptions, b.exceptions);
}

TEST(Congruence, IndefiniteTranscendental) {
    auto g = to_rational(build_lattice("U(2)^2 + A_3(2)").gram());
    EXPECT_TRUE(congruence_certificate(g, 4));
    EXPECT_FALSE(congruence_certificate(g, 8));
    EXPECT_FALSE(congruence_certificate(to_rational(build_lattice("U(2)^2 + A_1^4").gram()), 4));
}
