#include "k3cov/ellk3.hpp"
#include "k3cov/polarize.hpp"

#include <gtest/gtest.h>

using namespace k3cov;

namespace {

DivisorSpace base_space() { return DivisorSpace(fixture("model_s3_base")); }
DivisorSpace enhanced_space() { return DivisorSpace(fixture("model_s4_enhanced")); }

PolarizationParams params(Construction c, long N, long d, std::optional<long> qo = std::nullopt, std::string pert = "") {
    return {c, N, d, qo, std::move(pert)};
}

bool fails_only(const ChecklistReport& r, std::set<std::string> items) {
    for (const auto& e : r.entries)
        if (e.pass == static_cast<bool>(items.count(e.item))) return false;
    return true;
}

}  // namespace

TEST(Intersect, BasicPairings) {
    auto X = base_space();
    auto F = fibre_class(X);
    EXPECT_EQ(intersect(F, F, X), 0);
    EXPECT_EQ(intersect(F, section_class(X, "O"), X), 1);
    EXPECT_EQ(intersect(section_class(X, "O"), section_class(X, "O"), X), -2);
    EXPECT_EQ(intersect(F, theta_class(X, 0, 1), X), 0);
    EXPECT_EQ(intersect(theta_class(X, 3, 1), theta_class(X, 3, 1), X), -2);
    EXPECT_EQ(intersect(section_class(X, "P1"), theta_class(X, 0, 1), X), 1);
    EXPECT_EQ(intersect(section_class(X, "P3"), theta_class(X, 0, 1), X), 0);
    DivisorSpace other = enhanced_space();
    EXPECT_THROW(intersect(F, fibre_class(other), X), ComputationError);
}

TEST(BuildEven, DegreeAndComponents) {
    auto X = base_space();
    for (long d : {2, 4, 6})
        for (long N = d + 1; N < d + 6; ++N) {
            auto H = build_H_even_d(N, d, X);
            EXPECT_EQ(intersect(H, H, X), 4 * N * d - 2 * d * d);
            for (std::size_t v = 0; v < 12; ++v) {
                EXPECT_EQ(intersect(H, theta_class(X, v, 1), X), d);
                EXPECT_EQ(intersect(H, identity_component_class(X, v), X), d);
            }
        }
    auto H = build_H_even_d(8, 2, X);
    EXPECT_EQ(intersect(H, H, X), 56);
    EXPECT_EQ(56 / 2 % 4, 0);
    EXPECT_TRUE(very_ample_check(H, X, params(Construction::EvenBase, 8, 2)).verdict);
    EXPECT_EQ(count_degree_d_curves(H, X, 2), 24);
}

TEST(BuildEven, Boundaries) {
    auto X = base_space();
    EXPECT_TRUE(very_ample_check(build_H_even_d(3, 2, X), X, params(Construction::EvenBase, 3, 2)).verdict);
    auto r = very_ample_check(build_H_even_d(2, 2, X), X, params(Construction::EvenBase, 2, 2));
    EXPECT_FALSE(r.verdict);
    EXPECT_FALSE(r.entry("iii").pass);
    EXPECT_FALSE(r.entry("ix").pass);
    try {
        build_H_even_d(5, 3, X);
        FAIL();
    } catch (const ComputationError& e) {
        EXPECT_STREQ(e.what(), "d/2 not integral");
    }
    EXPECT_THROW(build_H_even_d(5, 2, DivisorSpace(fixture("model_zeta12"))), ComputationError);
}

TEST(BuildOdd, DegreeAndRange) {
    auto X = enhanced_space();
    auto H = build_H_odd_d(7, 3, X);
    EXPECT_EQ(intersect(H, H, X), 84);
    EXPECT_EQ(intersect(H, section_class(X, "O"), X), 7);
    EXPECT_EQ(intersect(H, section_class(X, "Q_all"), X), 7);
    EXPECT_EQ(count_degree_d_curves(H, X, 3), 24);
    for (long d : {3, 5, 7}) {
        auto pass = very_ample_check(build_H_odd_d(2 * d + 1, d, X), X, params(Construction::OddBase, 2 * d + 1, d));
        auto fail = very_ample_check(build_H_odd_d(2 * d, d, X), X, params(Construction::OddBase, 2 * d, d));
        EXPECT_TRUE(pass.verdict);
        EXPECT_TRUE(fails_only(fail, {"ix"}));
    }
    EXPECT_THROW(build_H_odd_d(7, 3, base_space()), ComputationError);
}

TEST(BuildOdd, DegreeOneFlagged) {
    auto X = enhanced_space();
    auto H = build_H_odd_d(5, 1, X);
    EXPECT_EQ(intersect(H, H, X), 20);
    auto r = very_ample_check(H, X, params(Construction::OddBase, 5, 1));
    ASSERT_FALSE(r.notes.empty());
    EXPECT_NE(r.notes.front().find("outside the theorem"), std::string::npos);
}

TEST(Perturb, SquareAdds) {
    for (long d : {2, 4, 6})
        for (long q = 1; q <= 2 * d; ++q) {
            DivisorSpace X(with_narrow_section(fixture("model_s3_base"), "Q_narrow", q));
            long N = 2 * d + 4;
            auto H = build_H_even_d(N, d, X);
            auto Hp = perturb(H, "Q_narrow", X);
            auto D = shioda_projection("Q_narrow", X);
            EXPECT_EQ(intersect(H, D, X), 0);
            EXPECT_EQ(intersect(D, D, X), -4 - 2 * q);
            EXPECT_EQ(intersect(Hp, Hp, X), 4 * N * d - 2 * d * d - 4 - 2 * q);
            EXPECT_EQ(Hp.coeffs[X.index_F()], N - q - 2);
            EXPECT_EQ(Hp.coeffs[X.index_O()], Rational(d / 2 - 1));
        }
    DivisorSpace X(with_narrow_section(fixture("model_s3_base"), "Q_narrow", 1));
    auto H = build_H_even_d(9, 2, X);
    EXPECT_EQ(intersect(perturb(H, "Q_narrow", X), perturb(H, "Q_narrow", X), X), intersect(H, H, X) - 6);
    EXPECT_EQ(perturb(H, "O", X).coeffs, H.coeffs);
    EXPECT_THROW(perturb(H, "P1", X), ComputationError);
    EXPECT_THROW(with_narrow_section(fixture("model_s3_base"), "P1", 1), ComputationError);
}

TEST(Perturb, MaximalQO) {
    for (long d : {2, 4}) {
        DivisorSpace X(with_narrow_section(fixture("model_s3_base"), "Q_narrow", 2 * d));
        auto H = build_H_even_d(2 * d + 4, d, X);
        auto Hp = perturb(H, "Q_narrow", X);
        EXPECT_EQ(intersect(Hp, Hp, X), intersect(H, H, X) - (4 * d + 4));
        auto r = very_ample_check(Hp, X, params(Construction::EvenPerturbed, 2 * d + 4, d, 2 * d, "Q_narrow"));
        EXPECT_TRUE(r.verdict);
        EXPECT_EQ(intersect(Hp, section_class(X, "Q_narrow"), X), (2 * d + 4) + (2 * d - 2) * 2 * d + 3 * d - 4);
    }
}

TEST(Checklist, EnhancedPerturbationBoundary) {
    for (long d : {3, 5})
        for (long q = 2; q <= 2 * d; ++q) {
            DivisorSpace X(with_narrow_section(fixture("model_s4_enhanced"), "Qp", q));
            EXPECT_EQ(X.model().intersection("Qp", "Q_all"), q + 4);
            auto check = [&](long N) {
                auto H = perturb(build_H_odd_d(N, d, X), "Qp", X);
                EXPECT_EQ(intersect(H, section_class(X, "Qp"), X), N + (d - 1) * (2 * q + 4));
                return very_ample_check(H, X, params(Construction::OddPerturbed, N, d, q, "Qp"));
            };
            auto fail = check(q + 3), pass = check(q + 4);
            EXPECT_FALSE(fail.verdict);
            EXPECT_FALSE(fail.entry("vii").pass);
            EXPECT_TRUE(pass.verdict) << d << " " << q;
        }
}

TEST(Checklist, MonotoneInN) {
    for (long d : {2, 4}) {
        DivisorSpace X(with_narrow_section(fixture("model_s3_base"), "Q_narrow", d));
        bool seen = false;
        for (long N = 1; N <= 30; ++N) {
            auto H = perturb(build_H_even_d(N, d, X), "Q_narrow", X);
            bool ok = very_ample_check(H, X, params(Construction::EvenPerturbed, N, d, d, "Q_narrow")).verdict;
            if (seen) {
                EXPECT_TRUE(ok) << N;
            }
            seen = seen || ok;
        }
        EXPECT_TRUE(seen);
    }
}

TEST(Checklist, TwoDivisibility) {
    auto X = base_space();
    auto F = fibre_class(X), O = section_class(X, "O");
    auto even = Rational(2) * (Rational(2) * F + O);
    auto r = very_ample_check(even, X);
    EXPECT_EQ(r.H2, 8);
    EXPECT_FALSE(r.entry("viii").pass);
    auto odd = Rational(3) * F + O + section_class(X, "P1");
    auto s = very_ample_check(odd, X);
    EXPECT_EQ(s.H2, 8);
    EXPECT_TRUE(s.entry("viii").pass);
    EXPECT_NE(s.entry("viii").statement.find("not 2-divisible"), std::string::npos);
    EXPECT_THROW(very_ample_check(Rational(1, 2) * F, X), ComputationError);
}

TEST(Checklist, NegativeControl) {
    auto X = base_space();
    auto H = Rational(20) * fibre_class(X) + Rational(2) * section_class(X, "O");
    EXPECT_EQ(count_degree_d_curves(H, X, 2), 12);
    auto r = very_ample_check(H, X);
    EXPECT_FALSE(r.verdict);
    EXPECT_FALSE(r.entry("ii").pass);
}

TEST(Torsion, ThirdSectionCompleted) {
    auto m = with_full_two_torsion(fixture("model_zeta12"));
    ASSERT_TRUE(m.has_section("T2"));
    EXPECT_EQ(height("T2", m), 0);
    for (const auto& s : m.sections) EXPECT_EQ(height_pairing("T2", s.name, m), 0) << s.name;
    auto f = with_full_two_torsion(fixture("model_family"));
    EXPECT_TRUE(f.has_section("T3"));
    auto b = fixture("model_s3_base");
    b.sections.resize(1);
    EXPECT_THROW(with_full_two_torsion(b), ComputationError);
}

TEST(Coverage, Examples) {
    auto a = coverage_witness(2, 26);
    ASSERT_TRUE(a.found());
    EXPECT_EQ(a.witness->route, "perturbed-even-d");
    EXPECT_EQ(a.witness->N, 9);
    EXPECT_EQ(*a.witness->D2, -12);
    EXPECT_EQ(*a.witness->qo, 4);
    EXPECT_EQ(a.witness->H2, 52);
    EXPECT_EQ(a.witness->degree_d_curves, 24);

    auto b = coverage_witness(3, 100);
    ASSERT_TRUE(b.found());
    EXPECT_TRUE(b.witness->route == "odd-d-base" || b.witness->route == "odd-d-perturbed");
    EXPECT_EQ(b.witness->H2, 200);

    auto c = coverage_witness(3, 101);
    ASSERT_FALSE(c.found());
    EXPECT_EQ(c.refusal->reason, "open case: both d and h odd");

    EXPECT_EQ(coverage_witness(2, 25).refusal->reason, "h below bound 2d(2d+3) - 2 = 26");
    EXPECT_FALSE(coverage_witness(1, 100).found());
}

TEST(Coverage, RoutePreference) {
    // h = d(2N - d) is reached by the unperturbed class
    auto w = coverage_witness(2, 2 * (2 * 10 - 2));
    ASSERT_TRUE(w.found());
    EXPECT_EQ(w.witness->route, "base-even-d");
    EXPECT_EQ(w.witness->N, 10);
    auto o = coverage_witness(3, 2 * 3 * 12);
    ASSERT_TRUE(o.found());
    EXPECT_EQ(o.witness->route, "odd-d-base");
    EXPECT_EQ(o.witness->N, 12);
}

TEST(Coverage, ResiduesModFourD) {
    for (long d : {2, 4, 6}) {
        std::set<long> res;
        for (long D2 = -6; D2 >= -4 * d - 4; D2 -= 2) {
            long N = 2 * d + 4;
            long H2 = 4 * N * d - 2 * d * d + D2;
            EXPECT_EQ(H2 % 2, 0);
            res.insert(((H2 % (4 * d)) + 4 * d) % (4 * d));
        }
        EXPECT_EQ(res.size(), static_cast<std::size_t>(2 * d));
    }
}

TEST(Coverage, SweepInvariants) {
    for (long d : {2, 3, 4})
        for (long h = theorem_h_bound(d); h < theorem_h_bound(d) + 12 * d; ++h) {
            auto r = coverage_witness(d, h);
            ASSERT_EQ(r.found(), d % 2 == 0 || h % 2 == 0) << d << " " << h;
            if (!r.found()) continue;
            EXPECT_EQ(r.witness->H2, 2 * h);
            EXPECT_TRUE(r.witness->checklist.verdict);
            EXPECT_EQ(r.witness->degree_d_curves, 24);
        }
}

TEST(Coverage, ExplicitRoutes) {
    auto a = coverage_witness(2, 27, RouteSet::Explicit);
    ASSERT_TRUE(a.found());
    EXPECT_EQ(a.witness->route, "explicit-family");
    EXPECT_EQ(a.witness->H2, 54);
    auto b = coverage_witness(4, 88, RouteSet::Explicit);
    ASSERT_TRUE(b.found());
    EXPECT_EQ(b.witness->route, "explicit-cyclotomic");
    auto c = coverage_witness(5, 142, RouteSet::Explicit);
    ASSERT_TRUE(c.found());
    EXPECT_EQ(c.witness->route, "explicit-cyclotomic");
    EXPECT_EQ(c.witness->H2, 284);
    EXPECT_FALSE(coverage_witness(5, 143, RouteSet::Explicit).found());
}

TEST(Coverage, JsonShape) {
    auto j = to_json(coverage_witness(2, 26));
    EXPECT_EQ(j["status"], "witness");
    EXPECT_EQ(j["D^2"], -12);
    EXPECT_EQ(j["checklist"]["verdict"], true);
    auto r = to_json(coverage_witness(3, 101));
    EXPECT_EQ(r["status"], "refused");
}
