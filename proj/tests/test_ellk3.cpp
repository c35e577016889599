#include "k3cov/ellk3.hpp"
#include "k3cov/lattices.hpp"

#include <gtest/gtest.h>

using namespace k3cov;

namespace {

std::vector<Fibre> fibres(int count, const std::string& type) {
    std::vector<Fibre> f;
    for (int k = 0; k < count; ++k) f.push_back({"v" + std::to_string(k), KodairaType::parse(type)});
    return f;
}

EllipticK3Model with_narrow_section(long po) {
    EllipticK3Model m = fixture("model_s3_base");
    SectionRecord q{"Q_narrow", po, std::vector<int>(12, 0), false, {}};
    for (const char* p : {"P1", "P2", "P3"}) q.intersections[p] = po + 2;
    m.sections.push_back(q);
    m.validate();
    return m;
}

}  // namespace

TEST(Kodaira, ParseAndEuler) {
    EXPECT_EQ(KodairaType::parse("I_2").euler(), 2);
    EXPECT_EQ(KodairaType::parse("I0*").euler(), 6);
    EXPECT_EQ(KodairaType::parse("I_0^*").kind, KodairaType::I0star);
    EXPECT_THROW(KodairaType::parse("II"), ParseError);
    EXPECT_THROW(EllipticK3Model("bad", fibres(11, "I2")), ComputationError);
}

TEST(Contribution, Values) {
    EXPECT_EQ(contribution(KodairaType::I(2), 1, 1), Rational(1, 2));
    EXPECT_EQ(contribution(KodairaType::I(5), 0, 3), 0);
    EXPECT_EQ(contribution(KodairaType::I(3), 1, 2), Rational(1, 3));
    EXPECT_EQ(contribution(KodairaType::I(3), 1, 1), Rational(2, 3));
    EXPECT_EQ(contribution(KodairaType::I0s(), 2, 2), 1);
    EXPECT_EQ(contribution(KodairaType::I0s(), 1, 3), Rational(1, 2));
    EXPECT_THROW(contribution(KodairaType::I(2), 2, 0), ComputationError);
}

TEST(Contribution, MatchesInverseCartan) {
    for (const auto& t : {KodairaType::I(2), KodairaType::I(3), KodairaType::I(6), KodairaType::I0s()}) {
        RatMatrix ci = inverse(to_rational(fibre_component_gram(t)));
        for (int i = 1; i < t.section_components(); ++i)
            for (int j = 1; j < t.section_components(); ++j) EXPECT_EQ(contribution(t, i, j), -ci(i - 1, j - 1)) << t.str();
    }
}

TEST(Heights, BaseTorsion) {
    auto m = fixture("model_s3_base");
    for (const char* p : {"P1", "P2", "P3"}) EXPECT_EQ(height(p, m), 0);
    EXPECT_EQ(mwl_gram({"P1"}, m).gram, (RatMatrix{{0}}));
    EXPECT_EQ(height_pairing("P1", "P2", m), 0);
}

TEST(Heights, EnhancedSection) {
    auto m = fixture("model_s4_enhanced");
    EXPECT_EQ(height("Q_all", m), 2);
    EXPECT_FALSE(is_narrow("Q_all", m));
    for (const char* p : {"P1", "P2", "P3"}) EXPECT_EQ(height_pairing("Q_all", p, m), 0);
    EXPECT_EQ(mwl_gram({"2Q_all", "Q_all + P1"}, m).gram, (RatMatrix{{8, 4}, {4, 2}}));
}

TEST(Heights, MissingIntersection) {
    auto m = fixture("model_s3_base");
    m.sections.push_back({"R", 0, std::vector<int>(12, 0), false, {}});
    EXPECT_THROW(height_pairing("R", "P1", m), ComputationError);
    EXPECT_EQ(height("R", m), 4);
}

TEST(Heights, CombinationParsing) {
    auto m = fixture("model_s4_enhanced");
    auto c = parse_combination("2Q_all - P1 + 3*P2", m);
    ASSERT_EQ(c.size(), 3u);
    EXPECT_EQ(c[0], (std::pair<long, std::string>{2, "Q_all"}));
    EXPECT_EQ(c[1], (std::pair<long, std::string>{-1, "P1"}));
    EXPECT_EQ(c[2], (std::pair<long, std::string>{3, "P2"}));
    EXPECT_THROW(parse_combination("2Q + ", m), ParseError);
    EXPECT_THROW(parse_combination("Z", m), ParseError);
}

TEST(Shioda, NarrowProjection) {
    for (long po : {0L, 1L, 2L, 5L}) {
        DivisorSpace X(with_narrow_section(po));
        auto d = shioda_projection("Q_narrow", X);
        EXPECT_TRUE(d.integral());
        EXPECT_EQ(intersect(d, d, X), -(4 + 2 * po));
        EXPECT_EQ(intersect(d, fibre_class(X), X), 0);
        EXPECT_EQ(intersect(d, section_class(X, "O"), X), 0);
        for (std::size_t v = 0; v < 12; ++v) EXPECT_EQ(intersect(d, theta_class(X, v, 1), X), 0);
        EXPECT_EQ(-intersect(d, d, X), height("Q_narrow", X.model()));
        if (po == 2) {
            auto expected = section_class(X, "Q_narrow") - section_class(X, "O") - Rational(4) * fibre_class(X);
            EXPECT_EQ(d.coeffs, expected.coeffs);
        }
    }
}

TEST(Shioda, TorsionAndZero) {
    DivisorSpace X(fixture("model_s3_base"));
    auto d = shioda_projection("P1", X);
    EXPECT_FALSE(d.integral());
    EXPECT_EQ(intersect(d, d, X), 0);
    auto z = shioda_projection("O", X);
    EXPECT_TRUE(z.degenerate);
    EXPECT_EQ(intersect(z, z, X), 0);
}

TEST(Shioda, EnhancedProjectionSquare) {
    DivisorSpace X(fixture("model_s4_enhanced"));
    auto d = shioda_projection("Q_all", X);
    EXPECT_EQ(intersect(d, d, X), -2);
    for (const char* p : {"P1", "P2", "P3"}) EXPECT_EQ(intersect(d, section_class(X, p), X), 0);
}

TEST(Narrow, DoubleIncidence) {
    auto m = fixture("model_s4_enhanced");
    EXPECT_EQ(double_incidence(m.section("Q_all"), m), std::vector<int>(12, 0));
    EXPECT_TRUE(is_narrow("O", m));
    auto mixed = fibres(6, "I2");
    mixed.push_back({"z0", KodairaType::I0s()});
    mixed.push_back({"zinf", KodairaType::I0s()});
    EllipticK3Model mm("mixed", mixed, {{"S", 0, std::vector<int>(8, 0), false, {}}});
    EXPECT_THROW(double_incidence(mm.sections[0], mm), ComputationError);
    EXPECT_THROW(incidence_matrix_f2(mm), ComputationError);
}

TEST(Trivial, Shapes) {
    EXPECT_EQ(abs_int(trivial_lattice(EllipticK3Model("a", fibres(12, "I2"))).det()), 4096);
    auto t3 = trivial_lattice(EllipticK3Model("b", fibres(8, "I3")));
    EXPECT_EQ(t3.rank(), 18u);
    EXPECT_EQ(abs_int(t3.det()), 6561);
    auto mixed = fibres(6, "I2");
    mixed.push_back({"z0", KodairaType::I0s()});
    mixed.push_back({"zinf", KodairaType::I0s()});
    auto t = trivial_lattice(EllipticK3Model("c", mixed));
    EXPECT_TRUE(is_isometric_small(IntegralLattice(IntMatrix{{0, 1}, {1, 0}}), build_lattice("U")));
    EXPECT_EQ(t.rank(), 16u);
    EXPECT_EQ(abs_int(t.det()), 16 * 64);
    EXPECT_EQ(root_sublattice_type(IntegralLattice(t.gram().block(2, 2, 14, 14))), "D4^2 + A1^6");
}

TEST(NS, BaseAndEnhanced) {
    auto base = fixture("model_s3_base");
    EXPECT_EQ(abs_int(ns_lattice(base).det()), 256);
    auto st = shioda_tate_det_check(base);
    EXPECT_TRUE(st.ok);
    EXPECT_EQ(st.lhs, 256);
    EXPECT_EQ(st.torsion_order, 4);
    auto enh = fixture("model_s4_enhanced");
    auto se = shioda_tate_det_check(enh);
    EXPECT_TRUE(se.ok);
    EXPECT_EQ(se.lhs, 512);
    EXPECT_EQ(ns_lattice(enh).rank(), 15u);
    EXPECT_TRUE(is_two_elementary(ns_lattice(base)));
    EllipticK3Model bare("bare", fibres(12, "I2"));
    EXPECT_EQ(ns_lattice(bare).det(), trivial_lattice(bare).det());
}

TEST(NS, MutatedBaseFails) {
    auto base = fixture("model_s3_base");
    for (std::size_t s = 0; s < base.sections.size(); ++s)
        for (std::size_t v = 0; v < 12; ++v) {
            auto m = base;
            m.sections[s].incidence[v] ^= 1;
            EXPECT_FALSE(shioda_tate_det_check(m).ok) << s << " " << v;
        }
}

TEST(F2Rank, Base) {
    EXPECT_EQ(incidence_matrix_f2(fixture("model_s3_base")).rank, 2u);
    auto m = with_narrow_section(1);
    m.sections = {m.section("Q_narrow")};
    m.sections[0].intersections.clear();
    EXPECT_EQ(incidence_matrix_f2(m).rank, 0u);
}

TEST(ModelIO, RoundTrip) {
    auto m = fixture("model_s4_enhanced");
    auto again = model_from_json(nlohmann::json::parse(to_json(m).dump()));
    EXPECT_EQ(to_json(again).dump(), to_json(m).dump());
    EXPECT_THROW(load_model("/nonexistent/model.json"), MissingInput);
    EXPECT_THROW(model_from_json(nlohmann::json::parse(R"({"fibres": 3})")), ParseError);
}
