#include "k3cov/ellk3.hpp"
#include "k3cov/weierstrass.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace k3cov;

namespace {

using RC = RatFunc<Cyc12>;
using RQ = RatFunc<Rational>;

SymbolTable<Cyc12> t_only() {
    SymbolTable<Cyc12> st;
    st.variables = {"t"};
    return st;
}

const char* kZeta12Short = "y^2 = x^3 - 3*t^4*x + t^12 + 1";
const char* kZeta12 = "y^2 = x*(x^2 - 3*(t^4+1)*x + 3*(t^8+t^4+1))";

std::string bits(const std::vector<int>& v) {
    std::string s;
    for (int b : v) s += char('0' + b);
    return s;
}

CurveFile curve(const std::string& name) { return load_curve(data_dir() + "/curves/" + name + ".json"); }

}  // namespace

TEST(ParseModel, Forms) {
    auto st = t_only();
    EXPECT_EQ(parse_model<Cyc12>(kZeta12Short, st).form, WModel<Cyc12>::Form::Short);
    EXPECT_EQ(parse_model<Cyc12>(kZeta12, st).form, WModel<Cyc12>::Form::General);
    EXPECT_THROW(parse_model<Cyc12>("y^2 = x^2", st), ParseError);
    EXPECT_THROW(parse_model<Cyc12>("y^2 = 2*x^3 + 1", st), ParseError);
    EXPECT_THROW(parse_model<Cyc12>("y^2 = x^3 + t^13", st), ComputationError);
    EXPECT_THROW(parse_model<Cyc12>("y^2 = x^3 + (x^3", st), ParseError);
    EXPECT_THROW(parse_model<Cyc12>("y^2 = x^3 + x^2 - x^3*x^0", st), ParseError);
}

TEST(ParseModel, FactoredFamily) {
    SymbolTable<Rational> st;
    st.variables = {"t"};
    st.definitions["f"] = parse_expression<Rational>("(t-1)*(t-2)*(t-3)*(t-4)", st);
    st.definitions["g"] = parse_expression<Rational>("2*(t+1)*(t+2)*(t+3)*(t+4)", st);
    auto m = parse_model<Rational>("y^2 = x*(x-f)*(x-g)", st);
    ASSERT_EQ(m.form, WModel<Rational>::Form::Factored);
    const auto& f = st.definitions["f"];
    const auto& g = st.definitions["g"];
    EXPECT_EQ(m.discriminant(), RQ::constant(1, Rational(16)) * (f * g * (f - g)).pow(2));
    RQ one = RQ::constant(1, Rational(1));
    EXPECT_EQ(discriminant_order(m, one), 2u);
    EXPECT_TRUE(node_at(m, one).is_zero());
}

TEST(Discriminant, Zeta12) {
    auto st = t_only();
    auto m = parse_model<Cyc12>(kZeta12Short, st);
    auto expected = parse_expression<Cyc12>("-432*(t^12-1)^2", st);
    EXPECT_EQ(m.discriminant(), expected);
    auto fib = singular_fibres(m, root_of_unity_candidates(1), true);
    ASSERT_EQ(fib.size(), 12u);
    for (int k = 0; k < 12; ++k) EXPECT_EQ(fib[k].label, "zeta12^" + std::to_string(k));
}

TEST(Discriminant, CuspFamilyRejected) {
    auto st = t_only();
    auto m = parse_model<Cyc12>("y^2 = x^3 + t", st);
    EXPECT_EQ(m.discriminant(), parse_expression<Cyc12>("-432*t^2", st));
    try {
        singular_fibres(m, {{"0", RC::constant(1, Cyc12(0))}});
        FAIL() << "accepted a cusp family";
    } catch (const ComputationError& e) {
        EXPECT_NE(std::string(e.what()).find("outside verifier scope"), std::string::npos);
    }
}

TEST(Sections, NarrowSectionCertificate) {
    auto st = t_only();
    auto m = parse_model<Cyc12>(kZeta12, st);
    auto c = verify_section(m, parse_expression<Cyc12>("2*sqrt3*t^2", st));
    ASSERT_TRUE(c.on_curve);
    ASSERT_TRUE(c.square.has_value());
    EXPECT_EQ(c.square->s, parse_expression<Cyc12>("t*(t^4 - sqrt3*t^2 + 1)", st).num());
    EXPECT_EQ(RC(c.square->c_num, c.square->c_den), parse_expression<Cyc12>("6*sqrt3", st));
    EXPECT_TRUE(verify_section(m, parse_expression<Cyc12>("(1+2*zeta3)*(t^2-zeta3^2)*(t^2+zeta3)", st)).on_curve);
    EXPECT_FALSE(verify_section(parse_model<Cyc12>(kZeta12Short, st), parse_expression<Cyc12>("t", st)).on_curve);
    EXPECT_TRUE(verify_section(m, RC(MPoly<Cyc12>(1))).two_torsion);
}

TEST(Sections, PullbackPreservesValidity) {
    auto st = t_only();
    auto m = parse_model<Cyc12>(kZeta12, st);
    auto ph = parse_expression<Cyc12>("sqrt3*(t^2+t+1)*(t^2-sqrt3*t+1)", st);
    EXPECT_EQ(pullback_section(m, ph, Cyc12(1)), ph);
    // A = -3 t^4 and B = t^12 + 1 in short form: every t -> zeta12^k t is a
    // symmetry with weight lambda = zeta3^k
    for (int k = 0; k < 12; ++k) {
        auto x = pullback_section(m, ph, Cyc12::zeta_power(k));
        EXPECT_TRUE(verify_section(m, x).on_curve) << k;
    }
    auto other = parse_model<Cyc12>("y^2 = x^3 + t^12 + t + 1", st);
    EXPECT_THROW(pullback_section(other, parse_expression<Cyc12>("t", st), Cyc12::i()), ComputationError);
}

TEST(Curves, Zeta12Incidences) {
    auto rep = analyze_curve(curve("zeta12"));
    ASSERT_EQ(rep.fibres.size(), 12u);
    EXPECT_EQ(rep.order_at_infinity, 0);
    const std::map<std::string, std::string> expected{
        {"Ph", "010110001101"},  {"z3Ph", "100011010101"}, {"psiPh", "110001101010"}, {"psiz3Ph", "011010101100"},
        {"Q0", "000111000111"},  {"psiQ0", "111000111000"}, {"Pp", "000000000000"},    {"T0", "011011011011"},
        {"T1", "110110110110"},  {"T2", "101101101101"}};
    for (const auto& [name, inc] : expected) {
        const auto& s = rep.section(name);
        EXPECT_TRUE(s.on_curve) << name;
        EXPECT_EQ(s.po, 0) << name;
        EXPECT_EQ(bits(s.incidence), inc) << name;
        EXPECT_EQ(s.two_torsion, name[0] == 'T') << name;
    }
}

TEST(Curves, Zeta12ShortRejectsNonSection) {
    auto rep = analyze_curve(curve("zeta12_short"));
    EXPECT_EQ(rep.form, "short");
    EXPECT_FALSE(rep.section("x_equals_t").on_curve);
}

TEST(Curves, FamilyGenericHeights) {
    FixtureRecipe r;
    r.name = "family_generic_only";
    r.curves.push_back({"curves/family_generic.json", {"P", "Q", "Qp", "T1", "T2"}});
    auto out = export_fixture(r);
    const auto& m = out.model;
    EXPECT_EQ(bits(m.section("P").incidence), "111111111111");
    EXPECT_EQ(m.section("P").po, 2);
    EXPECT_EQ(bits(m.section("Q").incidence), "111100110000");
    EXPECT_EQ(bits(m.section("Qp").incidence), "000011001111");
    EXPECT_EQ(height("P", m), 2);
    EXPECT_EQ(height("Q", m), 1);
    EXPECT_EQ(height("Qp", m), 1);
    EXPECT_EQ(height("T1", m), 0);
    EXPECT_EQ(m.intersection("P", "T1"), 0);
    EXPECT_EQ(m.torsion_glue.size(), 2u);
    EXPECT_THROW(m.intersection("P", "Q"), ComputationError);
}

TEST(Curves, ExportErrors) {
    FixtureRecipe empty;
    empty.name = "fibres_only";
    empty.curves.push_back({"curves/zeta12.json", {}});
    auto out = export_fixture(empty);
    EXPECT_EQ(out.model.fibres.size(), 12u);
    EXPECT_TRUE(out.model.sections.empty());

    FixtureRecipe bad;
    bad.name = "bad";
    bad.curves.push_back({"curves/zeta12_short.json", {"x_equals_t"}});
    EXPECT_THROW(export_fixture(bad), ComputationError);
    EXPECT_THROW(load_curve(data_dir() + "/curves/none.json"), MissingInput);
}

TEST(Curves, FixturesMatchRegeneration) {
    for (const char* name : {"model_zeta12", "model_family"}) {
        auto out = export_fixture(load_recipe(data_dir() + "/recipes/" + name + ".json"));
        EXPECT_EQ(to_json(out.model).dump(2), to_json(fixture(name)).dump(2)) << name;
    }
}

TEST(Curves, FamilyFibresDistinctAtRandomParameters) {
    std::mt19937 rng(20240607);
    std::uniform_int_distribution<int> num(-40, 40), den(1, 9);
    CurveFile base = curve("family_generic");
    base.sections.clear();
    int audited = 0;
    while (audited < 4) {
        Rational p[3];
        for (auto& v : p) v = make_rational(num(rng), den(rng));
        // stay off the degeneracy locus (a, b, c in {0, 1} or coinciding)
        bool degenerate = false;
        for (int i = 0; i < 3; ++i) {
            if (p[i] == 0 || p[i] * p[i] == 1) degenerate = true;
            for (int j = 0; j < i; ++j)
                if (p[i] * p[i] == p[j] * p[j]) degenerate = true;
        }
        if (degenerate) continue;
        CurveFile c = base;
        c.field = "rational";
        c.variables = {"t"};
        c.definitions.insert(c.definitions.begin(), {{"alpha", p[0].get_str()}, {"beta", p[1].get_str()}, {"gamma", p[2].get_str()}});
        CurveReport rep;
        try {
            rep = analyze_curve(c);
        } catch (const ComputationError& e) {
            // coincidences of the products are also degenerate: they must show as non-I2
            EXPECT_NE(std::string(e.what()).find("non-I2"), std::string::npos) << e.what();
            continue;
        }
        std::set<std::string> ts;
        for (const auto& f : rep.fibres) ts.insert(f.t);
        EXPECT_EQ(ts.size(), 12u);
        ++audited;
    }
}
