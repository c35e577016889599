#pragma once

#include "k3cov/ellk3.hpp"
#include "k3cov/lattices.hpp"
#include "k3cov/parallel.hpp"
#include "k3cov/polarize.hpp"
#include "k3cov/quadforms.hpp"
#include "k3cov/weierstrass.hpp"

#include <chrono>

namespace k3cov {

struct AcceptanceOptions {
    long representability_bound = 10000;
    unsigned jobs = 1;
};

struct CriterionResult {
    int id = 0;
    std::string key, group, title;
    bool pass = false;
    std::vector<std::string> details;
    std::string error;
    double seconds = 0;
};

struct CriterionInfo {
    int id;
    std::string key, group, title;
};

inline const std::vector<CriterionInfo>& acceptance_criteria() {
    static const std::vector<CriterionInfo> c{
        {1, "ns-anti-isometry", "lattices", "NS of the twelve-I2 family: |det| 256, 2-elementary, discriminant form anti-isometric to U(2)^2 + A_1^4"},
        {2, "transcendental-complement", "lattices", "complement of a norm -8 vector in U(2)^2 + A_1^4 is isometric to U(2)^2 + A_3(2)"},
        {3, "root-persistence", "lattices", "closures of A_1^12 + ZD keep 24 roots for D^2 in {-6,-8,-10,-12}; D^2 = -2, -4 create D_4, A_3"},
        {4, "family-height-grams", "ellk3", "height Grams of the three-parameter family reproduced from fixture data"},
        {5, "cyclotomic-shioda-tate", "ellk3", "Shioda-Tate determinant of the cyclotomic surface: 2^12 (9/16) / 16 = 144"},
        {6, "cyclotomic-incidence-rank", "ellk3", "8 x 12 incidence matrix of the cyclotomic sections, derived from the equations, has F_2-rank 8"},
        {7, "narrow-representability", "quadforms", "narrow lattices: multiples of 4; universal quarter form; A/2 misses only 1"},
        {8, "very-ampleness-boundaries", "polarize", "checklist boundaries of the odd-degree constructions"},
        {9, "coverage-sweep", "polarize", "a verified degree-2h witness with 24 degree-d curves for every admissible (d, h) of the sweep"},
        {10, "symbolic-sections", "weierstrass", "sections verified on the explicit equations, heights match the tables"},
        {11, "incidence-mutation", "mutation", "every single incidence-bit flip of every fixture breaks a fixture claim"},
    };
    return c;
}

namespace acceptance {

using Details = std::vector<std::string>;

inline std::string mat_str(const RatMatrix& m) {
    std::string s = "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        s += i ? ",[" : "[";
        for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? "," : "") + m(i, j).get_str();
        s += "]";
    }
    return s + "]";
}

inline const RatMatrix& family_gram3() {
    static const RatMatrix g = to_rational(IntMatrix{{4, 0, 2}, {0, 4, 2}, {2, 2, 4}});
    return g;
}
inline const RatMatrix& family_gram4() {
    static const RatMatrix g = to_rational(IntMatrix{{4, 0, 2, 2}, {0, 4, 2, 0}, {2, 2, 4, 0}, {2, 0, 0, 6}});
    return g;
}
// A_2(1/2)^2 + A_1(1/2)^2 on Ph, z3Ph, psiPh, psiz3Ph, Q0, psiQ0
inline RatMatrix cyclotomic_gram() {
    RatMatrix g(6, 6);
    for (std::size_t i = 0; i < 6; ++i) g(i, i) = 1;
    g(0, 1) = g(1, 0) = g(2, 3) = g(3, 2) = make_rational(-1, 2);
    return g;
}

// claims attached to each fixture; each returns pass and appends details
inline bool family_grams(const EllipticK3Model& m, Details& out) {
    auto g3 = mwl_gram({"2Q", "2Qp", "P + Q + Qp"}, m).gram;
    auto g4 = mwl_gram({"2Q", "2Qp", "P + Q + Qp", "2Pp"}, m).gram;
    out.push_back("Gram(2Q, 2Qp, P+Q+Qp) = " + mat_str(g3));
    out.push_back("Gram with 2Pp = " + mat_str(g4));
    return g3 == family_gram3() && g4 == family_gram4();
}

inline bool shioda_tate(const EllipticK3Model& m, Details& out, std::optional<long> expected = std::nullopt) {
    auto c = shioda_tate_det_check(m);
    out.push_back("|det Triv| = " + c.triv_det.get_str() + ", |det MWL| = " + c.mwl_det.get_str() + ", |tors| = " + std::to_string(c.torsion_order) +
                  ", quotient = " + c.lhs.get_str() + ", |det NS| = " + c.span_det.get_str() +
                  (c.expected ? ", expected " + c.expected->get_str() : std::string()));
    return c.ok && (!expected || c.lhs == *expected);
}

inline bool cyclotomic_shioda_tate(const EllipticK3Model& m, Details& out) {
    bool ok = shioda_tate(m, out, 144);
    auto c = shioda_tate_det_check(m);
    return ok && c.triv_det == 4096 && c.mwl_det == make_rational(9, 16) && c.torsion_order == 4;
}

inline bool cyclotomic_rank(const EllipticK3Model& m, Details& out) {
    auto inc = incidence_matrix_f2(m);
    out.push_back(std::to_string(inc.matrix.rows()) + " x " + std::to_string(inc.matrix.cols()) + " incidence matrix, F_2-rank " + std::to_string(inc.rank));
    return inc.matrix.rows() == 8 && inc.matrix.cols() == 12 && inc.rank == 8;
}

inline bool height_tables(const EllipticK3Model& m, Details& out) {
    if (m.name == "model_zeta12") {
        auto g = mwl_gram(detail::zeta12_generators(), m).gram;
        out.push_back("Gram(Ph, z3Ph, psiPh, psiz3Ph, Q0, psiQ0) = " + mat_str(g));
        return g == cyclotomic_gram();
    }
    if (m.name == "model_family") {
        std::string s;
        std::vector<Rational> want{2, 1, 1, make_rational(3, 2)};
        bool ok = true;
        std::size_t k = 0;
        for (const auto* n : {"P", "Q", "Qp", "Pp"}) {
            Rational h = height(n, m);
            s += (s.empty() ? "" : ", ") + std::string("h(") + n + ") = " + h.get_str();
            ok = ok && h == want[k++];
        }
        for (const auto& t : m.torsion_sections()) {
            Rational ht = height(t, m);
            s += ", h(" + t + ") = " + ht.get_str();
            ok = ok && ht == 0;
        }
        out.push_back(s);
        return ok;
    }
    // abstract families: torsion of height 0, the enhancing section of height 2
    bool ok = true;
    for (const auto& s : m.sections) {
        Rational h = height(s.name, m);
        Rational want = s.torsion ? Rational(0) : Rational(2);
        out.push_back("h(" + s.name + ") = " + h.get_str());
        ok = ok && h == want;
        for (const auto& t : m.torsion_sections()) ok = ok && height_pairing(t, s.name, m) == 0;
    }
    return ok;
}

using Claim = std::function<bool(const EllipticK3Model&, Details&)>;

inline std::vector<std::pair<int, Claim>> fixture_claims(const std::string& name) {
    if (name == "model_zeta12") return {{5, cyclotomic_shioda_tate}, {6, cyclotomic_rank}, {10, height_tables}};
    if (name == "model_family") return {{4, family_grams}, {10, height_tables}};
    return {{5, [](const EllipticK3Model& m, Details& d) { return shioda_tate(m, d); }}, {10, height_tables}};
}

inline bool run_claims(const EllipticK3Model& m, Details& out) {
    bool ok = true;
    for (const auto& [id, claim] : fixture_claims(m.name)) {
        try {
            ok = claim(m, out) && ok;
        } catch (const Error& e) {
            out.push_back(std::string("error: ") + e.what());
            ok = false;
        }
    }
    return ok;
}

inline const std::vector<std::string>& fixture_names() {
    static const std::vector<std::string> n{"model_s3_base", "model_s4_enhanced", "model_zeta12", "model_family"};
    return n;
}

inline EllipticK3Model regenerate(const std::string& name) { return export_fixture(load_recipe(data_dir() + "/recipes/" + name + ".json")).model; }

inline bool c1(Details& out, const AcceptanceOptions&) {
    auto ns = twelve_a1_overlattice().lattice;
    auto T = build_lattice("U(2)^2 + A_1^4");
    DiscriminantForm A(ns), B(T);
    Integer det = abs_int(ns.det());
    bool two = is_two_elementary(ns) && is_two_elementary(T);
    out.push_back("|det NS| = " + det.get_str() + ", 2-elementary: " + (two ? "yes" : "no"));
    std::string fa, fb;
    for (const auto& f : A.invariant_factors()) fa += f.get_str() + " ";
    for (const auto& f : B.invariant_factors()) fb += f.get_str() + " ";
    out.push_back("invariant factors NS: " + fa + "| T: " + fb);
    auto phi = find_anti_isometry(A, B);
    bool anti = phi.has_value();
    if (anti) {
        const auto& g = A.generators();
        std::string qs;
        for (std::size_t i = 0; i < g.size(); ++i) {
            Rational qa = A.q(g[i]), qb = B.q((*phi)[i]);
            qs += (qs.empty() ? "" : ", ") + qa.get_str() + " -> " + qb.get_str();
            anti = anti && mod_rational(qa + qb, Rational(2)) == 0;
            for (std::size_t j = 0; j < g.size(); ++j) anti = anti && mod_rational(A.b(g[i], g[j]) + B.b((*phi)[i], (*phi)[j]), Rational(1)) == 0;
        }
        out.push_back("q on generators (NS -> T): " + qs);
    }
    out.push_back(std::string("anti-isometry: ") + (anti ? "found and verified" : "none"));
    return det == 256 && two && A.invariant_factors() == B.invariant_factors() && anti;
}

inline bool c2(Details& out, const AcceptanceOptions&) {
    auto L = build_lattice("U(2)^2 + A_1^4");
    IntVector v{0, 0, 0, 0, 1, 1, 1, 1};
    auto c = orthogonal_complement(L, v);
    bool iso = is_isometric_small(c.lattice, build_lattice("U(2)^2 + A_3(2)"));
    out.push_back("v = a1 + a2 + a3 + a4, v^2 = " + L.pair(v, v).get_str() + ", complement rank " + std::to_string(c.lattice.rank()) + ", |det| " +
                  abs_int(c.lattice.det()).get_str() + ", isometric to U(2)^2 + A_3(2): " + (iso ? "yes" : "no"));
    return L.pair(v, v) == -8 && iso;
}

inline bool c3(Details& out, const AcceptanceOptions&) {
    bool ok = true;
    for (long d2 : {-6L, -8L, -10L, -12L}) {
        std::size_t n = 0;
        bool good = root_sublattice_type(a1_closure_with_vector(d2, {}).lattice) == "A1^12";
        for (int x = 0; x <= 4; ++x)
            for (int y = 0; y <= 4; ++y)
                for (int z = 0; z <= 4; ++z) {
                    std::set<int> S;
                    for (int i = 1; i <= x; ++i) S.insert(i);
                    for (int i = 1; i <= y; ++i) S.insert(4 + i);
                    for (int i = 1; i <= z; ++i) S.insert(8 + i);
                    if (S.empty() || !closure_glue_admissible(d2, S)) continue;
                    // supports in the glue code make D/2 itself a lattice vector
                    if ((x == 4 && y == 4 && z == 0) || (x == 0 && y == 4 && z == 4) || (x == 4 && y == 0 && z == 4)) continue;
                    auto L = a1_closure_with_vector(d2, S).lattice;
                    ++n;
                    good = good && roots(L).size() == 24 && root_sublattice_type(L) == "A1^12";
                }
        out.push_back("D^2 = " + std::to_string(d2) + ": " + std::to_string(n) + " admissible gluings, all with 24 roots of type A1^12: " + (good ? "yes" : "no"));
        ok = ok && good && n > 0;
    }
    auto d4 = a1_closure_with_vector(-2, {1, 5, 9}).lattice;
    auto a3 = a1_closure_with_vector(-4, {1, 2}).lattice;
    std::string t4 = root_sublattice_type(d4), t3 = root_sublattice_type(a3);
    out.push_back("D^2 = -2, glue (a1+a5+a9+D)/2: " + std::to_string(roots(d4).size()) + " roots, " + t4);
    out.push_back("D^2 = -4, glue (a1+a2+D)/2: " + std::to_string(roots(a3).size()) + " roots, " + t3);
    return ok && t4 == "D4 + A1^9" && t3 == "A3 + A1^10";
}

inline bool c4(Details& out, const AcceptanceOptions&) { return family_grams(fixture("model_family"), out); }

inline bool c5(Details& out, const AcceptanceOptions&) { return cyclotomic_shioda_tate(fixture("model_zeta12"), out); }

inline bool c6(Details& out, const AcceptanceOptions&) {
    auto m = regenerate("model_zeta12");
    bool ok = cyclotomic_rank(m, out);
    auto shipped = fixture("model_zeta12");
    bool same = shipped.sections.size() == m.sections.size();
    for (std::size_t i = 0; same && i < m.sections.size(); ++i)
        same = shipped.sections[i].name == m.sections[i].name && shipped.sections[i].incidence == m.sections[i].incidence;
    out.push_back(std::string("shipped fixture incidences equal the regenerated ones: ") + (same ? "yes" : "no"));
    return ok && same;
}

inline bool c7(Details& out, const AcceptanceOptions& opt) {
    long B = opt.representability_bound;
    auto X = fixture("model_zeta12");
    std::vector<std::string> gens;
    for (const auto& g : detail::zeta12_generators()) gens.push_back("2" + g);
    PosDefForm mw0(mwl_gram(gens, X).gram);
    auto a = represented_set(mw0, B);
    bool a_ok = true;
    for (long n = 1; n <= B; ++n) a_ok = a_ok && a.represents(n) == (n % 4 == 0);
    out.push_back("(a) MWL0 of the cyclotomic surface (Gram of 2 x generators) represents exactly the multiples of 4 up to " + std::to_string(B) + ": " +
                  (a_ok ? "yes" : "no"));

    // φ(Q)^⊥ in MWL0 for Q = Q0 + psiQ0
    IntMatrix g(6, 6);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) g(i, j) = mw0.gram()(i, j).get_num();
    IntVector w(6, Integer(0));
    w[4] = w[5] = 1;
    auto comp = orthogonal_complement(IntegralLattice(g), w).lattice;
    auto target = build_lattice("A_1(4) + A_2(2)^2").negate();
    bool iso = is_isometric_small(comp, target);
    bool universal = check_290(PosDefForm(make_rational(1, 4) * target.rational_gram()));
    out.push_back(std::string("(b) complement of Q0 + psiQ0 in MWL0 isometric to the positive A_1(4) + A_2(2)^2: ") + (iso ? "yes" : "no") +
                  "; its quarter form passes the 290 criterion: " + (universal ? "yes" : "no"));

    auto Y = fixture("model_family");
    RatMatrix A = mwl_gram({"2Q", "2Qp", "P + Q + Qp", "2Pp"}, Y).gram;
    auto c = represented_set(PosDefForm(make_rational(1, 2) * A), B);
    std::string ex;
    for (long e : c.exceptions) ex += (ex.empty() ? "" : ", ") + std::to_string(e);
    out.push_back("(c) exceptions of A/2 up to " + std::to_string(B) + ": {" + ex + "}");
    return a_ok && iso && universal && c.exceptions == std::vector<long>{1};
}

inline bool c8(Details& out, const AcceptanceOptions&) {
    bool ok = true;
    auto S4 = fixture("model_s4_enhanced");
    DivisorSpace X(S4);
    for (long d : {3, 5, 7}) {
        auto run = [&](long N) { return very_ample_check(build_H_odd_d(N, d, X), X, {Construction::OddBase, N, d, std::nullopt, ""}).verdict; };
        bool hi = run(2 * d + 1), lo = run(2 * d);
        out.push_back("NF + d(O + Q), d = " + std::to_string(d) + ": N = 2d+1 " + (hi ? "passes" : "fails") + ", N = 2d " + (lo ? "passes" : "fails"));
        ok = ok && hi && !lo;
        for (long q = 2; q <= 2 * d; q += 2) {
            DivisorSpace Xq(with_narrow_section(S4, "Qp", q));
            auto runq = [&](long N) {
                auto H = perturb(build_H_odd_d(N, d, Xq), "Qp", Xq);
                return very_ample_check(H, Xq, {Construction::OddPerturbed, N, d, q, "Qp"}).verdict;
            };
            bool p = runq(q + 4), f = runq(q + 3);
            if (q == 2 || q == 2 * d)
                out.push_back("perturbed, d = " + std::to_string(d) + ", (Q'.O) = " + std::to_string(q) + ": N = (Q'.O)+4 " + (p ? "passes" : "fails") +
                              ", N = (Q'.O)+3 " + (f ? "passes" : "fails"));
            ok = ok && p && !f;
        }
    }
    return ok;
}

inline bool c9(Details& out, const AcceptanceOptions& opt) {
    struct Job {
        long d, h;
    };
    std::vector<Job> jobs;
    for (long d = 2; d <= 6; ++d) {
        long lo = theorem_h_bound(d), hi = theorem_h_bound(d) + 2 + 40 * d;
        if (d == 2) hi = std::max(hi, 300L);
        for (long h = lo; h <= hi; ++h) jobs.push_back({d, h});
    }
    auto res = parallel_map<int>(jobs.size(), opt.jobs, [&](std::size_t i) {
        auto [d, h] = jobs[i];
        auto r = coverage_witness(d, h);
        bool admissible = d % 2 == 0 || h % 2 == 0;
        if (!admissible) return r.refusal && r.refusal->reason == "open case: both d and h odd" ? 2 : 0;
        if (!r.witness) return 0;
        const auto& w = *r.witness;
        return w.H2 == 2 * h && w.checklist.verdict && w.degree_d_curves == 24 ? 1 : 0;
    });
    bool ok = true;
    for (long d = 2; d <= 6; ++d) {
        long wit = 0, ref = 0, bad = 0, lo = 0, hi = 0;
        for (std::size_t i = 0; i < jobs.size(); ++i) {
            if (jobs[i].d != d) continue;
            if (!lo) lo = jobs[i].h;
            hi = jobs[i].h;
            if (res[i] == 1) ++wit;
            else if (res[i] == 2) ++ref;
            else ++bad;
        }
        out.push_back("d = " + std::to_string(d) + ", h in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]: " + std::to_string(wit) +
                      " witnesses, " + std::to_string(ref) + " documented refusals, " + std::to_string(bad) + " failures");
        ok = ok && bad == 0;
    }
    return ok;
}

inline bool c10(Details& out, const AcceptanceOptions& opt) {
    const std::vector<std::pair<std::string, std::vector<std::string>>> files{
        {"curves/zeta12.json", {"Pp", "Ph", "z3Ph", "psiPh", "psiz3Ph", "Q0", "psiQ0"}},
        {"curves/family_generic.json", {"P", "Q", "Qp"}},
        {"curves/family_locus.json", {"Pp"}},
    };
    auto reports = parallel_map<CurveReport>(files.size(), opt.jobs, [&](std::size_t i) { return analyze_curve(load_curve(data_dir() + "/" + files[i].first)); });
    bool ok = true;
    for (std::size_t i = 0; i < files.size(); ++i) {
        std::string s;
        for (const auto& n : files[i].second) {
            bool on = reports[i].section(n).on_curve;
            s += (s.empty() ? "" : ", ") + n + (on ? " verified" : " NOT on the curve");
            ok = ok && on;
        }
        out.push_back(files[i].first + ": " + s);
    }
    // 2Ph = Pp at the level of heights: Pp narrow with height 4 h(Ph)
    const auto& pp = reports[0].section("Pp");
    Rational contr = 0;
    auto X = regenerate("model_zeta12");
    for (std::size_t v = 0; v < X.fibres.size(); ++v) contr += contribution(X.fibres[v].type, pp.incidence[v], pp.incidence[v]);
    Rational hpp = Rational(4 + 2 * pp.po) - contr;
    bool narrow = std::all_of(pp.incidence.begin(), pp.incidence.end(), [](int c) { return c == 0; });
    Rational hph = height("Ph", X);
    out.push_back("h(Pp) = " + hpp.get_str() + ", h(Ph) = " + hph.get_str() + ", Pp narrow: " + (narrow ? "yes" : "no"));
    ok = ok && hpp == 4 && hph == 1 && narrow;
    ok = height_tables(X, out) && ok;
    ok = height_tables(regenerate("model_family"), out) && ok;
    return ok;
}

inline bool c11(Details& out, const AcceptanceOptions&) {
    bool ok = true;
    for (const auto& name : fixture_names()) {
        auto base = fixture(name);
        Details ignore;
        bool clean = run_claims(base, ignore);
        std::size_t flips = 0, caught = 0;
        std::string missed;
        for (std::size_t s = 0; s < base.sections.size(); ++s)
            for (std::size_t v = 0; v < base.fibres.size(); ++v) {
                auto m = base;
                int& bit = m.sections[s].incidence[v];
                if (base.fibres[v].type.section_components() != 2) continue;
                bit = 1 - bit;
                ++flips;
                Details d;
                if (!run_claims(m, d)) {
                    ++caught;
                } else if (missed.empty()) {
                    missed = m.sections[s].name + " at fibre " + m.fibres[v].label;
                }
            }
        out.push_back(name + ": claims hold unmutated: " + (clean ? "yes" : "no") + "; " + std::to_string(caught) + "/" + std::to_string(flips) +
                      " single-bit flips detected" + (missed.empty() ? "" : " (first undetected: " + missed + ")"));
        ok = ok && clean && caught == flips && flips > 0;
    }
    return ok;
}

}  // namespace acceptance

inline CriterionResult run_criterion(int id, const AcceptanceOptions& opt = {}) {
    using Fn = bool (*)(acceptance::Details&, const AcceptanceOptions&);
    static const std::map<int, Fn> fns{{1, acceptance::c1}, {2, acceptance::c2}, {3, acceptance::c3},  {4, acceptance::c4},
                                       {5, acceptance::c5}, {6, acceptance::c6}, {7, acceptance::c7},  {8, acceptance::c8},
                                       {9, acceptance::c9}, {10, acceptance::c10}, {11, acceptance::c11}};
    CriterionResult r;
    for (const auto& c : acceptance_criteria())
        if (c.id == id) {
            r.id = c.id;
            r.key = c.key;
            r.group = c.group;
            r.title = c.title;
        }
    if (!r.id) throw ComputationError("no acceptance criterion " + std::to_string(id));
    auto t0 = std::chrono::steady_clock::now();
    try {
        r.pass = fns.at(id)(r.details, opt);
    } catch (const MissingInput&) {
        throw;
    } catch (const std::exception& e) {
        r.pass = false;
        r.error = e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

// selectors: criterion ids, keys or groups; empty selects everything
inline std::vector<int> select_criteria(const std::vector<std::string>& only) {
    std::vector<int> ids;
    for (const auto& c : acceptance_criteria()) {
        bool take = only.empty();
        for (const auto& s : only) take = take || s == c.key || s == c.group || s == std::to_string(c.id);
        if (take) ids.push_back(c.id);
    }
    for (const auto& s : only) {
        bool known = false;
        for (const auto& c : acceptance_criteria()) known = known || s == c.key || s == c.group || s == std::to_string(c.id);
        if (!known) throw ParseError("unknown criterion selector '" + s + "'", 0);
    }
    return ids;
}

inline nlohmann::ordered_json to_json(const CriterionResult& r) {
    nlohmann::ordered_json j{{"id", r.id}, {"key", r.key}, {"group", r.group}, {"title", r.title}, {"pass", r.pass}, {"details", r.details}};
    if (!r.error.empty()) j["error"] = r.error;
    return j;
}

}  // namespace k3cov
