#pragma once

#include "k3cov/lattices/lattice.hpp"
#include "k3cov/lattices/operations.hpp"
#include "k3cov/polarize/checklist.hpp"
#include "k3cov/quadforms/represent.hpp"

namespace k3cov {

// Moduli: the abstract families with twelve I_2 fibres (base and enhanced).
// Explicit: the two explicit surfaces, with narrow sections drawn from their
// Mordell-Weil lattices.
enum class RouteSet { Moduli, Explicit };

struct CoverageWitness {
    std::string route;
    long d = 0, h = 0, N = 0;
    std::optional<long> D2, qo;
    Rational H2;
    std::string parity;
    std::string model;
    std::string H;
    std::string narrow_vector;  // realizing vector of D (or D'), when perturbed
    ChecklistReport checklist;
    long degree_d_curves = 0;
};

struct CoverageRefusal {
    long d = 0, h = 0;
    std::string reason;
};

struct CoverageResult {
    std::optional<CoverageWitness> witness;
    std::optional<CoverageRefusal> refusal;
    bool found() const { return witness.has_value(); }
};

inline long theorem_h_bound(long d) { return 2 * d * (2 * d + 3) - 2; }

namespace detail {

struct RouteModel {
    std::string route;
    EllipticK3Model model;
    bool odd = false;
    // -D^2 -> vector in the narrow lattice with that norm
    std::function<std::map<long, std::string>(long)> narrow_values;
};

inline std::string combination_str(const std::vector<long>& x, const std::vector<std::string>& names) {
    std::string s;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!x[i]) continue;
        long c = x[i];
        s += s.empty() ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
        long a = c < 0 ? -c : c;
        bool compound = names[i].find(' ') != std::string::npos;
        s += (a == 1 ? "" : std::to_string(a) + "*") + (compound ? "(" + names[i] + ")" : names[i]);
    }
    return s;
}

inline std::map<long, std::string> values_of(const RatMatrix& gram, const std::vector<std::string>& names, long bound) {
    std::map<long, std::string> out;
    if (bound < 1) return out;
    auto r = represented_set(PosDefForm(gram), bound);
    for (const auto& [v, x] : r.witnesses) out[v] = combination_str(x, names);
    return out;
}

// only the fibres and torsion sections of a fixture
inline EllipticK3Model torsion_frame(const EllipticK3Model& m) {
    EllipticK3Model f;
    f.name = m.name;
    f.fibres = m.fibres;
    f.torsion_glue = m.torsion_glue;
    for (const auto& s : m.sections)
        if (s.torsion) {
            SectionRecord r = s;
            r.intersections.clear();
            f.sections.push_back(r);
        }
    for (auto& s : f.sections)
        for (const auto& t : f.sections)
            if (s.name != t.name) s.intersections[t.name] = orthogonal_intersection(s, t, f);
    return with_full_two_torsion(f);
}

// the transcendental-lattice vector with D^2 = d2 (U(2)^2 + A_1^4, or U(2)^2 + A_3(2))
inline std::string transcendental_vector(long d2, bool odd) {
    IntegralLattice T = build_lattice(odd ? "U(2)^2 + A_3(2)" : "U(2)^2 + A_1^4");
    IntVector v(T.rank(), Integer(0));
    v[0] = 1;
    std::string s;
    if (d2 % 4 == 0) {
        v[1] = d2 / 4;
        s = "e1 + (" + std::to_string(d2 / 4) + ")f1";
    } else {
        v[1] = (d2 + 2) / 4;
        v[4] = 1;
        s = "e1 + (" + std::to_string((d2 + 2) / 4) + ")f1 + a1";
    }
    if (dot(v, T.gram(), v) != d2 || !is_primitive(v)) throw ComputationError("transcendental vector construction failed");
    return s + " in " + (odd ? "U(2)^2 + A_3(2)" : "U(2)^2 + A_1^4");
}

inline const RouteModel& moduli_route(bool odd) {
    static const RouteModel even{"perturbed-even-d", fixture("model_s3_base"), false, [](long bound) {
                                     std::map<long, std::string> out;
                                     for (long v = 6; v <= bound; v += 2) out[v] = transcendental_vector(-v, false);
                                     return out;
                                 }};
    static const RouteModel oddm{"odd-d-perturbed", fixture("model_s4_enhanced"), true, [](long bound) {
                                     std::map<long, std::string> out;
                                     for (long v = 8; v <= bound; v += 4) out[v] = transcendental_vector(-v, true);
                                     return out;
                                 }};
    return odd ? oddm : even;
}

inline const std::vector<std::string>& zeta12_generators() {
    static const std::vector<std::string> g{"Ph", "z3Ph", "psiPh", "psiz3Ph", "Q0", "psiQ0"};
    return g;
}

inline const RouteModel& explicit_zeta12_route(bool odd) {
    static const EllipticK3Model X = fixture("model_zeta12");
    static const MWGram mw0 = [] {
        std::vector<std::string> c;
        for (const auto& g : zeta12_generators()) c.push_back("2" + g);
        return mwl_gram(c, X);
    }();
    static const RouteModel even{"explicit-cyclotomic", torsion_frame(X), false,
                                 [](long bound) { return values_of(mw0.gram, mw0.names, bound); }};
    static const RouteModel oddm = [] {
        // Q = Q0 + psiQ0: height 2, non-identity component of every fibre
        auto frame = torsion_frame(X);
        SectionRecord q{"Q", 0, {}, false, {}};
        const auto &a = X.section("Q0"), &b = X.section("psiQ0");
        Rational contr = 0;
        for (std::size_t v = 0; v < X.fibres.size(); ++v) {
            q.incidence.push_back((a.incidence[v] + b.incidence[v]) % 2);
            contr += contribution(X.fibres[v].type, q.incidence.back(), q.incidence.back());
        }
        Rational h = height_pairing(parse_combination("Q0 + psiQ0", X), parse_combination("Q0 + psiQ0", X), X);
        Rational po = (h - 4 + contr) / 2;
        if (h != 2 || !is_integer(po)) throw ComputationError("Q0 + psiQ0 does not have height 2");
        q.po = po.get_num().get_si();
        for (auto& s : frame.sections) {
            long v = orthogonal_intersection(q, s, frame);
            q.intersections[s.name] = v;
            s.intersections["Q"] = v;
        }
        frame.sections.push_back(q);
        frame.validate();
        // the narrow lattice orthogonal to φ(Q): complement of 2Q = (2Q0) + (2psiQ0)
        IntMatrix g(mw0.gram.rows(), mw0.gram.rows());
        for (std::size_t i = 0; i < g.rows(); ++i)
            for (std::size_t j = 0; j < g.rows(); ++j) g(i, j) = mw0.gram(i, j).get_num();
        IntVector w(g.rows(), Integer(0));
        w[4] = w[5] = 1;
        auto c = orthogonal_complement(IntegralLattice(g), w);
        std::vector<std::string> names;
        for (std::size_t j = 0; j < c.basis.cols(); ++j) {
            std::vector<long> col;
            for (std::size_t i = 0; i < c.basis.rows(); ++i) col.push_back(c.basis(i, j).get_si());
            names.push_back(combination_str(col, mw0.names));
        }
        RatMatrix cg = to_rational(c.lattice.gram());
        return RouteModel{"explicit-cyclotomic", frame, true, [cg, names](long bound) { return values_of(cg, names, bound); }};
    }();
    return odd ? oddm : even;
}

inline const RouteModel& explicit_family_route() {
    static const EllipticK3Model Y = fixture("model_family");
    static const MWGram mw0 = mwl_gram({"2Q", "2Qp", "P + Q + Qp", "2Pp"}, Y);
    static const RouteModel r{"explicit-family", torsion_frame(Y), false, [](long bound) { return values_of(mw0.gram, mw0.names, bound); }};
    return r;
}

struct Candidate {
    long N;
    std::optional<long> D2;
    std::string vector;
};

inline std::optional<CoverageWitness> try_candidate(const RouteModel& rm, const std::string& route, long d, long h, const Candidate& c) {
    EllipticK3Model m = rm.model;
    PolarizationParams p;
    p.N = c.N;
    p.d = d;
    std::string qname = rm.odd ? "Qp" : "Q_narrow";
    if (c.D2) {
        p.qo = -*c.D2 / 2 - 2;
        p.perturbation = qname;
        m = with_narrow_section(m, qname, *p.qo);
    }
    p.construction = rm.odd ? (c.D2 ? Construction::OddPerturbed : Construction::OddBase)
                            : (c.D2 ? Construction::EvenPerturbed : Construction::EvenBase);
    DivisorSpace X(m);
    std::string qall = m.has_section("Q_all") ? "Q_all" : "Q";
    DivisorClass H = rm.odd ? build_H_odd_d(c.N, d, X, qall) : build_H_even_d(c.N, d, X);
    Rational H2_base = intersect(H, H, X);
    if (c.D2) {
        H = perturb(H, qname, X);
        if (intersect(H, H, X) != H2_base + *c.D2) throw ComputationError("(H')^2 differs from H^2 + D^2");
    }
    CoverageWitness w;
    w.route = route;
    w.d = d;
    w.h = h;
    w.N = c.N;
    w.D2 = c.D2;
    w.qo = p.qo;
    w.H2 = intersect(H, H, X);
    w.parity = d % 2 == 0 ? "d even" : "h even";
    w.model = m.name;
    w.H = class_str(H, X);
    w.narrow_vector = c.vector;
    w.checklist = very_ample_check(H, X, p);
    w.degree_d_curves = count_degree_d_curves(H, X, d);
    if (w.H2 != 2 * h || !w.checklist.verdict || w.degree_d_curves != 24) return std::nullopt;
    return w;
}

// base candidate first, then perturbations ordered by N, ties by larger D^2
inline std::optional<CoverageWitness> solve_route(const RouteModel& rm, const std::string& base_route, const std::string& pert_route, long d, long h) {
    std::vector<Candidate> base, pert;
    if (!rm.odd) {
        if (h % d == 0 && (h / d + d) % 2 == 0 && (h / d + d) / 2 > d) base.push_back({(h / d + d) / 2, std::nullopt, ""});
    } else if (h % (2 * d) == 0 && h / (2 * d) > 2 * d) {
        base.push_back({h / (2 * d), std::nullopt, ""});
    }
    for (const auto& [v, vec] : rm.narrow_values(4 * d + 4)) {
        long D2 = -v;
        // (H')^2 = H^2 + D^2 with H^2 = 4Nd (odd d) or 4Nd - 2d^2 (even d)
        long rest = 2 * h - D2 + (rm.odd ? 0 : 2 * d * d);
        if (v < (rm.odd ? 8 : 6) || rest % (4 * d) != 0) continue;
        long N = rest / (4 * d);
        long qo = v / 2 - 2;
        if (rm.odd ? N <= qo + 3 : N <= 2 * d + 3) continue;
        pert.push_back({N, D2, vec});
    }
    std::stable_sort(pert.begin(), pert.end(), [](const Candidate& a, const Candidate& b) {
        return a.N != b.N ? a.N < b.N : *a.D2 > *b.D2;
    });
    for (const auto& c : base)
        if (auto w = try_candidate(rm, base_route, d, h, c)) return w;
    for (const auto& c : pert)
        if (auto w = try_candidate(rm, pert_route, d, h, c)) return w;
    return std::nullopt;
}

}  // namespace detail

inline CoverageResult coverage_witness(long d, long h, RouteSet routes = RouteSet::Moduli) {
    auto refuse = [&](std::string why) { return CoverageResult{std::nullopt, CoverageRefusal{d, h, std::move(why)}}; };
    if (d < 2) return refuse("degree d must be at least 2");
    if (h < 2) return refuse("h must be at least 2");
    if (d % 2 != 0 && h % 2 != 0) return refuse("open case: both d and h odd");
    long bound = theorem_h_bound(d);
    if (h < bound) return refuse("h below bound 2d(2d+3) - 2 = " + std::to_string(bound));
    std::optional<CoverageWitness> w;
    if (routes == RouteSet::Moduli) {
        bool odd = d % 2 != 0;
        w = odd ? detail::solve_route(detail::moduli_route(true), "odd-d-base", "odd-d-perturbed", d, h)
                : detail::solve_route(detail::moduli_route(false), "base-even-d", "perturbed-even-d", d, h);
    } else {
        if (h % 2 == 0) {
            const auto& rm = detail::explicit_zeta12_route(d % 2 != 0);
            w = detail::solve_route(rm, rm.route, rm.route, d, h);
        }
        if (!w && d % 2 == 0) {
            const auto& rm = detail::explicit_family_route();
            w = detail::solve_route(rm, rm.route, rm.route, d, h);
        }
    }
    if (!w) return refuse("no route produced a verified witness");
    return {w, std::nullopt};
}

inline std::string routes_name(RouteSet r) { return r == RouteSet::Moduli ? "moduli" : "explicit"; }

inline nlohmann::ordered_json to_json(const CoverageResult& r) {
    nlohmann::ordered_json j;
    if (r.witness) {
        const auto& w = *r.witness;
        j["d"] = w.d;
        j["h"] = w.h;
        j["status"] = "witness";
        j["route"] = w.route;
        j["N"] = w.N;
        j["D^2"] = w.D2 ? nlohmann::ordered_json(*w.D2) : nlohmann::ordered_json(nullptr);
        j["Q.O"] = w.qo ? nlohmann::ordered_json(*w.qo) : nlohmann::ordered_json(nullptr);
        j["H^2"] = w.H2.get_str();
        j["parity"] = w.parity;
        j["model"] = w.model;
        j["H"] = w.H;
        if (!w.narrow_vector.empty()) j["narrow_vector"] = w.narrow_vector;
        j["degree_d_curves"] = w.degree_d_curves;
        j["checklist"] = to_json(w.checklist);
    } else {
        j["d"] = r.refusal->d;
        j["h"] = r.refusal->h;
        j["status"] = "refused";
        j["reason"] = r.refusal->reason;
    }
    return j;
}

}  // namespace k3cov
