#include "k3cov/acceptance.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

using namespace k3cov;
using Json = nlohmann::ordered_json;

namespace {

enum Exit { Ok = 0, VerificationFailure = 1, ParseFailure = 2, ComputationFailure = 3, MissingFailure = 4 };

struct Global {
    std::string format = "json";
    long bound = 2000;
    unsigned jobs = 0;
    std::string out;
    std::string data;
};

bool is_scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

std::string scalar_str(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

bool flat_records(const Json& j) {
    if (!j.is_array() || j.empty()) return false;
    for (const auto& r : j) {
        if (!r.is_object()) return false;
        for (const auto& [k, v] : r.items())
            if (!is_scalar(v) && !(v.is_array() && std::all_of(v.begin(), v.end(), is_scalar))) return false;
    }
    return true;
}

std::string cell(const Json& v) {
    if (is_scalar(v)) return scalar_str(v);
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : ", ") + scalar_str(x);
    return s;
}

void markdown(const Json& j, std::ostream& os, int level) {
    std::string hashes(std::min(level, 6), '#');
    for (const auto& [k, v] : j.items()) {
        if (is_scalar(v)) {
            os << "- **" << k << "**: " << scalar_str(v) << "\n";
        } else if (v.is_array() && std::all_of(v.begin(), v.end(), is_scalar)) {
            os << "- **" << k << "**: " << cell(v) << "\n";
        } else if (flat_records(v)) {
            std::vector<std::string> cols;
            for (const auto& r : v)
                for (const auto& [c, x] : r.items())
                    if (std::find(cols.begin(), cols.end(), c) == cols.end()) cols.push_back(c);
            os << "\n" << hashes << " " << k << "\n\n|";
            for (const auto& c : cols) os << " " << c << " |";
            os << "\n|";
            for (std::size_t i = 0; i < cols.size(); ++i) os << " --- |";
            os << "\n";
            for (const auto& r : v) {
                os << "|";
                for (const auto& c : cols) os << " " << (r.contains(c) ? cell(r.at(c)) : "") << " |";
                os << "\n";
            }
            os << "\n";
        } else if (v.is_array()) {
            os << "\n" << hashes << " " << k << "\n\n";
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (is_scalar(v[i])) {
                    os << "- " << scalar_str(v[i]) << "\n";
                } else {
                    os << "\n" << hashes << "# " << k << " " << i + 1 << "\n\n";
                    markdown(v[i].is_object() ? v[i] : Json{{"value", v[i]}}, os, level + 2);
                }
            }
            os << "\n";
        } else {
            os << "\n" << hashes << " " << k << "\n\n";
            markdown(v, os, level + 1);
            os << "\n";
        }
    }
}

void emit(const Json& report, const Global& g) {
    std::ostringstream os;
    if (g.format == "markdown") {
        os << "# " << report.value("command", std::string("report")) << "\n\n";
        markdown(report, os, 2);
    } else {
        os << report.dump(2) << "\n";
    }
    if (g.out.empty()) {
        std::cout << os.str();
    } else {
        std::ofstream f(g.out);
        if (!f) throw MissingInput("cannot write " + g.out);
        f << os.str();
    }
}

unsigned jobs_of(const Global& g) { return g.jobs ? g.jobs : std::max(1u, std::thread::hardware_concurrency()); }

Json rational_matrix_json(const RatMatrix& m) {
    Json a = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json r = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(m(i, j).get_str());
        a.push_back(r);
    }
    return a;
}

Json integer_matrix_json(const IntMatrix& m) { return rational_matrix_json(to_rational(m)); }

// a model argument is a shipped fixture name or a path to a model file
EllipticK3Model resolve_model(const std::string& s) {
    if (s.find('/') != std::string::npos || s.ends_with(".json")) return load_model(s);
    return fixture(s);
}

// Gram matrix given inline as JSON or as a path to a JSON file
RatMatrix parse_gram(const std::string& s) {
    nlohmann::json j;
    try {
        j = s.find('[') != std::string::npos ? nlohmann::json::parse(s) : read_json_file(s);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("Gram matrix is not valid JSON: ") + e.what(), e.byte);
    }
    if (j.is_object() && j.contains("gram")) j = j.at("gram");
    if (!j.is_array() || j.empty()) throw ParseError("Gram matrix must be a non-empty array of rows", 0);
    std::size_t n = j.size();
    RatMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!j[i].is_array() || j[i].size() != n) throw ParseError("Gram matrix must be square", 0);
        for (std::size_t k = 0; k < n; ++k) {
            const auto& e = j[i][k];
            if (e.is_number_integer()) g(i, k) = Rational(e.get<long>());
            else if (e.is_string()) g(i, k) = parse_rational(e.get<std::string>());
            else throw ParseError("Gram entries must be integers or strings 'p/q'", 0);
        }
    }
    return g;
}

std::pair<long, long> parse_range(const std::string& s) {
    auto dots = s.find("..");
    try {
        std::size_t used = 0;
        if (dots == std::string::npos) {
            long v = std::stol(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            return {v, v};
        }
        std::string a = s.substr(0, dots), b = s.substr(dots + 2);
        long lo = std::stol(a, &used);
        if (used != a.size()) throw std::invalid_argument(s);
        long hi = std::stol(b, &used);
        if (used != b.size()) throw std::invalid_argument(s);
        if (lo > hi) throw ComputationError("empty range " + s);
        return {lo, hi};
    } catch (const std::logic_error&) {
        throw ParseError("range must be 'a..b' or a single integer: '" + s + "'", 0);
    }
}

int cmd_lattice(const std::string& spec, bool disc, bool want_roots, const std::string& complement, const std::string& iso, const Global& g) {
    auto L = build_lattice(spec);
    auto [pos, neg] = L.signature();
    Json r{{"command", "lattice"}, {"spec", spec}, {"rank", L.rank()}, {"det", L.det().get_str()}, {"signature", Json::array({pos, neg})},
           {"even", true}, {"gram", integer_matrix_json(L.gram())}};
    for (std::size_t i = 0; i < L.rank(); ++i)
        if (L.gram()(i, i) % 2 != 0) r["even"] = false;
    if (disc) {
        DiscriminantForm A(L);
        Json f = Json::array();
        for (const auto& x : A.invariant_factors()) f.push_back(x.get_str());
        Json gens = Json::array();
        for (const auto& x : A.generators()) gens.push_back({{"q", A.q(x).get_str()}});
        Json d{{"order", A.order().get_str()}, {"invariant_factors", f}, {"two_elementary", is_two_elementary(L)}, {"q_on_generators", gens}};
        if (A.order() <= 4096) {
            Json table = Json::array();
            std::map<std::string, long> counts;
            for (const auto& q : A.q_histogram()) ++counts[q.get_str()];
            for (const auto& [q, c] : counts) table.push_back({{"q", q}, {"count", c}});
            d["q_table"] = table;
        }
        r["discriminant_form"] = d;
    }
    if (want_roots) {
        if (!L.is_negative_definite() && !L.is_positive_definite()) throw ComputationError("root enumeration requires a definite lattice");
        auto M = L.is_negative_definite() ? L : L.negate();
        auto rs = roots(M);
        r["roots"] = {{"count", rs.size()}, {"type", root_sublattice_type(M)}};
        if (!L.is_negative_definite()) r["roots"]["note"] = "positive definite input: roots are the vectors of norm 2";
    }
    if (!complement.empty()) {
        auto v = parse_gram("[" + complement + "]");
        IntVector w;
        for (std::size_t j = 0; j < v.cols(); ++j) {
            if (!is_integer(v(0, j))) throw ParseError("complement vector must be integral", 0);
            w.push_back(v(0, j).get_num());
        }
        if (v.rows() != 1 || w.size() != L.rank()) throw ParseError("complement vector must have length equal to the rank", 0);
        auto c = orthogonal_complement(L, w).lattice;
        r["complement"] = {{"vector_norm", L.pair(w, w).get_str()}, {"rank", c.rank()}, {"det", c.det().get_str()}, {"gram", integer_matrix_json(c.gram())}};
        if (!iso.empty()) r["complement"]["isometric_to"] = {{"spec", iso}, {"result", is_isometric_small(c, build_lattice(iso))}};
    } else if (!iso.empty()) {
        r["isometric_to"] = {{"spec", iso}, {"result", is_isometric_small(L, build_lattice(iso))}};
    }
    emit(r, g);
    return Ok;
}

int cmd_qf(const std::string& gram, const std::string& spec, bool c290, long modulus, long samples, const Global& g) {
    if ((gram.empty()) == (spec.empty())) throw ParseError("give exactly one of --gram or --lattice", 0);
    Json r{{"command", "qf"}};
    PosDefForm f;
    if (!spec.empty()) {
        auto L = build_lattice(spec);
        bool flip = L.is_negative_definite();
        f = flip ? PosDefForm::flipped(L.gram()) : PosDefForm::from_integer(L.gram());
        r["lattice"] = spec;
        if (flip) r["note"] = "negative-definite lattice: representability refers to its positive flip";
    } else {
        f = PosDefForm(parse_gram(gram));
    }
    r["gram"] = rational_matrix_json(f.gram());
    r["bound"] = g.bound;
    auto rep = modulus > 1 ? scaled_representability(f, modulus, g.bound) : represented_set(f, g.bound);
    r["modulus"] = modulus;
    r["represented_count"] = rep.represented.size();
    r["exceptions"] = rep.exceptions;
    r["witnesses_verified"] = rep.witnesses_verified;
    if (rep.congruence_certificate) r["congruence_certificate"] = *rep.congruence_certificate;
    Json w = Json::array();
    for (const auto& [n, x] : rep.witnesses) {
        if (static_cast<long>(w.size()) >= samples) break;
        w.push_back({{"value", n}, {"vector", x}});
    }
    r["witness_sample"] = w;
    if (c290) r["universal_by_290"] = check_290(f);
    emit(r, g);
    return Ok;
}

int cmd_mwl(const std::string& model, std::vector<std::string> combos, bool st, const Global& g) {
    auto m = resolve_model(model);
    if (combos.empty()) combos = m.free_sections();
    Json r{{"command", "mwl"}, {"model", m.name}};
    Json hs = Json::array();
    for (const auto& s : m.sections) hs.push_back({{"section", s.name}, {"torsion", s.torsion}, {"height", height(s.name, m).get_str()}, {"narrow", is_narrow(s)}});
    r["heights"] = hs;
    if (!combos.empty()) {
        auto G = mwl_gram(combos, m);
        r["gram"] = {{"basis", G.names}, {"matrix", rational_matrix_json(G.gram)}, {"det", determinant(G.gram).get_str()}};
    }
    int code = Ok;
    if (st) {
        auto c = shioda_tate_det_check(m);
        r["shioda_tate"] = {{"trivial_det", c.triv_det.get_str()}, {"mwl_det", c.mwl_det.get_str()},  {"torsion_order", c.torsion_order},
                            {"quotient", c.lhs.get_str()},       {"ns_det", c.span_det.get_str()},   {"expected", c.expected ? Json(c.expected->get_str()) : Json(nullptr)},
                            {"torsion_heights_zero", c.torsion_heights_zero}, {"ok", c.ok}};
        if (m.all_I2()) r["incidence_f2_rank"] = incidence_matrix_f2(m).rank;
        if (!c.ok) code = VerificationFailure;
    }
    emit(r, g);
    return code;
}

int cmd_polarize(const std::string& model, const std::string& construction, long N, long d, const std::string& perturbation, std::optional<long> qo,
                 const std::string& section, const Global& g) {
    auto m = resolve_model(model);
    bool even = construction == "even";
    if (!even && construction != "odd") throw ParseError("construction must be 'even' or 'odd'", 0);
    if (even) m = with_full_two_torsion(m);
    std::string qp = perturbation;
    if (!qp.empty() && !m.has_section(qp)) {
        if (!qo) throw ComputationError("section " + qp + " is not in the model; give --qo to adjoin it as a narrow section");
        m = with_narrow_section(m, qp, *qo);
    }
    DivisorSpace X(m);
    DivisorClass H = even ? build_H_even_d(N, d, X) : build_H_odd_d(N, d, X, section);
    PolarizationParams p{even ? Construction::EvenBase : Construction::OddBase, N, d, std::nullopt, ""};
    if (!qp.empty()) {
        H = perturb(H, qp, X);
        p.construction = even ? Construction::EvenPerturbed : Construction::OddPerturbed;
        p.qo = qp == "O" ? 0 : m.section(qp).po;
        p.perturbation = qp;
    }
    auto rep = very_ample_check(H, X, p);
    Json r{{"command", "polarize"}, {"model", m.name}};
    r["checklist"] = to_json(rep);
    r["degree_d_curves"] = count_degree_d_curves(H, X, d);
    emit(r, g);
    return rep.verdict ? Ok : VerificationFailure;
}

int cmd_weierstrass(const std::string& curve, const std::string& recipe, const std::string& model_out, const Global& g) {
    if (curve.empty() == recipe.empty()) throw ParseError("give exactly one of a curve file or --recipe", 0);
    Json r{{"command", "weierstrass"}};
    int code = Ok;
    auto check = [&](const CurveReport& c) {
        for (const auto& s : c.sections)
            if (!s.on_curve) code = VerificationFailure;
    };
    if (!curve.empty()) {
        auto rep = analyze_curve(load_curve(curve));
        check(rep);
        r["report"] = to_json(rep);
    } else {
        auto res = export_fixture(load_recipe(recipe));
        for (const auto& c : res.reports) check(c);
        r["model"] = to_json(res.model);
        if (!model_out.empty()) save_model(res.model, model_out);
    }
    emit(r, g);
    return code;
}

int cmd_theorem(long d, const std::string& hr, const std::string& routes, const Global& g) {
    auto [lo, hi] = parse_range(hr);
    if (routes != "moduli" && routes != "explicit") throw ParseError("routes must be 'moduli' or 'explicit'", 0);
    RouteSet rs = routes == "moduli" ? RouteSet::Moduli : RouteSet::Explicit;
    std::size_t n = static_cast<std::size_t>(hi - lo + 1);
    auto results = parallel_map<CoverageResult>(n, jobs_of(g), [&](std::size_t i) { return coverage_witness(d, lo + static_cast<long>(i), rs); });
    Json rows = Json::array();
    long witnessed = 0, refused = 0, missing = 0;
    for (const auto& res : results) {
        rows.push_back(to_json(res));
        if (res.found()) {
            ++witnessed;
            continue;
        }
        ++refused;
        long h = res.refusal->h;
        // in scope of the theorem but without a witness
        if (rs == RouteSet::Moduli && d >= 2 && h >= theorem_h_bound(d) && (d % 2 == 0 || h % 2 == 0)) ++missing;
    }
    Json r{{"command", "theorem"}, {"d", d}, {"h_range", Json::array({lo, hi})}, {"routes", routes_name(rs)},
           {"note", "h is the half-degree: witnesses have H^2 = 2h"}};
    r["summary"] = {{"witnessed", witnessed}, {"refused", refused}, {"in_scope_without_witness", missing}};
    if (g.format == "markdown") {
        Json table = Json::array();
        for (const auto& x : rows)
            table.push_back({{"h", x["h"]}, {"status", x["status"]}, {"route", x.value("route", std::string())}, {"N", x.contains("N") ? x["N"] : Json("")},
                             {"D^2", x.contains("D^2") ? x["D^2"] : Json("")}, {"Q.O", x.contains("Q.O") ? x["Q.O"] : Json("")},
                             {"H", x.value("H", std::string())}, {"reason", x.value("reason", std::string())}});
        r["results"] = table;
    } else {
        r["results"] = rows;
    }
    emit(r, g);
    return missing ? VerificationFailure : Ok;
}

int cmd_verify_all(const std::vector<std::string>& only, const Global& g) {
    AcceptanceOptions opt;
    opt.jobs = jobs_of(g);
    if (g.bound != 2000) opt.representability_bound = g.bound;
    Json rows = Json::array();
    long failed = 0;
    for (int id : select_criteria(only)) {
        auto res = run_criterion(id, opt);
        rows.push_back(to_json(res));
        failed += !res.pass;
        std::cerr << (res.pass ? "[PASS] " : "[FAIL] ") << res.id << " " << res.key << "\n";
    }
    Json r{{"command", "verify-all"}, {"data_dir", data_dir()}, {"representability_bound", opt.representability_bound}, {"passed", static_cast<long>(rows.size()) - failed},
           {"failed", failed}, {"criteria", rows}};
    emit(r, g);
    return failed ? VerificationFailure : Ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact verification of polarized elliptic K3 constructions"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "TOML/INI configuration file; command-line flags override it");
    Global g;
    app.add_option("--format", g.format, "report format")->check(CLI::IsMember({"json", "markdown"}))->capture_default_str();
    app.add_option("--bound", g.bound, "representability bound B (verify-all defaults to 10000)")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--jobs", g.jobs, "worker threads (0 = all cores)")->capture_default_str();
    app.add_option("--out", g.out, "write the report to this file instead of stdout");
    app.add_option("--data", g.data, "data directory (fixtures, curves, recipes)");

    std::function<int()> run;

    auto* lat = app.add_subcommand("lattice", "build a lattice from a spec such as \"U(2)^2 + A_1^4\"");
    std::string spec, complement, iso;
    bool disc = false, want_roots = false;
    lat->add_option("spec", spec, "lattice spec")->required();
    lat->add_flag("--disc-form", disc, "discriminant form");
    lat->add_flag("--roots", want_roots, "root system of a definite lattice");
    lat->add_option("--complement", complement, "orthogonal complement of a vector, e.g. 0,0,0,0,1,1,1,1");
    lat->add_option("--isometric", iso, "decide isometry with another spec (applies to the complement if given)");
    lat->callback([&] { run = [&] { return cmd_lattice(spec, disc, want_roots, complement, iso, g); }; });

    auto* qf = app.add_subcommand("qf", "integers represented by a positive-definite form");
    std::string gram, qspec;
    bool c290 = false;
    long modulus = 1, samples = 10;
    qf->add_option("--gram", gram, "Gram matrix as JSON (entries integers or \"p/q\") or a JSON file");
    qf->add_option("--lattice", qspec, "lattice spec; negative-definite lattices are flipped");
    qf->add_flag("--check-290", c290, "290-theorem universality test");
    qf->add_option("--modulus", modulus, "restrict to multiples of this modulus")->check(CLI::PositiveNumber);
    qf->add_option("--samples", samples, "number of witness vectors reported")->check(CLI::NonNegativeNumber);
    qf->callback([&] { run = [&] { return cmd_qf(gram, qspec, c290, modulus, samples, g); }; });

    auto* mwl = app.add_subcommand("mwl", "heights, height Gram and Shioda-Tate check of a model");
    std::string model;
    std::vector<std::string> combos;
    bool st = true;
    mwl->add_option("model", model, "fixture name (e.g. model_family) or model file")->required();
    mwl->add_option("--sections", combos, "section combinations spanning the Gram, e.g. \"2Q\" \"P + Q + Qp\"");
    mwl->add_flag("--shioda-tate,!--no-shioda-tate", st, "run the determinant check");
    mwl->callback([&] { run = [&] { return cmd_mwl(model, combos, st, g); }; });

    auto* pol = app.add_subcommand("polarize", "very-ampleness checklist of a constructed class");
    std::string pmodel, construction, perturbation, qsection = "Q_all";
    long N = 0, d = 0;
    std::optional<long> qo;
    pol->add_option("model", pmodel, "fixture name or model file")->required();
    pol->add_option("--construction", construction, "even: NF + d/2 (O + P1 + P2 + P3); odd: NF + d (O + Q)")->required()->check(CLI::IsMember({"even", "odd"}));
    pol->add_option("--N", N, "fibre coefficient")->required();
    pol->add_option("--d", d, "degree of the fibre components")->required();
    pol->add_option("--perturb", perturbation, "narrow section added as its Shioda projection");
    pol->add_option("--qo", qo, "(Q'.O) when the perturbing section is adjoined");
    pol->add_option("--section", qsection, "height-2 section of the odd construction")->capture_default_str();
    pol->callback([&] { run = [&] { return cmd_polarize(pmodel, construction, N, d, perturbation, qo, qsection, g); }; });

    auto* wei = app.add_subcommand("weierstrass", "verify sections on a Weierstrass equation or export a fixture");
    std::string curve, recipe, model_out;
    wei->add_option("curve", curve, "curve file");
    wei->add_option("--recipe", recipe, "fixture recipe to export");
    wei->add_option("--model-out", model_out, "write the exported model here");
    wei->callback([&] { run = [&] { return cmd_weierstrass(curve, recipe, model_out, g); }; });

    auto* thm = app.add_subcommand("theorem", "coverage witnesses for degree 2h and degree-d curves");
    thm->set_help_flag("--help", "Print this help message and exit");
    long td = 0;
    std::string hr, routes = "moduli";
    thm->add_option("--d", td, "curve degree d")->required();
    thm->add_option("--h", hr, "half-degree h or a range a..b")->required();
    thm->add_option("--routes", routes, "moduli or explicit")->capture_default_str();
    thm->callback([&] { run = [&] { return cmd_theorem(td, hr, routes, g); }; });

    auto* va = app.add_subcommand("verify-all", "run every acceptance check");
    std::vector<std::string> only;
    va->add_option("--only", only, "criterion ids, keys or groups (lattices, ellk3, quadforms, polarize, weierstrass, mutation)");
    va->callback([&] { run = [&] { return cmd_verify_all(only, g); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::FileError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return MissingFailure;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return ParseFailure;
    }
    if (!g.data.empty()) setenv("K3COV_DATA", g.data.c_str(), 1);
    try {
        return run();
    } catch (const k3cov::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return ParseFailure;
    } catch (const MissingInput& e) {
        std::cerr << "missing input: " << e.what() << "\n";
        return MissingFailure;
    } catch (const std::exception& e) {
        std::cerr << "computation error: " << e.what() << "\n";
        return ComputationFailure;
    }
}
