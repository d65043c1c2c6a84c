// axial — construct algebras, certify half-axes, check identity catalogs,
// run symbolic derivations, and emit text or machine-readable reports.
//
// Exit codes: 0 all checks pass, 1 a residual/witness was found, 2 usage or
// input error.

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <sstream>

#include "axial/axial.hpp"

using json = nlohmann::ordered_json;
using namespace axial;

namespace {

struct GlobalOpts {
    unsigned long long budget = kDefaultBudget;
    std::string format = "text";
    bool machine() const { return format == "machine"; }
};

std::vector<Rat> parse_coords(const std::string& text) {
    std::vector<Rat> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        auto strip = [](std::string s) {
            std::size_t b = s.find_first_not_of(" \t");
            std::size_t e = s.find_last_not_of(" \t");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        out.push_back(parse_rat_token(strip(tok)));
    }
    if (out.empty()) throw Error("empty coordinate list");
    return out;
}

FieldSpec parse_field(const std::string& text) {
    if (text == "Q") return FieldSpec::Q();
    if (text.size() > 1 && text[0] == 'F') return FieldSpec::Fp(std::stol(text.substr(1)));
    throw Error("bad field '" + text + "' (use Q or F<p>)");
}

json element_json(const Element& x) {
    json coords = json::array();
    for (std::size_t i = 0; i < x.coords.size(); ++i) coords.push_back(x.coords[i].str());
    return json{{"coords", coords}, {"display", x.str()}};
}

json witness_json(const std::vector<std::pair<std::string, Element>>& w) {
    json out = json::array();
    for (const auto& [label, elem] : w) out.push_back(json{{"var", label}, {"value", element_json(elem)}});
    return out;
}

json outcome_json(const TemplateOutcome& r) {
    json j{{"status", r.pass ? "pass" : "residual"}};
    if (!r.pass) {
        j["witness"] = witness_json(r.witness);
        if (r.residual) j["residual"] = element_json(*r.residual);
    }
    return j;
}

json check_json(const CheckOutcome& r) {
    json j{{"status", r.pass ? "pass" : "witness"}};
    if (!r.pass) {
        json w = json::array();
        for (const auto& [var, elem] : r.witness)
            w.push_back(json{{"var", var.name}, {"value", element_json(elem)}});
        j["witness"] = w;
        if (r.residual) j["residual"] = element_json(*r.residual);
    }
    return j;
}

void print_witness(const std::vector<std::pair<std::string, Element>>& w) {
    for (const auto& [label, elem] : w) std::cout << "    " << label << " = " << elem.str() << "\n";
}

int run_construct(const std::string& kind, const GlobalOpts&, int n, const std::string& q,
                  const std::string& points, const std::string& lines, const std::string& eta,
                  const std::string& pi, const std::string& field, const std::string& out) {
    FieldSpec f = parse_field(field);
    std::optional<AlgebraDef> a;
    if (kind == "symjordan") {
        a = sym_jordan(n, f);
    } else if (kind == "spin") {
        a = spin_factor(parse_coords(q), f);
    } else if (kind == "matsuo") {
        std::vector<std::string> pts;
        std::stringstream ps(points);
        std::string tok;
        while (std::getline(ps, tok, ',')) {
            if (!tok.empty()) pts.push_back(tok);
        }
        std::vector<std::vector<std::string>> lns;
        std::stringstream ls(lines);
        std::string line;
        while (std::getline(ls, line, ';')) {
            std::vector<std::string> pl;
            std::stringstream ws(line);
            while (ws >> tok) pl.push_back(tok);
            if (!pl.empty()) lns.push_back(pl);
        }
        a = matsuo(pts, lns, parse_rat_token(eta), f);
    } else if (kind == "twoaxis") {
        a = two_axis_family(parse_rat_token(pi), f);
    } else {
        throw Error("unknown construction '" + kind + "'");
    }
    save_algebra(out, *a);
    std::cout << "wrote " << out << " (dim " << a->dim() << ", field " << a->field().str() << ")\n";
    return 0;
}

int run_peirce(const GlobalOpts& g, const std::string& file, const std::string& coords) {
    AlgebraDef a = load_algebra(file);
    Element e = a.element(parse_coords(coords));
    try {
        PeirceDecomposition d = decompose(a, e);
        if (g.machine()) {
            auto emit = [&](const std::vector<Element>& bs) {
                json arr = json::array();
                for (const auto& b : bs) arr.push_back(element_json(b));
                return arr;
            };
            json j{{"command", "peirce"},
                   {"status", "complete"},
                   {"dims", {d.dim_one(), d.dim_half(), d.dim_zero()}},
                   {"basis_1", emit(d.basis_one)},
                   {"basis_half", emit(d.basis_half)},
                   {"basis_0", emit(d.basis_zero)}};
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "decomposition complete: dims " << d.dim_one() << "/" << d.dim_half() << "/"
                      << d.dim_zero() << " (eigenvalues 1, 1/2, 0)\n";
            for (const auto& b : d.basis_one) std::cout << "  A_1:   " << b.str() << "\n";
            for (const auto& b : d.basis_half) std::cout << "  A_1/2: " << b.str() << "\n";
            for (const auto& b : d.basis_zero) std::cout << "  A_0:   " << b.str() << "\n";
        }
        return 0;
    } catch (const DecompositionIncomplete& ex) {
        if (g.machine()) {
            json j{{"command", "peirce"},
                   {"status", "incomplete"},
                   {"residual_dim", ex.residual_dim},
                   {"eigenvalues_found", ex.eigenvalues_found},
                   {"detail", ex.what()}};
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "DecompositionIncomplete: " << ex.what() << "\n";
        }
        return 1;
    }
}

int run_halfaxis(const GlobalOpts& g, const std::string& file, const std::string& coords) {
    AlgebraDef a = load_algebra(file);
    Element e = a.element(parse_coords(coords));
    HalfAxisReport rep = half_axis_check(a, e);
    if (g.machine()) {
        json j{{"command", "halfaxis"},
               {"is_half_axis", rep.is_half_axis()},
               {"flags",
                {{"is_idempotent", rep.is_idempotent},
                 {"one_dim_eigenspace_1", rep.one_dim_eigenspace_1},
                 {"decomposition_complete", rep.decomposition_complete},
                 {"fusion_ZZ", rep.fusion_ZZ},
                 {"fusion_UU", rep.fusion_UU},
                 {"fusion_UZ", rep.fusion_UZ}}},
               {"failures", rep.failures}};
        if (rep.decomposition)
            j["dims"] = {rep.decomposition->dim_one(), rep.decomposition->dim_half(),
                         rep.decomposition->dim_zero()};
        std::cout << j.dump(2) << "\n";
    } else {
        if (rep.is_half_axis()) {
            std::cout << "half-axis: yes, dims " << rep.decomposition->dim_one() << "/"
                      << rep.decomposition->dim_half() << "/" << rep.decomposition->dim_zero() << "\n";
        } else {
            std::cout << "half-axis: no\n";
            for (const auto& f : rep.failures) std::cout << "  " << f << "\n";
        }
    }
    return rep.is_half_axis() ? 0 : 1;
}

int run_identity(const GlobalOpts& g, const std::string& file, const std::string& coords,
                 const std::string& id, bool all) {
    AlgebraDef a = load_algebra(file);
    Element e = a.element(parse_coords(coords));
    PeirceDecomposition d = certify_half_axis(a, e);  // NotHalfAxis -> exit 2
    std::vector<std::string> ids;
    if (!all) {
        if (id.empty()) throw Error("need --id NAME or --all");
        ids.push_back(id);
    }
    std::vector<EntryResult> results = check_catalog(a, d, ids, g.budget);
    bool any_residual = false;
    json entries = json::array();
    for (const auto& er : results) {
        if (!er.outcome.pass) any_residual = true;
        if (g.machine()) {
            json j{{"id", er.id}, {"anchor", er.anchor}};
            j.update(outcome_json(er.outcome));
            entries.push_back(j);
        } else {
            std::cout << (er.outcome.pass ? "[pass]     " : "[residual] ") << er.id << "   " << er.anchor
                      << "\n";
            if (!er.outcome.pass) {
                print_witness(er.outcome.witness);
                if (er.outcome.residual)
                    std::cout << "    residual = " << er.outcome.residual->str() << "\n";
            }
        }
    }
    if (g.machine()) {
        json j{{"command", "identity"}, {"status", any_residual ? "residual" : "pass"}, {"entries", entries}};
        std::cout << j.dump(2) << "\n";
    }
    return any_residual ? 1 : 0;
}

int run_strict(const GlobalOpts& g, const std::string& file, const std::string& poly) {
    AlgebraDef a = load_algebra(file);
    FreePoly f = parse_poly(poly);
    CheckOutcome r = holds_strictly(a, f, g.budget);
    if (g.machine()) {
        json j{{"command", "strict"}, {"poly", f.str()}};
        j.update(check_json(r));
        std::cout << j.dump(2) << "\n";
    } else if (r.pass) {
        std::cout << "holds strictly: yes\n";
    } else {
        std::cout << "holds strictly: no\n";
        for (const auto& [var, elem] : r.witness)
            std::cout << "    " << var.name << " = " << elem.str() << "\n";
        if (r.residual) std::cout << "    residual = " << r.residual->str() << "\n";
    }
    return r.pass ? 0 : 1;
}

int run_jordan(const GlobalOpts& g, const std::string& file) {
    AlgebraDef a = load_algebra(file);
    CheckOutcome r = is_jordan(a, g.budget);
    if (g.machine()) {
        json j{{"command", "jordan"}};
        j.update(check_json(r));
        std::cout << j.dump(2) << "\n";
    } else if (r.pass) {
        std::cout << "Jordan: yes\n";
    } else {
        std::cout << "Jordan: no\n";
        for (const auto& [var, elem] : r.witness)
            std::cout << "    " << var.name << " = " << elem.str() << "\n";
    }
    return r.pass ? 0 : 1;
}

int run_derive(const GlobalOpts& g, const std::string& seed, const std::string& at,
               const std::string& dir, const std::string& degree) {
    FreePoly f = parse_poly(seed);
    MultiDegree d;
    std::stringstream ss(degree);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto colon = item.find(':');
        if (colon == std::string::npos) throw Error("bad degree item '" + item + "' (use var:deg)");
        auto strip = [](std::string s) {
            std::size_t b = s.find_first_not_of(" \t");
            std::size_t e = s.find_last_not_of(" \t");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        d[VarId{strip(item.substr(0, colon))}] = std::stoi(strip(item.substr(colon + 1)));
    }
    FreePoly lin = linearize_partial(f, VarId{at}, VarId{dir}, d);
    if (g.machine()) {
        json j{{"command", "derive"}, {"seed", f.str()}, {"component", lin.str()}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << lin.str() << "\n";
    }
    return 0;
}

int run_coeffs(const GlobalOpts& g, const std::string& expr, const std::string& indets_arg) {
    std::map<std::string, Sort> sorts;
    TypedExprPtr e = parse_typed_with_decls(expr, &sorts);
    std::vector<std::string> indets;
    if (indets_arg.empty()) {
        for (const auto& [name, sort] : sorts)
            if (sort == Sort::scalar) indets.push_back(name);
    } else {
        std::stringstream ss(indets_arg);
        std::string tok;
        while (std::getline(ss, tok, ',')) indets.push_back(tok);
    }
    auto ids = extract_coefficient_identities(e, indets);
    json arr = json::array();
    for (const auto& ci : ids) {
        std::string slot;
        for (const auto& [name, k] : ci.indet_monomial) {
            slot += (slot.empty() ? "" : " ") + name;
            if (k > 1) slot += "^" + std::to_string(k);
        }
        if (slot.empty()) slot = "1";
        if (g.machine()) {
            arr.push_back(json{{"slot", slot}, {"identity", ci.expr.str() + " = 0"}});
        } else {
            std::cout << "[" << slot << "]  " << ci.expr.str() << " = 0\n";
        }
    }
    if (g.machine()) {
        json j{{"command", "coeffs"}, {"count", ids.size()}, {"identities", arr}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << ids.size() << " identities\n";
    }
    return 0;
}

int run_main_theorem(const GlobalOpts& g, const std::string& file, const std::string& axes_arg) {
    AlgebraDef a = load_algebra(file);
    std::vector<Element> axes;
    std::stringstream ss(axes_arg);
    std::string item;
    while (std::getline(ss, item, ';'))
        if (!item.empty()) axes.push_back(a.element(parse_coords(item)));
    if (axes.empty()) throw Error("need at least one axis");
    MainTheoremReport rep = main_theorem_report(a, axes, g.budget);

    if (g.machine()) {
        json jaxes = json::array();
        for (const auto& v : rep.axes) {
            json j{{"axis", element_json(v.axis)},
                   {"id_a", outcome_json(v.id_a)},
                   {"id_b", outcome_json(v.id_b)},
                   {"iv_pass", v.iv_pass},
                   {"condition_star", v.star_pass}};
            if (!v.star_entries.empty()) {
                json se = json::array();
                for (const auto& er : v.star_entries) {
                    json jj{{"id", er.id}};
                    jj.update(outcome_json(er.outcome));
                    se.push_back(jj);
                }
                j["star_entries"] = se;
            }
            if (v.z_subalgebra_jordan) j["z_subalgebra_jordan"] = *v.z_subalgebra_jordan;
            jaxes.push_back(j);
        }
        json j{{"command", "main-theorem"},
               {"axial_span", rep.axial_span},
               {"iii", rep.iii_pass ? "pass" : "fail"},
               {"iv", rep.iv_pass ? "pass" : "fail"},
               {"jordan", rep.jordan_pass ? "pass" : "fail"},
               {"consistent", rep.consistent()},
               {"inconsistencies", rep.inconsistencies},
               {"axes", jaxes}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "spanned by the listed axes: " << (rep.axial_span ? "yes" : "no") << "\n";
        std::cout << "(iii) strict seed identities: " << (rep.iii_pass ? "pass" : "fail") << "\n";
        std::cout << "(iv)  eigenvector identities: " << (rep.iv_pass ? "pass" : "fail") << "\n";
        std::cout << "      Jordan identity:        " << (rep.jordan_pass ? "pass" : "fail") << "\n";
        for (const auto& v : rep.axes) {
            std::cout << "axis " << v.axis.str() << ": (iv)(a) " << (v.id_a.pass ? "pass" : "fail")
                      << ", (iv)(b) " << (v.id_b.pass ? "pass" : "fail") << ", (*) "
                      << (v.star_pass ? "holds" : "fails") << "\n";
            if (!v.id_a.pass) print_witness(v.id_a.witness);
            if (!v.id_b.pass) print_witness(v.id_b.witness);
            if (v.z_subalgebra_jordan)
                std::cout << "    Jordan(A_0(e)) = " << (*v.z_subalgebra_jordan ? "yes" : "no") << "\n";
        }
        if (!rep.jordan_pass && !rep.jordan.witness.empty()) {
            std::cout << "Jordan witness:\n";
            for (const auto& [var, elem] : rep.jordan.witness)
                std::cout << "    " << var.name << " = " << elem.str() << "\n";
        }
        if (rep.consistent()) {
            std::cout << "verdicts consistent\n";
        } else {
            std::cout << "INCONSISTENT:\n";
            for (const auto& s : rep.inconsistencies) std::cout << "  " << s << "\n";
        }
    }
    return rep.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"axial: exact verification of half-axis identities in commutative non-associative algebras"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--budget", g.budget, "evaluation budget for exhaustive enumeration");
    app.add_option("--format", g.format, "output format: text or machine")
        ->check(CLI::IsMember({"text", "machine"}));

    auto* construct = app.add_subcommand("construct", "build an algebra and write it to a file");
    std::string kind, out_file, q = "1,1", points, lines, eta = "1/2", pi = "-1/4", field = "Q";
    int n = 2;
    construct->add_option("kind", kind, "symjordan | spin | matsuo | twoaxis")->required();
    construct->add_option("--n", n, "matrix size for symjordan");
    construct->add_option("--q", q, "diagonal of the form for spin, e.g. 1,1");
    construct->add_option("--points", points, "comma-separated point names for matsuo");
    construct->add_option("--lines", lines, "semicolon-separated lines 'a b c; ...' for matsuo");
    construct->add_option("--eta", eta, "Matsuo parameter");
    construct->add_option("--pi", pi, "parameter of the two-axis family");
    construct->add_option("--field", field, "Q or F<p>");
    construct->add_option("-o,--output", out_file, "output file")->required();

    auto* peirce = app.add_subcommand("peirce", "eigenspace decomposition for an idempotent");
    std::string p_file, p_elem;
    peirce->add_option("--algebra", p_file)->required();
    peirce->add_option("--element", p_elem, "comma-separated exact coordinates")->required();

    auto* halfaxis = app.add_subcommand("halfaxis", "run the half-axis certification");
    std::string h_file, h_elem;
    halfaxis->add_option("--algebra", h_file)->required();
    halfaxis->add_option("--element", h_elem)->required();

    auto* identity = app.add_subcommand("identity", "check catalog identities on a certified axis");
    std::string i_file, i_axis, i_id;
    bool i_all = false;
    identity->add_option("--algebra", i_file)->required();
    identity->add_option("--axis", i_axis)->required();
    identity->add_option("--id", i_id, "catalog id, e.g. TH-ID-1");
    identity->add_flag("--all", i_all, "check the whole catalog");

    auto* strict = app.add_subcommand("strict", "decide strict validity of a homogeneous identity");
    std::string s_file, s_poly;
    strict->add_option("--algebra", s_file)->required();
    strict->add_option("--poly", s_poly, "e.g. \"x^2 x^2 - x x^3\" or \"a = b\"")->required();

    auto* jordan = app.add_subcommand("jordan", "decide whether the algebra is Jordan");
    std::string j_file;
    jordan->add_option("--algebra", j_file)->required();

    auto* derive = app.add_subcommand("derive", "linearize an identity and print one component");
    std::string d_seed, d_at, d_dir, d_degree;
    derive->add_option("--seed", d_seed)->required();
    derive->add_option("--at", d_at, "variable to split")->required();
    derive->add_option("--dir", d_dir, "fresh direction variable")->required();
    derive->add_option("--degree", d_degree, "multidegree, e.g. x:3,y:1")->required();

    auto* coeffs = app.add_subcommand("coeffs", "extract coefficient identities of a typed expression");
    std::string c_expr, c_indets;
    coeffs->add_option("--expr", c_expr, "\"u:U, z:Z, r:scalar, ...; <expr>\"")->required();
    coeffs->add_option("--indets", c_indets, "comma-separated indeterminates (default: all scalars)");

    auto* mt = app.add_subcommand("main-theorem", "cross-check the three equivalent conditions");
    std::string m_file, m_axes;
    mt->add_option("--algebra", m_file)->required();
    mt->add_option("--axes", m_axes, "semicolon-separated coordinate lists")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*construct)
            return run_construct(kind, g, n, q, points, lines, eta, pi, field, out_file);
        if (*peirce) return run_peirce(g, p_file, p_elem);
        if (*halfaxis) return run_halfaxis(g, h_file, h_elem);
        if (*identity) return run_identity(g, i_file, i_axis, i_id, i_all);
        if (*strict) return run_strict(g, s_file, s_poly);
        if (*jordan) return run_jordan(g, j_file);
        if (*derive) return run_derive(g, d_seed, d_at, d_dir, d_degree);
        if (*coeffs) return run_coeffs(g, c_expr, c_indets);
        if (*mt) return run_main_theorem(g, m_file, m_axes);
    } catch (const Error& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    return 2;
}
