// Acceptance suite: one line per criterion, exact (zero-residual) checks.
// Exit code = number of failing criteria.

#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "axial/axial.hpp"

using namespace axial;

namespace {

int failures = 0;

void criterion(int number, const std::string& title, const std::function<bool()>& body) {
    bool ok = false;
    std::string note;
    try {
        ok = body();
    } catch (const std::exception& ex) {
        note = std::string(" (exception: ") + ex.what() + ")";
    }
    std::printf("[%s] %2d. %s%s\n", ok ? "PASS" : "FAIL", number, title.c_str(), note.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

bool expect(bool cond, const char* what) {
    if (!cond) std::printf("       failed: %s\n", what);
    return cond;
}

}  // namespace

int main() {
    // 1. Peirce certification
    criterion(1, "Peirce certification on sym_jordan(2..4) and the 3C(1/4) diagnostic", [] {
        bool ok = true;
        for (int n : {2, 3, 4}) {
            AlgebraDef a = sym_jordan(n);
            HalfAxisReport rep = half_axis_check(a, a.basis(0));
            ok &= expect(rep.is_half_axis(), "E11 certifies as a half-axis");
            ok &= expect(rep.decomposition->dim_one() == 1, "dim A_1 = 1");
            ok &= expect(rep.decomposition->dim_half() == static_cast<std::size_t>(n - 1),
                         "dim A_1/2 = n-1");
            ok &= expect(rep.decomposition->dim_zero() == static_cast<std::size_t>(n * (n - 1) / 2),
                         "dim A_0 = n(n-1)/2");
        }
        AlgebraDef m = matsuo_3c(Rat(1, 4));
        HalfAxisReport rep = half_axis_check(m, m.basis(0));
        ok &= expect(!rep.is_half_axis() && !rep.decomposition_complete,
                     "3C(1/4) axis fails with an incomplete decomposition");
        bool quarter = false;
        for (const auto& s : rep.eigenvalues_found) quarter |= s == "1/4";
        ok &= expect(quarter, "eigenvalue 1/4 is named in the diagnostic");
        bool threw = false;
        try {
            decompose(m, m.basis(0));
        } catch (const DecompositionIncomplete&) {
            threw = true;
        }
        ok &= expect(threw, "decompose raises DecompositionIncomplete");
        return ok;
    });

    // 2. Linearization fidelity
    criterion(2, "linearization reproduces the three displayed components exactly", [] {
        bool ok = true;
        FreePoly seed = parse_poly("x^2 x^2 - x x^3");
        FreePoly lin1 = linearize_partial(seed, VarId{"x"}, VarId{"y"},
                                          {{VarId{"x"}, 3}, {VarId{"y"}, 1}});
        ok &= expect(lin1 == parse_poly("4 x^2 (x y) - x^3 y - x (x^2 y) - 2 x (x (x y))"),
                     "degree (3,1) component is the four-term identity");
        FreePoly lin2 = linearize_partial(lin1, VarId{"x"}, VarId{"w"},
                                          {{VarId{"x"}, 2}, {VarId{"y"}, 1}, {VarId{"w"}, 1}});
        ok &= expect(lin2 == parse_poly("8 (x y) (x w) + 4 x^2 (y w)"
                                        " - (x^2 y) w - (x^2 w) y - 2 (x (x y)) w - 2 (x (x w)) y"
                                        " - 2 x ((x y) w) - 2 x ((x w) y) - 2 x (x (y w))"),
                     "degree (2,1,1) step is the eight-term identity");
        FreePoly assoc = linearize_partial(parse_poly("[x, x^2, x^2]"), VarId{"x"}, VarId{"y"},
                                           {{VarId{"x"}, 4}, {VarId{"y"}, 1}});
        ok &= expect(assoc == parse_poly("[y, x^2, x^2] + 2 [x, x y, x^2] + 2 [x, x^2, x y]"),
                     "associator seed gives the three-associator component");
        return ok;
    });

    // 3. section-7 coefficient extraction
    criterion(3, "coefficient extraction yields exactly the eleven catalog identities", [] {
        bool ok = true;
        std::map<std::string, Sort> sorts = {{"u", Sort::u},      {"z", Sort::z},
                                             {"z2", Sort::z},     {"v", Sort::u},
                                             {"r", Sort::scalar}, {"s", Sort::scalar},
                                             {"t", Sort::scalar}};
        const std::string x = "(r e + s u + t z)";
        std::vector<CoefficientIdentity> extracted;
        for (const std::string fourth : {"e", "z2", "v"}) {
            TypedExprPtr seed = parse_typed(
                x + " ((" + x + "^2) " + fourth + ") - (" + x + "^2) (" + x + " " + fourth + ")", sorts);
            auto ids = extract_coefficient_identities(seed, {"r", "s", "t"});
            extracted.insert(extracted.end(), ids.begin(), ids.end());
        }
        std::vector<std::pair<GradedExpr, std::map<std::string, Sort>>> eleven;
        for (int i = 1; i <= 11; ++i) {
            const IdentityTemplate* t = catalog_lookup("T7.1." + std::to_string(i));
            eleven.emplace_back(expand_and_project(t->difference()), t->vars);
        }
        for (std::size_t i = 0; i < eleven.size(); ++i) {
            bool found = false;
            for (const auto& ci : extracted) {
                auto vars = graded_variables(ci.expr);
                found |= identities_match(ci.expr, vars, eleven[i].first, eleven[i].second);
            }
            ok &= expect(found, ("item " + std::to_string(i + 1) + " of the eleven is produced").c_str());
        }
        for (const auto& ci : extracted) {
            auto vars = graded_variables(ci.expr);
            bool matched = false;
            for (const auto& [gexpr, gvars] : eleven)
                matched |= identities_match(ci.expr, vars, gexpr, gvars) ||
                           is_identification_instance(ci.expr, vars, gexpr, gvars);
            ok &= expect(matched, "every extracted identity is one of the eleven or an instance");
        }
        // item (7) singled out
        const IdentityTemplate* t7 = catalog_lookup("T7.1.7");
        bool has7 = false;
        GradedExpr g7 = expand_and_project(t7->difference());
        for (const auto& ci : extracted) {
            auto vars = graded_variables(ci.expr);
            has7 |= identities_match(ci.expr, vars, g7, t7->vars);
        }
        ok &= expect(has7, "item (7) 2((uz)v)e + (uv)z = u(vz) + v(uz) is among them");
        return ok;
    });

    // 4. strictness of the two seeds
    criterion(4, "both seed identities hold strictly on the zoo and fail on the fixture", [] {
        bool ok = true;
        FreePoly s4 = seed_identity_deg4(), s5 = seed_identity_deg5();
        std::vector<std::pair<std::string, AlgebraDef>> zoo;
        zoo.emplace_back("sym_jordan(2)", sym_jordan(2));
        zoo.emplace_back("sym_jordan(3)", sym_jordan(3));
        zoo.emplace_back("spin_factor(1,1)", spin_factor({Rat(1), Rat(1)}));
        zoo.emplace_back("matsuo 3C(1/2)", matsuo_3c(Rat(1, 2)));
        zoo.emplace_back("two_axis_family(0)", two_axis_family(Rat(0)));
        zoo.emplace_back("two_axis_family(-1/4)", two_axis_family(Rat(-1, 4)));
        zoo.emplace_back("two_axis_family(1)", two_axis_family(Rat(1)));
        for (const auto& [name, a] : zoo) {
            ok &= expect(holds_strictly(a, s4).pass, (name + ": degree-4 seed").c_str());
            ok &= expect(holds_strictly(a, s5).pass, (name + ": degree-5 seed").c_str());
        }
        AlgebraDef ap = perturbed_sym_jordan2();
        CheckOutcome r4 = holds_strictly(ap, s4);
        ok &= expect(!r4.pass && !r4.witness.empty(), "fixture fails the degree-4 seed with a witness");
        if (!r4.pass) {
            ok &= expect(r4.residual.has_value() && !r4.residual->is_zero(),
                         "witness carries a nonzero residual");
        }
        CheckOutcome r5 = holds_strictly(ap, s5);
        ok &= expect(!r5.pass, "fixture fails the degree-5 seed");
        return ok;
    });

    // 5. catalog suite on sym_jordan(3)
    criterion(5, "all 56 catalog entries have zero residual on sym_jordan(3), axis E11", [] {
        AlgebraDef a = sym_jordan(3);
        PeirceDecomposition d = certify_half_axis(a, a.basis(0));
        bool ok = expect(builtin_catalog().size() >= 45, "catalog has at least 45 entries");
        for (const auto& er : check_catalog(a, d)) {
            if (!er.outcome.pass) std::printf("       residual in %s\n", er.id.c_str());
            ok &= er.outcome.pass;
        }
        return ok;
    });

    // 6. two-axis relations
    criterion(6, "two-axis analysis on sym_jordan(2): gamma=1/2 data and the gamma=0 branch", [] {
        bool ok = true;
        AlgebraDef s2 = sym_jordan(2);
        Scalar half(s2.field(), Rat(1, 2));
        Element e = s2.basis(0);
        Element f = (s2.basis(0) + s2.basis(1) + s2.basis(2)) * half;
        TwoAxisReport rep = two_axis_analysis(s2, e, f);
        ok &= expect(rep.data.gamma == half, "gamma = 1/2");
        ok &= expect(rep.data.pi == Scalar(s2.field(), Rat(-1, 4)), "pi = -1/4");
        ok &= expect(rep.data.sigma == (s2.basis(0) + s2.basis(1)) * Scalar(s2.field(), Rat(-1, 4)),
                     "sigma = -1/4 (E11 + E22)");
        for (const auto& r : rep.relations) {
            if (!r.pass) std::printf("       relation failed: %s\n", r.name.c_str());
            ok &= r.pass;
        }
        int named = 0;
        for (const auto& r : rep.relations)
            if (r.name == "z^2 = (1 - gamma) z" || r.name == "z1 = gamma z" ||
                r.name == "sigma^2 = pi sigma" || r.name == "gamma - gamma^2 = delta1")
                ++named;
        ok &= expect(named == 4, "the four named relations are part of the report");

        TwoAxisReport branch = two_axis_analysis(s2, e, s2.basis(1));
        ok &= expect(branch.data.gamma.is_zero(), "gamma = 0 branch reached");
        bool branch_relations = false;
        for (const auto& r : branch.relations) {
            if (r.name.find("gamma = 0 branch") != std::string::npos) branch_relations = true;
            ok &= r.pass;
        }
        ok &= expect(branch_relations, "f = u1 + z with u1^2 = 0 is verified on the branch");
        return ok;
    });

    // 7. main theorem consistency
    criterion(7, "the three verdicts agree on all axial examples; fixture is fail/fail/fail", [] {
        bool ok = true;
        {
            AlgebraDef s2 = sym_jordan(2);
            Element f = (s2.basis(0) + s2.basis(1) + s2.basis(2)) * Scalar(s2.field(), Rat(1, 2));
            MainTheoremReport rep = main_theorem_report(s2, {s2.basis(0), f});
            ok &= expect(rep.axial_span && rep.consistent() && rep.all_pass(), "sym_jordan(2) all pass");
        }
        {
            AlgebraDef m = matsuo_3c(Rat(1, 2));
            MainTheoremReport rep = main_theorem_report(m, {m.basis(0), m.basis(1), m.basis(2)});
            ok &= expect(rep.axial_span && rep.consistent(), "matsuo 3C(1/2) consistent");
            ok &= expect(rep.iii_pass == rep.jordan_pass && rep.iii_pass == rep.iv_pass,
                         "matsuo 3C(1/2) verdicts agree");
        }
        for (Rat pi : {Rat(0), Rat(-1, 4), Rat(1)}) {
            AlgebraDef t = two_axis_family(pi);
            MainTheoremReport rep = main_theorem_report(t, {t.basis(0), t.basis(1)});
            ok &= expect(rep.axial_span && rep.consistent() &&
                             rep.iii_pass == rep.jordan_pass && rep.iii_pass == rep.iv_pass,
                         "two_axis_family verdicts agree");
        }
        {
            AlgebraDef ap = perturbed_sym_jordan2();
            MainTheoremReport rep = main_theorem_report(ap, {ap.basis(0)});
            ok &= expect(!rep.iii_pass && !rep.iv_pass && !rep.jordan_pass && rep.consistent(),
                         "fixture reports fail/fail/fail consistently");
            // (iv)(a) witness: u = b3
            ok &= expect(!rep.axes[0].id_a.pass, "u^3 = delta_{u^2} u fails on the fixture");
            for (const auto& [label, elem] : rep.axes[0].id_a.witness)
                ok &= expect(elem == ap.basis(2), "eigenvector witness is u = E12");
            // Jordan witness: the failing tuples of the multilinearized Jordan
            // identity are exactly (E12,E12,E12,y); the first one in tuple
            // order has y = E11, and the tuple ending in y = E22 evaluates to
            // 6 * (1/4 E12).
            FreePoly m = full_multilinearization(jordan_identity_poly());
            ok &= expect(rep.jordan.witness.size() == 4, "Jordan witness is a basis quadruple");
            if (rep.jordan.witness.size() == 4) {
                for (int i = 0; i < 3; ++i)
                    ok &= expect(rep.jordan.witness[i].second == ap.basis(2),
                                 "Jordan witness starts (E12, E12, E12, ...)");
                ok &= expect(rep.jordan.witness[3].second == ap.basis(0),
                             "lexicographically first failing tuple ends with E11");
                std::map<VarId, Element> quoted;
                for (int i = 0; i < 3; ++i)
                    quoted.insert_or_assign(rep.jordan.witness[i].first, ap.basis(2));
                quoted.insert_or_assign(rep.jordan.witness[3].first, ap.basis(1));
                Element at_quoted = eval_free_poly(ap, m, quoted);
                ok &= expect(at_quoted == ap.basis(2) * Scalar(ap.field(), Rat(3, 2)),
                             "the quadruple (E12,E12,E12,E22) falsifies with value 6*(1/4 E12)");
            }
        }
        return ok;
    });

    // 8. symbolic/concrete commuting diagram
    criterion(8, "200 pseudo-random instantiations: instantiate(expand(E)) = concrete-eval(E)", [] {
        std::mt19937_64 rng(42);
        std::vector<AlgebraDef> algebras;
        algebras.push_back(sym_jordan(2));
        algebras.push_back(sym_jordan(3));
        algebras.push_back(spin_factor({Rat(1), Rat(1)}));
        algebras.push_back(matsuo_3c(Rat(1, 2)));
        algebras.push_back(two_axis_family(Rat(-1, 4)));
        std::vector<Element> axes;
        axes.push_back(algebras[0].basis(0));
        axes.push_back(algebras[1].basis(0));
        axes.push_back((algebras[2].basis(0) + algebras[2].basis(1)) *
                       Scalar(algebras[2].field(), Rat(1, 2)));
        axes.push_back(algebras[3].basis(0));
        axes.push_back(algebras[4].basis(0));

        std::map<std::string, Sort> sorts = {{"u", Sort::u},      {"v", Sort::u},
                                             {"z", Sort::z},      {"w", Sort::z},
                                             {"r", Sort::scalar}, {"s", Sort::scalar}};
        std::vector<std::string> exprs = {
            "u (u z)",
            "(u v) z - u (v z) - v (u z)",
            "delta(u v) e + zpart(u v)",
            "r (u z) + s (v w)",
            "u ((u^2) z) - (u^2) (u z)",
            "zpart(u (u z))",
            "[u, v, z]",
            "(e u^2) u - 1/2 u^3",
            "upart(r u + z) + zpart(r u + z) + delta(r u + z) e",
            "((u z) v) e",
        };

        int runs = 0;
        bool ok = true;
        while (runs < 200) {
            std::size_t ai = rng() % algebras.size();
            const AlgebraDef& a = algebras[ai];
            PeirceDecomposition d = certify_half_axis(a, axes[ai]);
            auto rand_in_span = [&](const std::vector<Element>& basis) {
                Element out = a.zero();
                for (const auto& b : basis)
                    out = out + b * Scalar(a.field(), Rat(static_cast<long>(rng() % 7) - 3,
                                                          static_cast<long>(rng() % 3) + 1));
                return out;
            };
            const std::string& text = exprs[rng() % exprs.size()];
            TypedExprPtr expr = parse_typed(text, sorts);
            GradedExpr g = expand_and_project(expr);
            Instantiation inst{&a, &d, {}, {}};
            inst.elements.insert_or_assign("u", rand_in_span(d.basis_half));
            inst.elements.insert_or_assign("v", rand_in_span(d.basis_half));
            inst.elements.insert_or_assign("z", rand_in_span(d.basis_zero));
            inst.elements.insert_or_assign("w", rand_in_span(d.basis_zero));
            inst.scalars.insert_or_assign("r",
                                          Scalar(a.field(), Rat(static_cast<long>(rng() % 9) - 4)));
            inst.scalars.insert_or_assign("s",
                                          Scalar(a.field(), Rat(static_cast<long>(rng() % 9) - 4)));
            inst.check_sorts(sorts);
            Element symbolic = instantiate(g, inst);
            ConcreteValue direct = eval_typed_concrete(expr, inst);
            if (direct.scalar || symbolic != direct.e) {
                std::printf("       mismatch on '%s'\n", text.c_str());
                ok = false;
            }
            ++runs;
        }
        return ok && expect(runs == 200, "exactly 200 instantiations were checked");
    });

    // 9. isomorphism of two_axis_family(-1/4) with sym_jordan(2)
    criterion(9, "two_axis_family(-1/4) matches sym_jordan(2) under the stated base change", [] {
        AlgebraDef t = two_axis_family(Rat(-1, 4));
        AlgebraDef s2 = sym_jordan(2);
        std::vector<Element> image = {
            s2.basis(0),
            (s2.basis(0) + s2.basis(1) + s2.basis(2)) * Scalar(s2.field(), Rat(1, 2)),
            (s2.basis(0) + s2.basis(1)) * Scalar(s2.field(), Rat(-1, 4)),
        };
        auto phi = [&](const Element& x) {
            Element out = s2.zero();
            for (std::size_t i = 0; i < 3; ++i) out = out + image[i] * x.coords[i];
            return out;
        };
        bool ok = true;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = i; j < 3; ++j)
                ok &= expect(phi(t.product(t.basis(i), t.basis(j))) == s2.product(image[i], image[j]),
                             "phi(b_i b_j) = phi(b_i) phi(b_j)");
        return ok;
    });

    // 10. finite-field path
    criterion(10, "F_3 exhaustive strictness on matsuo 3C(1/2) agrees with Q; idempotents found", [] {
        bool ok = true;
        AlgebraDef mq = matsuo_3c(Rat(1, 2));
        AlgebraDef m3 = matsuo_3c(Rat(1, 2), FieldSpec::Fp(3));
        for (FreePoly seed : {seed_identity_deg4(), seed_identity_deg5()}) {
            CheckOutcome rq = holds_strictly(mq, seed);
            CheckOutcome r3 = holds_strictly(m3, seed);  // default budget
            ok &= expect(rq.pass == r3.pass, "F_3 verdict agrees with the Q verdict");
            ok &= expect(r3.pass, "the seed holds over F_3");
        }
        auto found = find_idempotents_exhaustive(m3);
        auto contains = [&](const Element& x) {
            for (const auto& f : found)
                if (f == x) return true;
            return false;
        };
        ok &= expect(contains(m3.basis(0)) && contains(m3.basis(1)) && contains(m3.basis(2)),
                     "the idempotent set contains {a, b, c}");
        return ok;
    });

    std::printf("%d criterion(s) failed\n", failures);
    return failures;
}
