#pragma once

/*
 * catalog.hpp
 * -----------
 * The built-in catalog of half-axis identities, evaluation of catalog
 * entries on concrete certified axes, the two-axis analysis, and the
 * cross-check report tying the strict-identity, eigenvector-identity and
 * Jordan verdicts together.
 *
 * Checking strategy over Q: expand the template in the graded calculus,
 * split into multidegree components, and check each component's full
 * polarization on subspace basis tuples, computed numerically by
 * inclusion-exclusion (valid in characteristic 0 since d! is invertible).
 * Over F_p the template is evaluated exhaustively on all subspace vectors
 * within the evaluation budget.
 */

#include <optional>
#include <string>
#include <vector>

#include "axial/constructions.hpp"
#include "axial/gradedsym.hpp"

namespace axial {

struct IdentityTemplate {
    std::string id;
    std::string anchor;  // display form of the identity
    std::map<std::string, Sort> vars;
    std::string lhs_text, rhs_text;
    TypedExprPtr lhs, rhs;

    TypedExprPtr difference() const {
        return TypedExpr::make_sum({lhs, TypedExpr::make_coeff(Rat(-1), rhs)});
    }

    bool linear_in(const std::string& var) const;  // linearity profile
};

namespace catalog_detail {

inline IdentityTemplate make_entry(std::string id, std::string anchor,
                                   std::map<std::string, Sort> vars, std::string lhs,
                                   std::string rhs) {
    IdentityTemplate t;
    t.id = std::move(id);
    t.anchor = std::move(anchor);
    t.vars = vars;
    t.lhs_text = lhs;
    t.rhs_text = rhs;
    t.lhs = parse_typed(lhs, vars);
    t.rhs = parse_typed(rhs, vars);
    return t;
}

// structural per-variable degree; throws when a sum mixes degrees
inline int typed_degree(const TypedExprPtr& n, const std::string& var) {
    switch (n->kind) {
        case TypedExpr::axis: return 0;
        case TypedExpr::var: return n->v.name == var ? 1 : 0;
        case TypedExpr::coeff: return typed_degree(n->kids[0], var);
        case TypedExpr::prod:
            return typed_degree(n->kids[0], var) + typed_degree(n->kids[1], var);
        case TypedExpr::delta_f:
        case TypedExpr::zpart_f:
        case TypedExpr::upart_f: return typed_degree(n->kids[0], var);
        case TypedExpr::sum: {
            int d = typed_degree(n->kids[0], var);
            for (std::size_t i = 1; i < n->kids.size(); ++i)
                if (typed_degree(n->kids[i], var) != d) throw NonHomogeneousInput(var);
            return d;
        }
    }
    throw Error("internal: unhandled typed expression kind");
}

}  // namespace catalog_detail

inline bool IdentityTemplate::linear_in(const std::string& var) const {
    try {
        return catalog_detail::typed_degree(difference(), var) <= 1;
    } catch (const NonHomogeneousInput&) {
        return false;
    }
}

// The catalog entry list.  Anchors state the identity the entry encodes, in
// the delta/zpart notation of the graded calculus.
inline const std::vector<IdentityTemplate>& builtin_catalog() {
    using catalog_detail::make_entry;
    static const std::vector<IdentityTemplate> entries = [] {
        std::map<std::string, Sort> uz = {{"u", Sort::u}, {"z", Sort::z}};
        std::map<std::string, Sort> u_only = {{"u", Sort::u}};
        std::map<std::string, Sort> uzz = {{"u", Sort::u}, {"z", Sort::z}, {"z2", Sort::z}};
        std::map<std::string, Sort> uvz = {{"u", Sort::u}, {"v", Sort::u}, {"z", Sort::z}};
        std::map<std::string, Sort> uv = {{"u", Sort::u}, {"v", Sort::u}};
        std::map<std::string, Sort> zz2 = {{"z", Sort::z}, {"z2", Sort::z}};
        std::map<std::string, Sort> vz = {{"v", Sort::u}, {"z", Sort::z}};
        std::map<std::string, Sort> u1z = {{"u1", Sort::u}, {"z", Sort::z}};
        std::map<std::string, Sort> u12 = {{"u1", Sort::u}, {"u2", Sort::u}};
        std::map<std::string, Sort> u12z = {{"u1", Sort::u}, {"u2", Sort::u}, {"z", Sort::z}};
        std::map<std::string, Sort> u123 = {{"u1", Sort::u}, {"u2", Sort::u}, {"u3", Sort::u}};
        std::map<std::string, Sort> u12z1 = {{"u1", Sort::u}, {"u2", Sort::u}, {"z1", Sort::z}};
        std::map<std::string, Sort> u12z12 = {
            {"u1", Sort::u}, {"u2", Sort::u}, {"z1", Sort::z}, {"z2", Sort::z}};
        std::map<std::string, Sort> u1z12 = {{"u1", Sort::u}, {"z1", Sort::z}, {"z2", Sort::z}};
        std::map<std::string, Sort> z12 = {{"z1", Sort::z}, {"z2", Sort::z}};
        std::map<std::string, Sort> uzz12 = {{"u", Sort::u}, {"z1", Sort::z}, {"z2", Sort::z}};
        std::map<std::string, Sort> x_all = {{"x", Sort::all}};

        std::vector<IdentityTemplate> cat;

        cat.push_back(make_entry("TH-ID-1", "u^3 = delta_{u^2} u", u_only,
                                 "u^3", "delta(u^2) u"));
        cat.push_back(make_entry("TH-ID-2", "(uz)z = 1/2 u z^2", uz,
                                 "(u z) z", "1/2 u z^2"));
        cat.push_back(make_entry("TH-ID-3", "4u^2(uz) = 2u(u(uz)) + u(u^2 z) + u^3 z", uz,
                                 "4 u^2 (u z)", "2 u (u (u z)) + u (u^2 z) + u^3 z"));
        cat.push_back(make_entry(
            "TH-ID-4", "4(uz)^2 + 2u^2 z^2 = u(u z^2) + 2(u(uz))z + 2u((uz)z) + (u^2 z)z", uz,
            "4 (u z)^2 + 2 u^2 z^2", "u (u z^2) + 2 (u (u z)) z + 2 u ((u z) z) + (u^2 z) z"));
        cat.push_back(make_entry("TH-ID-5", "4(uz)z^2 = u z^3 + (u z^2)z + 2((uz)z)z", uz,
                                 "4 (u z) z^2", "u z^3 + (u z^2) z + 2 ((u z) z) z"));
        cat.push_back(make_entry("TH-ID-6", "z_{u(uz)} = 1/2 u^2 z", uz,
                                 "zpart(u (u z))", "1/2 u^2 z"));

        cat.push_back(make_entry("L3.1a", "u^3 = delta_{u^2} u", u_only,
                                 "u^3", "delta(u^2) u"));
        cat.push_back(make_entry("L3.1b", "u z_{u^2} = 1/2 delta_{u^2} u", u_only,
                                 "u zpart(u^2)", "1/2 delta(u^2) u"));
        cat.push_back(make_entry("L3.1c", "(e u^2) u = 1/2 u^3", u_only,
                                 "(e u^2) u", "1/2 u^3"));
        cat.push_back(make_entry("L3.1d", "z_{u^2}^2 = delta_{u^2} z_{u^2}", u_only,
                                 "zpart(u^2)^2", "delta(u^2) zpart(u^2)"));

        cat.push_back(make_entry("L3.2", "x(x^2 e) = x^2(x e)", x_all,
                                 "x (x^2 e)", "x^2 (x e)"));

        cat.push_back(make_entry(
            "L4.1", "u1(u2 z) + u2(u1 z) = [delta(u1(u2 z)) + delta(u2(u1 z))] e + (u1 u2) z",
            u12z, "u1 (u2 z) + u2 (u1 z)",
            "delta(u1 (u2 z)) e + delta(u2 (u1 z)) e + (u1 u2) z"));

        cat.push_back(make_entry("L4.2.1", "(u z^2) z = 1/2 u z^3", uz,
                                 "(u z^2) z", "1/2 u z^3"));
        cat.push_back(make_entry("L4.2.2", "(u z) z^2 = 1/2 u z^3", uz,
                                 "(u z) z^2", "1/2 u z^3"));

        cat.push_back(make_entry("L4.3.1",
                                 "delta_{(u1+u2)^2} = delta_{u1^2} + delta_{u2^2} + 2 delta_{u1 u2}",
                                 u12, "delta((u1 + u2)^2) e",
                                 "delta(u1^2) e + delta(u2^2) e + 2 delta(u1 u2) e"));
        cat.push_back(make_entry(
            "L4.3.2",
            "delta_{(u1+u2)^2} (u1+u2) = delta_{u1^2} u1 + delta_{u2^2} u2 + u1^2 u2 + u2^2 u1"
            " + delta_{u1 u2} u1 + delta_{u1 u2} u2 + 2 z_{u1 u2} u1 + 2 z_{u1 u2} u2",
            u12, "delta((u1 + u2)^2) (u1 + u2)",
            "delta(u1^2) u1 + delta(u2^2) u2 + u1^2 u2 + u2^2 u1 + delta(u1 u2) u1"
            " + delta(u1 u2) u2 + 2 zpart(u1 u2) u1 + 2 zpart(u1 u2) u2"));
        cat.push_back(make_entry(
            "L4.3.3",
            "u1^2 u2 + u2^2 u1 - delta_{u1 u2} u1 - delta_{u2^2} u1 - delta_{u1 u2} u2"
            " - delta_{u1^2} u2 + 2 z_{u1 u2}(u1+u2) = 0",
            u12, "u1^2 u2 + u2^2 u1 + 2 zpart(u1 u2) (u1 + u2)",
            "delta(u1 u2) u1 + delta(u2^2) u1 + delta(u1 u2) u2 + delta(u1^2) u2"));
        cat.push_back(make_entry("L4.3.4",
                                 "u1^2 u2 - delta_{u1 u2} u1 - delta_{u1^2} u2 + 2 u1 z_{u1 u2} = 0",
                                 u12, "u1^2 u2 + 2 u1 zpart(u1 u2)",
                                 "delta(u1 u2) u1 + delta(u1^2) u2"));
        cat.push_back(make_entry("L4.3.5",
                                 "2 u1(u1 u2) = -u1^2 u2 + delta_{u1^2} u2 + 2 delta_{u1 u2} u1",
                                 u12, "2 u1 (u1 u2)",
                                 "delta(u1^2) u2 + 2 delta(u1 u2) u1 - u1^2 u2"));
        cat.push_back(make_entry(
            "L4.3.6", "u2 z_{u1^2} - delta_{u1 u2} u1 - 1/2 delta_{u1^2} u2 + 2 u1 z_{u1 u2} = 0",
            u12, "u2 zpart(u1^2) + 2 u1 zpart(u1 u2)",
            "delta(u1 u2) u1 + 1/2 delta(u1^2) u2"));
        cat.push_back(make_entry("L4.3.7", "2 (u1 z_{u1 u2}) z_{u1^2} = 1/2 delta_{u1 u2} delta_{u1^2} u1",
                                 u12, "2 (u1 zpart(u1 u2)) zpart(u1^2)",
                                 "1/2 delta(u1 u2) (delta(u1^2) u1)"));
        cat.push_back(make_entry("L4.3.8", "2 (u1(u1 u2)) z_{u1^2} = delta_{u1 u2} delta_{u1^2} u1",
                                 u12, "2 (u1 (u1 u2)) zpart(u1^2)",
                                 "delta(u1 u2) (delta(u1^2) u1)"));

        cat.push_back(make_entry(
            "L4.4.1",
            "u1(u2 u3) + (u1 u2)u3 + (u1 u3)u2 = delta_{u2 u3} u1 + delta_{u1 u3} u2 + delta_{u1 u2} u3",
            u123, "u1 (u2 u3) + (u1 u2) u3 + (u1 u3) u2",
            "delta(u2 u3) u1 + delta(u1 u3) u2 + delta(u1 u2) u3"));
        cat.push_back(make_entry("L4.4.2",
                                 "u1^2 u2 + 2 u1(u1 u2) = delta_{u1^2} u2 + 2 delta_{u1 u2} u1",
                                 u12, "u1^2 u2 + 2 u1 (u1 u2)",
                                 "delta(u1^2) u2 + 2 delta(u1 u2) u1"));
        cat.push_back(make_entry(
            "L4.4.3",
            "u1^2(u2 z) + 2 u1(u1(u2 z)) = delta_{u1^2} u2 z + 2 delta_{u1(u2 z)} u1", u12z,
            "u1^2 (u2 z) + 2 u1 (u1 (u2 z))", "delta(u1^2) (u2 z) + 2 delta(u1 (u2 z)) u1"));
        cat.push_back(make_entry(
            "L4.4.4", "(u1^2 u2) z = -2 u1((u1 u2) z) + 2 (u1 u2)(u1 z) + delta_{u1^2} u2 z",
            u12z, "(u1^2 u2) z",
            "2 (u1 u2) (u1 z) + delta(u1^2) (u2 z) - 2 u1 ((u1 u2) z)"));
        cat.push_back(make_entry("L4.4.5",
                                 "2 u1^2(u1 z) = delta_{u1^2} u1 z + delta_{u1(u1 z)} u1", u1z,
                                 "2 u1^2 (u1 z)", "delta(u1^2) (u1 z) + delta(u1 (u1 z)) u1"));

        cat.push_back(make_entry("L4.5.1", "2(uz)^2 + u^2 z^2 = u(u z^2) + (u^2 z)z", uz,
                                 "2 (u z)^2 + u^2 z^2", "u (u z^2) + (u^2 z) z"));
        cat.push_back(make_entry(
            "L4.5.2",
            "4(u1 z)(u2 z) + 2(u1 u2)z^2 = u1(u2 z^2) + u2(u1 z^2) + 2((u1 u2)z)z", u12z,
            "4 (u1 z) (u2 z) + 2 (u1 u2) z^2",
            "u1 (u2 z^2) + u2 (u1 z^2) + 2 ((u1 u2) z) z"));
        cat.push_back(make_entry(
            "L4.5.3",
            "4(u z1)(u z2) + 2u^2(z1 z2) = 2u(u(z1 z2)) + (u^2 z1)z2 + (u^2 z2)z1", uzz12,
            "4 (u z1) (u z2) + 2 u^2 (z1 z2)",
            "2 u (u (z1 z2)) + (u^2 z1) z2 + (u^2 z2) z1"));
        cat.push_back(make_entry("L4.5.4", "2(uz)^2 z + 1/2 (u^2 z^2) z = ((u^2 z)z)z", uz,
                                 "2 (u z)^2 z + 1/2 (u^2 z^2) z", "((u^2 z) z) z"));
        cat.push_back(make_entry("L4.5.5", "delta_{u(u z^2)} = 2 delta_{(uz)^2}", uz,
                                 "delta(u (u z^2)) e", "2 delta((u z)^2) e"));
        cat.push_back(make_entry("L4.5.6",
                                 "4 delta_{(u1 z)(u2 z)} = delta_{u1(u2 z^2) + u2(u1 z^2)}", u12z,
                                 "4 delta((u1 z) (u2 z)) e",
                                 "delta(u1 (u2 z^2)) e + delta(u2 (u1 z^2)) e"));
        cat.push_back(make_entry("L4.5.7", "2 delta_{(u z1)(u z2)} = delta_{u(u(z1 z2))}", uzz12,
                                 "2 delta((u z1) (u z2)) e", "delta(u (u (z1 z2))) e"));

        cat.push_back(make_entry("L6.1", "u1^2(u1 z) = u1(u1^2 z)", u12z,
                                 "u1^2 (u1 z)", "u1 (u1^2 z)"));
        cat.push_back(make_entry("L6.2", "delta_{u1(u2 z_{u1^2})} = 1/2 delta_{u1^2} delta_{u1 u2}",
                                 u12, "delta(u1 (u2 zpart(u1^2))) e",
                                 "1/2 delta(u1^2) (delta(u1 u2) e)"));
        cat.push_back(make_entry("L6.3", "u1^2(u1 u2) = u1(u1^2 u2)", u12,
                                 "u1^2 (u1 u2)", "u1 (u1^2 u2)"));
        cat.push_back(make_entry("L6.4", "(u^2 z^2) z = (u^2 z) z^2", uz,
                                 "(u^2 z^2) z", "(u^2 z) z^2"));

        cat.push_back(make_entry("T7.1.1", "u(u^2 e) = 1/2 u^3", u_only,
                                 "u (u^2 e)", "1/2 u^3"));
        cat.push_back(make_entry("T7.1.2", "u(z z') = (uz)z' + (uz')z", uzz,
                                 "u (z z2)", "(u z) z2 + (u z2) z"));
        cat.push_back(make_entry("T7.1.3", "u(u^2 z) = u^2(u z)", uz,
                                 "u (u^2 z)", "u^2 (u z)"));
        cat.push_back(make_entry("T7.1.4",
                                 "u^2(z z') + 2(uz)(uz') = (u^2 z')z + 2u((uz)z')", uzz,
                                 "u^2 (z z2) + 2 (u z) (u z2)", "(u^2 z2) z + 2 u ((u z) z2)"));
        cat.push_back(make_entry("T7.1.5",
                                 "(uz')z^2 + 2(uz)(z z') = u(z^2 z') + 2((uz)z')z", uzz,
                                 "(u z2) z^2 + 2 (u z) (z z2)", "u (z^2 z2) + 2 ((u z) z2) z"));
        cat.push_back(make_entry("T7.1.6", "z(z^2 z') = z^2(z z')", zz2,
                                 "z (z^2 z2)", "z^2 (z z2)"));
        cat.push_back(make_entry("T7.1.7", "2((uz)v)e + (uv)z = u(vz) + v(uz)", uvz,
                                 "2 ((u z) v) e + (u v) z", "u (v z) + v (u z)"));
        cat.push_back(make_entry("T7.1.8", "u(u^2 v) = u^2(u v)", uv,
                                 "u (u^2 v)", "u^2 (u v)"));
        cat.push_back(make_entry("T7.1.9", "2u(v(uz)) + (u^2 v)z = 2(uv)(uz) + u^2(vz)", uvz,
                                 "2 u (v (u z)) + (u^2 v) z", "2 (u v) (u z) + u^2 (v z)"));
        cat.push_back(make_entry("T7.1.10", "2((uz)v)z + u(v z^2) = 2(uz)(vz) + (uv)z^2", uvz,
                                 "2 ((u z) v) z + u (v z^2)", "2 (u z) (v z) + (u v) z^2"));
        cat.push_back(make_entry("T7.1.11", "z(z^2 v) = z^2(z v)", vz,
                                 "z (z^2 v)", "z^2 (z v)"));

        cat.push_back(make_entry("T7.2.i", "u1(u1^2 u2) = u1^2(u1 u2)", u12,
                                 "u1 (u1^2 u2)", "u1^2 (u1 u2)"));
        cat.push_back(make_entry(
            "T7.2.ii", "(u1^2 u2)z1 + 2u1(u2(u1 z1)) = u1^2(u2 z1) + 2(u1 u2)(u1 z1)", u12z1,
            "(u1^2 u2) z1 + 2 u1 (u2 (u1 z1))", "u1^2 (u2 z1) + 2 (u1 u2) (u1 z1)"));
        cat.push_back(make_entry(
            "T7.2.iii", "(u1^2 z2)z1 + 2u1((u1 z1)z2) = u1^2(z1 z2) + 2(u1 z1)(u1 z2)", u1z12,
            "(u1^2 z2) z1 + 2 u1 ((u1 z1) z2)", "u1^2 (z1 z2) + 2 (u1 z1) (u1 z2)"));
        cat.push_back(make_entry(
            "T7.2.iv", "u1(u2 z1^2) + 2(u2(u1 z1))z1 = (u1 u2)z1^2 + 2(u1 z1)(u2 z1)", u12z1,
            "u1 (u2 z1^2) + 2 (u2 (u1 z1)) z1", "(u1 u2) z1^2 + 2 (u1 z1) (u2 z1)"));
        cat.push_back(make_entry("T7.2.v", "z1(z1^2 z2) = z1^2(z1 z2)", z12,
                                 "z1 (z1^2 z2)", "z1^2 (z1 z2)"));
        cat.push_back(make_entry("T7.2.vi", "(u1 u2)z1 + 2e(u2(u1 z1)) = u1(u2 z1) + u2(u1 z1)",
                                 u12z1, "(u1 u2) z1 + 2 e (u2 (u1 z1))",
                                 "u1 (u2 z1) + u2 (u1 z1)"));

        cat.push_back(make_entry("STAR", "delta(u1(u2 z)) = delta(u2(u1 z))", u12z,
                                 "delta(u1 (u2 z)) e", "delta(u2 (u1 z)) e"));
        return cat;
    }();
    return entries;
}

// id lookup tolerant of '.'/'-' and case differences
inline const IdentityTemplate* catalog_lookup(const std::string& id) {
    auto norm = [](const std::string& s) {
        std::string out;
        for (char c : s)
            if (std::isalnum(static_cast<unsigned char>(c)))
                out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        return out;
    };
    std::string key = norm(id);
    for (const auto& t : builtin_catalog())
        if (norm(t.id) == key) return &t;
    return nullptr;
}

// ---------------------------------------------------------------------------
// template checking

struct TemplateOutcome {
    bool pass = true;
    std::vector<std::pair<std::string, Element>> witness;  // label -> element
    std::optional<Element> residual;

    explicit operator bool() const { return pass; }
};

namespace catalog_detail {

struct PolarizedVar {
    std::string name;
    Sort sort;
    int degree;
    const std::vector<Element>* space;  // basis of the subspace it ranges over
};

// Check that the homogeneous map F (degree d_v in each var) vanishes on the
// whole space, by evaluating its full polarization on basis tuples via
// inclusion-exclusion.  Lexicographically first failing tuple is reported;
// slots of one variable are interchangeable, so only non-decreasing index
// runs are visited.
template <typename EvalFn>
inline TemplateOutcome polarized_basis_check(const AlgebraDef& a,
                                             const std::vector<PolarizedVar>& vars, EvalFn&& F,
                                             unsigned long long budget) {
    TemplateOutcome out;
    std::vector<std::pair<std::size_t, int>> slots;  // (var index, copy)
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (vars[i].space->empty()) return out;  // degree >= 1 over a zero space
        for (int c = 0; c < vars[i].degree; ++c) slots.emplace_back(i, c);
    }
    if (slots.empty()) {
        // constant map: evaluate once with empty assignment
        std::map<std::string, Element> binding;
        Element v = F(binding);
        if (!v.is_zero()) {
            out.pass = false;
            out.residual = v;
        }
        return out;
    }

    unsigned long long tuples = 1, evals_per_tuple = 1;
    for (const auto& s : slots) tuples *= vars[s.first].space->size();
    for (const auto& v : vars) evals_per_tuple *= (1ULL << v.degree) - 1;
    if (tuples > budget / (evals_per_tuple ? evals_per_tuple : 1))
        throw BudgetExceeded(tuples * evals_per_tuple, budget);

    Rat factorial_prod(1);
    for (const auto& v : vars)
        for (int i = 2; i <= v.degree; ++i) factorial_prod *= i;
    Scalar scale = Scalar(a.field(), factorial_prod).inv();

    std::vector<std::size_t> radix(slots.size());
    std::vector<int> cls(slots.size());
    for (std::size_t i = 0; i < slots.size(); ++i) {
        radix[i] = vars[slots[i].first].space->size();
        cls[i] = static_cast<int>(slots[i].first);  // same var -> symmetric
    }

    std::vector<std::size_t> idx(slots.size(), 0);
    while (true) {
        bool ordered = true;
        for (std::size_t i = 1; i < idx.size() && ordered; ++i)
            if (cls[i] == cls[i - 1] && idx[i] < idx[i - 1]) ordered = false;
        if (ordered) {
            // inclusion-exclusion over nonempty subsets per variable
            std::vector<unsigned> mask(vars.size(), 1);
            Element acc = a.zero();
            std::function<void(std::size_t, int)> rec = [&](std::size_t vi, int sign) {
                if (vi == vars.size()) {
                    std::map<std::string, Element> binding;
                    std::size_t slot_base = 0;
                    for (std::size_t i = 0; i < vars.size(); ++i) {
                        Element sum = a.zero();
                        for (int c = 0; c < vars[i].degree; ++c)
                            if (mask[i] & (1u << c))
                                sum = sum + (*vars[i].space)[idx[slot_base + c]];
                        binding.insert_or_assign(vars[i].name, sum);
                        slot_base += vars[i].degree;
                    }
                    Element v = F(binding);
                    acc = sign > 0 ? acc + v : acc - v;
                    return;
                }
                int d = vars[vi].degree;
                for (unsigned m = 1; m < (1u << d); ++m) {
                    mask[vi] = m;
                    int bits = __builtin_popcount(m);
                    rec(vi + 1, sign * ((d - bits) % 2 == 0 ? 1 : -1));
                }
            };
            rec(0, 1);
            Element value = acc * scale;
            if (!value.is_zero()) {
                out.pass = false;
                std::size_t slot_base = 0;
                for (std::size_t i = 0; i < vars.size(); ++i) {
                    for (int c = 0; c < vars[i].degree; ++c) {
                        std::string label = vars[i].degree == 1
                                                ? vars[i].name
                                                : vars[i].name + "#" + std::to_string(c + 1);
                        out.witness.emplace_back(label, (*vars[i].space)[idx[slot_base + c]]);
                    }
                    slot_base += vars[i].degree;
                }
                out.residual = value;
                return out;
            }
        }
        std::size_t i = idx.size();
        bool done = false;
        while (i-- > 0) {
            if (++idx[i] < radix[i]) break;
            idx[i] = 0;
            if (i == 0) done = true;
        }
        if (done) break;
    }
    return out;
}

}  // namespace catalog_detail

// Evaluate a catalog identity on a certified half-axis decomposition.
inline TemplateOutcome check_template(const AlgebraDef& a, const PeirceDecomposition& d,
                                      const IdentityTemplate& t,
                                      unsigned long long budget = kDefaultBudget) {
    if (!d.certified) throw NotHalfAxis("check_template requires a certified decomposition");
    TypedExprPtr diff = t.difference();

    std::vector<Element> full_basis;
    for (std::size_t i = 0; i < a.dim(); ++i) full_basis.push_back(a.basis(i));

    auto space_of = [&](Sort s) -> const std::vector<Element>* {
        switch (s) {
            case Sort::u: return &d.basis_half;
            case Sort::z: return &d.basis_zero;
            case Sort::all: return &full_basis;
            default: throw SortViolation("templates range over U, Z or A variables");
        }
    };

    // finite-field path: exhaustive subspace enumeration of the template
    if (!a.field().is_rationals()) {
        const long p = a.field().p();
        std::vector<std::pair<std::string, const std::vector<Element>*>> spans;
        for (const auto& [name, sort] : t.vars) spans.emplace_back(name, space_of(sort));
        __int128 total = 1;
        for (const auto& [name, sp] : spans) {
            __int128 count = 1;
            for (std::size_t i = 0; i < sp->size(); ++i) count *= p;
            total *= count;
            if (total > static_cast<__int128>(budget))
                throw BudgetExceeded(static_cast<unsigned long long>(
                                         total > static_cast<__int128>(~0ULL >> 1) ? (~0ULL >> 1)
                                                                                   : total),
                                     budget);
        }
        // all vectors of each span
        std::vector<std::vector<Element>> all(spans.size());
        for (std::size_t si = 0; si < spans.size(); ++si) {
            const auto& basis = *spans[si].second;
            std::vector<long> digits(basis.size(), 0);
            unsigned long long count = 1;
            for (std::size_t i = 0; i < basis.size(); ++i) count *= static_cast<unsigned long long>(p);
            for (unsigned long long c = 0; c < count; ++c) {
                Element v = a.zero();
                for (std::size_t i = 0; i < basis.size(); ++i)
                    v = v + basis[i] * Scalar(a.field(), digits[i]);
                all[si].push_back(v);
                for (std::size_t i = basis.size(); i-- > 0;) {
                    if (++digits[i] < p) break;
                    digits[i] = 0;
                }
            }
        }
        TemplateOutcome out;
        std::vector<std::size_t> idx(spans.size(), 0);
        if (spans.empty()) return out;
        while (true) {
            Instantiation inst{&a, &d, {}, {}};
            for (std::size_t i = 0; i < spans.size(); ++i)
                inst.elements.insert_or_assign(spans[i].first, all[i][idx[i]]);
            ConcreteValue v = eval_typed_concrete(diff, inst);
            Element value = v.scalar ? d.axis * v.s : v.e;  // scalar identities scale the axis
            if (!value.is_zero()) {
                out.pass = false;
                for (std::size_t i = 0; i < spans.size(); ++i)
                    out.witness.emplace_back(spans[i].first, all[i][idx[i]]);
                out.residual = value;
                return out;
            }
            std::size_t i = idx.size();
            bool done = false;
            while (i-- > 0) {
                if (++idx[i] < all[i].size()) break;
                idx[i] = 0;
                if (i == 0) done = true;
            }
            if (done) break;
        }
        return out;
    }

    // characteristic-0 path
    bool has_all_sort = false;
    for (const auto& [name, sort] : t.vars)
        if (sort == Sort::all) has_all_sort = true;

    if (has_all_sort) {
        // polarize the concrete evaluation directly (requires homogeneity)
        std::vector<catalog_detail::PolarizedVar> pvars;
        for (const auto& [name, sort] : t.vars) {
            int deg = catalog_detail::typed_degree(diff, name);
            if (deg == 0) continue;
            pvars.push_back({name, sort, deg, space_of(sort)});
        }
        auto F = [&](const std::map<std::string, Element>& binding) {
            Instantiation inst{&a, &d, {}, {}};
            for (const auto& [n, v] : binding) inst.elements.insert_or_assign(n, v);
            ConcreteValue v = eval_typed_concrete(diff, inst);
            return v.scalar ? d.axis * v.s : v.e;
        };
        return catalog_detail::polarized_basis_check(a, pvars, F, budget);
    }

    // expand in the graded calculus, split into multidegree components,
    // polarize each component
    GradedExpr g = expand_and_project(diff);
    if (g.is_zero()) return TemplateOutcome{};

    std::vector<std::string> names;
    for (const auto& [name, sort] : t.vars) names.push_back(name);

    for (const auto& mdeg : g.multidegrees(names)) {
        GradedExpr comp = g.multidegree_component(mdeg);
        if (comp.is_zero()) continue;
        std::vector<catalog_detail::PolarizedVar> pvars;
        for (const auto& [name, sort] : t.vars) {
            auto it = mdeg.find(name);
            int deg = it == mdeg.end() ? 0 : it->second;
            if (deg == 0) continue;
            pvars.push_back({name, sort, deg, space_of(sort)});
        }
        auto F = [&](const std::map<std::string, Element>& binding) {
            Instantiation inst{&a, &d, {}, {}};
            for (const auto& [n, v] : binding) inst.elements.insert_or_assign(n, v);
            return instantiate(comp, inst);
        };
        TemplateOutcome r = catalog_detail::polarized_basis_check(a, pvars, F, budget);
        if (!r.pass) return r;
    }
    return TemplateOutcome{};
}

struct EntryResult {
    std::string id;
    std::string anchor;
    TemplateOutcome outcome;
};

// entries in catalog order; empty filter = the whole catalog
inline std::vector<EntryResult> check_catalog(const AlgebraDef& a, const PeirceDecomposition& d,
                                              const std::vector<std::string>& ids = {},
                                              unsigned long long budget = kDefaultBudget) {
    std::vector<EntryResult> out;
    if (ids.empty()) {
        for (const auto& t : builtin_catalog())
            out.push_back({t.id, t.anchor, check_template(a, d, t, budget)});
        return out;
    }
    for (const auto& id : ids) {
        const IdentityTemplate* t = catalog_lookup(id);
        if (!t) throw Error("unknown catalog id '" + id + "'");
        out.push_back({t->id, t->anchor, check_template(a, d, *t, budget)});
    }
    return out;
}

}  // namespace axial
