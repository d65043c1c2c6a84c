#pragma once

/*
 * gradedsym.hpp
 * -------------
 * Symbolic computation in the Peirce grading of a fixed half-axis e.
 *
 * Typed expressions are built from sorted variables (U, Z, scalar), the
 * reserved axis symbol e, products, sums, rational coefficients, and the
 * functionals delta(.), zpart(.), upart(.).  Expansion rewrites every product
 * by the eigenvalue and fusion rules
 *
 *     e e = e,   e u = 1/2 u,   e z = 0,
 *     u u' = delta(u u') e + zpart(u u'),   u z in U,   z z' in Z,
 *
 * leaving opaque graded atoms.  A GradedExpr is the resulting formal sum:
 * an e-coefficient plus U- and Z-graded atom terms, all with coefficients in
 * Q[scalar indeterminates, delta symbols].
 */

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <vector>

#include "axial/peirce.hpp"

namespace axial {

enum class Sort { axis, u, z, all, scalar };

inline std::string sort_name(Sort s) {
    switch (s) {
        case Sort::axis: return "axis";
        case Sort::u: return "U";
        case Sort::z: return "Z";
        case Sort::all: return "A";
        case Sort::scalar: return "scalar";
    }
    return "?";
}

struct SortedVar {
    std::string name;
    Sort sort;
    bool operator<(const SortedVar& o) const { return name < o.name; }
    bool operator==(const SortedVar& o) const { return name == o.name && sort == o.sort; }
};

// ---------------------------------------------------------------------------
// graded atoms

enum class Grade { u, z };

namespace gsym {

struct Atom;
using AtomPtr = const Atom*;

struct Atom {
    enum Kind { leaf, prod, zpart } kind;
    Grade grade;
    int id;
    int degree;  // variable occurrences, including inside zpart
    std::string var;
    AtomPtr a = nullptr, b = nullptr;
    std::map<std::string, int> mdeg;
};

inline int atom_cmp(AtomPtr x, AtomPtr y) {
    if (x == y) return 0;
    if (x->degree != y->degree) return x->degree < y->degree ? -1 : 1;
    if (x->kind != y->kind) return static_cast<int>(x->kind) < static_cast<int>(y->kind) ? -1 : 1;
    if (x->kind == Atom::leaf) return x->var.compare(y->var);
    int c = atom_cmp(x->a, y->a);
    if (c) return c;
    return atom_cmp(x->b, y->b);
}

class AtomPool {
public:
    static AtomPool& instance() {
        static AtomPool pool;
        return pool;
    }

    AtomPtr leaf(const std::string& name, Grade g) {
        std::lock_guard<std::mutex> lock(mu_);
        auto key = name + (g == Grade::u ? "#u" : "#z");
        auto it = leaves_.find(key);
        if (it != leaves_.end()) return it->second;
        auto node = std::make_unique<Atom>();
        node->kind = Atom::leaf;
        node->grade = g;
        node->id = next_id_++;
        node->degree = 1;
        node->var = name;
        node->mdeg[name] = 1;
        AtomPtr p = node.get();
        store_.push_back(std::move(node));
        leaves_.emplace(key, p);
        return p;
    }

    // u*z or z*z product; u*u pairs must go through delta/zpart
    AtomPtr product(AtomPtr x, AtomPtr y) {
        if (x->grade == Grade::u && y->grade == Grade::u)
            throw Error("internal: U*U products must be split into delta and zpart");
        if (atom_cmp(x, y) > 0) std::swap(x, y);
        Grade g = (x->grade == Grade::u || y->grade == Grade::u) ? Grade::u : Grade::z;
        return intern(Atom::prod, g, x, y);
    }

    // Z-part of the product of two U-atoms
    AtomPtr zpart_pair(AtomPtr x, AtomPtr y) {
        if (x->grade != Grade::u || y->grade != Grade::u)
            throw Error("internal: zpart atoms require two U-graded arguments");
        if (atom_cmp(x, y) > 0) std::swap(x, y);
        return intern(Atom::zpart, Grade::z, x, y);
    }

private:
    AtomPtr intern(Atom::Kind kind, Grade g, AtomPtr x, AtomPtr y) {
        std::lock_guard<std::mutex> lock(mu_);
        auto key = std::make_tuple(static_cast<int>(kind), x->id, y->id);
        auto it = nodes_.find(key);
        if (it != nodes_.end()) return it->second;
        auto node = std::make_unique<Atom>();
        node->kind = kind;
        node->grade = g;
        node->id = next_id_++;
        node->degree = x->degree + y->degree;
        node->a = x;
        node->b = y;
        node->mdeg = x->mdeg;
        for (const auto& [v, d] : y->mdeg) node->mdeg[v] += d;
        AtomPtr p = node.get();
        store_.push_back(std::move(node));
        nodes_.emplace(key, p);
        return p;
    }

    std::mutex mu_;
    int next_id_ = 0;
    std::vector<std::unique_ptr<Atom>> store_;
    std::map<std::string, AtomPtr> leaves_;
    std::map<std::tuple<int, int, int>, AtomPtr> nodes_;
};

inline std::string atom_str(AtomPtr a, bool outer = false) {
    if (a->kind == Atom::leaf) return a->var;
    if (a->kind == Atom::zpart)
        return "zpart(" + atom_str(a->a, true) + " " + atom_str(a->b, true) + ")";
    std::string s = atom_str(a->a) + " " + atom_str(a->b);
    return outer ? s : "(" + s + ")";
}

// ---------------------------------------------------------------------------
// coefficient ring: Q[indeterminates, delta symbols]

struct Sym {
    enum Kind { indet, delta } kind;
    int id;
    std::string name;            // indeterminate
    AtomPtr a = nullptr, b = nullptr;  // delta pair (U-atoms, sorted)
    std::map<std::string, int> mdeg;   // variable occurrences (empty for indet)
};
using SymPtr = const Sym*;

inline int sym_cmp(SymPtr x, SymPtr y) {
    if (x == y) return 0;
    if (x->kind != y->kind) return x->kind == Sym::indet ? -1 : 1;
    if (x->kind == Sym::indet) return x->name.compare(y->name);
    int c = atom_cmp(x->a, y->a);
    if (c) return c;
    return atom_cmp(x->b, y->b);
}

class SymPool {
public:
    static SymPool& instance() {
        static SymPool pool;
        return pool;
    }

    SymPtr indet(const std::string& name) {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = indets_.find(name);
        if (it != indets_.end()) return it->second;
        auto node = std::make_unique<Sym>();
        node->kind = Sym::indet;
        node->id = next_id_++;
        node->name = name;
        SymPtr p = node.get();
        store_.push_back(std::move(node));
        indets_.emplace(name, p);
        return p;
    }

    SymPtr delta_pair(AtomPtr x, AtomPtr y) {
        if (x->grade != Grade::u || y->grade != Grade::u)
            throw Error("internal: delta symbols require two U-graded arguments");
        if (atom_cmp(x, y) > 0) std::swap(x, y);
        std::lock_guard<std::mutex> lock(mu_);
        auto key = std::make_pair(x->id, y->id);
        auto it = deltas_.find(key);
        if (it != deltas_.end()) return it->second;
        auto node = std::make_unique<Sym>();
        node->kind = Sym::delta;
        node->id = next_id_++;
        node->a = x;
        node->b = y;
        node->mdeg = x->mdeg;
        for (const auto& [v, d] : y->mdeg) node->mdeg[v] += d;
        SymPtr p = node.get();
        store_.push_back(std::move(node));
        deltas_.emplace(key, p);
        return p;
    }

private:
    std::mutex mu_;
    int next_id_ = 0;
    std::vector<std::unique_ptr<Sym>> store_;
    std::map<std::string, SymPtr> indets_;
    std::map<std::pair<int, int>, SymPtr> deltas_;
};

inline std::string sym_str(SymPtr s) {
    if (s->kind == Sym::indet) return s->name;
    return "delta(" + atom_str(s->a, true) + " " + atom_str(s->b, true) + ")";
}

struct SymMonoLess {
    bool operator()(const std::vector<SymPtr>& x, const std::vector<SymPtr>& y) const {
        std::size_t n = std::min(x.size(), y.size());
        for (std::size_t i = 0; i < n; ++i) {
            int c = sym_cmp(x[i], y[i]);
            if (c) return c < 0;
        }
        return x.size() < y.size();
    }
};

}  // namespace gsym

class ScalarPoly {
public:
    using Mono = std::vector<gsym::SymPtr>;  // sorted, duplicates = powers

    ScalarPoly() = default;
    explicit ScalarPoly(const Rat& c) {
        if (c != 0) terms_[{}] = c;
    }
    static ScalarPoly indeterminate(const std::string& name) {
        ScalarPoly p;
        p.terms_[{gsym::SymPool::instance().indet(name)}] = 1;
        return p;
    }
    static ScalarPoly delta_symbol(gsym::AtomPtr a, gsym::AtomPtr b) {
        ScalarPoly p;
        p.terms_[{gsym::SymPool::instance().delta_pair(a, b)}] = 1;
        return p;
    }

    const std::map<Mono, Rat, gsym::SymMonoLess>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool operator==(const ScalarPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const ScalarPoly& o) const { return !(*this == o); }

    ScalarPoly operator+(const ScalarPoly& o) const {
        ScalarPoly r = *this;
        for (const auto& [m, c] : o.terms_) r.add(m, c);
        return r;
    }
    ScalarPoly operator-(const ScalarPoly& o) const {
        ScalarPoly r = *this;
        for (const auto& [m, c] : o.terms_) r.add(m, -c);
        return r;
    }
    ScalarPoly operator*(const ScalarPoly& o) const {
        ScalarPoly r;
        for (const auto& [m1, c1] : terms_)
            for (const auto& [m2, c2] : o.terms_) {
                Mono m;
                m.reserve(m1.size() + m2.size());
                std::merge(m1.begin(), m1.end(), m2.begin(), m2.end(), std::back_inserter(m),
                           [](gsym::SymPtr x, gsym::SymPtr y) { return gsym::sym_cmp(x, y) < 0; });
                r.add(m, c1 * c2);
            }
        return r;
    }
    ScalarPoly operator*(const Rat& c) const {
        ScalarPoly r;
        if (c == 0) return r;
        for (const auto& [m, k] : terms_) r.terms_[m] = k * c;
        return r;
    }
    ScalarPoly operator-() const { return *this * Rat(-1); }

    // total occurrences of a typed variable in a monomial (inside deltas)
    static int mono_degree_in(const Mono& m, const std::string& var) {
        int d = 0;
        for (gsym::SymPtr s : m) {
            auto it = s->mdeg.find(var);
            if (it != s->mdeg.end()) d += it->second;
        }
        return d;
    }

    // occurrences of an indeterminate symbol in a monomial
    static int mono_indet_power(const Mono& m, gsym::SymPtr sym) {
        int d = 0;
        for (gsym::SymPtr s : m)
            if (s == sym) ++d;
        return d;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            Rat a = c;
            if (first) {
                if (a < 0) {
                    out += "-";
                    a = -a;
                }
            } else {
                out += a < 0 ? " - " : " + ";
                if (a < 0) a = -a;
            }
            std::string ms;
            for (gsym::SymPtr s : m) ms += (ms.empty() ? "" : " ") + gsym::sym_str(s);
            if (ms.empty()) out += a.get_str();
            else if (a == 1) out += ms;
            else out += a.get_str() + " " + ms;
            first = false;
        }
        return out;
    }

private:
    void add(const Mono& m, const Rat& c) {
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            if (c != 0) terms_[m] = c;
            return;
        }
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }

    std::map<Mono, Rat, gsym::SymMonoLess> terms_;
    friend class GradedExpr;
};

// ---------------------------------------------------------------------------
// graded expressions

class GradedExpr {
public:
    struct AtomLess {
        bool operator()(gsym::AtomPtr x, gsym::AtomPtr y) const { return gsym::atom_cmp(x, y) < 0; }
    };
    using Part = std::map<gsym::AtomPtr, ScalarPoly, AtomLess>;

    GradedExpr() = default;

    static GradedExpr axis_unit() {
        GradedExpr g;
        g.e_ = ScalarPoly(Rat(1));
        return g;
    }
    static GradedExpr atom_unit(gsym::AtomPtr a) {
        GradedExpr g;
        (a->grade == Grade::u ? g.u_ : g.z_)[a] = ScalarPoly(Rat(1));
        return g;
    }
    static GradedExpr from_scalar_times_axis(const ScalarPoly& s) {
        GradedExpr g;
        g.e_ = s;
        return g;
    }

    const ScalarPoly& e_coeff() const { return e_; }
    const Part& u_part() const { return u_; }
    const Part& z_part() const { return z_; }

    bool is_zero() const { return e_.is_zero() && u_.empty() && z_.empty(); }

    bool operator==(const GradedExpr& o) const {
        return e_ == o.e_ && part_eq(u_, o.u_) && part_eq(z_, o.z_);
    }
    bool operator!=(const GradedExpr& o) const { return !(*this == o); }

    GradedExpr operator+(const GradedExpr& o) const {
        GradedExpr r = *this;
        r.e_ = r.e_ + o.e_;
        for (const auto& [a, p] : o.u_) r.add_part(r.u_, a, p);
        for (const auto& [a, p] : o.z_) r.add_part(r.z_, a, p);
        return r;
    }
    GradedExpr operator-(const GradedExpr& o) const { return *this + (o * Rat(-1)); }
    GradedExpr operator*(const Rat& c) const { return scaled(ScalarPoly(c)); }

    GradedExpr scaled(const ScalarPoly& s) const {
        GradedExpr r;
        if (s.is_zero()) return r;
        r.e_ = e_ * s;
        for (const auto& [a, p] : u_) r.add_part(r.u_, a, p * s);
        for (const auto& [a, p] : z_) r.add_part(r.z_, a, p * s);
        return r;
    }

    // restriction to one grade
    GradedExpr only_e() const {
        GradedExpr r;
        r.e_ = e_;
        return r;
    }
    GradedExpr only_u() const {
        GradedExpr r;
        r.u_ = u_;
        return r;
    }
    GradedExpr only_z() const {
        GradedExpr r;
        r.z_ = z_;
        return r;
    }

    friend GradedExpr graded_mul(const GradedExpr& x, const GradedExpr& y) {
        auto& atoms = gsym::AtomPool::instance();
        GradedExpr r;
        // e * e
        r.e_ = x.e_ * y.e_;
        // e * u and u * e: eigenvalue 1/2
        for (const auto& [a, p] : y.u_) r.add_part(r.u_, a, x.e_ * p * Rat(1, 2));
        for (const auto& [a, p] : x.u_) r.add_part(r.u_, a, p * y.e_ * Rat(1, 2));
        // e * z = 0
        // u * u': delta e + zpart
        for (const auto& [a1, p1] : x.u_)
            for (const auto& [a2, p2] : y.u_) {
                ScalarPoly c = p1 * p2;
                r.e_ = r.e_ + ScalarPoly::delta_symbol(a1, a2) * c;
                r.add_part(r.z_, atoms.zpart_pair(a1, a2), c);
            }
        // u * z and z * u stay in U
        for (const auto& [a1, p1] : x.u_)
            for (const auto& [a2, p2] : y.z_) r.add_part(r.u_, atoms.product(a1, a2), p1 * p2);
        for (const auto& [a1, p1] : x.z_)
            for (const auto& [a2, p2] : y.u_) r.add_part(r.u_, atoms.product(a1, a2), p1 * p2);
        // z * z' stays in Z
        for (const auto& [a1, p1] : x.z_)
            for (const auto& [a2, p2] : y.z_) r.add_part(r.z_, atoms.product(a1, a2), p1 * p2);
        return r;
    }

    // per-variable degree of every term must match the map exactly
    GradedExpr multidegree_component(const std::map<std::string, int>& want) const {
        auto mono_matches = [&](const ScalarPoly::Mono& m,
                                const std::map<std::string, int>& base) {
            std::map<std::string, int> total = base;
            for (gsym::SymPtr s : m)
                for (const auto& [v, d] : s->mdeg) total[v] += d;
            for (auto it = total.begin(); it != total.end();) {
                if (it->second == 0) it = total.erase(it);
                else ++it;
            }
            std::map<std::string, int> w = want;
            for (auto it = w.begin(); it != w.end();) {
                if (it->second == 0) it = w.erase(it);
                else ++it;
            }
            return total == w;
        };
        GradedExpr r;
        for (const auto& [m, c] : e_.terms_)
            if (mono_matches(m, {})) r.e_.terms_[m] = c;
        for (const auto& [a, p] : u_) {
            ScalarPoly keep;
            for (const auto& [m, c] : p.terms())
                if (mono_matches(m, a->mdeg)) keep.terms_[m] = c;
            if (!keep.is_zero()) r.u_[a] = keep;
        }
        for (const auto& [a, p] : z_) {
            ScalarPoly keep;
            for (const auto& [m, c] : p.terms())
                if (mono_matches(m, a->mdeg)) keep.terms_[m] = c;
            if (!keep.is_zero()) r.z_[a] = keep;
        }
        return r;
    }

    // all distinct per-term multidegrees over the given variables
    std::set<std::map<std::string, int>> multidegrees(const std::vector<std::string>& vars) const {
        std::set<std::map<std::string, int>> out;
        auto record = [&](const ScalarPoly::Mono& m, const std::map<std::string, int>& base) {
            std::map<std::string, int> total;
            for (const auto& v : vars) {
                int d = 0;
                auto it = base.find(v);
                if (it != base.end()) d += it->second;
                d += ScalarPoly::mono_degree_in(m, v);
                if (d) total[v] = d;
            }
            out.insert(total);
        };
        for (const auto& [m, c] : e_.terms_) record(m, {});
        for (const auto& [a, p] : u_)
            for (const auto& [m, c] : p.terms()) record(m, a->mdeg);
        for (const auto& [a, p] : z_)
            for (const auto& [m, c] : p.terms()) record(m, a->mdeg);
        return out;
    }

    // divide by the first rational coefficient so scalar multiples agree
    GradedExpr normalized() const {
        Rat lead(0);
        if (!e_.terms_.empty()) lead = e_.terms_.begin()->second;
        else if (!u_.empty()) lead = u_.begin()->second.terms().begin()->second;
        else if (!z_.empty()) lead = z_.begin()->second.terms().begin()->second;
        if (lead == 0 || lead == 1) return *this;
        GradedExpr r = *this;
        Rat inv = 1 / lead;
        r.e_ = r.e_ * inv;
        for (auto& [a, p] : r.u_) p = p * inv;
        for (auto& [a, p] : r.z_) p = p * inv;
        return r;
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string out;
        auto emit = [&](const std::string& piece) {
            if (!piece.empty()) out += (out.empty() ? "" : " + ") + piece;
        };
        if (!e_.is_zero()) emit("[" + e_.str() + "] e");
        for (const auto& [a, p] : u_) emit("[" + p.str() + "] " + gsym::atom_str(a));
        for (const auto& [a, p] : z_) emit("[" + p.str() + "] " + gsym::atom_str(a));
        return out;
    }

private:
    static void add_part(Part& part, gsym::AtomPtr a, const ScalarPoly& p) {
        if (p.is_zero()) return;
        auto it = part.find(a);
        if (it == part.end()) {
            part.emplace(a, p);
            return;
        }
        it->second = it->second + p;
        if (it->second.is_zero()) part.erase(it);
    }

    static bool part_eq(const Part& x, const Part& y) {
        if (x.size() != y.size()) return false;
        auto i = x.begin();
        auto j = y.begin();
        for (; i != x.end(); ++i, ++j)
            if (i->first != j->first || !(i->second == j->second)) return false;
        return true;
    }

    ScalarPoly e_;
    Part u_, z_;
};

// ---------------------------------------------------------------------------
// typed expressions

struct TypedExpr;
using TypedExprPtr = std::shared_ptr<const TypedExpr>;

struct TypedExpr {
    enum Kind { sum, prod, coeff, var, axis, delta_f, zpart_f, upart_f } kind;
    Rat c;  // for coeff
    SortedVar v;
    std::vector<TypedExprPtr> kids;

    static TypedExprPtr make_var(const SortedVar& sv) {
        auto n = std::make_shared<TypedExpr>();
        n->kind = var;
        n->v = sv;
        return n;
    }
    static TypedExprPtr make_axis() {
        auto n = std::make_shared<TypedExpr>();
        n->kind = axis;
        return n;
    }
    static TypedExprPtr make_sum(std::vector<TypedExprPtr> kids) {
        auto n = std::make_shared<TypedExpr>();
        n->kind = sum;
        n->kids = std::move(kids);
        return n;
    }
    static TypedExprPtr make_prod(TypedExprPtr a, TypedExprPtr b) {
        auto n = std::make_shared<TypedExpr>();
        n->kind = prod;
        n->kids = {std::move(a), std::move(b)};
        return n;
    }
    static TypedExprPtr make_coeff(const Rat& r, TypedExprPtr child) {
        auto n = std::make_shared<TypedExpr>();
        n->kind = coeff;
        n->c = r;
        n->kids = {std::move(child)};
        return n;
    }
    static TypedExprPtr make_functional(Kind k, TypedExprPtr child) {
        auto n = std::make_shared<TypedExpr>();
        n->kind = k;
        n->kids = {std::move(child)};
        return n;
    }
};

inline TypedExprPtr typed_power_left_normed(TypedExprPtr base, int n) {
    if (n < 1) throw Error("power requires exponent >= 1");
    TypedExprPtr r = base;
    for (int i = 1; i < n; ++i) r = TypedExpr::make_prod(r, base);
    return r;
}

// collects variables with their sorts (scalar indeterminates included)
inline void typed_variables(const TypedExprPtr& e, std::map<std::string, Sort>& out) {
    if (e->kind == TypedExpr::var) {
        auto it = out.find(e->v.name);
        if (it != out.end() && it->second != e->v.sort)
            throw SortViolation("variable '" + e->v.name + "' used with two sorts");
        out[e->v.name] = e->v.sort;
        return;
    }
    for (const auto& k : e->kids) typed_variables(k, out);
}

// ---------------------------------------------------------------------------
// typed parser: the free-polynomial grammar plus 'e', functionals and an
// optional declaration prefix "u:U, z:Z, r:scalar; <expr>"

namespace gsym {

class TypedParser {
public:
    TypedParser(const std::string& text, std::map<std::string, Sort> sorts)
        : s_(text), sorts_(std::move(sorts)) {}

    TypedExprPtr parse() {
        TypedExprPtr lhs = parse_poly();
        skip_ws();
        if (peek() == '=') {
            ++pos_;
            TypedExprPtr rhs = parse_poly();
            skip_ws();
            if (pos_ != s_.size()) throw ParseError("unexpected input after expression", pos_);
            return TypedExpr::make_sum({lhs, TypedExpr::make_coeff(Rat(-1), rhs)});
        }
        if (pos_ != s_.size())
            throw ParseError("unexpected character '" + std::string(1, peek()) + "'", pos_);
        return lhs;
    }

private:
    TypedExprPtr parse_poly() {
        skip_ws();
        bool neg = false;
        if (peek() == '-') {
            neg = true;
            ++pos_;
        } else if (peek() == '+') {
            ++pos_;
        }
        std::vector<TypedExprPtr> terms;
        TypedExprPtr t = parse_term();
        terms.push_back(neg ? TypedExpr::make_coeff(Rat(-1), t) : t);
        while (true) {
            skip_ws();
            char ch = peek();
            if (ch == '+' || ch == '-') {
                ++pos_;
                TypedExprPtr nt = parse_term();
                terms.push_back(ch == '-' ? TypedExpr::make_coeff(Rat(-1), nt) : nt);
            } else {
                break;
            }
        }
        return terms.size() == 1 ? terms[0] : TypedExpr::make_sum(terms);
    }

    TypedExprPtr parse_term() {
        skip_ws();
        Rat coeff(1);
        bool have_coeff = false;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            coeff = parse_rational();
            have_coeff = true;
        }
        std::vector<TypedExprPtr> factors;
        while (true) {
            skip_ws();
            char ch = peek();
            if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_' || ch == '(' || ch == '[') {
                if (factors.size() == 2)
                    throw ParseError("ambiguous juxtaposition of three or more factors; add parentheses",
                                     pos_);
                factors.push_back(parse_factor());
            } else {
                break;
            }
        }
        if (factors.empty()) {
            if (have_coeff) throw ParseError("expected a factor after coefficient", pos_);
            throw ParseError("expected a term", pos_);
        }
        TypedExprPtr p = factors.size() == 2 ? TypedExpr::make_prod(factors[0], factors[1]) : factors[0];
        return coeff == 1 ? p : TypedExpr::make_coeff(coeff, p);
    }

    TypedExprPtr parse_factor() {
        TypedExprPtr base = parse_primary();
        while (true) {
            skip_ws();
            if (peek() != '^') break;
            ++pos_;
            skip_ws();
            if (!std::isdigit(static_cast<unsigned char>(peek())))
                throw ParseError("expected an integer exponent", pos_);
            long n = parse_int();
            if (n < 1) throw ParseError("exponent must be >= 1", pos_);
            base = typed_power_left_normed(base, static_cast<int>(n));
        }
        return base;
    }

    TypedExprPtr parse_primary() {
        skip_ws();
        char ch = peek();
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::size_t start = pos_;
            std::string id = parse_ident();
            if (id == "delta" || id == "zpart" || id == "upart") {
                skip_ws();
                if (peek() == '(') {
                    ++pos_;
                    TypedExprPtr arg = parse_poly();
                    expect(')');
                    TypedExpr::Kind k = id == "delta" ? TypedExpr::delta_f
                                        : id == "zpart" ? TypedExpr::zpart_f
                                                        : TypedExpr::upart_f;
                    return TypedExpr::make_functional(k, arg);
                }
            }
            if (id == "e") return TypedExpr::make_axis();
            auto it = sorts_.find(id);
            if (it == sorts_.end())
                throw ParseError("unknown variable '" + id + "' (no sort declared)", start);
            return TypedExpr::make_var(SortedVar{id, it->second});
        }
        if (ch == '(') {
            ++pos_;
            TypedExprPtr p = parse_poly();
            expect(')');
            return p;
        }
        if (ch == '[') {
            ++pos_;
            TypedExprPtr x = parse_poly();
            expect(',');
            TypedExprPtr y = parse_poly();
            expect(',');
            TypedExprPtr z = parse_poly();
            expect(']');
            // (xy)z - x(yz)
            return TypedExpr::make_sum(
                {TypedExpr::make_prod(TypedExpr::make_prod(x, y), z),
                 TypedExpr::make_coeff(Rat(-1), TypedExpr::make_prod(x, TypedExpr::make_prod(y, z)))});
        }
        throw ParseError("expected a variable, '(' or '['", pos_);
    }

    Rat parse_rational() {
        long num = parse_int();
        skip_ws();
        if (peek() == '/') {
            ++pos_;
            skip_ws();
            if (!std::isdigit(static_cast<unsigned char>(peek())))
                throw ParseError("expected a denominator", pos_);
            long den = parse_int();
            if (den == 0) throw ParseError("zero denominator", pos_);
            return Rat(num, den);
        }
        return Rat(num);
    }

    long parse_int() {
        std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        return std::stol(s_.substr(start, pos_ - start));
    }

    std::string parse_ident() {
        std::size_t start = pos_;
        while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') ++pos_;
        return s_.substr(start, pos_ - start);
    }

    void expect(char ch) {
        skip_ws();
        if (peek() != ch) throw ParseError("expected '" + std::string(1, ch) + "'", pos_);
        ++pos_;
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

    const std::string& s_;
    std::map<std::string, Sort> sorts_;
    std::size_t pos_ = 0;
};

}  // namespace gsym

// Parse with explicit sort declarations.
inline TypedExprPtr parse_typed(const std::string& text, const std::map<std::string, Sort>& sorts) {
    return gsym::TypedParser(text, sorts).parse();
}

// Parse "u:U, z:Z, r:scalar; <expr>".  Sorts: U, Z, A (whole algebra),
// scalar/S.  'e' is reserved for the axis.
inline TypedExprPtr parse_typed_with_decls(const std::string& text,
                                           std::map<std::string, Sort>* sorts_out = nullptr) {
    auto semi = text.find(';');
    if (semi == std::string::npos)
        throw ParseError("expected declarations 'name:SORT, ...;' before the expression", 0);
    std::map<std::string, Sort> sorts;
    std::string decls = text.substr(0, semi);
    std::size_t start = 0;
    while (start < decls.size()) {
        auto comma = decls.find(',', start);
        std::string item = decls.substr(start, comma == std::string::npos ? std::string::npos
                                                                          : comma - start);
        auto colon = item.find(':');
        if (colon == std::string::npos) throw ParseError("bad declaration '" + item + "'", start);
        auto strip = [](std::string s) {
            std::size_t b = s.find_first_not_of(" \t");
            std::size_t e = s.find_last_not_of(" \t");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string name = strip(item.substr(0, colon));
        std::string sort = strip(item.substr(colon + 1));
        if (name.empty() || name == "e") throw ParseError("bad variable name '" + name + "'", start);
        Sort s;
        if (sort == "U" || sort == "u") s = Sort::u;
        else if (sort == "Z" || sort == "z") s = Sort::z;
        else if (sort == "A" || sort == "a") s = Sort::all;
        else if (sort == "S" || sort == "scalar") s = Sort::scalar;
        else throw ParseError("unknown sort '" + sort + "'", start);
        sorts[name] = s;
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (sorts_out) *sorts_out = sorts;
    return gsym::TypedParser(text.substr(semi + 1), sorts).parse();
}

// ---------------------------------------------------------------------------
// expansion

struct TypedValue {
    bool scalar = false;
    ScalarPoly s;
    GradedExpr g;
};

namespace gsym {

inline TypedValue expand_value(const TypedExprPtr& n) {
    auto& atoms = AtomPool::instance();
    switch (n->kind) {
        case TypedExpr::axis: {
            TypedValue v;
            v.g = GradedExpr::axis_unit();
            return v;
        }
        case TypedExpr::var: {
            TypedValue v;
            if (n->v.sort == Sort::scalar) {
                v.scalar = true;
                v.s = ScalarPoly::indeterminate(n->v.name);
            } else if (n->v.sort == Sort::u) {
                v.g = GradedExpr::atom_unit(atoms.leaf(n->v.name, Grade::u));
            } else if (n->v.sort == Sort::z) {
                v.g = GradedExpr::atom_unit(atoms.leaf(n->v.name, Grade::z));
            } else {
                throw SortViolation("variable '" + n->v.name +
                                    "' of sort A cannot be expanded in the graded calculus");
            }
            return v;
        }
        case TypedExpr::coeff: {
            TypedValue v = expand_value(n->kids[0]);
            if (v.scalar) v.s = v.s * n->c;
            else v.g = v.g * n->c;
            return v;
        }
        case TypedExpr::sum: {
            TypedValue acc = expand_value(n->kids[0]);
            for (std::size_t i = 1; i < n->kids.size(); ++i) {
                TypedValue k = expand_value(n->kids[i]);
                if (k.scalar != acc.scalar)
                    throw SortViolation("cannot add a scalar to an algebra element");
                if (acc.scalar) acc.s = acc.s + k.s;
                else acc.g = acc.g + k.g;
            }
            return acc;
        }
        case TypedExpr::prod: {
            TypedValue a = expand_value(n->kids[0]);
            TypedValue b = expand_value(n->kids[1]);
            TypedValue v;
            if (a.scalar && b.scalar) {
                v.scalar = true;
                v.s = a.s * b.s;
            } else if (a.scalar) {
                v.g = b.g.scaled(a.s);
            } else if (b.scalar) {
                v.g = a.g.scaled(b.s);
            } else {
                v.g = graded_mul(a.g, b.g);
            }
            return v;
        }
        case TypedExpr::delta_f: {
            TypedValue a = expand_value(n->kids[0]);
            if (a.scalar) throw SortViolation("delta() needs an algebra element");
            TypedValue v;
            v.scalar = true;
            v.s = a.g.e_coeff();
            return v;
        }
        case TypedExpr::zpart_f: {
            TypedValue a = expand_value(n->kids[0]);
            if (a.scalar) throw SortViolation("zpart() needs an algebra element");
            TypedValue v;
            v.g = a.g.only_z();
            return v;
        }
        case TypedExpr::upart_f: {
            TypedValue a = expand_value(n->kids[0]);
            if (a.scalar) throw SortViolation("upart() needs an algebra element");
            TypedValue v;
            v.g = a.g.only_u();
            return v;
        }
    }
    throw Error("internal: unhandled typed expression kind");
}

}  // namespace gsym

// Fully expanded canonical GradedExpr of an element-valued typed expression.
inline GradedExpr expand_and_project(const TypedExprPtr& expr) {
    TypedValue v = gsym::expand_value(expr);
    if (v.scalar) throw SortViolation("expression is scalar-valued, not an algebra element");
    return v.g;
}

// ---------------------------------------------------------------------------
// coefficient extraction (polynomials in scalar indeterminates)

struct CoefficientIdentity {
    std::map<std::string, int> indet_monomial;  // e.g. {r:1, s:2}
    GradedExpr expr;                            // delta-coefficient identity, normalized
};

inline std::vector<CoefficientIdentity> extract_coefficient_identities(
    const TypedExprPtr& lhs_minus_rhs, const std::vector<std::string>& indets) {
    GradedExpr g = expand_and_project(lhs_minus_rhs);

    std::vector<gsym::SymPtr> indet_syms;
    for (const auto& name : indets) indet_syms.push_back(gsym::SymPool::instance().indet(name));

    auto split_mono = [&](const ScalarPoly::Mono& m) {
        std::map<std::string, int> key;
        ScalarPoly::Mono rest;
        for (gsym::SymPtr s : m) {
            bool is_indet = false;
            for (std::size_t i = 0; i < indet_syms.size(); ++i)
                if (s == indet_syms[i]) {
                    ++key[indets[i]];
                    is_indet = true;
                    break;
                }
            if (!is_indet) rest.push_back(s);
        }
        return std::make_pair(key, rest);
    };

    std::map<std::map<std::string, int>, GradedExpr> groups;
    for (const auto& [m, c] : g.e_coeff().terms()) {
        auto [key, rest] = split_mono(m);
        ScalarPoly restpoly = ScalarPoly(c);
        for (gsym::SymPtr s : rest) {
            ScalarPoly single;
            if (s->kind == gsym::Sym::indet) single = ScalarPoly::indeterminate(s->name);
            else single = ScalarPoly::delta_symbol(s->a, s->b);
            restpoly = restpoly * single;
        }
        groups[key] = groups[key] + GradedExpr::from_scalar_times_axis(restpoly);
    }
    auto handle_part = [&](const GradedExpr::Part& part, bool is_u) {
        for (const auto& [a, p] : part) {
            for (const auto& [m, c] : p.terms()) {
                auto [key, rest] = split_mono(m);
                ScalarPoly restpoly = ScalarPoly(c);
                for (gsym::SymPtr s : rest) {
                    ScalarPoly single;
                    if (s->kind == gsym::Sym::indet) single = ScalarPoly::indeterminate(s->name);
                    else single = ScalarPoly::delta_symbol(s->a, s->b);
                    restpoly = restpoly * single;
                }
                GradedExpr unit = GradedExpr::atom_unit(a);
                groups[key] = groups[key] + unit.scaled(restpoly);
            }
        }
    };
    handle_part(g.u_part(), true);
    handle_part(g.z_part(), false);

    // normalize, drop empties, merge duplicates up to rational scalar
    std::vector<CoefficientIdentity> out;
    std::set<std::string> seen;
    for (const auto& [key, expr] : groups) {
        if (expr.is_zero()) continue;
        GradedExpr norm = expr.normalized();
        std::string k = norm.str();
        if (seen.insert(k).second) out.push_back(CoefficientIdentity{key, norm});
    }
    return out;
}

// ---------------------------------------------------------------------------
// instantiation (symbolic -> concrete)

struct Instantiation {
    const AlgebraDef* algebra;
    const PeirceDecomposition* decomposition;
    std::map<std::string, Element> elements;  // typed element variables
    std::map<std::string, Scalar> scalars;    // scalar indeterminates

    // bindings must land in the right subspaces
    void check_sorts(const std::map<std::string, Sort>& sorts) const {
        for (const auto& [name, sort] : sorts) {
            if (sort == Sort::scalar) {
                if (!scalars.count(name)) throw UnassignedVariable(name);
                continue;
            }
            auto it = elements.find(name);
            if (it == elements.end()) throw UnassignedVariable(name);
            if (sort == Sort::u &&
                !detail::in_span(*algebra, decomposition->basis_half, it->second))
                throw SortViolation("binding for U-variable '" + name + "' is not in A_1/2(e)");
            if (sort == Sort::z &&
                !detail::in_span(*algebra, decomposition->basis_zero, it->second))
                throw SortViolation("binding for Z-variable '" + name + "' is not in A_0(e)");
        }
    }
};

namespace gsym {

inline Element eval_atom(AtomPtr a, const Instantiation& inst,
                         std::map<AtomPtr, Element>& cache) {
    auto it = cache.find(a);
    if (it != cache.end()) return it->second;
    const AlgebraDef& alg = *inst.algebra;
    Element r = alg.zero();
    switch (a->kind) {
        case Atom::leaf: {
            auto vit = inst.elements.find(a->var);
            if (vit == inst.elements.end()) throw UnassignedVariable(a->var);
            r = vit->second;
            break;
        }
        case Atom::prod:
            r = alg.product(eval_atom(a->a, inst, cache), eval_atom(a->b, inst, cache));
            break;
        case Atom::zpart:
            r = project_parts(*inst.decomposition,
                              alg.product(eval_atom(a->a, inst, cache), eval_atom(a->b, inst, cache)))
                    .z_part;
            break;
    }
    cache.emplace(a, r);
    return r;
}

inline Scalar eval_scalar_poly(const ScalarPoly& p, const Instantiation& inst,
                               std::map<AtomPtr, Element>& cache) {
    const AlgebraDef& alg = *inst.algebra;
    Scalar acc = Scalar::zero(alg.field());
    for (const auto& [m, c] : p.terms()) {
        Scalar term(alg.field(), c);
        for (SymPtr s : m) {
            if (s->kind == Sym::indet) {
                auto it = inst.scalars.find(s->name);
                if (it == inst.scalars.end()) throw UnassignedVariable(s->name);
                term *= it->second;
            } else {
                Element prod =
                    alg.product(eval_atom(s->a, inst, cache), eval_atom(s->b, inst, cache));
                term *= project_parts(*inst.decomposition, prod).delta;
            }
        }
        acc += term;
    }
    return acc;
}

}  // namespace gsym

// Evaluate a GradedExpr at a concrete sort-respecting binding.
inline Element instantiate(const GradedExpr& g, const Instantiation& inst) {
    std::map<gsym::AtomPtr, Element> cache;
    Element acc = inst.decomposition->axis * gsym::eval_scalar_poly(g.e_coeff(), inst, cache);
    for (const auto& [a, p] : g.u_part())
        acc = acc + gsym::eval_atom(a, inst, cache) * gsym::eval_scalar_poly(p, inst, cache);
    for (const auto& [a, p] : g.z_part())
        acc = acc + gsym::eval_atom(a, inst, cache) * gsym::eval_scalar_poly(p, inst, cache);
    return acc;
}

// Direct concrete evaluation of a typed expression (no graded expansion);
// used for sort-A variables and as the independent side of the commuting
// diagram between the symbolic and concrete routes.
struct ConcreteValue {
    bool scalar = false;
    Scalar s;
    Element e;
    ConcreteValue(Scalar sv) : scalar(true), s(std::move(sv)), e(Element(dummy(), Vec(FieldSpec::Q(), 1))) {}
    ConcreteValue(Element ev) : scalar(false), s(Scalar::zero(ev.algebra->field())), e(std::move(ev)) {}

private:
    static const AlgebraDef& dummy();
};

namespace gsym {

inline const AlgebraDef& concrete_dummy() {
    static AlgebraDef d(FieldSpec::Q(), {"1"},
                        std::vector<std::vector<std::vector<Scalar>>>(
                            1, std::vector<std::vector<Scalar>>(
                                   1, std::vector<Scalar>(1, Scalar::zero(FieldSpec::Q())))));
    return d;
}

}  // namespace gsym

inline const AlgebraDef& ConcreteValue::dummy() { return gsym::concrete_dummy(); }

inline ConcreteValue eval_typed_concrete(const TypedExprPtr& n, const Instantiation& inst) {
    const AlgebraDef& alg = *inst.algebra;
    switch (n->kind) {
        case TypedExpr::axis:
            return ConcreteValue(inst.decomposition->axis);
        case TypedExpr::var: {
            if (n->v.sort == Sort::scalar) {
                auto it = inst.scalars.find(n->v.name);
                if (it == inst.scalars.end()) throw UnassignedVariable(n->v.name);
                return ConcreteValue(it->second);
            }
            auto it = inst.elements.find(n->v.name);
            if (it == inst.elements.end()) throw UnassignedVariable(n->v.name);
            return ConcreteValue(it->second);
        }
        case TypedExpr::coeff: {
            ConcreteValue v = eval_typed_concrete(n->kids[0], inst);
            Scalar c(alg.field(), n->c);
            if (v.scalar) return ConcreteValue(v.s * c);
            return ConcreteValue(v.e * c);
        }
        case TypedExpr::sum: {
            ConcreteValue acc = eval_typed_concrete(n->kids[0], inst);
            for (std::size_t i = 1; i < n->kids.size(); ++i) {
                ConcreteValue k = eval_typed_concrete(n->kids[i], inst);
                if (k.scalar != acc.scalar)
                    throw SortViolation("cannot add a scalar to an algebra element");
                if (acc.scalar) acc.s += k.s;
                else acc.e = acc.e + k.e;
            }
            return acc;
        }
        case TypedExpr::prod: {
            ConcreteValue a = eval_typed_concrete(n->kids[0], inst);
            ConcreteValue b = eval_typed_concrete(n->kids[1], inst);
            if (a.scalar && b.scalar) return ConcreteValue(a.s * b.s);
            if (a.scalar) return ConcreteValue(b.e * a.s);
            if (b.scalar) return ConcreteValue(a.e * b.s);
            return ConcreteValue(alg.product(a.e, b.e));
        }
        case TypedExpr::delta_f: {
            ConcreteValue a = eval_typed_concrete(n->kids[0], inst);
            if (a.scalar) throw SortViolation("delta() needs an algebra element");
            return ConcreteValue(project_parts(*inst.decomposition, a.e).delta);
        }
        case TypedExpr::zpart_f: {
            ConcreteValue a = eval_typed_concrete(n->kids[0], inst);
            if (a.scalar) throw SortViolation("zpart() needs an algebra element");
            return ConcreteValue(project_parts(*inst.decomposition, a.e).z_part);
        }
        case TypedExpr::upart_f: {
            ConcreteValue a = eval_typed_concrete(n->kids[0], inst);
            if (a.scalar) throw SortViolation("upart() needs an algebra element");
            return ConcreteValue(project_parts(*inst.decomposition, a.e).u_part);
        }
    }
    throw Error("internal: unhandled typed expression kind");
}

// ---------------------------------------------------------------------------
// renaming and matching of graded identities

namespace gsym {

inline AtomPtr rename_atom(AtomPtr a, const std::map<std::string, std::string>& ren) {
    auto& pool = AtomPool::instance();
    switch (a->kind) {
        case Atom::leaf: {
            auto it = ren.find(a->var);
            return pool.leaf(it == ren.end() ? a->var : it->second, a->grade);
        }
        case Atom::prod:
            return pool.product(rename_atom(a->a, ren), rename_atom(a->b, ren));
        case Atom::zpart:
            return pool.zpart_pair(rename_atom(a->a, ren), rename_atom(a->b, ren));
    }
    throw Error("internal: unhandled atom kind");
}

inline ScalarPoly rename_scalar_poly(const ScalarPoly& p,
                                     const std::map<std::string, std::string>& ren) {
    ScalarPoly out;
    for (const auto& [m, c] : p.terms()) {
        ScalarPoly mono(c);
        for (SymPtr s : m) {
            ScalarPoly single;
            if (s->kind == Sym::indet) single = ScalarPoly::indeterminate(s->name);
            else single = ScalarPoly::delta_symbol(rename_atom(s->a, ren), rename_atom(s->b, ren));
            mono = mono * single;
        }
        out = out + mono;
    }
    return out;
}

}  // namespace gsym

inline GradedExpr rename_graded(const GradedExpr& g, const std::map<std::string, std::string>& ren) {
    GradedExpr out = GradedExpr::from_scalar_times_axis(gsym::rename_scalar_poly(g.e_coeff(), ren));
    for (const auto& [a, p] : g.u_part())
        out = out + GradedExpr::atom_unit(gsym::rename_atom(a, ren)).scaled(gsym::rename_scalar_poly(p, ren));
    for (const auto& [a, p] : g.z_part())
        out = out + GradedExpr::atom_unit(gsym::rename_atom(a, ren)).scaled(gsym::rename_scalar_poly(p, ren));
    return out;
}

// typed variables occurring in a graded expression, with their sorts
namespace gsym {

inline void collect_atom_vars(AtomPtr a, std::map<std::string, Sort>& out) {
    if (a->kind == Atom::leaf) {
        out[a->var] = a->grade == Grade::u ? Sort::u : Sort::z;
        return;
    }
    collect_atom_vars(a->a, out);
    collect_atom_vars(a->b, out);
}

}  // namespace gsym

inline std::map<std::string, Sort> graded_variables(const GradedExpr& g) {
    std::map<std::string, Sort> out;
    auto from_poly = [&](const ScalarPoly& p) {
        for (const auto& [m, c] : p.terms())
            for (gsym::SymPtr s : m)
                if (s->kind == gsym::Sym::delta) {
                    gsym::collect_atom_vars(s->a, out);
                    gsym::collect_atom_vars(s->b, out);
                }
    };
    from_poly(g.e_coeff());
    for (const auto& [a, p] : g.u_part()) {
        gsym::collect_atom_vars(a, out);
        from_poly(p);
    }
    for (const auto& [a, p] : g.z_part()) {
        gsym::collect_atom_vars(a, out);
        from_poly(p);
    }
    return out;
}

// Do two identities agree up to a sort-preserving variable bijection and a
// rational scalar?
inline bool identities_match(const GradedExpr& x, const std::map<std::string, Sort>& xvars,
                             const GradedExpr& y, const std::map<std::string, Sort>& yvars) {
    std::vector<std::string> xu, xz, yu, yz;
    for (const auto& [n, s] : xvars)
        (s == Sort::u ? xu : xz).push_back(n);
    for (const auto& [n, s] : yvars)
        (s == Sort::u ? yu : yz).push_back(n);
    if (xu.size() != yu.size() || xz.size() != yz.size()) return false;
    GradedExpr ynorm = y.normalized();
    std::sort(yu.begin(), yu.end());
    std::sort(yz.begin(), yz.end());
    std::vector<std::string> pu = yu, pz = yz;
    std::sort(pu.begin(), pu.end());
    do {
        std::vector<std::string> pz2 = pz;
        std::sort(pz2.begin(), pz2.end());
        do {
            std::map<std::string, std::string> ren;
            for (std::size_t i = 0; i < xu.size(); ++i) ren[xu[i]] = pu[i];
            for (std::size_t i = 0; i < xz.size(); ++i) ren[xz[i]] = pz2[i];
            if (rename_graded(x, ren).normalized() == ynorm) return true;
        } while (std::next_permutation(pz2.begin(), pz2.end()));
    } while (std::next_permutation(pu.begin(), pu.end()));
    return false;
}

// Is x (up to scalar) a variable-identification instance of the general
// identity g, i.e. g with a sort-preserving (possibly non-injective) map of
// its variables onto the variables of x?
inline bool is_identification_instance(const GradedExpr& x, const std::map<std::string, Sort>& xvars,
                                       const GradedExpr& g, const std::map<std::string, Sort>& gvars) {
    std::vector<std::string> gu, gz, xu, xz;
    for (const auto& [n, s] : gvars)
        (s == Sort::u ? gu : gz).push_back(n);
    for (const auto& [n, s] : xvars)
        (s == Sort::u ? xu : xz).push_back(n);
    if (xu.size() > gu.size() || xz.size() > gz.size()) return false;
    GradedExpr xnorm = x.normalized();

    // enumerate all maps gu -> xu and gz -> xz
    auto enumerate = [&](const std::vector<std::string>& from, const std::vector<std::string>& to) {
        std::vector<std::vector<std::string>> maps;  // each map: image of from[i]
        if (to.empty()) {
            if (from.empty()) maps.push_back({});
            return maps;
        }
        std::vector<std::size_t> pick(from.size(), 0);
        while (true) {
            std::vector<std::string> img;
            for (std::size_t i = 0; i < from.size(); ++i) img.push_back(to[pick[i]]);
            maps.push_back(img);
            std::size_t i = from.size();
            bool carry = true;
            while (i-- > 0 && carry) {
                if (++pick[i] < to.size()) carry = false;
                else pick[i] = 0;
            }
            if (carry) break;
            if (from.empty()) break;
        }
        return maps;
    };

    for (const auto& mu : enumerate(gu, xu))
        for (const auto& mz : enumerate(gz, xz)) {
            std::map<std::string, std::string> ren;
            std::set<std::string> used;
            for (std::size_t i = 0; i < gu.size(); ++i) {
                ren[gu[i]] = mu[i];
                used.insert(mu[i]);
            }
            for (std::size_t i = 0; i < gz.size(); ++i) {
                ren[gz[i]] = mz[i];
                used.insert(mz[i]);
            }
            // surjective onto x's variables
            bool onto = true;
            for (const auto& v : xu)
                if (!used.count(v)) onto = false;
            for (const auto& v : xz)
                if (!used.count(v)) onto = false;
            if (!onto) continue;
            GradedExpr img = rename_graded(g, ren);
            if (img.is_zero()) continue;
            if (img.normalized() == xnorm) return true;
        }
    return false;
}

}  // namespace axial
