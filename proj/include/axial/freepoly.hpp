#pragma once

/*
 * freepoly.hpp
 * ------------
 * Free commutative non-associative polynomials over Q.
 *
 * A monomial is a binary product tree over variable leaves, canonicalized
 * up to commutativity: at every node the two children are sorted by a fixed
 * total order (total degree, then recursively on canonical children, then
 * by variable).  Nodes are interned, so structurally equal trees share one
 * id and evaluation can cache per-node results.
 *
 * Powers are left-normed: x^(n+1) = x^n * x.
 *
 * Expression grammar (whitespace insignificant):
 *   poly   := ['-'] term (('+'|'-') term)*            also "lhs = rhs" -> lhs - rhs
 *   term   := [coeff] factor+
 *   factor := var | '(' poly ')' | factor '^' int
 *           | '[' poly ',' poly ',' poly ']'           associator (xy)z - x(yz)
 *   coeff  := rational like 1/2 or -3
 * Juxtaposition is product; three or more juxtaposed factors are ambiguous
 * without parentheses and rejected.
 */

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "axial/field.hpp"

namespace axial {

// Variables are identifiers; ordering is natural (name prefix, then any
// numeric suffix compared as a number) so generated names like x2, x10 sort
// the way people expect.
struct VarId {
    std::string name;

    bool operator==(const VarId& o) const { return name == o.name; }
    bool operator!=(const VarId& o) const { return name != o.name; }
    bool operator<(const VarId& o) const {
        auto split = [](const std::string& s) {
            std::size_t i = s.size();
            while (i > 0 && std::isdigit(static_cast<unsigned char>(s[i - 1]))) --i;
            long long num = -1;
            if (i < s.size() && s.size() - i <= 12) num = std::stoll(s.substr(i));
            return std::pair<std::string, long long>(s.substr(0, i), num);
        };
        auto a = split(name), b = split(o.name);
        if (a.first != b.first) return a.first < b.first;
        if (a.second != b.second) return a.second < b.second;
        return name < o.name;
    }
};

using MultiDegree = std::map<VarId, int>;

namespace detail {

struct MonoNode;
using MonoPtr = const MonoNode*;

struct MonoNode {
    int id;
    int degree;           // leaf count
    VarId var;            // valid when leaf
    MonoPtr left = nullptr;
    MonoPtr right = nullptr;
    MultiDegree mdeg;

    bool is_leaf() const { return left == nullptr; }
};

inline int mono_cmp(MonoPtr a, MonoPtr b) {
    if (a == b) return 0;
    if (a->degree != b->degree) return a->degree < b->degree ? -1 : 1;
    if (a->is_leaf() != b->is_leaf()) return a->is_leaf() ? -1 : 1;  // unreachable at equal degree
    if (a->is_leaf()) {
        if (a->var < b->var) return -1;
        if (b->var < a->var) return 1;
        return 0;
    }
    int c = mono_cmp(a->left, b->left);
    if (c) return c;
    return mono_cmp(a->right, b->right);
}

class MonoPool {
public:
    static MonoPool& instance() {
        static MonoPool pool;
        return pool;
    }

    MonoPtr leaf(const VarId& v) {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = leaves_.find(v.name);
        if (it != leaves_.end()) return it->second;
        auto node = std::make_unique<MonoNode>();
        node->id = next_id_++;
        node->degree = 1;
        node->var = v;
        node->mdeg[v] = 1;
        MonoPtr p = node.get();
        store_.push_back(std::move(node));
        leaves_.emplace(v.name, p);
        return p;
    }

    MonoPtr product(MonoPtr a, MonoPtr b) {
        if (mono_cmp(a, b) > 0) std::swap(a, b);
        std::lock_guard<std::mutex> lock(mu_);
        auto key = std::make_pair(a->id, b->id);
        auto it = products_.find(key);
        if (it != products_.end()) return it->second;
        auto node = std::make_unique<MonoNode>();
        node->id = next_id_++;
        node->degree = a->degree + b->degree;
        node->left = a;
        node->right = b;
        node->mdeg = a->mdeg;
        for (const auto& [v, d] : b->mdeg) node->mdeg[v] += d;
        MonoPtr p = node.get();
        store_.push_back(std::move(node));
        products_.emplace(key, p);
        return p;
    }

private:
    struct PairHash {
        std::size_t operator()(const std::pair<int, int>& p) const {
            return std::hash<long long>()((static_cast<long long>(p.first) << 32) ^ p.second);
        }
    };
    std::mutex mu_;
    int next_id_ = 0;
    std::vector<std::unique_ptr<MonoNode>> store_;
    std::unordered_map<std::string, MonoPtr> leaves_;
    std::unordered_map<std::pair<int, int>, MonoPtr, PairHash> products_;
};

}  // namespace detail

class Monomial {
public:
    static Monomial var(const std::string& name) {
        return Monomial(detail::MonoPool::instance().leaf(VarId{name}));
    }
    static Monomial product(const Monomial& a, const Monomial& b) {
        return Monomial(detail::MonoPool::instance().product(a.node_, b.node_));
    }

    int degree() const { return node_->degree; }
    const MultiDegree& multidegree() const { return node_->mdeg; }
    bool is_leaf() const { return node_->is_leaf(); }
    const VarId& leaf_var() const { return node_->var; }
    Monomial left() const { return Monomial(node_->left); }
    Monomial right() const { return Monomial(node_->right); }
    int id() const { return node_->id; }

    bool operator==(const Monomial& o) const { return node_ == o.node_; }
    bool operator!=(const Monomial& o) const { return node_ != o.node_; }
    bool operator<(const Monomial& o) const { return detail::mono_cmp(node_, o.node_) < 0; }

    std::string str() const { return print(node_, true); }

private:
    explicit Monomial(detail::MonoPtr n) : node_(n) {}

    static std::string print(detail::MonoPtr n, bool outer) {
        if (n->is_leaf()) return n->var.name;
        std::string s = print(n->left, false) + " " + print(n->right, false);
        return outer ? s : "(" + s + ")";
    }

    detail::MonoPtr node_;
    friend class FreePoly;
};

class FreePoly {
public:
    FreePoly() = default;

    static FreePoly zero() { return FreePoly(); }
    static FreePoly var(const std::string& name) {
        FreePoly p;
        p.terms_[Monomial::var(name)] = 1;
        return p;
    }
    static FreePoly monomial(const Monomial& m, const Rat& c = Rat(1)) {
        FreePoly p;
        if (c != 0) p.terms_[m] = c;
        return p;
    }

    const std::map<Monomial, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    bool operator==(const FreePoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const FreePoly& o) const { return !(*this == o); }

    FreePoly operator+(const FreePoly& o) const {
        FreePoly r = *this;
        for (const auto& [m, c] : o.terms_) r.add_term(m, c);
        return r;
    }
    FreePoly operator-(const FreePoly& o) const {
        FreePoly r = *this;
        for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
        return r;
    }
    FreePoly operator*(const Rat& c) const {
        FreePoly r;
        if (c == 0) return r;
        for (const auto& [m, k] : terms_) r.terms_[m] = k * c;
        return r;
    }
    FreePoly operator-() const { return *this * Rat(-1); }

    friend FreePoly mul(const FreePoly& f, const FreePoly& g) {
        FreePoly r;
        for (const auto& [mf, cf] : f.terms_)
            for (const auto& [mg, cg] : g.terms_) r.add_term(Monomial::product(mf, mg), cf * cg);
        return r;
    }

    std::set<VarId> variables() const {
        std::set<VarId> vars;
        for (const auto& [m, c] : terms_)
            for (const auto& [v, d] : m.multidegree()) vars.insert(v);
        return vars;
    }

    // Degree of v, or -1 when it differs between monomials.
    int degree_in(const VarId& v) const {
        int deg = 0;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            auto it = m.multidegree().find(v);
            int d = it == m.multidegree().end() ? 0 : it->second;
            if (first) {
                deg = d;
                first = false;
            } else if (d != deg) {
                return -1;
            }
        }
        return deg;
    }

    bool is_multihomogeneous() const {
        for (const auto& v : variables())
            if (degree_in(v) < 0) return false;
        return true;
    }

    void check_multihomogeneous() const {
        for (const auto& v : variables())
            if (degree_in(v) < 0) throw NonHomogeneousInput(v.name);
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
            if (a != 1) out += a.get_str() + " ";
            std::string ms = m.str();
            // a multi-factor monomial after a coefficient reads better wrapped
            if (a != 1 && !m.is_leaf()) out += "(" + ms + ")";
            else out += ms;
            first = false;
        }
        return out;
    }

private:
    void add_term(const Monomial& m, const Rat& c) {
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            if (c != 0) terms_[m] = c;
            return;
        }
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }

    std::map<Monomial, Rat> terms_;
};

inline FreePoly power_left_normed(const FreePoly& x, int n) {
    if (n < 1) throw Error("power_left_normed requires n >= 1");
    FreePoly r = x;
    for (int i = 1; i < n; ++i) r = mul(r, x);
    return r;
}

// ---------------------------------------------------------------------------
// parser

namespace detail {

class PolyParser {
public:
    explicit PolyParser(const std::string& text) : s_(text) {}

    FreePoly parse() {
        FreePoly lhs = parse_poly();
        skip_ws();
        if (peek() == '=') {
            ++pos_;
            FreePoly rhs = parse_poly();
            skip_ws();
            if (pos_ != s_.size()) throw ParseError("unexpected input after expression", pos_);
            return lhs - rhs;
        }
        if (pos_ != s_.size()) throw ParseError("unexpected character '" + std::string(1, peek()) + "'", pos_);
        return lhs;
    }

private:
    FreePoly parse_poly() {
        skip_ws();
        bool neg = false;
        if (peek() == '-') {
            neg = true;
            ++pos_;
        } else if (peek() == '+') {
            ++pos_;
        }
        FreePoly acc = parse_term();
        if (neg) acc = -acc;
        while (true) {
            skip_ws();
            char c = peek();
            if (c == '+' || c == '-') {
                ++pos_;
                FreePoly t = parse_term();
                acc = c == '+' ? acc + t : acc - t;
            } else {
                break;
            }
        }
        return acc;
    }

    FreePoly parse_term() {
        skip_ws();
        Rat coeff(1);
        bool have_coeff = false;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            coeff = parse_rational();
            have_coeff = true;
        }
        std::vector<FreePoly> factors;
        while (true) {
            skip_ws();
            char c = peek();
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '(' || c == '[') {
                if (factors.size() == 2)
                    throw ParseError("ambiguous juxtaposition of three or more factors; add parentheses", pos_);
                factors.push_back(parse_factor());
            } else {
                break;
            }
        }
        if (factors.empty()) {
            if (have_coeff) throw ParseError("expected a factor after coefficient", pos_);
            throw ParseError("expected a term", pos_);
        }
        FreePoly p = factors[0];
        if (factors.size() == 2) p = mul(p, factors[1]);
        return p * coeff;
    }

    FreePoly parse_factor() {
        FreePoly base = parse_primary();
        while (true) {
            skip_ws();
            if (peek() != '^') break;
            ++pos_;
            skip_ws();
            if (!std::isdigit(static_cast<unsigned char>(peek())))
                throw ParseError("expected an integer exponent", pos_);
            long n = parse_int();
            if (n < 1) throw ParseError("exponent must be >= 1", pos_);
            base = power_left_normed(base, static_cast<int>(n));
        }
        return base;
    }

    FreePoly parse_primary() {
        skip_ws();
        char c = peek();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return FreePoly::var(parse_ident());
        if (c == '(') {
            ++pos_;
            FreePoly p = parse_poly();
            expect(')');
            return p;
        }
        if (c == '[') {
            ++pos_;
            FreePoly x = parse_poly();
            expect(',');
            FreePoly y = parse_poly();
            expect(',');
            FreePoly z = parse_poly();
            expect(']');
            return mul(mul(x, y), z) - mul(x, mul(y, z));
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

    void expect(char c) {
        skip_ws();
        if (peek() != c) throw ParseError("expected '" + std::string(1, c) + "'", pos_);
        ++pos_;
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

    const std::string& s_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline FreePoly parse_poly(const std::string& text) { return detail::PolyParser(text).parse(); }

// ---------------------------------------------------------------------------
// linearization machinery

inline FreePoly substitute(const FreePoly& f, const std::map<VarId, FreePoly>& repl) {
    std::unordered_map<int, FreePoly> cache;
    std::function<FreePoly(const Monomial&)> go = [&](const Monomial& m) -> FreePoly {
        auto it = cache.find(m.id());
        if (it != cache.end()) return it->second;
        FreePoly r;
        if (m.is_leaf()) {
            auto rit = repl.find(m.leaf_var());
            r = rit != repl.end() ? rit->second : FreePoly::monomial(m);
        } else {
            r = mul(go(m.left()), go(m.right()));
        }
        cache.emplace(m.id(), r);
        return r;
    };
    FreePoly out;
    for (const auto& [m, c] : f.terms()) out = out + go(m) * c;
    return out;
}

inline FreePoly multidegree_component(const FreePoly& f, const MultiDegree& d) {
    MultiDegree want;
    for (const auto& [v, k] : d)
        if (k != 0) want[v] = k;
    FreePoly out;
    for (const auto& [m, c] : f.terms()) {
        MultiDegree md;
        for (const auto& [v, k] : m.multidegree())
            if (k != 0) md[v] = k;
        if (md == want) out = out + FreePoly::monomial(m, c);
    }
    return out;
}

// Substitute x -> x + y, expand, keep the component of multidegree d.
inline FreePoly linearize_partial(const FreePoly& f, const VarId& x, const VarId& y, const MultiDegree& d) {
    auto vars = f.variables();
    if (vars.count(y)) throw VariableCollision(y.name);
    std::map<VarId, FreePoly> repl;
    repl[x] = FreePoly::var(x.name) + FreePoly::var(y.name);
    return multidegree_component(substitute(f, repl), d);
}

namespace detail {

// Canonical renaming: variables in order become x1, x2, ...; monomial-order
// string of the renamed polynomial is the dedup key.
inline FreePoly rename_in_order(const FreePoly& f, const std::vector<VarId>& order) {
    std::map<VarId, FreePoly> repl;
    int i = 1;
    for (const auto& v : order) repl[v] = FreePoly::var("x" + std::to_string(i++));
    return substitute(f, repl);
}

}  // namespace detail

// Closure of {f} under splitting one variable into two fresh ones and taking
// every multidegree component, deduplicated modulo order-preserving variable
// renaming.  Contains f and its full multilinearization.  Members are
// canonically renamed to x1..xk.
inline std::vector<FreePoly> stable_derivatives(const FreePoly& f) {
    f.check_multihomogeneous();

    std::map<std::string, FreePoly> seen;
    auto key_of = [](const FreePoly& p) { return p.str(); };

    std::vector<FreePoly> work;
    {
        std::set<VarId> fvars = f.variables();
        std::vector<VarId> order(fvars.begin(), fvars.end());
        FreePoly f0 = detail::rename_in_order(f, order);
        seen.emplace(key_of(f0), f0);
        work.push_back(f0);
    }

    while (!work.empty()) {
        FreePoly g = work.back();
        work.pop_back();
        std::set<VarId> gvars = g.variables();
        std::vector<VarId> vars(gvars.begin(), gvars.end());
        for (std::size_t vi = 0; vi < vars.size(); ++vi) {
            int deg = g.degree_in(vars[vi]);
            if (deg < 2) continue;  // splitting a linear variable only renames
            // split vars[vi] -> a + b with a, b taking its position in the order
            std::map<VarId, FreePoly> repl;
            repl[vars[vi]] = FreePoly::var("s_a") + FreePoly::var("s_b");
            FreePoly expanded = substitute(g, repl);
            std::vector<VarId> order;
            for (std::size_t j = 0; j < vars.size(); ++j) {
                if (j == vi) {
                    order.push_back(VarId{"s_a"});
                    order.push_back(VarId{"s_b"});
                } else {
                    order.push_back(vars[j]);
                }
            }
            for (int da = 1; da < deg; ++da) {
                MultiDegree want;
                for (std::size_t j = 0; j < vars.size(); ++j)
                    if (j != vi) want[vars[j]] = g.degree_in(vars[j]);
                want[VarId{"s_a"}] = da;
                want[VarId{"s_b"}] = deg - da;
                FreePoly comp = multidegree_component(expanded, want);
                if (comp.is_zero()) continue;
                FreePoly canon = detail::rename_in_order(comp, order);
                auto k = key_of(canon);
                if (!seen.count(k)) {
                    seen.emplace(k, canon);
                    work.push_back(canon);
                }
            }
        }
    }

    std::vector<FreePoly> out;
    for (auto& [k, p] : seen) out.push_back(p);
    return out;
}

// Full multilinearization: every variable of degree d is split into d fresh
// degree-1 variables taking its position in the variable order, so every
// split route yields the same canonical result.  Renamed to x1..xk.
inline FreePoly full_multilinearization(const FreePoly& f) {
    f.check_multihomogeneous();
    FreePoly g = f;
    std::set<VarId> fvars = f.variables();
    std::vector<VarId> order(fvars.begin(), fvars.end());
    std::size_t i = 0;
    while (i < order.size()) {
        VarId v = order[i];
        int deg = g.degree_in(v);
        if (deg < 2) {
            ++i;
            continue;
        }
        std::map<VarId, FreePoly> repl;
        FreePoly sum;
        MultiDegree want;
        for (const auto& w : order)
            if (w != v) want[w] = g.degree_in(w);
        std::vector<VarId> fresh;
        for (int k = 1; k <= deg; ++k) {
            // '.' cannot appear in a parsed identifier, so fresh names never
            // collide with user variables
            VarId fv{v.name + "." + std::to_string(k)};
            fresh.push_back(fv);
            sum = sum + FreePoly::var(fv.name);
            want[fv] = 1;
        }
        repl[v] = sum;
        g = multidegree_component(substitute(g, repl), want);
        order.erase(order.begin() + static_cast<std::ptrdiff_t>(i));
        order.insert(order.begin() + static_cast<std::ptrdiff_t>(i), fresh.begin(), fresh.end());
        i += fresh.size();
    }
    return detail::rename_in_order(g, order);
}

}  // namespace axial
