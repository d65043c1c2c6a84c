#pragma once

/*
 * algebra.hpp
 * -----------
 * Finite-dimensional commutative algebras given by a symmetric structure
 * tensor c[i][j][k] (b_i b_j = sum_k c[i][j][k] b_k), evaluation of free
 * polynomials, and the strict-identity / Jordan decision procedures.
 *
 * Strictness reduction: over Q every stable derivative is checked through
 * its full multilinearization on basis tuples (specialization constants are
 * invertible in characteristic 0).  Over F_p that fails for small p, so
 * non-multilinear derivatives are checked by exhaustive enumeration of all
 * tuples of algebra elements, within an evaluation budget.
 */

#include <array>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "axial/freepoly.hpp"
#include "axial/linalg.hpp"

namespace axial {

inline constexpr unsigned long long kDefaultBudget = 1000000;

class AlgebraDef;

struct Element {
    const AlgebraDef* algebra = nullptr;
    Vec coords;

    Element(const AlgebraDef& a, Vec v);

    bool is_zero() const { return coords.is_zero(); }
    bool operator==(const Element& o) const { return algebra == o.algebra && coords == o.coords; }
    bool operator!=(const Element& o) const { return !(*this == o); }

    Element operator+(const Element& o) const;
    Element operator-(const Element& o) const;
    Element operator*(const Scalar& c) const;

    std::string str() const;
};

class AlgebraDef {
public:
    AlgebraDef(FieldSpec field, std::vector<std::string> basis_labels,
               std::vector<std::vector<std::vector<Scalar>>> c)
        : field_(field), labels_(std::move(basis_labels)), c_(std::move(c)) {
        const std::size_t n = labels_.size();
        if (n == 0) throw Error("algebra dimension must be >= 1");
        if (c_.size() != n) throw Error("structure tensor has wrong shape");
        for (const auto& plane : c_) {
            if (plane.size() != n) throw Error("structure tensor has wrong shape");
            for (const auto& row : plane)
                if (row.size() != n) throw Error("structure tensor has wrong shape");
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < i; ++j)
                for (std::size_t k = 0; k < n; ++k)
                    if (c_[i][j][k] != c_[j][i][k])
                        throw Error("structure tensor is not commutative at (" + std::to_string(i) +
                                    "," + std::to_string(j) + ")");
    }

    const FieldSpec& field() const { return field_; }
    std::size_t dim() const { return labels_.size(); }
    const std::vector<std::string>& basis_labels() const { return labels_; }
    const Scalar& c(std::size_t i, std::size_t j, std::size_t k) const { return c_[i][j][k]; }

    Element zero() const { return Element(*this, Vec(field_, dim())); }

    Element basis(std::size_t i) const {
        Vec v(field_, dim());
        v[i] = Scalar::one(field_);
        return Element(*this, v);
    }

    Element element(const std::vector<Rat>& coords) const {
        if (coords.size() != dim()) throw Error("coordinate count does not match dimension");
        Vec v(field_, dim());
        for (std::size_t i = 0; i < dim(); ++i) v[i] = Scalar(field_, coords[i]);
        return Element(*this, v);
    }

    Element product(const Element& x, const Element& y) const {
        if (x.algebra != this || y.algebra != this) throw AlgebraMismatch();
        Vec out(field_, dim());
        product_into(x.coords, y.coords, out);
        return Element(*this, out);
    }

    void product_into(const Vec& x, const Vec& y, Vec& out) const {
        const std::size_t n = dim();
        for (std::size_t k = 0; k < n; ++k) out[k] = Scalar::zero(field_);
        for (std::size_t i = 0; i < n; ++i) {
            if (x[i].is_zero()) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (y[j].is_zero()) continue;
                Scalar cij = x[i] * y[j];
                for (std::size_t k = 0; k < n; ++k) {
                    if (c_[i][j][k].is_zero()) continue;
                    out[k] += cij * c_[i][j][k];
                }
            }
        }
    }

    // Matrix of left multiplication by x on the basis.
    Mat ad(const Element& x) const {
        const std::size_t n = dim();
        Mat m(field_, n, n);
        for (std::size_t j = 0; j < n; ++j) {
            Element col = product(x, basis(j));
            for (std::size_t i = 0; i < n; ++i) m.at(i, j) = col.coords[i];
        }
        return m;
    }

private:
    FieldSpec field_;
    std::vector<std::string> labels_;
    std::vector<std::vector<std::vector<Scalar>>> c_;
};

inline Element::Element(const AlgebraDef& a, Vec v) : algebra(&a), coords(std::move(v)) {
    if (coords.size() != a.dim() || coords.field() != a.field()) throw AlgebraMismatch();
}

inline Element Element::operator+(const Element& o) const {
    if (algebra != o.algebra) throw AlgebraMismatch();
    return Element(*algebra, coords + o.coords);
}
inline Element Element::operator-(const Element& o) const {
    if (algebra != o.algebra) throw AlgebraMismatch();
    return Element(*algebra, coords - o.coords);
}
inline Element Element::operator*(const Scalar& c) const { return Element(*algebra, coords * c); }

inline std::string Element::str() const {
    if (is_zero()) return "0";
    std::string out;
    bool first = true;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (coords[i].is_zero()) continue;
        std::string cs = coords[i].str();
        if (!first) out += " + ";
        if (cs == "1") out += algebra->basis_labels()[i];
        else out += cs + "*" + algebra->basis_labels()[i];
        first = false;
    }
    return out;
}

inline Element product(const AlgebraDef& a, const Element& x, const Element& y) {
    return a.product(x, y);
}

// ---------------------------------------------------------------------------
// free-polynomial evaluation

// Evaluates one FreePoly at many assignments, caching per-node values in a
// reusable buffer.  Variables are indexed in their canonical order.
class PolyEvaluator {
public:
    PolyEvaluator(const AlgebraDef& a, const FreePoly& f) : alg_(&a) {
        std::set<VarId> vset = f.variables();
        vars_.assign(vset.begin(), vset.end());
        std::map<VarId, int> pos;
        for (std::size_t i = 0; i < vars_.size(); ++i) pos[vars_[i]] = static_cast<int>(i);
        for (const auto& [m, c] : f.terms()) {
            coeffs_.push_back(Scalar(a.field(), c));  // throws CoefficientNotReducible over F_p
            term_nodes_.push_back(collect(m, pos));
        }
    }

    const std::vector<VarId>& variables() const { return vars_; }

    Element eval(const std::vector<Element>& assignment) const {
        if (assignment.size() != vars_.size()) throw Error("assignment size mismatch");
        if (values_.size() != nodes_.size()) values_.assign(nodes_.size(), Vec(alg_->field(), alg_->dim()));
        for (std::size_t ni = 0; ni < nodes_.size(); ++ni) {
            const Node& nd = nodes_[ni];
            if (nd.leaf >= 0) {
                values_[ni] = assignment[nd.leaf].coords;
            } else {
                alg_->product_into(values_[nd.left], values_[nd.right], values_[ni]);
            }
        }
        Vec acc(alg_->field(), alg_->dim());
        for (std::size_t t = 0; t < coeffs_.size(); ++t) {
            const Vec& v = values_[term_nodes_[t]];
            for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += v[k] * coeffs_[t];
        }
        return Element(*alg_, acc);
    }

private:
    struct Node {
        int leaf = -1;  // index into variables, or -1 for a product
        std::size_t left = 0, right = 0;
    };

    std::size_t collect(const Monomial& m, const std::map<VarId, int>& pos) {
        auto it = node_index_.find(m.id());
        if (it != node_index_.end()) return it->second;
        Node nd;
        if (m.is_leaf()) {
            nd.leaf = pos.at(m.leaf_var());
        } else {
            nd.left = collect(m.left(), pos);
            nd.right = collect(m.right(), pos);
        }
        nodes_.push_back(nd);
        std::size_t idx = nodes_.size() - 1;
        node_index_.emplace(m.id(), idx);
        return idx;
    }

    const AlgebraDef* alg_;
    std::vector<VarId> vars_;
    std::vector<Node> nodes_;
    std::unordered_map<int, std::size_t> node_index_;
    std::vector<Scalar> coeffs_;
    std::vector<std::size_t> term_nodes_;
    mutable std::vector<Vec> values_;  // scratch, reused across eval calls
};

inline Element eval_free_poly(const AlgebraDef& a, const FreePoly& f,
                              const std::map<VarId, Element>& assignment) {
    PolyEvaluator ev(a, f);
    std::vector<Element> values;
    for (const auto& v : ev.variables()) {
        auto it = assignment.find(v);
        if (it == assignment.end()) throw UnassignedVariable(v.name);
        values.push_back(it->second);
    }
    return ev.eval(values);
}

// ---------------------------------------------------------------------------
// idempotents

inline bool is_idempotent(const AlgebraDef& a, const Element& v) {
    return a.product(v, v) == v;
}

// All nonzero idempotents of an algebra over F_p, by enumeration of the
// p^dim coordinate vectors.
inline std::vector<Element> find_idempotents_exhaustive(const AlgebraDef& a,
                                                        unsigned long long budget = kDefaultBudget) {
    if (a.field().is_rationals())
        throw Error("exhaustive idempotent search requires a finite field");
    const long p = a.field().p();
    const std::size_t n = a.dim();
    unsigned long long total = 1;
    for (std::size_t i = 0; i < n; ++i) {
        total *= static_cast<unsigned long long>(p);
        if (total > budget) throw BudgetExceeded(total, budget);
    }
    std::vector<Element> found;
    std::vector<long> digits(n, 0);
    for (unsigned long long count = 0; count < total; ++count) {
        Vec v(a.field(), n);
        for (std::size_t i = 0; i < n; ++i) v[i] = Scalar(a.field(), digits[i]);
        Element x(a, v);
        if (!x.is_zero() && is_idempotent(a, x)) found.push_back(x);
        for (std::size_t i = n; i-- > 0;) {
            if (++digits[i] < p) break;
            digits[i] = 0;
        }
    }
    return found;
}

// ---------------------------------------------------------------------------
// identity checking

struct CheckOutcome {
    bool pass = true;
    // failing assignment (variable, element) in canonical variable order
    std::vector<std::pair<VarId, Element>> witness;
    // value of the polynomial at the witness
    std::optional<Element> residual;

    explicit operator bool() const { return pass; }
};

namespace detail {

// Variables that may be swapped without changing the polynomial; used to
// enumerate only non-decreasing index tuples within a symmetry class.
inline std::vector<int> symmetry_classes(const FreePoly& f, const std::vector<VarId>& vars) {
    std::vector<int> cls(vars.size());
    for (std::size_t i = 0; i < vars.size(); ++i) cls[i] = static_cast<int>(i);
    for (std::size_t i = 0; i < vars.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (cls[j] != static_cast<int>(j)) continue;
            std::map<VarId, FreePoly> swap_ij;
            swap_ij[vars[i]] = FreePoly::var(vars[j].name);
            swap_ij[vars[j]] = FreePoly::var(vars[i].name);
            if (substitute(f, swap_ij) == f) {
                cls[i] = cls[j];
                break;
            }
        }
    }
    return cls;
}

// Enumerates index tuples in lexicographic order, restricted to
// non-decreasing runs inside each symmetry class.  The first failing tuple
// reported is the lexicographically first failing tuple of the full空间
// because the failing set is invariant under the class symmetries.
template <typename Fn>
inline bool enumerate_tuples(const std::vector<std::size_t>& radix, const std::vector<int>& cls,
                             Fn&& visit) {
    std::vector<std::size_t> idx(radix.size(), 0);
    while (true) {
        bool ok = true;
        for (std::size_t i = 1; i < idx.size() && ok; ++i)
            if (cls[i] == cls[i - 1] && idx[i] < idx[i - 1]) ok = false;
        if (ok && !visit(idx)) return false;
        std::size_t i = idx.size();
        while (i-- > 0) {
            if (++idx[i] < radix[i]) break;
            idx[i] = 0;
            if (i == 0) return true;
        }
        if (idx.empty()) return true;
    }
}

}  // namespace detail

// Evaluate a multilinear polynomial on every tuple of basis vectors; Pass iff
// all vanish, otherwise the lexicographically first failing tuple.
inline CheckOutcome check_multilinear_on_basis(const AlgebraDef& a, const FreePoly& g) {
    for (const auto& v : g.variables()) {
        int d = g.degree_in(v);
        if (d != 1) throw NotMultilinear(v.name);
    }
    PolyEvaluator ev(a, g);
    std::vector<VarId> vars = ev.variables();
    if (vars.empty()) {
        CheckOutcome out;
        out.pass = g.is_zero();
        return out;
    }
    std::vector<int> cls = detail::symmetry_classes(g, vars);
    std::vector<std::size_t> radix(vars.size(), a.dim());
    std::vector<Element> basis;
    for (std::size_t i = 0; i < a.dim(); ++i) basis.push_back(a.basis(i));

    CheckOutcome out;
    std::vector<Element> assignment(vars.size(), a.zero());
    detail::enumerate_tuples(radix, cls, [&](const std::vector<std::size_t>& idx) {
        for (std::size_t i = 0; i < idx.size(); ++i) assignment[i] = basis[idx[i]];
        Element value = ev.eval(assignment);
        if (!value.is_zero()) {
            out.pass = false;
            for (std::size_t i = 0; i < idx.size(); ++i) out.witness.emplace_back(vars[i], assignment[i]);
            out.residual = value;
            return false;
        }
        return true;
    });
    return out;
}

namespace detail {

// Exhaustive check of a polynomial over all tuples of F_p^dim vectors.
inline CheckOutcome check_exhaustive_fp(const AlgebraDef& a, const FreePoly& g,
                                        unsigned long long budget) {
    PolyEvaluator ev(a, g);
    std::vector<VarId> vars = ev.variables();
    const long p = a.field().p();
    __int128 space = 1;
    for (std::size_t i = 0; i < a.dim(); ++i) space *= p;
    __int128 wide = 1;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        wide *= space;
        if (wide > static_cast<__int128>(budget))
            throw BudgetExceeded(static_cast<unsigned long long>(
                                     wide > static_cast<__int128>(~0ULL >> 1) ? (~0ULL >> 1) : wide),
                                 budget);
    }
    unsigned long long total = static_cast<unsigned long long>(wide);
    (void)total;
    const unsigned long long nspace = static_cast<unsigned long long>(space);

    std::vector<Element> all;
    all.reserve(nspace);
    std::vector<long> digits(a.dim(), 0);
    for (unsigned long long c = 0; c < nspace; ++c) {
        Vec v(a.field(), a.dim());
        for (std::size_t i = 0; i < a.dim(); ++i) v[i] = Scalar(a.field(), digits[i]);
        all.emplace_back(a, v);
        for (std::size_t i = a.dim(); i-- > 0;) {
            if (++digits[i] < p) break;
            digits[i] = 0;
        }
    }

    CheckOutcome out;
    if (vars.empty()) {
        out.pass = g.is_zero();
        return out;
    }
    std::vector<std::size_t> radix(vars.size(), all.size());
    std::vector<int> cls(vars.size());
    for (std::size_t i = 0; i < cls.size(); ++i) cls[i] = static_cast<int>(i);  // no quotient
    std::vector<Element> assignment(vars.size(), a.zero());
    enumerate_tuples(radix, cls, [&](const std::vector<std::size_t>& idx) {
        for (std::size_t i = 0; i < idx.size(); ++i) assignment[i] = all[idx[i]];
        Element value = ev.eval(assignment);
        if (!value.is_zero()) {
            out.pass = false;
            for (std::size_t i = 0; i < idx.size(); ++i) out.witness.emplace_back(vars[i], assignment[i]);
            out.residual = value;
            return false;
        }
        return true;
    });
    return out;
}

inline bool poly_is_multilinear(const FreePoly& g) {
    for (const auto& v : g.variables())
        if (g.degree_in(v) != 1) return false;
    return true;
}

}  // namespace detail

// Decide whether the homogeneous identity f = 0 holds strictly in A (in A
// and all scalar extensions), via the stable-derivative closure.
inline CheckOutcome holds_strictly(const AlgebraDef& a, const FreePoly& f,
                                   unsigned long long budget = kDefaultBudget) {
    f.check_multihomogeneous();
    std::vector<FreePoly> derivatives = stable_derivatives(f);

    if (a.field().is_rationals()) {
        // each derivative via its full multilinearization; dedup first
        std::map<std::string, FreePoly> multilinear;
        for (const auto& g : derivatives) {
            FreePoly m = full_multilinearization(g);
            multilinear.emplace(m.str(), m);
        }
        for (const auto& [key, m] : multilinear) {
            CheckOutcome r = check_multilinear_on_basis(a, m);
            if (!r.pass) return r;
        }
        CheckOutcome ok;
        return ok;
    }

    for (const auto& g : derivatives) {
        CheckOutcome r = detail::poly_is_multilinear(g)
                             ? check_multilinear_on_basis(a, g)
                             : detail::check_exhaustive_fp(a, g, budget);
        if (!r.pass) return r;
    }
    CheckOutcome ok;
    return ok;
}

inline FreePoly jordan_identity_poly() { return parse_poly("x^2 (x y) - x (x^2 y)"); }

// Commutativity is structural (the tensor is symmetric by construction);
// the Jordan identity is checked strictly.
inline CheckOutcome is_jordan(const AlgebraDef& a, unsigned long long budget = kDefaultBudget) {
    return holds_strictly(a, jordan_identity_poly(), budget);
}

// ---------------------------------------------------------------------------
// algebra file format
//
//   field Q            (or F<p>)
//   dim 3
//   basis E11 E22 E12
//   products
//   1 1 : 1=1
//   3 3 : 1=1, 2=1
//
// Entries are given for i <= j (1-based); the symmetric completion is
// implied and omitted pairs are zero.  Rationals are written num/den.

inline void write_algebra_file(std::ostream& os, const AlgebraDef& a) {
    os << "field " << a.field().str() << "\n";
    os << "dim " << a.dim() << "\n";
    os << "basis";
    for (const auto& l : a.basis_labels()) os << " " << l;
    os << "\nproducts\n";
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = i; j < a.dim(); ++j) {
            bool any = false;
            for (std::size_t k = 0; k < a.dim(); ++k)
                if (!a.c(i, j, k).is_zero()) any = true;
            if (!any) continue;
            os << (i + 1) << " " << (j + 1) << " :";
            bool first = true;
            for (std::size_t k = 0; k < a.dim(); ++k) {
                if (a.c(i, j, k).is_zero()) continue;
                os << (first ? " " : ", ") << (k + 1) << "=" << a.c(i, j, k).str();
                first = false;
            }
            os << "\n";
        }
    }
}

inline void save_algebra(const std::string& path, const AlgebraDef& a) {
    std::ofstream os(path);
    if (!os) throw Error("cannot open '" + path + "' for writing");
    write_algebra_file(os, a);
}

inline Rat parse_rat_token(const std::string& tok) {
    auto slash = tok.find('/');
    try {
        if (slash == std::string::npos) return Rat(mpz_class(tok));
        mpz_class num(tok.substr(0, slash)), den(tok.substr(slash + 1));
        if (den == 0) throw Error("zero denominator in '" + tok + "'");
        Rat q(num, den);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw Error("bad rational '" + tok + "'");
    }
}

inline AlgebraDef read_algebra_file(std::istream& is) {
    std::string line, word;
    auto next_meaningful = [&]() -> bool {
        while (std::getline(is, line)) {
            auto h = line.find('#');
            if (h != std::string::npos) line.erase(h);
            bool blank = true;
            for (char ch : line)
                if (!std::isspace(static_cast<unsigned char>(ch))) blank = false;
            if (!blank) return true;
        }
        return false;
    };

    if (!next_meaningful()) throw Error("algebra file: missing 'field' line");
    std::istringstream ls(line);
    std::string fieldtok;
    ls >> word >> fieldtok;
    if (word != "field") throw Error("algebra file: expected 'field'");
    FieldSpec field = fieldtok == "Q" ? FieldSpec::Q()
                                      : (fieldtok.size() > 1 && fieldtok[0] == 'F'
                                             ? FieldSpec::Fp(std::stol(fieldtok.substr(1)))
                                             : throw Error("algebra file: bad field '" + fieldtok + "'"));

    if (!next_meaningful()) throw Error("algebra file: missing 'dim' line");
    std::istringstream ds(line);
    std::size_t dim = 0;
    ds >> word >> dim;
    if (word != "dim" || dim == 0) throw Error("algebra file: bad 'dim' line");

    if (!next_meaningful()) throw Error("algebra file: missing 'basis' line");
    std::istringstream bs(line);
    bs >> word;
    if (word != "basis") throw Error("algebra file: expected 'basis'");
    std::vector<std::string> labels;
    while (bs >> word) labels.push_back(word);
    if (labels.size() != dim) throw Error("algebra file: basis label count != dim");

    if (!next_meaningful() || line.find("products") == std::string::npos)
        throw Error("algebra file: expected 'products'");

    std::vector<std::vector<std::vector<Scalar>>> c(
        dim, std::vector<std::vector<Scalar>>(dim, std::vector<Scalar>(dim, Scalar::zero(field))));

    while (next_meaningful()) {
        std::string entry = line;
        auto colon = entry.find(':');
        if (colon == std::string::npos) throw Error("algebra file: bad product line '" + line + "'");
        std::istringstream hs(entry.substr(0, colon));
        std::size_t i = 0, j = 0;
        hs >> i >> j;
        if (i < 1 || j < 1 || i > dim || j > dim || i > j)
            throw Error("algebra file: bad indices in '" + line + "' (need 1 <= i <= j <= dim)");
        std::string rest = entry.substr(colon + 1);
        std::istringstream rs(rest);
        std::string item;
        while (std::getline(rs, item, ',')) {
            auto eq = item.find('=');
            if (eq == std::string::npos) throw Error("algebra file: bad entry '" + item + "'");
            std::string kstr = item.substr(0, eq), cstr = item.substr(eq + 1);
            auto strip = [](std::string s) {
                std::size_t b = s.find_first_not_of(" \t");
                std::size_t e = s.find_last_not_of(" \t");
                return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
            };
            std::size_t k = std::stoul(strip(kstr));
            if (k < 1 || k > dim) throw Error("algebra file: index out of range in '" + item + "'");
            Scalar val(field, parse_rat_token(strip(cstr)));
            c[i - 1][j - 1][k - 1] = val;
            c[j - 1][i - 1][k - 1] = val;
        }
    }
    return AlgebraDef(field, labels, c);
}

inline AlgebraDef load_algebra(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw Error("cannot open '" + path + "'");
    return read_algebra_file(is);
}

}  // namespace axial
