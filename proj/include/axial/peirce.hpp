#pragma once

/*
 * peirce.hpp
 * ----------
 * Eigenspace decomposition A = F e + A_1/2(e) + A_0(e) of left multiplication
 * by an idempotent, half-axis certification, the projections
 * x = delta_x e + u_x + z_x, and the symmetry condition
 * delta(u1(u2 z)) = delta(u2(u1 z)) on basis triples.
 */

#include <optional>
#include <string>
#include <vector>

#include "axial/algebra.hpp"

namespace axial {

struct PeirceDecomposition {
    const AlgebraDef* algebra = nullptr;
    Element axis;
    std::vector<Element> basis_one;   // eigenvalue 1
    std::vector<Element> basis_half;  // eigenvalue 1/2
    std::vector<Element> basis_zero;  // eigenvalue 0
    // coordinates of any x in the combined basis [B1 | Bhalf | B0]:
    // columns of the inverse base-change matrix
    Mat to_peirce;
    bool certified = false;  // set by half_axis_check when all flags hold

    PeirceDecomposition(const AlgebraDef& a, Element e)
        : algebra(&a), axis(std::move(e)), to_peirce(a.field(), 0, 0) {}

    std::size_t dim_one() const { return basis_one.size(); }
    std::size_t dim_half() const { return basis_half.size(); }
    std::size_t dim_zero() const { return basis_zero.size(); }
};

struct PeirceParts {
    Scalar delta;
    Element u_part;
    Element z_part;
};

namespace detail {

// inverse of the matrix whose columns are the concatenated basis vectors
inline Mat peirce_base_change(const AlgebraDef& a, const std::vector<Element>& b1,
                              const std::vector<Element>& bh, const std::vector<Element>& b0) {
    const std::size_t n = a.dim();
    Mat aug(a.field(), n, 2 * n);
    std::size_t col = 0;
    auto emit = [&](const std::vector<Element>& bs) {
        for (const auto& b : bs) {
            for (std::size_t r = 0; r < n; ++r) aug.at(r, col) = b.coords[r];
            ++col;
        }
    };
    emit(b1);
    emit(bh);
    emit(b0);
    for (std::size_t r = 0; r < n; ++r) aug.at(r, n + r) = Scalar::one(a.field());
    aug.rref();
    Mat inv(a.field(), n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) inv.at(r, c) = aug.at(r, n + c);
    return inv;
}

inline std::vector<Element> eigenspace_basis(const AlgebraDef& a, const Mat& ad, const Scalar& lambda) {
    Mat shifted = ad;
    for (std::size_t i = 0; i < a.dim(); ++i) shifted.at(i, i) -= lambda;
    std::vector<Element> basis;
    for (const Vec& v : kernel_basis(shifted)) basis.emplace_back(a, v);
    return basis;
}

// Rational eigenvalues of an exact matrix, found by testing roots of the
// characteristic polynomial (rational root theorem after clearing
// denominators).  Over F_p every field element is tested.
inline std::vector<Scalar> eigenvalues_over_field(const AlgebraDef& a, const Mat& ad) {
    std::vector<Scalar> found;
    if (!a.field().is_rationals()) {
        for (long r = 0; r < a.field().p(); ++r) {
            Scalar lambda(a.field(), r);
            if (!detail::eigenspace_basis(a, ad, lambda).empty()) found.push_back(lambda);
        }
        return found;
    }
    const std::size_t n = a.dim();
    // Faddeev-LeVerrier: char poly coefficients  x^n + c1 x^(n-1) + ... + cn
    std::vector<Rat> coeff(n + 1, Rat(0));
    coeff[0] = 1;
    Mat m = ad;
    Mat acc = ad;
    for (std::size_t k = 1; k <= n; ++k) {
        if (k > 1) {
            // acc = ad * (acc + c_{k-1} I)
            Mat tmp = acc;
            for (std::size_t i = 0; i < n; ++i) tmp.at(i, i) += Scalar(a.field(), coeff[k - 1]);
            Mat prod(a.field(), n, n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    Scalar s = Scalar::zero(a.field());
                    for (std::size_t t = 0; t < n; ++t) s += m.at(i, t) * tmp.at(t, j);
                    prod.at(i, j) = s;
                }
            acc = prod;
        }
        Scalar trace = Scalar::zero(a.field());
        for (std::size_t i = 0; i < n; ++i) trace += acc.at(i, i);
        coeff[k] = -trace.as_rational() / Rat(static_cast<long>(k));
    }
    // clear denominators -> integer polynomial a_n x^n + ... + a_0
    mpz_class lcm_den(1);
    for (const auto& q : coeff) {
        mpz_class d = q.get_den();
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), lcm_den.get_mpz_t(), d.get_mpz_t());
        lcm_den = lcm_den / g * d;
    }
    std::vector<mpz_class> ic(n + 1);
    for (std::size_t i = 0; i <= n; ++i) ic[i] = mpz_class(coeff[i] * Rat(lcm_den));
    // strip trailing zero roots (x | poly)
    std::size_t low = n;
    while (low > 0 && ic[low] == 0) --low;
    bool zero_root = low < n;
    mpz_class lead = ic[0], constant = ic[low];

    auto divisors = [](mpz_class v) {
        std::vector<mpz_class> ds;
        if (v < 0) v = -v;
        for (mpz_class d = 1; d * d <= v; ++d)
            if (v % d == 0) {
                ds.push_back(d);
                ds.push_back(v / d);
            }
        return ds;
    };

    std::vector<Rat> candidates;
    if (zero_root) candidates.push_back(Rat(0));
    for (const auto& p : divisors(constant))
        for (const auto& q : divisors(lead)) {
            Rat r(p, q);
            r.canonicalize();
            candidates.push_back(r);
            candidates.push_back(-r);
        }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    auto poly_at = [&](const Rat& x) {
        Rat acc_val(0);
        for (std::size_t i = 0; i <= n; ++i) acc_val = acc_val * x + coeff[i];
        return acc_val;
    };
    for (const auto& cand : candidates)
        if (poly_at(cand) == 0) found.push_back(Scalar(a.field(), cand));
    return found;
}

}  // namespace detail

// Split A into the 1, 1/2 and 0 eigenspaces of ad_e.  Throws ZeroVector /
// NotIdempotent / DecompositionIncomplete when the element does not qualify.
inline PeirceDecomposition decompose(const AlgebraDef& a, const Element& e) {
    if (e.is_zero()) throw ZeroVector();
    if (!is_idempotent(a, e)) throw NotIdempotent();

    Mat ad = a.ad(e);
    PeirceDecomposition d(a, e);
    Scalar one = Scalar::one(a.field());
    Scalar half = one / (one + one);
    d.basis_one = detail::eigenspace_basis(a, ad, one);
    d.basis_half = detail::eigenspace_basis(a, ad, half);
    d.basis_zero = detail::eigenspace_basis(a, ad, Scalar::zero(a.field()));

    std::size_t total = d.dim_one() + d.dim_half() + d.dim_zero();
    if (total != a.dim()) {
        std::vector<std::string> eigs;
        for (const Scalar& lambda : detail::eigenvalues_over_field(a, ad)) eigs.push_back(lambda.str());
        std::string list;
        for (const auto& s : eigs) list += (list.empty() ? "" : ", ") + s;
        throw DecompositionIncomplete(
            static_cast<int>(a.dim() - total), eigs,
            "eigenspaces for 1, 1/2, 0 span dimension " + std::to_string(total) + " of " +
                std::to_string(a.dim()) + "; ad_e eigenvalues over the field: {" + list + "}");
    }

    d.to_peirce = detail::peirce_base_change(a, d.basis_one, d.basis_half, d.basis_zero);
    return d;
}

// x = delta e + u + z.  Requires a complete decomposition with dim A_1 = 1.
inline PeirceParts project_parts(const PeirceDecomposition& d, const Element& x) {
    const AlgebraDef& a = *d.algebra;
    if (x.algebra != &a) throw AlgebraMismatch();
    Vec coords = d.to_peirce.mul(x.coords);
    // coords are w.r.t. [B1 | Bhalf | B0]; B1 = {axis} for certified axes
    if (d.dim_one() != 1) throw NotHalfAxis("A_1(e) is not one-dimensional");
    // the stored basis_one vector may be a scalar multiple of the axis;
    // rescale so delta refers to e itself
    Scalar delta = coords[0];
    const Element& b1 = d.basis_one[0];
    for (std::size_t i = 0; i < a.dim(); ++i) {
        if (!d.axis.coords[i].is_zero()) {
            delta = coords[0] * b1.coords[i] / d.axis.coords[i];
            break;
        }
    }
    Element u = a.zero(), z = a.zero();
    for (std::size_t i = 0; i < d.dim_half(); ++i) u = u + d.basis_half[i] * coords[1 + i];
    for (std::size_t i = 0; i < d.dim_zero(); ++i)
        z = z + d.basis_zero[i] * coords[1 + d.dim_half() + i];
    return PeirceParts{delta, u, z};
}

struct FusionFailure {
    std::string rule;  // "ZZ", "UU" or "UZ"
    std::size_t i = 0, j = 0;
    std::string detail;
};

struct HalfAxisReport {
    bool is_idempotent = false;
    bool one_dim_eigenspace_1 = false;
    bool decomposition_complete = false;
    bool fusion_ZZ = false;
    bool fusion_UU = false;
    bool fusion_UZ = false;
    std::optional<PeirceDecomposition> decomposition;
    std::vector<std::string> failures;            // human-readable, one per failed flag
    std::vector<FusionFailure> fusion_witnesses;  // failing basis pairs
    std::vector<std::string> eigenvalues_found;   // when decomposition incomplete

    bool is_half_axis() const {
        return is_idempotent && one_dim_eigenspace_1 && decomposition_complete && fusion_ZZ &&
               fusion_UU && fusion_UZ;
    }
};

namespace detail {

// membership of x in the span of the given vectors
inline bool in_span(const AlgebraDef& a, const std::vector<Element>& span, const Element& x) {
    if (x.is_zero()) return true;
    if (span.empty()) return false;
    Mat m(a.field(), a.dim(), span.size());
    for (std::size_t c = 0; c < span.size(); ++c)
        for (std::size_t r = 0; r < a.dim(); ++r) m.at(r, c) = span[c].coords[r];
    return solve_linear(m, x.coords).has_value();
}

}  // namespace detail

// Checks all four half-axis conditions; the report carries each verdict and
// witnesses instead of throwing.
inline HalfAxisReport half_axis_check(const AlgebraDef& a, const Element& e) {
    HalfAxisReport rep;
    if (e.is_zero()) {
        rep.failures.push_back("axis is the zero vector");
        return rep;
    }
    rep.is_idempotent = is_idempotent(a, e);
    if (!rep.is_idempotent) rep.failures.push_back("e^2 != e");

    Mat ad = a.ad(e);
    Scalar one = Scalar::one(a.field());
    Scalar half = one / (one + one);
    std::vector<Element> b1 = detail::eigenspace_basis(a, ad, one);
    std::vector<Element> bh = detail::eigenspace_basis(a, ad, half);
    std::vector<Element> b0 = detail::eigenspace_basis(a, ad, Scalar::zero(a.field()));

    rep.one_dim_eigenspace_1 = b1.size() == 1 && detail::in_span(a, b1, e);
    if (!rep.one_dim_eigenspace_1)
        rep.failures.push_back("A_1(e) has dimension " + std::to_string(b1.size()) +
                               (b1.size() == 1 ? " but does not contain e" : ""));

    std::size_t total = b1.size() + bh.size() + b0.size();
    rep.decomposition_complete = total == a.dim();
    if (!rep.decomposition_complete) {
        for (const Scalar& lambda : detail::eigenvalues_over_field(a, ad))
            rep.eigenvalues_found.push_back(lambda.str());
        std::string list;
        for (const auto& s : rep.eigenvalues_found) list += (list.empty() ? "" : ", ") + s;
        rep.failures.push_back("eigenspaces for 1, 1/2, 0 span dimension " + std::to_string(total) +
                               " of " + std::to_string(a.dim()) + "; eigenvalues found: {" + list + "}");
    }

    // fusion on basis pairs (products are bilinear, targets are subspaces)
    std::vector<Element> e_and_zero = b0;
    e_and_zero.push_back(e);

    rep.fusion_ZZ = true;
    for (std::size_t i = 0; i < b0.size(); ++i)
        for (std::size_t j = i; j < b0.size(); ++j) {
            Element p = a.product(b0[i], b0[j]);
            if (!detail::in_span(a, b0, p)) {
                rep.fusion_ZZ = false;
                rep.fusion_witnesses.push_back({"ZZ", i, j, p.str() + " is not in A_0(e)"});
            }
        }
    rep.fusion_UU = true;
    for (std::size_t i = 0; i < bh.size(); ++i)
        for (std::size_t j = i; j < bh.size(); ++j) {
            Element p = a.product(bh[i], bh[j]);
            if (!detail::in_span(a, e_and_zero, p)) {
                rep.fusion_UU = false;
                rep.fusion_witnesses.push_back({"UU", i, j, p.str() + " is not in F e + A_0(e)"});
            }
        }
    rep.fusion_UZ = true;
    for (std::size_t i = 0; i < bh.size(); ++i)
        for (std::size_t j = 0; j < b0.size(); ++j) {
            Element p = a.product(bh[i], b0[j]);
            if (!detail::in_span(a, bh, p)) {
                rep.fusion_UZ = false;
                rep.fusion_witnesses.push_back({"UZ", i, j, p.str() + " is not in A_1/2(e)"});
            }
        }
    if (!rep.fusion_ZZ) rep.failures.push_back("fusion Z Z violated");
    if (!rep.fusion_UU) rep.failures.push_back("fusion U U violated");
    if (!rep.fusion_UZ) rep.failures.push_back("fusion U Z violated");

    if (rep.is_half_axis()) {
        PeirceDecomposition d(a, e);
        d.basis_one = {e};  // normalize B1 to the axis itself
        d.basis_half = bh;
        d.basis_zero = b0;
        d.to_peirce = detail::peirce_base_change(a, d.basis_one, d.basis_half, d.basis_zero);
        d.certified = true;
        rep.decomposition = std::move(d);
    }
    return rep;
}

// Certified decomposition or NotHalfAxis.
inline PeirceDecomposition certify_half_axis(const AlgebraDef& a, const Element& e) {
    HalfAxisReport rep = half_axis_check(a, e);
    if (!rep.is_half_axis()) {
        std::string why;
        for (const auto& f : rep.failures) why += (why.empty() ? "" : "; ") + f;
        throw NotHalfAxis(why);
    }
    return *rep.decomposition;
}

struct ConditionStarOutcome {
    bool pass = true;
    std::size_t i = 0, j = 0, k = 0;  // failing (u_i, u_j, z_k) basis triple
    std::optional<Scalar> lhs, rhs;
};

// delta(u1 (u2 z)) = delta(u2 (u1 z)) on all basis triples; the functional
// is multilinear, so the basis check is complete.
inline ConditionStarOutcome condition_star(const AlgebraDef& a, const PeirceDecomposition& d) {
    if (!d.certified) throw NotHalfAxis("condition_star requires a certified decomposition");
    ConditionStarOutcome out;
    for (std::size_t i = 0; i < d.dim_half(); ++i)
        for (std::size_t j = i + 1; j < d.dim_half(); ++j)  // i = j is trivially symmetric
            for (std::size_t k = 0; k < d.dim_zero(); ++k) {
                const Element &u1 = d.basis_half[i], &u2 = d.basis_half[j], &z = d.basis_zero[k];
                Scalar lhs = project_parts(d, a.product(u1, a.product(u2, z))).delta;
                Scalar rhs = project_parts(d, a.product(u2, a.product(u1, z))).delta;
                if (lhs != rhs) {
                    out.pass = false;
                    out.i = i;
                    out.j = j;
                    out.k = k;
                    out.lhs = lhs;
                    out.rhs = rhs;
                    return out;
                }
            }
    return out;
}

}  // namespace axial
