#pragma once

/*
 * constructions.hpp
 * -----------------
 * Builders for the standard test algebras: symmetric-matrix Jordan algebras,
 * spin factors, Matsuo algebras over a partial triple system, and the
 * two-generated three-dimensional family with parameter pi.
 */

#include <set>
#include <string>
#include <vector>

#include "axial/algebra.hpp"

namespace axial {

namespace detail {

inline std::vector<std::vector<std::vector<Scalar>>> zero_tensor(FieldSpec f, std::size_t n) {
    return std::vector<std::vector<std::vector<Scalar>>>(
        n, std::vector<std::vector<Scalar>>(n, std::vector<Scalar>(n, Scalar::zero(f))));
}

inline void set_sym(std::vector<std::vector<std::vector<Scalar>>>& c, std::size_t i, std::size_t j,
                    std::size_t k, const Scalar& v) {
    c[i][j][k] = v;
    c[j][i][k] = v;
}

}  // namespace detail

// Symmetric n x n matrices with x o y = 1/2 (xy + yx).  Basis: E_ii for
// i = 1..n, then E_ij + E_ji for i < j in row-major order.
inline AlgebraDef sym_jordan(int n, FieldSpec field = FieldSpec::Q()) {
    if (n < 1) throw Error("sym_jordan requires n >= 1");
    // FieldSpec construction already rejects characteristic 2

    // index helpers: diagonal i -> i; off-diagonal (i,j), i<j -> offset
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    const std::size_t dim = static_cast<std::size_t>(n) + pairs.size();

    auto label = [&](std::size_t idx) {
        if (idx < static_cast<std::size_t>(n)) return "E" + std::to_string(idx + 1) + std::to_string(idx + 1);
        auto [i, j] = pairs[idx - n];
        return "E" + std::to_string(i + 1) + std::to_string(j + 1);
    };

    // represent basis vector idx as symmetric matrix entries
    auto matrix_of = [&](std::size_t idx) {
        std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n, Rat(0)));
        if (idx < static_cast<std::size_t>(n)) {
            m[idx][idx] = 1;
        } else {
            auto [i, j] = pairs[idx - n];
            m[i][j] = 1;
            m[j][i] = 1;
        }
        return m;
    };

    auto coords_of = [&](const std::vector<std::vector<Rat>>& m) {
        std::vector<Rat> coords(dim, Rat(0));
        for (int i = 0; i < n; ++i) coords[i] = m[i][i];
        for (std::size_t k = 0; k < pairs.size(); ++k) coords[n + k] = m[pairs[k].first][pairs[k].second];
        return coords;
    };

    auto c = detail::zero_tensor(field, dim);
    for (std::size_t a = 0; a < dim; ++a) {
        auto ma = matrix_of(a);
        for (std::size_t b = a; b < dim; ++b) {
            auto mb = matrix_of(b);
            std::vector<std::vector<Rat>> prod(n, std::vector<Rat>(n, Rat(0)));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    Rat s(0);
                    for (int k = 0; k < n; ++k) s += ma[i][k] * mb[k][j] + mb[i][k] * ma[k][j];
                    prod[i][j] = s / 2;
                }
            auto coords = coords_of(prod);
            for (std::size_t k = 0; k < dim; ++k)
                if (coords[k] != 0) detail::set_sym(c, a, b, k, Scalar(field, coords[k]));
        }
    }

    std::vector<std::string> labels;
    for (std::size_t i = 0; i < dim; ++i) labels.push_back(label(i));
    return AlgebraDef(field, labels, c);
}

// F 1 + V with (a1 + v)(b1 + w) = (ab + q(v,w)) 1 + aw + bv, q the diagonal
// bilinear form given by its nonzero diagonal entries.
inline AlgebraDef spin_factor(const std::vector<Rat>& q_diag, FieldSpec field = FieldSpec::Q()) {
    const std::size_t k = q_diag.size();
    const std::size_t dim = k + 1;
    for (const auto& d : q_diag)
        if (Scalar(field, d).is_zero()) throw Error("spin_factor: q must have nonzero diagonal entries");

    auto c = detail::zero_tensor(field, dim);
    detail::set_sym(c, 0, 0, 0, Scalar::one(field));                       // 1*1 = 1
    for (std::size_t i = 1; i < dim; ++i) detail::set_sym(c, 0, i, i, Scalar::one(field));  // 1*v = v
    for (std::size_t i = 1; i < dim; ++i)
        detail::set_sym(c, i, i, 0, Scalar(field, q_diag[i - 1]));         // v_i v_i = q_ii 1

    std::vector<std::string> labels{"one"};
    for (std::size_t i = 1; i < dim; ++i) labels.push_back("v" + std::to_string(i));
    return AlgebraDef(field, labels, c);
}

// Matsuo algebra of a partial triple system: basis = points, a*a = a,
// a*b = (eta/2)(a + b - c) when {a,b,c} is a line, a*b = 0 otherwise.
inline AlgebraDef matsuo(const std::vector<std::string>& points,
                         const std::vector<std::vector<std::string>>& lines, const Rat& eta,
                         FieldSpec field = FieldSpec::Q()) {
    const std::size_t n = points.size();
    if (n == 0) throw InvalidGeometry("matsuo: no points");
    Scalar eta_s(field, eta);
    if (eta_s.is_zero() || eta_s == Scalar::one(field))
        throw InvalidGeometry("matsuo: eta must differ from 0 and 1");

    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i) {
        if (index.count(points[i])) throw InvalidGeometry("matsuo: duplicate point " + points[i]);
        index[points[i]] = i;
    }

    // third[i][j] = k when {i,j,k} is a line
    std::vector<std::vector<int>> third(n, std::vector<int>(n, -1));
    for (const auto& line : lines) {
        if (line.size() != 3) throw InvalidGeometry("matsuo: a line must contain exactly 3 points");
        std::size_t idx[3];
        for (int t = 0; t < 3; ++t) {
            auto it = index.find(line[t]);
            if (it == index.end()) throw InvalidGeometry("matsuo: unknown point " + line[t]);
            idx[t] = it->second;
        }
        if (idx[0] == idx[1] || idx[0] == idx[2] || idx[1] == idx[2])
            throw InvalidGeometry("matsuo: degenerate line");
        for (int s = 0; s < 3; ++s)
            for (int t = 0; t < 3; ++t) {
                if (s == t) continue;
                int u = 3 - s - t;
                if (third[idx[s]][idx[t]] != -1 && third[idx[s]][idx[t]] != static_cast<int>(idx[u]))
                    throw InvalidGeometry("matsuo: two lines share the pair {" + line[s] + "," + line[t] + "}");
                third[idx[s]][idx[t]] = static_cast<int>(idx[u]);
            }
    }

    Scalar half_eta = eta_s / (Scalar::one(field) + Scalar::one(field));
    auto c = detail::zero_tensor(field, n);
    for (std::size_t i = 0; i < n; ++i) detail::set_sym(c, i, i, i, Scalar::one(field));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            int k = third[i][j];
            if (k < 0) continue;
            detail::set_sym(c, i, j, i, half_eta);
            detail::set_sym(c, i, j, j, half_eta);
            detail::set_sym(c, i, j, static_cast<std::size_t>(k), -half_eta);
        }
    return AlgebraDef(field, points, c);
}

// Convenience: the one-line geometry {a, b, c}, i.e. 3C(eta).
inline AlgebraDef matsuo_3c(const Rat& eta, FieldSpec field = FieldSpec::Q()) {
    return matsuo({"a", "b", "c"}, {{"a", "b", "c"}}, eta, field);
}

// Transposition geometry of S4: 6 points, 4 lines; non-collinear pairs are
// the disjoint transpositions.
inline AlgebraDef matsuo_s4(const Rat& eta, FieldSpec field = FieldSpec::Q()) {
    std::vector<std::string> pts = {"t12", "t13", "t14", "t23", "t24", "t34"};
    std::vector<std::vector<std::string>> lines = {
        {"t12", "t13", "t23"}, {"t12", "t14", "t24"}, {"t13", "t14", "t34"}, {"t23", "t24", "t34"}};
    return matsuo(pts, lines, eta, field);
}

// Basis {e, f, s}: e^2 = e, f^2 = f, ef = s + 1/2 e + 1/2 f, se = pi e,
// sf = pi f, s^2 = pi s.
inline AlgebraDef two_axis_family(const Rat& pi, FieldSpec field = FieldSpec::Q()) {
    auto c = detail::zero_tensor(field, 3);
    Scalar one = Scalar::one(field), half = one / (one + one), pi_s(field, pi);
    detail::set_sym(c, 0, 0, 0, one);
    detail::set_sym(c, 1, 1, 1, one);
    detail::set_sym(c, 0, 1, 2, one);
    detail::set_sym(c, 0, 1, 0, half);
    detail::set_sym(c, 0, 1, 1, half);
    detail::set_sym(c, 0, 2, 0, pi_s);
    detail::set_sym(c, 1, 2, 1, pi_s);
    detail::set_sym(c, 2, 2, 2, pi_s);
    return AlgebraDef(field, {"e", "f", "s"}, c);
}

// Negative-control fixture: sym_jordan(2) with the single product
// E12*E12 redefined to E11.  Keeps E11 a half-axis but breaks the Jordan
// identity; used across the test suite, not a modelling API.
inline AlgebraDef perturbed_sym_jordan2(FieldSpec field = FieldSpec::Q()) {
    AlgebraDef base = sym_jordan(2, field);
    auto c = detail::zero_tensor(field, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            for (std::size_t k = 0; k < 3; ++k) c[i][j][k] = base.c(i, j, k);
    c[2][2][0] = Scalar::one(field);
    c[2][2][1] = Scalar::zero(field);
    return AlgebraDef(field, base.basis_labels(), c);
}

}  // namespace axial
