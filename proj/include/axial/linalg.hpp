#pragma once

/*
 * linalg.hpp
 * ----------
 * Dense exact linear algebra over a FieldSpec: reduced row echelon form,
 * kernel bases and linear solves.  Pivoting is deterministic (first nonzero
 * entry in column order), so returned bases are reproducible.
 */

#include <optional>
#include <vector>

#include "axial/field.hpp"

namespace axial {

class Vec {
public:
    Vec(FieldSpec f, std::size_t n) : field_(f), v_(n, Scalar::zero(f)) {}
    Vec(FieldSpec f, std::vector<Scalar> entries) : field_(f), v_(std::move(entries)) {
        for (const auto& s : v_)
            if (s.field() != field_) throw FieldMismatch();
    }

    std::size_t size() const { return v_.size(); }
    const FieldSpec& field() const { return field_; }
    Scalar& operator[](std::size_t i) { return v_[i]; }
    const Scalar& operator[](std::size_t i) const { return v_[i]; }

    bool is_zero() const {
        for (const auto& s : v_)
            if (!s.is_zero()) return false;
        return true;
    }

    bool operator==(const Vec& o) const { return field_ == o.field_ && v_ == o.v_; }
    bool operator!=(const Vec& o) const { return !(*this == o); }

    Vec operator+(const Vec& o) const {
        Vec r = *this;
        for (std::size_t i = 0; i < v_.size(); ++i) r.v_[i] += o.v_[i];
        return r;
    }
    Vec operator-(const Vec& o) const {
        Vec r = *this;
        for (std::size_t i = 0; i < v_.size(); ++i) r.v_[i] -= o.v_[i];
        return r;
    }
    Vec operator*(const Scalar& c) const {
        Vec r = *this;
        for (auto& s : r.v_) s *= c;
        return r;
    }

    std::string str() const {
        std::string out = "(";
        for (std::size_t i = 0; i < v_.size(); ++i) {
            if (i) out += ", ";
            out += v_[i].str();
        }
        return out + ")";
    }

private:
    FieldSpec field_;
    std::vector<Scalar> v_;
};

class Mat {
public:
    Mat(FieldSpec f, std::size_t rows, std::size_t cols)
        : field_(f), rows_(rows), cols_(cols), a_(rows * cols, Scalar::zero(f)) {}

    static Mat identity(FieldSpec f, std::size_t n) {
        Mat m(f, n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const FieldSpec& field() const { return field_; }

    Scalar& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const Scalar& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    Vec mul(const Vec& x) const {
        Vec y(field_, rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            Scalar acc = Scalar::zero(field_);
            for (std::size_t c = 0; c < cols_; ++c) acc += at(r, c) * x[c];
            y[r] = acc;
        }
        return y;
    }

    Mat operator-(const Mat& o) const {
        Mat r = *this;
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
        return r;
    }

    // In-place reduced row echelon form; returns the pivot column of each
    // pivot row in order.
    std::vector<std::size_t> rref() {
        std::vector<std::size_t> pivots;
        std::size_t row = 0;
        for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
            std::size_t sel = rows_;
            for (std::size_t r = row; r < rows_; ++r)
                if (!at(r, col).is_zero()) {
                    sel = r;
                    break;
                }
            if (sel == rows_) continue;
            swap_rows(sel, row);
            Scalar inv = at(row, col).inv();
            for (std::size_t c = col; c < cols_; ++c) at(row, c) *= inv;
            for (std::size_t r = 0; r < rows_; ++r) {
                if (r == row || at(r, col).is_zero()) continue;
                Scalar factor = at(r, col);
                for (std::size_t c = col; c < cols_; ++c) at(r, c) -= factor * at(row, c);
            }
            pivots.push_back(col);
            ++row;
        }
        return pivots;
    }

private:
    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
    }

    FieldSpec field_;
    std::size_t rows_, cols_;
    std::vector<Scalar> a_;
};

// Basis of ker(M), one vector per free column, in column order.  Empty list
// for a trivial kernel.
inline std::vector<Vec> kernel_basis(const Mat& m) {
    Mat r = m;
    std::vector<std::size_t> pivots = r.rref();
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : pivots) is_pivot[c] = true;

    std::vector<Vec> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vec v(m.field(), m.cols());
        v[free] = Scalar::one(m.field());
        for (std::size_t pr = 0; pr < pivots.size(); ++pr) v[pivots[pr]] = -r.at(pr, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

// Some x with Mx = b (free variables set to 0), or nullopt when inconsistent.
inline std::optional<Vec> solve_linear(const Mat& m, const Vec& b) {
    if (b.size() != m.rows()) throw Error("solve_linear: dimension mismatch");
    Mat aug(m.field(), m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) aug.at(r, c) = m.at(r, c);
        aug.at(r, m.cols()) = b[r];
    }
    std::vector<std::size_t> pivots = aug.rref();
    if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
    Vec x(m.field(), m.cols());
    for (std::size_t pr = 0; pr < pivots.size(); ++pr) x[pivots[pr]] = aug.at(pr, m.cols());
    return x;
}

inline std::size_t rank(const Mat& m) {
    Mat r = m;
    return r.rref().size();
}

}  // namespace axial
