#pragma once

// Dense matrices over GF(q) and exact Gaussian elimination.
// Pivot choice is always the first nonzero entry scanning down the column,
// so every routine here is deterministic.

#include "lrc/gf.hpp"

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace lrc {

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Element& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    Element operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

    std::span<Element> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
    std::span<const Element> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }

    const std::vector<Element>& data() const noexcept { return data_; }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = Element{1};
        return m;
    }

    /// Submatrix made of the given columns, in the given order.
    Matrix select_columns(std::span<const std::size_t> cols) const {
        Matrix out(rows_, cols.size());
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t j = 0; j < cols.size(); ++j) out(r, j) = (*this)(r, cols[j]);
        return out;
    }

    Matrix transpose() const {
        Matrix out(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
        return out;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Element> data_;
};

/// In-place reduced row echelon form; returns the pivot column of each pivot row.
inline std::vector<std::size_t> rref(const Field& f, Matrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t prow = 0;
    for (std::size_t c = 0; c < m.cols() && prow < m.rows(); ++c) {
        std::size_t sel = prow;
        while (sel < m.rows() && m(sel, c).is_zero()) ++sel;
        if (sel == m.rows()) continue;
        if (sel != prow)
            for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(sel, k), m(prow, k));
        const Element scale = f.inv(m(prow, c));
        for (std::size_t k = c; k < m.cols(); ++k) m(prow, k) = f.mul(m(prow, k), scale);
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == prow || m(r, c).is_zero()) continue;
            const Element factor = m(r, c);
            for (std::size_t k = c; k < m.cols(); ++k) m(r, k) = f.sub(m(r, k), f.mul(factor, m(prow, k)));
        }
        pivots.push_back(c);
        ++prow;
    }
    return pivots;
}

inline std::size_t rank(const Field& f, Matrix m) { return rref(f, m).size(); }

/// Basis of the right nullspace {x : m x = 0}, one basis vector per row.
/// Free variables are taken in ascending column order.
inline Matrix nullspace(const Field& f, Matrix m) {
    const auto pivots = rref(f, m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < m.cols(); ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    Matrix basis(free_cols.size(), m.cols());
    for (std::size_t b = 0; b < free_cols.size(); ++b) {
        const std::size_t fc = free_cols[b];
        basis(b, fc) = f.one();
        for (std::size_t i = 0; i < pivots.size(); ++i) basis(b, pivots[i]) = f.neg(m(i, fc));
    }
    return basis;
}

enum class SolveStatus { unique, inconsistent, underdetermined };

struct SolveResult {
    SolveStatus status;
    std::vector<Element> x;
};

/// Solves a x = b exactly.
inline SolveResult solve(const Field& f, const Matrix& a, std::span<const Element> b) {
    Matrix aug(a.rows(), a.cols() + 1);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
        aug(r, a.cols()) = b[r];
    }
    const auto pivots = rref(f, aug);
    if (!pivots.empty() && pivots.back() == a.cols()) return {SolveStatus::inconsistent, {}};
    if (pivots.size() < a.cols()) return {SolveStatus::underdetermined, {}};
    std::vector<Element> x(a.cols());
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug(i, a.cols());
    return {SolveStatus::unique, std::move(x)};
}

inline Element determinant(const Field& f, Matrix m) {
    if (m.rows() != m.cols()) throw Error(ErrorCode::InvalidParameters, "determinant of a non-square matrix");
    Element det = f.one();
    const std::size_t n = m.rows();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t sel = c;
        while (sel < n && m(sel, c).is_zero()) ++sel;
        if (sel == n) return f.zero();
        if (sel != c) {
            for (std::size_t k = 0; k < n; ++k) std::swap(m(sel, k), m(c, k));
            det = f.neg(det);
        }
        det = f.mul(det, m(c, c));
        const Element pinv = f.inv(m(c, c));
        for (std::size_t r = c + 1; r < n; ++r) {
            if (m(r, c).is_zero()) continue;
            const Element factor = f.mul(m(r, c), pinv);
            for (std::size_t k = c; k < n; ++k) m(r, k) = f.sub(m(r, k), f.mul(factor, m(c, k)));
        }
    }
    return det;
}

inline Matrix multiply(const Field& f, const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw Error(ErrorCode::LengthMismatch, "matrix product dimension mismatch");
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Element aik = a(i, k);
            if (aik.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = f.add(out(i, j), f.mul(aik, b(k, j)));
        }
    return out;
}

} // namespace lrc
