#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tamarkin/core/error.hpp"
#include "tamarkin/core/field.hpp"

namespace tamarkin {

/// Dense row-major matrix over a field. Zero-sized dimensions are allowed and
/// behave like the zero map between (possibly zero) vector spaces.
template <Field K>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, K::zero()) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = K::one();
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    K& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const K& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    bool is_zero() const {
        for (const K& x : data_)
            if (!x.is_zero()) return false;
        return true;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_)
            throw structure_error("matrix shape mismatch in product: " + a.shape() + " * " + b.shape());
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const K& x = a(i, k);
                if (x.is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += x * b(k, j);
            }
        return c;
    }
    friend Matrix operator+(Matrix a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw structure_error("matrix shape mismatch in sum");
        for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
        return a;
    }
    friend Matrix operator-(Matrix a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw structure_error("matrix shape mismatch in difference");
        for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
        return a;
    }
    friend Matrix operator*(const K& s, Matrix a) {
        for (K& x : a.data_) x *= s;
        return a;
    }

    std::vector<K> apply(std::span<const K> v) const {
        if (v.size() != cols_) throw structure_error("vector length mismatch");
        std::vector<K> out(rows_, K::zero());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
        return out;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

    /// Reduced row echelon form in place; returns the pivot columns.
    std::vector<std::size_t> rref() {
        std::vector<std::size_t> pivots;
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
            std::size_t p = r;
            while (p < rows_ && (*this)(p, c).is_zero()) ++p;
            if (p == rows_) continue;
            if (p != r)
                for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(p, j), (*this)(r, j));
            K inv = (*this)(r, c).inverse();
            for (std::size_t j = c; j < cols_; ++j) (*this)(r, j) *= inv;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == r) continue;
                K f = (*this)(i, c);
                if (f.is_zero()) continue;
                for (std::size_t j = c; j < cols_; ++j) (*this)(i, j) -= f * (*this)(r, j);
            }
            pivots.push_back(c);
            ++r;
        }
        return pivots;
    }

    std::size_t rank() const {
        Matrix m = *this;
        return m.rref().size();
    }

    /// Basis of {x : A x = 0}, one vector per free column.
    std::vector<std::vector<K>> nullspace() const {
        Matrix m = *this;
        auto pivots = m.rref();
        std::vector<bool> is_pivot(cols_, false);
        for (auto p : pivots) is_pivot[p] = true;
        std::vector<std::vector<K>> basis;
        for (std::size_t free = 0; free < cols_; ++free) {
            if (is_pivot[free]) continue;
            std::vector<K> v(cols_, K::zero());
            v[free] = K::one();
            for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m(i, free);
            basis.push_back(std::move(v));
        }
        return basis;
    }

    /// Some solution of A x = b, or nullopt when the system is inconsistent.
    std::optional<std::vector<K>> solve(std::span<const K> b) const {
        if (b.size() != rows_) throw structure_error("right-hand side length mismatch");
        Matrix aug(rows_, cols_ + 1);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
            aug(i, cols_) = b[i];
        }
        auto pivots = aug.rref();
        if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;
        std::vector<K> x(cols_, K::zero());
        for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug(i, cols_);
        return x;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<K> data_;
};

/// Rank of a list of vectors of common length.
template <Field K>
std::size_t rank_of(const std::vector<std::vector<K>>& vectors, std::size_t length) {
    Matrix<K> m(vectors.size(), length);
    for (std::size_t i = 0; i < vectors.size(); ++i)
        for (std::size_t j = 0; j < length; ++j) m(i, j) = vectors[i][j];
    return m.rank();
}

}  // namespace tamarkin
