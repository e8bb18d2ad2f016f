#pragma once

#include "novikov/exactalg/scalar.hpp"

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace novikov {

/// Dense row-major matrix whose entries all live in one scalar domain T.
template <class T>
class Matrix {
public:
    using value_type = T;

    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
    Matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ == 0 ? 0 : init.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw std::invalid_argument("ragged matrix initializer");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    const std::vector<T>& data() const { return data_; }

    bool is_zero() const {
        for (const auto& x : data_)
            if (!novikov::is_zero(x)) return false;
        return true;
    }

    Matrix transpose() const {
        Matrix out(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
        return out;
    }

    std::vector<T> apply(std::span<const T> v) const {
        if (v.size() != cols_) throw std::invalid_argument("matrix-vector size mismatch");
        std::vector<T> out(rows_, T(0));
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                if (!novikov::is_zero((*this)(r, c)) && !novikov::is_zero(v[c])) out[r] += (*this)(r, c) * v[c];
        return out;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product size mismatch");
        Matrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (novikov::is_zero(aik)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (!novikov::is_zero(b(k, j))) out(i, j) += aik * b(k, j);
            }
        return out;
    }
    friend Matrix operator+(Matrix a, const Matrix& b) {
        a.check_same(b);
        for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
        return a;
    }
    friend Matrix operator-(Matrix a, const Matrix& b) {
        a.check_same(b);
        for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
        return a;
    }
    friend Matrix operator*(const T& s, Matrix a) {
        for (auto& x : a.data_) x = s * x;
        return a;
    }
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    /// Entrywise conversion through a callable (domain change).
    template <class U, class F>
    Matrix<U> map(F&& f) const {
        Matrix<U> out(rows_, cols_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) out(r, c) = f((*this)(r, c));
        return out;
    }

    /// Horizontal concatenation [a | b].
    friend Matrix hcat(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ && a.cols_ != 0 && b.cols_ != 0) throw std::invalid_argument("hcat row mismatch");
        std::size_t rows = a.cols_ == 0 ? b.rows_ : a.rows_;
        Matrix out(rows, a.cols_ + b.cols_);
        for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t c = 0; c < a.cols_; ++c) out(r, c) = a(r, c);
            for (std::size_t c = 0; c < b.cols_; ++c) out(r, a.cols_ + c) = b(r, c);
        }
        return out;
    }

    /// Matrix whose columns are the given vectors (all of length rows).
    static Matrix from_columns(std::size_t rows, const std::vector<std::vector<T>>& columns) {
        Matrix out(rows, columns.size());
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (columns[c].size() != rows) throw std::invalid_argument("column length mismatch");
            for (std::size_t r = 0; r < rows; ++r) out(r, c) = columns[c][r];
        }
        return out;
    }

private:
    void check_same(const Matrix& b) const {
        if (rows_ != b.rows_ || cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch");
    }

    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> data_;
};

/// Matrix of runtime-typed scalars, validated into exactly one domain.
using AnyMatrix = std::variant<Matrix<Rational>, Matrix<LaurentPoly>, Matrix<RationalFunction>,
                               Matrix<GaussianRational>, Matrix<double>>;

/// Builds a typed matrix from row-major runtime scalars; throws DomainMismatch when
/// the entries do not all share one domain.
AnyMatrix make_matrix(std::size_t rows, std::size_t cols, const std::vector<Scalar>& entries);

Domain domain_of(const AnyMatrix& m);

}  // namespace novikov
