// Copyright 2026 The qfa-cutpoint Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QFA_MATRIX_H
#define QFA_MATRIX_H

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qfa/errors.h"

namespace qfa {

using Complex = std::complex<double>;

template <typename T>
T conj_of(const T &x) {
    return x;
}
inline Complex conj_of(const Complex &x) {
    return std::conj(x);
}

/// Dense row-major matrix over a field-like scalar (double, Complex, Rational).
template <typename T>
class Matrix {
   public:
    using value_type = T;

    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {
    }
    Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (data_.size() != rows_ * cols_) {
            throw DimensionMismatch("matrix data has " + std::to_string(data_.size()) + " entries, expected " +
                                    std::to_string(rows_ * cols_));
        }
    }
    Matrix(std::initializer_list<std::initializer_list<T>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto &row : rows) {
            if (row.size() != cols_) {
                throw DimensionMismatch("ragged matrix literal");
            }
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; i++) {
            m(i, i) = T(1);
        }
        return m;
    }

    std::size_t rows() const noexcept {
        return rows_;
    }
    std::size_t cols() const noexcept {
        return cols_;
    }
    bool is_square() const noexcept {
        return rows_ == cols_;
    }

    T &operator()(std::size_t r, std::size_t c) {
        return data_[r * cols_ + c];
    }
    const T &operator()(std::size_t r, std::size_t c) const {
        return data_[r * cols_ + c];
    }

    std::span<T> row(std::size_t r) {
        return {data_.data() + r * cols_, cols_};
    }
    std::span<const T> row(std::size_t r) const {
        return {data_.data() + r * cols_, cols_};
    }

    const std::vector<T> &data() const noexcept {
        return data_;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; r++) {
            for (std::size_t c = 0; c < cols_; c++) {
                t(c, r) = (*this)(r, c);
            }
        }
        return t;
    }

    /// Conjugate transpose (plain transpose for real scalars).
    Matrix adjoint() const {
        Matrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; r++) {
            for (std::size_t c = 0; c < cols_; c++) {
                t(c, r) = conj_of((*this)(r, c));
            }
        }
        return t;
    }

    T trace() const {
        T acc(0);
        for (std::size_t i = 0; i < std::min(rows_, cols_); i++) {
            acc += (*this)(i, i);
        }
        return acc;
    }

    Matrix &operator+=(const Matrix &o) {
        require_same_shape(o, "+");
        for (std::size_t i = 0; i < data_.size(); i++) {
            data_[i] += o.data_[i];
        }
        return *this;
    }
    Matrix &operator-=(const Matrix &o) {
        require_same_shape(o, "-");
        for (std::size_t i = 0; i < data_.size(); i++) {
            data_[i] -= o.data_[i];
        }
        return *this;
    }
    Matrix &operator*=(const T &s) {
        for (auto &x : data_) {
            x *= s;
        }
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix &b) {
        a += b;
        return a;
    }
    friend Matrix operator-(Matrix a, const Matrix &b) {
        a -= b;
        return a;
    }
    friend Matrix operator-(Matrix a) {
        for (auto &x : a.data_) {
            x = -x;
        }
        return a;
    }
    friend Matrix operator*(Matrix a, const T &s) {
        a *= s;
        return a;
    }
    friend Matrix operator*(const T &s, Matrix a) {
        a *= s;
        return a;
    }
    friend Matrix operator*(const Matrix &a, const Matrix &b) {
        if (a.cols_ != b.rows_) {
            throw DimensionMismatch("matrix product of " + a.shape_str() + " and " + b.shape_str());
        }
        Matrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; i++) {
            for (std::size_t k = 0; k < a.cols_; k++) {
                const T &aik = a(i, k);
                if (aik == T(0)) {
                    continue;
                }
                for (std::size_t j = 0; j < b.cols_; j++) {
                    out(i, j) += aik * b(k, j);
                }
            }
        }
        return out;
    }
    friend bool operator==(const Matrix &a, const Matrix &b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    std::string shape_str() const {
        return std::to_string(rows_) + "x" + std::to_string(cols_);
    }

   private:
    void require_same_shape(const Matrix &o, const char *op) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) {
            throw DimensionMismatch(std::string("operator") + op + " on " + shape_str() + " and " + o.shape_str());
        }
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using ComplexMatrix = Matrix<Complex>;
using RealMatrix = Matrix<double>;
using ComplexVector = std::vector<Complex>;
using RealVector = std::vector<double>;

/// Row vector times matrix.
template <typename T>
std::vector<T> row_times(std::span<const T> v, const Matrix<T> &m) {
    if (v.size() != m.rows()) {
        throw DimensionMismatch("row vector of length " + std::to_string(v.size()) + " times " + m.shape_str());
    }
    std::vector<T> out(m.cols(), T(0));
    for (std::size_t i = 0; i < m.rows(); i++) {
        if (v[i] == T(0)) {
            continue;
        }
        for (std::size_t j = 0; j < m.cols(); j++) {
            out[j] += v[i] * m(i, j);
        }
    }
    return out;
}

/// Matrix times column vector.
template <typename T>
std::vector<T> times_col(const Matrix<T> &m, std::span<const T> v) {
    if (v.size() != m.cols()) {
        throw DimensionMismatch(m.shape_str() + " times column vector of length " + std::to_string(v.size()));
    }
    std::vector<T> out(m.rows(), T(0));
    for (std::size_t i = 0; i < m.rows(); i++) {
        for (std::size_t j = 0; j < m.cols(); j++) {
            out[i] += m(i, j) * v[j];
        }
    }
    return out;
}

template <typename T>
T dot(std::span<const T> a, std::span<const T> b) {
    if (a.size() != b.size()) {
        throw DimensionMismatch("dot product of lengths " + std::to_string(a.size()) + " and " +
                                std::to_string(b.size()));
    }
    T acc(0);
    for (std::size_t i = 0; i < a.size(); i++) {
        acc += a[i] * b[i];
    }
    return acc;
}

template <typename T>
double frobenius_norm(const Matrix<T> &m) {
    double acc = 0;
    for (const auto &x : m.data()) {
        acc += std::norm(x);
    }
    return std::sqrt(acc);
}

inline double frobenius_norm(const RealMatrix &m) {
    double acc = 0;
    for (double x : m.data()) {
        acc += x * x;
    }
    return std::sqrt(acc);
}

/// Largest entry magnitude of A - B.
template <typename T>
double max_abs_diff(const Matrix<T> &a, const Matrix<T> &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionMismatch("max_abs_diff on " + a.shape_str() + " and " + b.shape_str());
    }
    double m = 0;
    for (std::size_t i = 0; i < a.data().size(); i++) {
        m = std::max(m, static_cast<double>(std::abs(a.data()[i] - b.data()[i])));
    }
    return m;
}

inline ComplexMatrix to_complex(const RealMatrix &m) {
    ComplexMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); i++) {
        for (std::size_t j = 0; j < m.cols(); j++) {
            out(i, j) = m(i, j);
        }
    }
    return out;
}

/// Kronecker product.
template <typename T>
Matrix<T> kron(const Matrix<T> &a, const Matrix<T> &b) {
    Matrix<T> out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); i++) {
        for (std::size_t j = 0; j < a.cols(); j++) {
            for (std::size_t k = 0; k < b.rows(); k++) {
                for (std::size_t l = 0; l < b.cols(); l++) {
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
                }
            }
        }
    }
    return out;
}

}  // namespace qfa

#endif
