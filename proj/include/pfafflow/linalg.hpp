/*
 * Copyright 2026 The Pfafflow Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include "pfafflow/rational.hpp"

namespace pfafflow {

/// Thrown when an exact or numeric elimination meets a singular matrix.
class SingularMatrix : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Dense row-major matrix.
template <typename T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::size_t rows, std::size_t cols, const T& fill)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n, T(0));
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: shape mismatch");
        Matrix c(a.rows_, b.cols_, T(0));
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (aik == T(0)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

namespace detail {

template <typename T>
double magnitude(const T& v) {
    if constexpr (std::is_floating_point_v<T>) {
        return std::abs(v);
    } else {
        return v == 0 ? 0.0 : 1.0;
    }
}

}  // namespace detail

/// Determinant by Gaussian elimination (exact over Rational, partial pivoting
/// over double).
template <typename T>
T det(Matrix<T> a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("det: matrix not square");
    const std::size_t n = a.rows();
    T result(1);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = detail::magnitude(a(k, k));
        for (std::size_t i = k + 1; i < n && (std::is_floating_point_v<T> || best == 0.0); ++i) {
            const double m = detail::magnitude(a(i, k));
            if (m > best) {
                best = m;
                piv = i;
            }
        }
        if (best == 0.0) return T(0);
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
            result = -result;
        }
        const T p = a(k, k);
        result *= p;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a(i, k) == T(0)) continue;
            const T f = a(i, k) / p;
            for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
        }
    }
    return result;
}

/// Inverse by Gauss-Jordan elimination. Throws SingularMatrix.
template <typename T>
Matrix<T> inverse(Matrix<T> a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("inverse: matrix not square");
    const std::size_t n = a.rows();
    Matrix<T> inv = Matrix<T>::identity(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = detail::magnitude(a(k, k));
        for (std::size_t i = k + 1; i < n && (std::is_floating_point_v<T> || best == 0.0); ++i) {
            const double m = detail::magnitude(a(i, k));
            if (m > best) {
                best = m;
                piv = i;
            }
        }
        if (best == 0.0) throw SingularMatrix("inverse: matrix is singular");
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(k, j), a(piv, j));
                std::swap(inv(k, j), inv(piv, j));
            }
        }
        const T p = a(k, k);
        for (std::size_t j = 0; j < n; ++j) {
            a(k, j) /= p;
            inv(k, j) /= p;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || a(i, k) == T(0)) continue;
            const T f = a(i, k);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(k, j);
                inv(i, j) -= f * inv(k, j);
            }
        }
    }
    return inv;
}

}  // namespace pfafflow
