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

/**
 * @file pfaffian.hpp
 * @brief Skew-symmetric matrices and their Pfaffians, including odd orders
 * through the bordered (de Bruijn) construction.
 *
 * Three evaluation routes:
 *  - expansion along the first row (division free; any commutative ring,
 *    used for polynomial entries and small exact matrices);
 *  - exact skew elimination over Rational for order >= 8;
 *  - skew elimination with pivoting over double.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "pfafflow/linalg.hpp"
#include "pfafflow/rational.hpp"

namespace pfafflow {

template <typename T>
struct RingTraits {
    static T zero() { return T(0); }
    static T one() { return T(1); }
};

/// Skew-symmetric matrix storing only the strict upper triangle.
template <typename T>
class SkewMatrix {
public:
    SkewMatrix() = default;
    explicit SkewMatrix(std::size_t n) : n_(n), upper_(n * (n > 0 ? n - 1 : 0) / 2, RingTraits<T>::zero()) {}

    /// Builds from a dense matrix; rejects anything that is not skew.
    static SkewMatrix from_dense(const Matrix<T>& m) {
        if (m.rows() != m.cols()) throw std::invalid_argument("SkewMatrix: matrix not square");
        SkewMatrix s(m.rows());
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (!(m(i, i) == RingTraits<T>::zero())) {
                throw std::invalid_argument("SkewMatrix: nonzero diagonal");
            }
            for (std::size_t j = i + 1; j < m.cols(); ++j) {
                if (!(m(j, i) == -m(i, j))) throw std::invalid_argument("SkewMatrix: not skew");
                s.set(i, j, m(i, j));
            }
        }
        return s;
    }

    std::size_t order() const { return n_; }

    /// a_{ij} for any i, j (derived from the stored triangle).
    T operator()(std::size_t i, std::size_t j) const {
        if (i == j) return RingTraits<T>::zero();
        if (i < j) return upper_[slot(i, j)];
        return -upper_[slot(j, i)];
    }

    /// Sets a_{ij} (and implicitly a_{ji} = -a_{ij}); i == j is rejected.
    void set(std::size_t i, std::size_t j, const T& v) {
        if (i == j) throw std::invalid_argument("SkewMatrix: diagonal is fixed at zero");
        if (i < j) {
            upper_[slot(i, j)] = v;
        } else {
            upper_[slot(j, i)] = -v;
        }
    }

    Matrix<T> dense() const {
        Matrix<T> m(n_, n_, RingTraits<T>::zero());
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                if (i != j) m(i, j) = (*this)(i, j);
        return m;
    }

    /// Rows/columns reordered: result(i, j) = a(perm[i], perm[j]).
    SkewMatrix permuted(const std::vector<std::size_t>& perm) const {
        SkewMatrix r(perm.size());
        for (std::size_t i = 0; i < perm.size(); ++i)
            for (std::size_t j = i + 1; j < perm.size(); ++j) r.set(i, j, (*this)(perm[i], perm[j]));
        return r;
    }

private:
    std::size_t slot(std::size_t i, std::size_t j) const {
        if (j >= n_) throw std::out_of_range("SkewMatrix index out of range");
        return i * (2 * n_ - i - 1) / 2 + (j - i - 1);
    }

    std::size_t n_ = 0;
    std::vector<T> upper_;
};

/// Options for the floating-point route.
struct FloatPfaffianOptions {
    /// Pivots below singular_tol * (largest entry) are treated as zero.
    double singular_tol = 1e-12;
};

namespace detail {

template <typename T>
T pfaffian_expand_rec(const SkewMatrix<T>& a, std::vector<std::size_t>& idx) {
    if (idx.empty()) return RingTraits<T>::one();
    const std::size_t first = idx[0];
    T total = RingTraits<T>::zero();
    for (std::size_t k = 1; k < idx.size(); ++k) {
        const T aij = a(first, idx[k]);
        if (aij == RingTraits<T>::zero()) continue;
        std::vector<std::size_t> rest;
        rest.reserve(idx.size() - 2);
        for (std::size_t m = 1; m < idx.size(); ++m)
            if (m != k) rest.push_back(idx[m]);
        T sub = pfaffian_expand_rec(a, rest);
        if (k % 2 == 1) {
            total += aij * sub;
        } else {
            total -= aij * sub;
        }
    }
    return total;
}

inline Rational pfaffian_eliminate_exact(const SkewMatrix<Rational>& m) {
    const std::size_t n = m.order();
    Matrix<Rational> a = m.dense();
    Rational result = 1;
    for (std::size_t k = 0; k + 1 < n; k += 2) {
        std::size_t piv = k + 1;
        while (piv < n && a(k, piv) == 0) ++piv;
        if (piv == n) return 0;
        if (piv != k + 1) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k + 1, j), a(piv, j));
            for (std::size_t i = 0; i < n; ++i) std::swap(a(i, k + 1), a(i, piv));
            result = -result;
        }
        const Rational p = a(k, k + 1);
        result *= p;
        for (std::size_t i = k + 2; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                a(i, j) += (a(k + 1, i) * a(k, j) - a(k, i) * a(k + 1, j)) / p;
                a(j, i) = -a(i, j);
            }
        }
    }
    return result;
}

inline double pfaffian_eliminate_float(const SkewMatrix<double>& m, const FloatPfaffianOptions& opt) {
    const std::size_t n = m.order();
    Matrix<double> a = m.dense();
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) scale = std::max(scale, std::abs(a(i, j)));
    if (scale == 0.0) return n == 0 ? 1.0 : 0.0;
    double result = 1.0;
    for (std::size_t k = 0; k + 1 < n; k += 2) {
        // Pivot: largest entry in the remaining block; move it to (k, k+1).
        std::size_t pr = k, pc = k + 1;
        double best = 0.0;
        for (std::size_t i = k; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (std::abs(a(i, j)) > best) {
                    best = std::abs(a(i, j));
                    pr = i;
                    pc = j;
                }
        if (best <= opt.singular_tol * scale) return 0.0;
        auto swap_index = [&](std::size_t x, std::size_t y) {
            if (x == y) return;
            for (std::size_t j = 0; j < n; ++j) std::swap(a(x, j), a(y, j));
            for (std::size_t i = 0; i < n; ++i) std::swap(a(i, x), a(i, y));
            result = -result;
        };
        swap_index(k, pr);
        swap_index(k + 1, pc);
        const double p = a(k, k + 1);
        result *= p;
        for (std::size_t i = k + 2; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                a(i, j) += (a(k + 1, i) * a(k, j) - a(k, i) * a(k + 1, j)) / p;
                a(j, i) = -a(i, j);
            }
        }
    }
    return result;
}

}  // namespace detail

/// Division-free expansion along the first row. Works over any commutative
/// ring with RingTraits. Cost (n-1)!!; intended for small orders.
template <typename T>
T pfaffian_expand(const SkewMatrix<T>& a) {
    if (a.order() % 2 != 0) throw std::invalid_argument("pfaffian_expand: odd order");
    std::vector<std::size_t> idx(a.order());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    return detail::pfaffian_expand_rec(a, idx);
}

/// Classical Pfaffian of an even-order skew matrix.
template <typename T>
T pfaffian_even(const SkewMatrix<T>& a, const FloatPfaffianOptions& opt = {}) {
    if (a.order() % 2 != 0) {
        throw std::invalid_argument("pfaffian_even: odd order " + std::to_string(a.order()) +
                                    " (use pfaffian_debruijn)");
    }
    if constexpr (std::is_same_v<T, double>) {
        return detail::pfaffian_eliminate_float(a, opt);
    } else if constexpr (std::is_same_v<T, Rational>) {
        if (a.order() < 8) return pfaffian_expand(a);
        return detail::pfaffian_eliminate_exact(a);
    } else {
        (void)opt;
        return pfaffian_expand(a);
    }
}

/// A^+: appends a column of +1 and a row of -1 with a zero corner.
template <typename T>
SkewMatrix<T> border_plus(const SkewMatrix<T>& a) {
    if (a.order() % 2 == 0) throw std::invalid_argument("border_plus: order must be odd");
    const std::size_t n = a.order();
    SkewMatrix<T> b(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) b.set(i, j, a(i, j));
        b.set(i, n, RingTraits<T>::one());
    }
    return b;
}

/// Pfaffian of any order: even orders directly, odd orders via border_plus.
template <typename T>
T pfaffian_debruijn(const SkewMatrix<T>& a, const FloatPfaffianOptions& opt = {}) {
    if (a.order() % 2 == 0) return pfaffian_even(a, opt);
    return pfaffian_even(border_plus(a), opt);
}

/// The permutation-sum definition
///   Pf(A) = 1/(2^m m!) sum_sigma sgn(sigma) a_{s1 s2} ... a_{s(2m-1) s(2m)},
/// m = floor(n/2), over all permutations of the n indices. Test oracle only:
/// limited to order <= 7.
template <typename T>
T pfaffian_sigma_sum(const SkewMatrix<T>& a) {
    const std::size_t n = a.order();
    if (n > 7) throw std::invalid_argument("pfaffian_sigma_sum: order above 7");
    const std::size_t m = n / 2;
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    T total = RingTraits<T>::zero();
    do {
        int inversions = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inversions;
        T term = RingTraits<T>::one();
        for (std::size_t k = 0; k < m; ++k) term *= a(perm[2 * k], perm[2 * k + 1]);
        if (inversions % 2 == 0) {
            total += term;
        } else {
            total -= term;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    long norm = 1;
    for (std::size_t k = 1; k <= m; ++k) norm *= 2 * static_cast<long>(k);
    if constexpr (std::is_same_v<T, double>) {
        return total / static_cast<double>(norm);
    } else {
        return total / T(norm);
    }
}

/// B A B^T for square B and skew A of matching order.
template <typename T>
SkewMatrix<T> congruence(const Matrix<T>& b, const SkewMatrix<T>& a) {
    if (b.cols() != a.order()) throw std::invalid_argument("congruence: shape mismatch");
    Matrix<T> prod = b * a.dense() * b.transpose();
    SkewMatrix<T> r(b.rows());
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = i + 1; j < b.rows(); ++j) r.set(i, j, prod(i, j));
    return r;
}

}  // namespace pfafflow
