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
 * @file schurq.hpp
 * @brief q_k, q_{a,b}, Schur Q/P functions and evolved-vacuum expectations of
 * neutral-fermion modes.
 *
 * Every routine is written against a "q source": any object with a member
 * `q(int k)` returning q_k (zero for k < 0). Two sources are provided:
 * QTable (symbolic OddPoly values) and NumericQ<T> (values at a numeric time
 * vector, T = Rational or double). The same Pfaffian formulas then serve
 * symbolic, exact and floating-point evaluation.
 *
 * Conventions: the generating function is
 *     sum_k q_k(c t) z^k = exp(2 sum_{n odd} c t_n z^n),
 * and the Schur functions use c = 1/2, i.e. Q_lambda(t/2).
 */

#pragma once

#include <stdexcept>
#include <type_traits>
#include <vector>

#include "pfafflow/partitions.hpp"
#include "pfafflow/pfaffian.hpp"
#include "pfafflow/series.hpp"

namespace pfafflow {

template <>
struct RingTraits<series::OddPoly> {
    static series::OddPoly zero() { return series::OddPoly{}; }
    static series::OddPoly one() { return series::OddPoly::constant(Rational(1)); }
};

namespace schurq {

using series::OddPoly;
using series::Side;

/// Multiplies a value by an exact rational, whatever the value type.
inline double times(double v, const Rational& c) { return v * c.get_d(); }
inline Rational times(const Rational& v, const Rational& c) { return v * c; }
inline OddPoly times(const OddPoly& v, const Rational& c) { return v * c; }

/// Symbolic q_k(c t) for 0 <= k <= k_max, in the variables t_n (Side::plus)
/// or t_{-n} (Side::minus) of the given copy. Built by the recurrence
///     k q_k = sum_{n odd <= k} 2 c n t_n q_{k-n}.
class QTable {
public:
    explicit QTable(int k_max, const Rational& time_factor = Rational(1, 2),
                    Side side = Side::plus, int copy = 0);

    int k_max() const { return static_cast<int>(q_.size()) - 1; }
    /// Zero for k < 0; throws std::out_of_range above k_max.
    OddPoly q(int k) const;

private:
    std::vector<OddPoly> q_;
};

/// q_k(t) (scale 1) or q_k(t/2) (scale 1/2) as a polynomial. Negative k gives 0.
OddPoly q_poly(int k, const Rational& scale = Rational(1, 2));

/// q_k(c t) at a numeric time vector. `odd_times[i]` holds t_{2i+1}.
template <typename T>
class NumericQ {
public:
    NumericQ(const std::vector<T>& odd_times, const Rational& time_factor, int k_max) {
        if (k_max < 0) throw std::invalid_argument("NumericQ: negative k_max");
        q_.assign(static_cast<std::size_t>(k_max) + 1, T(0));
        q_[0] = T(1);
        for (int k = 1; k <= k_max; ++k) {
            T acc(0);
            for (int n = 1; n <= k; n += 2) {
                const std::size_t slot = static_cast<std::size_t>(n / 2);
                if (slot >= odd_times.size()) break;
                if (odd_times[slot] == T(0)) continue;
                acc += times(odd_times[slot] * q_[static_cast<std::size_t>(k - n)],
                             Rational(2 * n) * time_factor);
            }
            q_[static_cast<std::size_t>(k)] = times(acc, Rational(1, k));
        }
    }

    int k_max() const { return static_cast<int>(q_.size()) - 1; }

    T q(int k) const {
        if (k < 0) return T(0);
        if (k > k_max()) {
            throw std::out_of_range("q_" + std::to_string(k) + " beyond the table (k_max = " +
                                    std::to_string(k_max()) + ")");
        }
        return q_[static_cast<std::size_t>(k)];
    }

private:
    std::vector<T> q_;
};

/// q_k(t(x)/2) with t the Miwa times of x (exact).
NumericQ<Rational> miwa_q(const std::vector<Rational>& x, int k_max);
/// Same in double precision.
NumericQ<double> miwa_q_double(const std::vector<double>& x, int k_max);

/// q_{a,b} = q_a q_b + 2 sum_{k=1}^{b} (-1)^k q_{a+k} q_{b-k}.
/// q_{a,a} = 0 for a >= 1 while q_{0,0} = 1.
template <typename Source>
auto q_pair(const Source& s, int a, int b) {
    using T = std::decay_t<decltype(s.q(0))>;
    if (a < 0 || b < 0) throw std::invalid_argument("q_pair: negative index");
    T acc = s.q(a) * s.q(b);
    for (int k = 1; k <= b; ++k) {
        T term = times(s.q(a + k) * s.q(b - k), Rational(2));
        if (k % 2 == 0) {
            acc += term;
        } else {
            acc -= term;
        }
    }
    return acc;
}

/// <0| e^{H_+} phi_a phi_b |0> = 1/2 q_a q_b + sum_{j>=1} (-1)^j q_{a+j} q_{b-j}
/// for any integers a, b (q_k = 0 for k < 0). Zero when b < 0.
template <typename Source>
auto two_point(const Source& s, int a, int b) {
    using T = std::decay_t<decltype(s.q(0))>;
    if (b < 0 || a + b < 0) return RingTraits<T>::zero();
    T acc = times(s.q(a) * s.q(b), Rational(1, 2));
    for (int j = 1; j <= b; ++j) {
        if (a + j < 0) continue;
        T term = s.q(a + j) * s.q(b - j);
        if (j % 2 == 0) {
            acc += term;
        } else {
            acc -= term;
        }
    }
    return acc;
}

/// <0| e^{H_+} phi_{m_1} ... phi_{m_{2n}} |0> as the Pfaffian of two-point values.
template <typename Source>
auto vev_modes(const Source& s, const std::vector<int>& modes) {
    using T = std::decay_t<decltype(s.q(0))>;
    if (modes.size() % 2 != 0) {
        throw std::invalid_argument("vev_modes: odd number of modes (append mode 0 explicitly)");
    }
    SkewMatrix<T> m(modes.size());
    for (std::size_t i = 0; i < modes.size(); ++i)
        for (std::size_t j = i + 1; j < modes.size(); ++j) m.set(i, j, two_point(s, modes[i], modes[j]));
    return pfaffian_even(m);
}

/// Q_lambda: Pf(q_{l_i, l_j}) for even length; for odd length the matrix is
/// bordered by the column (q_{l_i}) with a zero corner.
template <typename Source>
auto schur_q(const Source& s, const StrictPartition& lambda) {
    using T = std::decay_t<decltype(s.q(0))>;
    const std::size_t l = static_cast<std::size_t>(lambda.length());
    const std::size_t n = l + (l % 2);
    SkewMatrix<T> m(n);
    for (std::size_t i = 0; i < l; ++i) {
        for (std::size_t j = i + 1; j < l; ++j) m.set(i, j, q_pair(s, lambda[i], lambda[j]));
        if (n > l) m.set(i, l, s.q(lambda[i]));
    }
    return pfaffian_even(m);
}

/// Largest q index touched by schur_q for this partition.
inline int q_index_bound(const StrictPartition& lambda) {
    return lambda.length() >= 2 ? lambda[0] + lambda[1] : lambda.first();
}

/// Q_lambda(t/2) as a polynomial in t_1, t_3, ...
OddPoly schur_q_poly(const StrictPartition& lambda);
/// P_lambda(t/2) = 2^{-l} Q_lambda(t/2).
OddPoly schur_p_poly(const StrictPartition& lambda);
/// Q_lambda at the Miwa point x (exact).
Rational schur_q_value(const StrictPartition& lambda, const std::vector<Rational>& x);
Rational schur_p_value(const StrictPartition& lambda, const std::vector<Rational>& x);

/// Free-fermion pair <phi(z) phi(w)> = (1/2)(1 - w/z)/(1 + w/z) (|z| > |w|).
Rational wick_pair(const Rational& z, const Rational& w);
/// Pf of wick_pair(z_i, z_j), i < j.
Rational wick_pfaffian(const std::vector<Rational>& z);
/// (1/2^s) prod_{j<j'} (1 - z_j'/z_j)/(1 + z_j'/z_j) for 2s points.
Rational wick_product_formula(const std::vector<Rational>& z);
/// Truncated mode sum sum_{|m_i| <= cutoff} prod z_i^{m_i} <phi_{m_1}...phi_{m_{2s}}>
/// at t = 0, in double precision.
double wick_mode_sum(const std::vector<double>& z, int cutoff);

}  // namespace schurq
}  // namespace pfafflow
