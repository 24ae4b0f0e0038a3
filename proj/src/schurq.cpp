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

#include "pfafflow/schurq.hpp"

#include <cmath>

namespace pfafflow::schurq {

using series::Monomial;
using series::Var;

QTable::QTable(int k_max, const Rational& time_factor, Side side, int copy) {
    if (k_max < 0) throw std::invalid_argument("QTable: negative k_max");
    q_.reserve(static_cast<std::size_t>(k_max) + 1);
    q_.push_back(OddPoly::constant(Rational(1)));
    for (int k = 1; k <= k_max; ++k) {
        OddPoly acc;
        for (int n = 1; n <= k; n += 2) {
            const Var v{side == Side::plus ? n : -n, copy};
            OddPoly term = q_[static_cast<std::size_t>(k - n)] * OddPoly::variable(v);
            acc += term * (Rational(2 * n) * time_factor);
        }
        acc *= Rational(1, k);
        q_.push_back(std::move(acc));
    }
}

OddPoly QTable::q(int k) const {
    if (k < 0) return OddPoly{};
    if (k > k_max()) {
        throw std::out_of_range("q_" + std::to_string(k) + " beyond the table (k_max = " +
                                std::to_string(k_max()) + ")");
    }
    return q_[static_cast<std::size_t>(k)];
}

OddPoly q_poly(int k, const Rational& scale) {
    if (k < 0) return OddPoly{};
    return QTable(k, scale).q(k);
}

NumericQ<Rational> miwa_q(const std::vector<Rational>& x, int k_max) {
    // t_n / 2 = (1/n) sum x^n, passed as t_n with factor 1/2.
    std::vector<Rational> t;
    for (int n = 1; n <= std::max(k_max, 1); n += 2) {
        Rational s = 0;
        for (const auto& xi : x) s += pow(xi, static_cast<unsigned>(n));
        t.push_back(Rational(2, n) * s);
    }
    return NumericQ<Rational>(t, Rational(1, 2), k_max);
}

NumericQ<double> miwa_q_double(const std::vector<double>& x, int k_max) {
    std::vector<double> t;
    for (int n = 1; n <= std::max(k_max, 1); n += 2) {
        double s = 0;
        for (double xi : x) s += std::pow(xi, n);
        t.push_back(2.0 * s / n);
    }
    return NumericQ<double>(t, Rational(1, 2), k_max);
}

OddPoly schur_q_poly(const StrictPartition& lambda) {
    return schur_q(QTable(q_index_bound(lambda)), lambda);
}

OddPoly schur_p_poly(const StrictPartition& lambda) {
    return schur_q_poly(lambda) * pow2(-lambda.length());
}

Rational schur_q_value(const StrictPartition& lambda, const std::vector<Rational>& x) {
    return schur_q(miwa_q(x, q_index_bound(lambda)), lambda);
}

Rational schur_p_value(const StrictPartition& lambda, const std::vector<Rational>& x) {
    return schur_q_value(lambda, x) * pow2(-lambda.length());
}

Rational wick_pair(const Rational& z, const Rational& w) {
    if (z == 0) throw std::invalid_argument("wick_pair: z = 0");
    const Rational u = w / z;
    if (u == -1) throw std::invalid_argument("wick_pair: pole at w = -z");
    return Rational(1, 2) * (1 - u) / (1 + u);
}

Rational wick_pfaffian(const std::vector<Rational>& z) {
    if (z.size() % 2 != 0) throw std::invalid_argument("wick_pfaffian: odd number of points");
    SkewMatrix<Rational> m(z.size());
    for (std::size_t i = 0; i < z.size(); ++i)
        for (std::size_t j = i + 1; j < z.size(); ++j) m.set(i, j, wick_pair(z[i], z[j]));
    return pfaffian_even(m);
}

Rational wick_product_formula(const std::vector<Rational>& z) {
    if (z.size() % 2 != 0) throw std::invalid_argument("wick_product_formula: odd number of points");
    Rational r = pow2(-static_cast<int>(z.size() / 2));
    for (std::size_t j = 0; j < z.size(); ++j) {
        for (std::size_t k = j + 1; k < z.size(); ++k) {
            const Rational u = z[k] / z[j];
            r *= (1 - u) / (1 + u);
        }
    }
    return r;
}

double wick_mode_sum(const std::vector<double>& z, int cutoff) {
    if (z.size() % 2 != 0) throw std::invalid_argument("wick_mode_sum: odd number of points");
    const NumericQ<double> vacuum(std::vector<double>{}, Rational(1, 2), 4 * cutoff + 2);
    const std::size_t s = z.size();
    std::vector<int> modes(s, -cutoff);
    double total = 0.0;
    while (true) {
        int sum = 0;
        for (int m : modes) sum += m;
        if (sum == 0) {  // charge conservation at t = 0
            double weight = 1.0;
            for (std::size_t i = 0; i < s; ++i) weight *= std::pow(z[i], modes[i]);
            const double v = vev_modes(vacuum, modes);
            total += weight * v;
        }
        std::size_t i = 0;
        while (i < s && modes[i] == cutoff) modes[i++] = -cutoff;
        if (i == s) break;
        ++modes[i];
    }
    return total;
}

}  // namespace pfafflow::schurq
