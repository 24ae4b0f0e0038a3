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
 * @file measure.hpp
 * @brief Shifted Schur measure M(lambda) = P_lambda(x) Q_lambda(y) / Z on
 * strict partitions, its correlation functions rho(A) by brute-force
 * summation, and the Pfaffian kernel route.
 *
 * Kernel (checked against the brute-force sums):
 *
 *   F(z) = prod_i (1 + x_i z)/(1 - x_i z) * prod_j (1 - y_j/z)/(1 + y_j/z)
 *        = sum_m f_m z^m,
 *   f_m  = sum_{j >= max(0,-m)} q_{m+j}(t_+/2) q_j(-t_-/2),
 *   K(a, b) = f_a f_b / 2 + sum_{k >= 1} (-1)^k f_{a+k} f_{b-k},
 *   rho(A) = prod_{a in A} S(a) * Pf[K(c_i, c_j)]_{i<j},
 *
 * with c = (a_1 > ... > a_s, -a_s, ..., -a_1) and S(a) = (-1)^a.
 *
 * Floating-point errors are tracked with explicit bounds: coefficients of
 * prod (1 + x z)/(1 - x z) satisfy |a_k| <= B R^{-k} on any circle of
 * radius R < 1/max x, which bounds every truncated tail geometrically.
 */

#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "pfafflow/exec.hpp"
#include "pfafflow/partitions.hpp"
#include "pfafflow/rational.hpp"

namespace pfafflow::measure {

/// Specialization pair (x; y). Points lie in (0, 1).
struct SpecPair {
    std::vector<Rational> x;
    std::vector<Rational> y;

    /// Throws std::invalid_argument unless every point is in (0, 1).
    void validate() const;
    /// max x * max y (0 if either side is empty).
    Rational r() const;
};

/// Raised when a requested tolerance cannot be met; carries the best bound.
class ToleranceError : public std::runtime_error {
public:
    ToleranceError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_(achieved) {}
    double achieved() const { return achieved_; }

private:
    double achieved_;
};

/// Z = prod_{i,j} (1 + x_i y_j)/(1 - x_i y_j), exact.
Rational z_value(const SpecPair& spec);

/// P_lambda(x) Q_lambda(y) / Z, exact.
Rational measure_weight(const StrictPartition& lambda, const SpecPair& spec);

/// Measure restricted to strict partitions with lambda_1 <= cutoff. Only
/// lengths up to min(|x|, |y|) carry mass (Q_lambda vanishes on fewer
/// variables than parts), so longer partitions are skipped.
class TruncatedMeasure {
public:
    TruncatedMeasure(const SpecPair& spec, int cutoff, exec::Mode mode = exec::Mode::parallel);

    int cutoff() const { return cutoff_; }
    const std::vector<StrictPartition>& partitions() const { return partitions_; }
    const std::vector<Rational>& weights() const { return weights_; }
    /// Sum of all retained weights.
    const Rational& mass() const { return mass_; }
    /// 1 - mass(): the exact probability of lambda_1 > cutoff.
    Rational missing_mass() const { return Rational(1) - mass_; }

    /// Sum of weights of partitions whose parts contain A.
    Rational rho(const std::vector<int>& a) const;

private:
    int cutoff_;
    std::vector<StrictPartition> partitions_;
    std::vector<Rational> weights_;
    Rational mass_;
};

struct BruteResult {
    Rational rho;
    /// Upper bound on rho_exact - rho (the missing mass beyond the cutoff).
    Rational tail_bound;
};

/// rho(A) summed over lambda_1 <= cutoff. Rejects cutoff < max(A).
BruteResult rho_brute(const std::vector<int>& a, const SpecPair& spec, int cutoff,
                      exec::Mode mode = exec::Mode::parallel);

/// Laurent coefficients f_m of F(z) for |m| <= window.
struct KernelCoeffs {
    int window = 0;
    std::vector<double> f;       // f[m + window]
    double coeff_error = 0.0;    // |f_m(computed) - f_m| <= coeff_error
    double magnitude = 0.0;      // |f_m| <= magnitude for every m
    double radius_plus = 2.0;    // |f_m| <= magnitude * radius_plus^{-m},  m >= 0
    double radius_minus = 2.0;   // |f_m| <= magnitude * radius_minus^{m},  m < 0

    /// Throws std::out_of_range outside the window.
    double at(int m) const;
    /// Geometric decay ratio of the K-series terms: 1/(radius_plus * radius_minus).
    double ratio() const { return 1.0 / (radius_plus * radius_minus); }
};

/// f_m for |m| <= window with coefficient error <= tol.
/// Throws ToleranceError when tol is out of reach in double precision.
KernelCoeffs kernel_coeffs(const SpecPair& spec, int window, double tol);

struct KernelValue {
    double value;
    double error;  // bound on |value - K(a,b)|
};

/// K(a, b) with the k-sum truncated at k_terms. Throws std::out_of_range when
/// the coefficient window is too small for (a, b, k_terms).
KernelValue kernel_K(int a, int b, const KernelCoeffs& coeffs, int k_terms);

/// K(a, b) to within tol (chooses window and k_terms).
KernelValue kernel_K(int a, int b, const SpecPair& spec, double tol);

/// Diagonal sign S(a) = (-1)^a of the kernel Pfaffian.
inline int diagonal_sign(int a) { return a % 2 == 0 ? 1 : -1; }

/// Index order (a_1 > ... > a_s, -a_s, ..., -a_1) for the kernel Pfaffian.
std::vector<int> kernel_index_order(const std::vector<int>& a);

struct PfResult {
    double rho;
    double error_bound;
};

/// rho(A) from the kernel Pfaffian. Throws ToleranceError with the achieved
/// bound when tol cannot be reached.
PfResult rho_pf(const std::vector<int>& a, const SpecPair& spec, double tol);

/// Normalizes a set: sorted descending, duplicates and non-positive entries rejected.
std::vector<int> normalize_set(const std::vector<int>& a);

}  // namespace pfafflow::measure
