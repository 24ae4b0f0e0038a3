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
 * @file matrixpp.hpp
 * @brief Pfaffian point processes on finite weighted point sets.
 *
 * The n-particle density on a space X = {x_1..x_P} with weights mu is
 *
 *   det(phi_i(x_j)) Pf(eps^+(x_i, x_j)),
 *
 * where eps^+ is eps bordered by a column of +1 when n is odd. Correlation
 * functions are computed by direct summation and by kernel Pfaffians.
 *
 * Odd n: the 4x4 block K^+(x, y) is available verbatim, but its constant
 * rows repeat for every point, so the 4l x 4l assembly is singular once
 * l >= 2. corr_pf instead uses an equivalent even system: a phantom site *
 * carrying phi_n = 1 (zero on X), eps(x, *) = 1, and unit weight. The moment
 * matrix of that system is M^+, the phantom is always occupied, and
 * R(S) = Pf K'(S + {*}) of order 2l + 2.
 */

#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "pfafflow/exec.hpp"
#include "pfafflow/linalg.hpp"
#include "pfafflow/pfaffian.hpp"
#include "pfafflow/rational.hpp"
#include "pfafflow/series.hpp"

namespace pfafflow::matrixpp {

using series::OddPoly;

/// Distinct positive points with positive weights.
struct FiniteSpace {
    std::vector<Rational> points;
    std::vector<Rational> weights;

    /// Throws std::invalid_argument on mismatched sizes, non-positive values or repeats.
    void validate() const;
    std::size_t size() const { return points.size(); }
    /// Index of a point, or throws std::invalid_argument.
    std::size_t index_of(const Rational& x) const;
};

using PhiFn = std::function<Rational(int, const Rational&)>;
using EpsFn = std::function<Rational(const Rational&, const Rational&)>;

Rational monomial_phi(int i, const Rational& x);
/// (x - y)/(x + y).
Rational bures_eps(const Rational& x, const Rational& y);

struct ProcessSpec {
    int n = 2;
    FiniteSpace space;
    PhiFn phi = monomial_phi;
    EpsFn eps = bures_eps;

    void validate() const;
};

/// M_ij = sum_{p,q} phi_i(x_p) eps(x_p, x_q) phi_j(x_q) mu_p mu_q; for odd n
/// the border M_{i,n} = sum_p phi_i(x_p) mu_p is appended (order n + 1).
SkewMatrix<Rational> moment_matrix(const ProcessSpec& spec);

/// (eps . phi_j)(x_p) for every point of the space.
std::vector<Rational> eps_dot(const ProcessSpec& spec, int j);

/// Density det(phi_i(x_j)) Pf(eps^+(x_i, x_j)) at an n-tuple.
Rational density(const ProcessSpec& spec, const std::vector<Rational>& xs);

/// Precomputed moment data for kernel evaluation. Throws SingularMatrix when
/// the (bordered) moment matrix is not invertible.
class Kernel {
public:
    explicit Kernel(ProcessSpec spec);

    const ProcessSpec& spec() const { return spec_; }
    const SkewMatrix<Rational>& moments() const { return moments_; }
    /// Pf(M) (even n) or Pf(M^+) (odd n).
    const Rational& moment_pfaffian() const { return pf_moments_; }

    /// 2x2 block K(x, y); for odd n the sums run over i, j in 0..n-1.
    Matrix<Rational> block(const Rational& x, const Rational& y) const;
    /// Odd n only: the bordered 4x4 block with constant entries.
    Matrix<Rational> block_plus(const Rational& x, const Rational& y) const;

    /// Kernel matrix of S in ascending point order: order 2l for even n,
    /// 2l + 2 (phantom site last) for odd n.
    SkewMatrix<Rational> matrix(const std::vector<Rational>& s) const;
    /// Odd n: the 4l x 4l matrix built from block_plus without reduction.
    Matrix<Rational> matrix_plus_verbatim(const std::vector<Rational>& s) const;

private:
    struct Site {
        std::vector<Rational> psi;      // psi_i at the site, i < order
        std::vector<Rational> eps_psi;  // (eps . psi_j) at the site
        std::optional<Rational> x;      // empty for the phantom
    };
    Site site(const std::optional<Rational>& x) const;
    Rational site_eps(const Site& a, const Site& b) const;
    Matrix<Rational> site_block(const Site& a, const Site& b) const;
    Rational eps_phi(int j, const Rational& x) const;

    ProcessSpec spec_;
    SkewMatrix<Rational> moments_;
    Rational pf_moments_;
    Matrix<Rational> inv_t_;  // M^{-T}
    std::vector<Rational> border_;  // sum_p phi_j(x_p) mu_p
};

/// Free-function forms of Kernel::block / block_plus.
Matrix<Rational> kernel_block(const ProcessSpec& spec, const Rational& x, const Rational& y);
Matrix<Rational> kernel_block_plus(const ProcessSpec& spec, const Rational& x, const Rational& y);

/// R(S) by summing the density over the remaining n - |S| coordinates.
/// Zero when |S| > n or S repeats a point; S must lie in the space.
Rational corr_direct(const ProcessSpec& spec, const std::vector<Rational>& s,
                     exec::Mode mode = exec::Mode::parallel);

/// R(S) as the kernel Pfaffian.
Rational corr_pf(const ProcessSpec& spec, const std::vector<Rational>& s);
Rational corr_pf(const Kernel& kernel, const std::vector<Rational>& s);

struct BuresTau {
    OddPoly by_sum;        // (1/n!) sum prod (x_i-x_j)^2/(x_i+x_j) prod omega(x_i; t)
    OddPoly by_pfaffian;   // Pf(omega_ij), bordered by omega_i (first row) for odd n
    int sign;              // by_sum = sign * by_pfaffian, sign = (-1)^{floor(n/2)}
    bool agree() const;
};

/// Bures partition function with omega(x; t) = mu(x) exp(sum_{k odd} t_k x^k),
/// truncated at total t-degree degree_cap. Throws for n outside [1, n_max].
BuresTau bures_tau(const FiniteSpace& space, int n, int degree_cap, int n_max = 8);

}  // namespace pfafflow::matrixpp
