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
 * @file bkp.hpp
 * @brief BKP tau functions from group-like elements G = prod (1 + c phi_r phi_s)
 * and exact checks of the bilinear identities they satisfy.
 *
 * One-sided taus expand G over subsets of its factors; each term is a
 * vacuum expectation computed by vev_modes. Two-sided taus insert the
 * resolution of the identity in the basis phi_lambda |0> (phi_0 appended
 * for odd length), where the dual vectors contribute 2^{-l/2} Q_lambda(t_-).
 *
 * The independent route conjugates every field through both exponentials,
 *
 *   e^{H_+} phi_a e^{-H_+} -> sum_m r_m phi_{a-m},
 *   r_m = [z^m] exp(xi(t_+, z) - xi(t_-, 1/z)),
 *
 * and evaluates <0|e^{H_+} phi_{m_1} ... phi_{m_k} e^{H_-}|0> as
 * Z * Pf[P(m_i, m_j)] with Z = exp(sum (n/2) t_n t_-n) and
 * P(a, b) = r_a r_b / 2 + sum_{j>=1} (-1)^j r_{a+j} r_{b-j}.
 */

#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pfafflow/series.hpp"

namespace pfafflow::bkp {

using series::Caps;
using series::HirotaOperator;
using series::OddPoly;

/// One factor (1 + c phi_r phi_s) with r > s >= 0.
struct Factor {
    Rational c;
    int r = 1;
    int s = 0;
};

struct GSpec {
    std::vector<Factor> factors;

    /// "c=1/2,r=2,s=1;c=1/3,r=3,s=0". An empty string is G = 1.
    static GSpec parse(std::string_view text);
    /// Throws std::invalid_argument unless r > s >= 0 in every factor.
    void validate() const;
    std::string to_string() const;
};

struct TauSeries {
    OddPoly body;
    GSpec g;
    std::string route;
};

/// tau(t) = <0|e^{H_+(t)} G|0>, truncated at weighted degree d.
TauSeries tau_from_g(const GSpec& g, int d);

/// (tau_n, tau_{n+1}) with tau_{n+1} = 2 <0|phi_0 e^{H_+} phi(z) G|0>, the left
/// phi_0 moved through e^{H_+} as sum_k q_k(-t/2) phi_{-k}.
std::pair<TauSeries, TauSeries> tau_pair_from_g(const GSpec& g, const Rational& z, int d);

/// Oracle for tau_{n+1}: 2 sum_i z^i <0|e^{H_+} phi_i G phi_0|0>.
OddPoly tau_next_direct(const GSpec& g, const Rational& z, int d);

/// <0|e^{H_+} G e^{H_-}|0> through the Q_lambda(t_-) expansion, |lambda| <= d_minus.
TauSeries tau_two_sided(const GSpec& g, int d_plus, int d_minus);

/// <0|e^{H_+} phi_{m_1} ... phi_{m_k} e^{H_-}|0> by conjugation and Wick's theorem.
OddPoly vev_two_sided(const std::vector<int>& modes, int d_plus, int d_minus);

/// Two-sided tau by the conjugation route (oracle for tau_two_sided).
OddPoly tau_two_sided_wick(const GSpec& g, int d_plus, int d_minus);

/// Two-sided pair with tau_{n+1} = 2 <0|e^{H_+} phi(z) G e^{H_-} phi_0|0>.
std::pair<OddPoly, OddPoly> tau_pair_two_sided(const GSpec& g, const Rational& z, int d_plus,
                                               int d_minus);

/// exp(sum_{n odd} (n/2) t_n t_-n) truncated to the caps.
OddPoly commutator_exp(int d_plus, int d_minus);

/// P(D) tau . sigma truncated to `caps`. Throws std::invalid_argument when the
/// inputs are not known to that precision.
OddPoly hirota_zero_check(const HirotaOperator& p, const OddPoly& tau, const OddPoly& sigma,
                          Caps caps);

/// [z^0] e^{xi(t - t', z)} tau(t - [1/z]) tau(t' + [1/z]) - tau(t) tau(t'),
/// with t' the copy-1 variables, truncated at total degree d.
OddPoly bkp_residue_check(const OddPoly& tau, int d);

/// mBKP contour identity:
/// [z^0] e^{xi(t-t',z)} tau1(t-[1/z]) tau0(t'+[1/z]) - 2 tau0(t) tau1(t') + tau1(t) tau0(t').
OddPoly mbkp_residue_check(const OddPoly& tau0, const OddPoly& tau1, int d);

/// Negative-flow identity for a two-sided tau:
/// [z^0] e^{xi(t_+-t'_+,z)} tau(t_+-[1/z],t_-) tau(t'_++[1/z],t'_-)
///   - [z^0] e^{xi(t'_- - t_-,1/z)} tau(t_+,t_-+[z]) tau(t'_+,t'_--[z]).
OddPoly negflow_residue_check(const OddPoly& tau, int d);

/// Two-sided mBKP identity:
/// [z^0] e^{xi(t'_- - t_-,1/z)} tau1(t_+,t_-+[z]) tau0(t'_+,t'_--[z])
///   - 2 tau0(t) tau1(t')
///   + [z^0] e^{xi(t_+-t'_+,z)} tau1(t_+-[1/z],t_-) tau0(t'_++[1/z],t'_-).
OddPoly mixed_residue_check(const OddPoly& tau0, const OddPoly& tau1, int d);

}  // namespace pfafflow::bkp
