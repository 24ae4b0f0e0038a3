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

#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "pfafflow/schurq.hpp"

using namespace pfafflow;
using namespace pfafflow::schurq;
using series::Monomial;
using series::Var;

namespace {

OddPoly t(int n) { return OddPoly::variable(Var{n}); }
Rational r(const char* s) { return parse_rational(s); }

// Coefficients of prod_i (1 + x_i z)/(1 - x_i z) up to z^k_max.
std::vector<Rational> product_form(const std::vector<Rational>& x, int k_max) {
    std::vector<Rational> c(static_cast<std::size_t>(k_max) + 1, Rational(0));
    c[0] = 1;
    for (const auto& xi : x) {
        // (1 + xz)/(1 - xz) = 1 + 2 sum_{k>=1} x^k z^k
        std::vector<Rational> f(c.size(), Rational(0));
        f[0] = 1;
        for (std::size_t k = 1; k < f.size(); ++k) f[k] = 2 * pow(xi, static_cast<unsigned>(k));
        std::vector<Rational> out(c.size(), Rational(0));
        for (std::size_t a = 0; a < c.size(); ++a)
            for (std::size_t b = 0; a + b < c.size(); ++b) out[a + b] += c[a] * f[b];
        c = out;
    }
    return c;
}

// Hall-Littlewood form of P_lambda at t = -1 (the symmetrization definition):
// P = 1/(n-l)! sum_{w in S_n} w( x^lambda prod_{i<=l, i<j} (x_i + x_j)/(x_i - x_j) ).
Rational p_symmetrization(const StrictPartition& lambda, const std::vector<Rational>& x) {
    const std::size_t n = x.size();
    const std::size_t l = static_cast<std::size_t>(lambda.length());
    if (l > n) return 0;
    std::vector<std::size_t> w(n);
    std::iota(w.begin(), w.end(), std::size_t{0});
    Rational total = 0;
    do {
        Rational term = 1;
        for (std::size_t i = 0; i < l; ++i) term *= pow(x[w[i]], static_cast<unsigned>(lambda[i]));
        for (std::size_t i = 0; i < l; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                term *= (x[w[i]] + x[w[j]]) / (x[w[i]] - x[w[j]]);
        total += term;
    } while (std::next_permutation(w.begin(), w.end()));
    return total / factorial(static_cast<unsigned>(n - l));
}

}  // namespace

TEST_CASE("q_poly examples") {
    CHECK(q_poly(0) == OddPoly::constant(1));
    CHECK(q_poly(3, Rational(1)) == t(1) * t(1) * t(1) * r("4/3") + t(3) * Rational(2));
    CHECK(q_poly(-2).is_zero());
    CHECK(q_poly(1) == t(1));
}

TEST_CASE("q_k(t/2) is the homogeneous part of exp(xi)") {
    const int d = 11;
    OddPoly xi(d);
    for (int n = 1; n <= d; n += 2) xi += t(n);
    OddPoly e = series::poly_exp(xi.truncated(d), d);
    QTable table(d);
    for (int k = 0; k <= d; ++k) CHECK(table.q(k) == e.homogeneous_part(k));
    QTable full(d, Rational(1));
    OddPoly e2 = series::poly_exp((xi * Rational(2)).truncated(d), d);
    for (int k = 0; k <= d; ++k) CHECK(full.q(k) == e2.homogeneous_part(k));
    CHECK_THROWS_AS(table.q(d + 1), std::out_of_range);
}

TEST_CASE("q_k under Miwa matches the product form") {
    const std::vector<std::vector<Rational>> specs = {
        {r("1/2")}, {r("2/5"), r("1/5")}, {r("1/3"), r("-1/7"), r("3/4")}};
    for (const auto& x : specs) {
        auto exact = miwa_q(x, 15);
        auto oracle = product_form(x, 15);
        for (int k = 0; k <= 15; ++k) CHECK(exact.q(k) == oracle[static_cast<std::size_t>(k)]);
        // symbolic polynomial evaluated at the Miwa point
        QTable table(9);
        series::TimeVector tv = series::miwa_times(x, 9, Side::plus);
        for (int k = 0; k <= 9; ++k) CHECK(series::evaluate(table.q(k), tv) == exact.q(k));
    }
    auto one = miwa_q({r("1/3")}, 8);
    for (int k = 1; k <= 8; ++k) CHECK(one.q(k) == 2 * pow(r("1/3"), static_cast<unsigned>(k)));
    auto dbl = miwa_q_double({0.4, 0.2}, 20);
    auto ex = miwa_q({r("2/5"), r("1/5")}, 20);
    for (int k = 0; k <= 20; ++k) CHECK(dbl.q(k) == doctest::Approx(ex.q(k).get_d()).epsilon(1e-13));
}

TEST_CASE("q_pair examples and skewness") {
    QTable table(12);
    CHECK(q_pair(table, 0, 0) == OddPoly::constant(1));
    for (int a = 1; a <= 6; ++a) CHECK(q_pair(table, a, a).is_zero());
    CHECK(q_pair(table, 2, 1) == t(1) * t(1) * t(1) * r("1/6") - t(3) * Rational(2));
    for (int a = 0; a <= 6; ++a)
        for (int b = 0; b <= 6; ++b) {
            if (a == 0 && b == 0) continue;
            CHECK((q_pair(table, a, b) + q_pair(table, b, a)).is_zero());
        }
}

TEST_CASE("orthogonality sum_i (-1)^i q_i q_{2m-i} = 0") {
    QTable table(12);
    for (int m = 1; m <= 6; ++m) {
        OddPoly s;
        for (int i = 0; i <= 2 * m; ++i) {
            OddPoly term = table.q(i) * table.q(2 * m - i);
            s += (i % 2 == 0) ? term : -term;
        }
        CHECK(s.is_zero());
    }
}

TEST_CASE("two_point") {
    QTable table(12);
    for (int a = 1; a <= 6; ++a)
        for (int b = 0; b < a; ++b) CHECK(two_point(table, a, b) * Rational(2) == q_pair(table, a, b));
    auto vacuum = miwa_q({}, 10);
    CHECK(two_point(vacuum, 0, 0) == r("1/2"));
    for (int n = 1; n <= 4; ++n) {
        CHECK(two_point(vacuum, -n, n) == (n % 2 == 0 ? 1 : -1));
        CHECK(two_point(vacuum, n, -n) == 0);
    }
    for (int a = -5; a <= 5; ++a)
        for (int b = -5; b < -a; ++b) CHECK(two_point(table, a, b).is_zero());
}

TEST_CASE("vev_modes") {
    auto vacuum = miwa_q({}, 10);
    CHECK(vev_modes(vacuum, {-1, -2}) == 0);
    CHECK(vev_modes(vacuum, {-3, -1, -2, -4}) == 0);
    CHECK_THROWS_AS(vev_modes(vacuum, {1, 2, 3}), std::invalid_argument);
}

TEST_CASE("Pfaffian and Wick forms of Q_lambda agree for |lambda| <= 12") {
    QTable table(24);
    for (const auto& lambda : strict_partitions_up_to_weight(12)) {
        std::vector<int> modes = lambda.parts();
        int exponent = lambda.length();
        if (modes.size() % 2 == 1) {
            modes.push_back(0);
            exponent += 1;
        }
        OddPoly viaq = schur_q(table, lambda);
        OddPoly viavev = vev_modes(table, modes) * pow2(exponent / 2);
        CHECK_MESSAGE(viaq == viavev, lambda.to_string());
        CHECK(viaq.degree() == (lambda.empty() ? 0 : lambda.weight()));
    }
}

TEST_CASE("schur_q examples") {
    CHECK(schur_q_poly(StrictPartition{}) == OddPoly::constant(1));
    CHECK(schur_q_value(StrictPartition({1}), {r("3/7")}) == r("6/7"));
    CHECK(schur_q_value(StrictPartition({2, 1}), {r("3/7")}) == 0);
    CHECK(schur_p_value(StrictPartition({4}), {r("1/2")}) == r("1/16"));
    CHECK(schur_p_poly(StrictPartition({2, 1})) == schur_q_poly(StrictPartition({2, 1})) * r("1/4"));
    CHECK_THROWS_AS(StrictPartition({2, 2}), std::invalid_argument);
}

TEST_CASE("Q_lambda against the symmetrization formula") {
    const std::vector<std::vector<Rational>> specs = {
        {r("1/2")}, {r("2/5"), r("1/5")}, {r("1/3"), r("1/7"), r("3/4")}};
    for (const auto& x : specs) {
        for (const auto& lambda : strict_partitions_up_to_weight(9)) {
            const Rational expected = p_symmetrization(lambda, x) * pow2(lambda.length());
            CHECK_MESSAGE(schur_q_value(lambda, x) == expected, lambda.to_string());
        }
    }
}

TEST_CASE("Q_lambda vanishes when the length exceeds the number of variables") {
    const std::vector<Rational> x{r("2/5"), r("1/5")};
    for (const auto& lambda : strict_partitions_up_to_weight(14)) {
        if (lambda.length() > 2) CHECK(schur_q_value(lambda, x) == 0);
    }
}

TEST_CASE("symbolic Q evaluated at Miwa times equals the numeric route") {
    const std::vector<Rational> x{r("1/2"), r("-1/3")};
    series::TimeVector tv = series::miwa_times(x, 11, Side::plus);
    for (const auto& lambda : strict_partitions_up_to_weight(10)) {
        CHECK(series::evaluate(schur_q_poly(lambda), tv) == schur_q_value(lambda, x));
    }
}

TEST_CASE("Wick product formula") {
    const std::vector<std::vector<Rational>> points = {
        {r("5"), r("3"), r("2"), r("1/2")},
        {r("4"), r("-3"), r("2"), r("-1")},
        {r("7"), r("-5"), r("3"), r("2"), r("1"), r("-1/3")},
        {r("9/2"), r("4"), r("-7/3"), r("2"), r("1/5"), r("1/7")}};
    for (const auto& z : points) CHECK(wick_pfaffian(z) == wick_product_formula(z));
    CHECK(wick_pair(r("2"), r("1")) == r("1/6"));
}

TEST_CASE("Wick pair from the truncated mode sum") {
    CHECK(wick_mode_sum({3.0, 1.0}, 40) == doctest::Approx(wick_pair(3, 1).get_d()).epsilon(1e-12));
    const std::vector<double> z{8.0, 2.0, 0.5, 0.125};
    const Rational exact = wick_product_formula({8, 2, r("1/2"), r("1/8")});
    CHECK(wick_mode_sum(z, 14) == doctest::Approx(exact.get_d()).epsilon(1e-6));
}
