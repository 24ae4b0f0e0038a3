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

#include <random>

#include "pfafflow/pfaffian.hpp"

using namespace pfafflow;

namespace {

SkewMatrix<Rational> random_skew(std::mt19937& rng, std::size_t n) {
    std::uniform_int_distribution<long> num(-9, 9);
    std::uniform_int_distribution<long> den(1, 5);
    SkewMatrix<Rational> a(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) a.set(i, j, ratio(num(rng), den(rng)));
    return a;
}

Matrix<Rational> random_square(std::mt19937& rng, std::size_t n) {
    std::uniform_int_distribution<long> num(-5, 5);
    std::uniform_int_distribution<long> den(1, 3);
    Matrix<Rational> b(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) b(i, j) = ratio(num(rng), den(rng));
    return b;
}

SkewMatrix<Rational> upper(std::size_t n, std::initializer_list<long> values) {
    SkewMatrix<Rational> a(n);
    auto it = values.begin();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) a.set(i, j, Rational(*it++));
    return a;
}

}  // namespace

TEST_CASE("storage and skewness") {
    SkewMatrix<Rational> a(3);
    a.set(0, 2, 5);
    a.set(2, 1, 4);
    CHECK(a(0, 2) == 5);
    CHECK(a(2, 0) == -5);
    CHECK(a(1, 2) == -4);
    CHECK(a(1, 1) == 0);
    CHECK_THROWS_AS(a.set(1, 1, 1), std::invalid_argument);
    Matrix<Rational> d = a.dense();
    CHECK(SkewMatrix<Rational>::from_dense(d).dense() == d);
    d(0, 1) = 1;
    CHECK_THROWS_AS(SkewMatrix<Rational>::from_dense(d), std::invalid_argument);
}

TEST_CASE("pfaffian_even examples") {
    CHECK(pfaffian_even(upper(2, {7})) == 7);
    // (a, b, c, d, e, f) = (2, 3, 5, 7, 11, 13): af - be + cd.
    SkewMatrix<Rational> a4 = upper(4, {2, 3, 5, 7, 11, 13});
    CHECK(pfaffian_even(a4) == 2 * 13 - 3 * 11 + 5 * 7);
    CHECK(pfaffian_even(SkewMatrix<Rational>(0)) == 1);
    CHECK_THROWS_AS(pfaffian_even(upper(3, {1, 2, 3})), std::invalid_argument);
}

TEST_CASE("Pf(A)^2 = det(A) on random instances") {
    std::mt19937 rng(1);
    for (std::size_t n : {2u, 4u, 6u, 8u, 10u, 12u}) {
        for (int trial = 0; trial < 5; ++trial) {
            SkewMatrix<Rational> a = random_skew(rng, n);
            const Rational pf = pfaffian_even(a);
            CHECK(pf * pf == det(a.dense()));
        }
    }
}

TEST_CASE("expansion and elimination agree") {
    std::mt19937 rng(2);
    for (std::size_t n : {8u, 10u}) {
        for (int trial = 0; trial < 4; ++trial) {
            SkewMatrix<Rational> a = random_skew(rng, n);
            if (trial == 0) {
                for (std::size_t j = 1; j < n; ++j) a.set(0, j, j == 5 ? Rational(3) : Rational(0));
            }
            CHECK(pfaffian_expand(a) == pfaffian_even(a));
        }
    }
}

TEST_CASE("Pf(B A B^T) = det(B) Pf(A)") {
    std::mt19937 rng(3);
    for (std::size_t n : {4u, 6u}) {
        for (int trial = 0; trial < 10; ++trial) {
            SkewMatrix<Rational> a = random_skew(rng, n);
            Matrix<Rational> b = random_square(rng, n);
            CHECK(pfaffian_even(congruence(b, a)) == det(b) * pfaffian_even(a));
        }
    }
}

TEST_CASE("simultaneous row/column swap flips the sign") {
    std::mt19937 rng(4);
    for (int trial = 0; trial < 10; ++trial) {
        SkewMatrix<Rational> a = random_skew(rng, 6);
        std::vector<std::size_t> perm{0, 1, 2, 3, 4, 5};
        std::swap(perm[trial % 6], perm[(trial + 1 + trial / 6) % 6]);
        CHECK(pfaffian_even(a.permuted(perm)) == -pfaffian_even(a));
    }
}

TEST_CASE("border_plus") {
    SkewMatrix<Rational> b1 = border_plus(SkewMatrix<Rational>(1));
    CHECK(b1.order() == 2);
    CHECK(b1(0, 1) == 1);
    CHECK(b1(1, 0) == -1);
    SkewMatrix<Rational> a3 = upper(3, {2, 3, 5});
    SkewMatrix<Rational> b3 = border_plus(a3);
    CHECK(b3.order() == 4);
    CHECK(pfaffian_even(b3) == 2 - 3 + 5);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(b3(i, 3) == 1);
        CHECK(b3(3, i) == -1);
    }
    CHECK_THROWS_AS(border_plus(b3), std::invalid_argument);
}

TEST_CASE("de Bruijn: bordered Pfaffian equals the permutation sum") {
    CHECK(pfaffian_debruijn(SkewMatrix<Rational>(1)) == 1);
    CHECK(pfaffian_sigma_sum(SkewMatrix<Rational>(1)) == 1);
    CHECK(pfaffian_debruijn(upper(3, {2, 3, 5})) == 4);
    CHECK(pfaffian_sigma_sum(upper(3, {2, 3, 5})) == 4);
    std::mt19937 rng(5);
    for (std::size_t n = 1; n <= 7; ++n) {
        for (int trial = 0; trial < 3; ++trial) {
            SkewMatrix<Rational> a = random_skew(rng, n);
            CHECK(pfaffian_debruijn(a) == pfaffian_sigma_sum(a));
        }
    }
    SkewMatrix<Rational> e = random_skew(rng, 4);
    CHECK(pfaffian_debruijn(e) == pfaffian_even(e));
    CHECK_THROWS_AS(pfaffian_sigma_sum(SkewMatrix<Rational>(8)), std::invalid_argument);
}

TEST_CASE("float route with pivoting") {
    std::mt19937 rng(6);
    for (std::size_t n : {2u, 4u, 6u, 10u}) {
        for (int trial = 0; trial < 5; ++trial) {
            SkewMatrix<Rational> a = random_skew(rng, n);
            SkewMatrix<double> f(n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j) f.set(i, j, a(i, j).get_d());
            const double exact = pfaffian_even(a).get_d();
            CHECK(pfaffian_even(f) == doctest::Approx(exact).epsilon(1e-10));
        }
    }
    // Zero leading entry forces a pivot swap.
    SkewMatrix<double> z(4);
    z.set(0, 2, 1.0);
    z.set(1, 3, 1.0);
    CHECK(pfaffian_even(z) == doctest::Approx(-1.0));
    SkewMatrix<double> singular(4);
    singular.set(0, 1, 1.0);
    CHECK(pfaffian_even(singular) == 0.0);
    CHECK(pfaffian_debruijn(SkewMatrix<double>(3)) == 0.0);
}

TEST_CASE("det and inverse") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 5; ++trial) {
        Matrix<Rational> b = random_square(rng, 5);
        if (det(b) == 0) continue;
        CHECK(b * inverse(b) == Matrix<Rational>::identity(5));
        CHECK(det(inverse(b)) * det(b) == 1);
    }
    Matrix<Rational> s(2, 2, Rational(1));
    CHECK(det(s) == 0);
    CHECK_THROWS_AS(inverse(s), SingularMatrix);
    Matrix<double> d(2, 2);
    d(0, 0) = 0;
    d(0, 1) = 2;
    d(1, 0) = 3;
    d(1, 1) = 1;
    CHECK(det(d) == doctest::Approx(-6.0));
}
