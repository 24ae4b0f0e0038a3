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

#include "pfafflow/bkp.hpp"
#include "pfafflow/partitions.hpp"
#include "pfafflow/schurq.hpp"

using namespace pfafflow;
using namespace pfafflow::bkp;
using series::Var;

namespace {

Rational r(const char* s) { return parse_rational(s); }
OddPoly t(int n, int copy = 0) { return OddPoly::variable(Var{n, copy}); }

const std::vector<std::string> kCatalog = {
    "c=1,r=2,s=1",
    "c=1/2,r=2,s=1",
    "c=1/2,r=3,s=1",
    "c=1/3,r=2,s=0",
    "c=1/2,r=3,s=1;c=1/3,r=2,s=0",
    "c=1,r=4,s=1;c=1/2,r=3,s=2",
};

OddPoly q_tau(const char* lambda, int d) {
    const schurq::QTable table(d, ratio(1, 2));
    return schurq::schur_q(table, StrictPartition::parse(lambda)).truncated(d);
}

}  // namespace

TEST_CASE("GSpec parsing and validation") {
    const GSpec g = GSpec::parse("c=1/2,r=3,s=1; c=-2,r=2,s=0");
    REQUIRE(g.factors.size() == 2);
    CHECK(g.factors[0].c == r("1/2"));
    CHECK(g.factors[1].s == 0);
    CHECK(GSpec::parse(g.to_string()).to_string() == g.to_string());
    CHECK(GSpec::parse("").factors.empty());
    CHECK_THROWS_AS(GSpec::parse("c=1,r=1,s=2"), std::invalid_argument);
    CHECK_THROWS_AS(GSpec::parse("c=1,r=1,s=1"), std::invalid_argument);
    CHECK_THROWS_AS(GSpec::parse("c=1,r=2"), std::invalid_argument);
    CHECK_THROWS_AS(GSpec::parse("c=1,r=2,s=-1"), std::invalid_argument);
    CHECK_THROWS_AS(GSpec::parse("c=1,r=x,s=0"), std::invalid_argument);
}

TEST_CASE("tau_from_g examples") {
    CHECK(tau_from_g(GSpec{}, 8).body == OddPoly::constant(1));
    for (const char* c : {"1", "1/2", "-3/7"}) {
        const GSpec g = GSpec::parse(std::string("c=") + c + ",r=2,s=1");
        const OddPoly expected =
            OddPoly::constant(1) + (t(1) * t(1) * t(1) * ratio(1, 6) - t(3) * Rational(2)) * (r(c) / 2);
        CHECK(tau_from_g(g, 8).body == expected);
    }
}

TEST_CASE("two-factor tau equals the subset expansion") {
    const GSpec g = GSpec::parse("c=1/2,r=3,s=1;c=1/3,r=2,s=0");
    const schurq::QTable table(12);
    const OddPoly expected = OddPoly::constant(1) + schurq::vev_modes(table, {3, 1}) * ratio(1, 2) +
                             schurq::vev_modes(table, {2, 0}) * ratio(1, 3) +
                             schurq::vev_modes(table, {3, 1, 2, 0}) * ratio(1, 6);
    CHECK(tau_from_g(g, 12).body == expected);
    // the four-mode term is a genuine Pfaffian, not a product
    CHECK(schurq::vev_modes(table, {3, 1, 2, 0}) !=
          schurq::vev_modes(table, {3, 1}) * schurq::vev_modes(table, {2, 0}));
}

TEST_CASE("tau_{n+1}: conjugated phi_0 route matches the direct oracle") {
    for (const auto& text : kCatalog) {
        const GSpec g = GSpec::parse(text);
        for (const Rational& z : {ratio(1, 2), ratio(1, 3), Rational(2)}) {
            const auto pair = tau_pair_from_g(g, z, 9);
            CHECK_MESSAGE(pair.second.body == tau_next_direct(g, z, 9), text);
        }
    }
}

TEST_CASE("G = 1 pair is (1, exp xi(t, z))") {
    for (const Rational& z : {ratio(1, 2), ratio(1, 3)}) {
        const int d = 9;
        OddPoly xi(d);
        for (int n = 1; n <= d; n += 2) xi += t(n) * pow(z, static_cast<unsigned>(n));
        const auto pair = tau_pair_from_g(GSpec{}, z, d);
        CHECK(pair.first.body == OddPoly::constant(1));
        CHECK(pair.second.body == series::poly_exp(xi, d));
        const OddPoly res = hirota_zero_check(HirotaOperator::parse("D1^3-D3"), pair.first.body,
                                              pair.second.body, Caps::uniform(6));
        CHECK(res.is_zero());
    }
}

TEST_CASE("mBKP first members to degree 10") {
    const HirotaOperator m1 = HirotaOperator::parse("D1^3-D3");
    const HirotaOperator m2 = HirotaOperator::parse("6D5-5D3D1^2-D1^5");
    for (const auto& text : kCatalog) {
        const GSpec g = GSpec::parse(text);
        for (const Rational& z : {ratio(1, 2), ratio(1, 3)}) {
            const auto [tau0, tau1] = tau_pair_from_g(g, z, 15);
            CHECK_MESSAGE(hirota_zero_check(m1, tau0.body, tau1.body, Caps::uniform(10)).is_zero(), text);
            CHECK_MESSAGE(hirota_zero_check(m2, tau0.body, tau1.body, Caps::uniform(10)).is_zero(), text);
        }
    }
}

TEST_CASE("mBKP fails for a mismatched pair") {
    const auto [tau0, tau1] = tau_pair_from_g(GSpec::parse("c=1/2,r=3,s=1"), ratio(1, 2), 12);
    const auto other = tau_pair_from_g(GSpec::parse("c=1,r=2,s=1"), ratio(1, 2), 12);
    const HirotaOperator m1 = HirotaOperator::parse("D1^3-D3");
    CHECK(!hirota_zero_check(m1, tau0.body, other.second.body, Caps::uniform(8)).is_zero());
    CHECK(!mbkp_residue_check(tau0.body, other.second.body, 6).is_zero());
    CHECK(mbkp_residue_check(tau0.body, tau1.body, 6).is_zero());
}

TEST_CASE("insufficient caps are rejected") {
    const auto [tau0, tau1] = tau_pair_from_g(GSpec::parse("c=1,r=2,s=1"), ratio(1, 2), 8);
    CHECK_THROWS_AS(hirota_zero_check(HirotaOperator::parse("D1^3-D3"), tau0.body, tau1.body,
                                      Caps::uniform(8)),
                    std::invalid_argument);
    CHECK_THROWS_AS(bkp_residue_check(tau0.body, 10), std::invalid_argument);
}

TEST_CASE("odd-weight Hirota operators vanish on tau . tau") {
    const OddPoly tau = tau_from_g(GSpec::parse("c=1/2,r=3,s=1;c=1/3,r=2,s=0"), 15).body;
    for (const char* op : {"D1", "D3", "D1^3-D3", "D1D3D5", "6D5-5D3D1^2-D1^5"})
        CHECK(hirota_zero_check(HirotaOperator::parse(op), tau, tau, Caps::uniform(6)).is_zero());
    CHECK(hirota_zero_check(HirotaOperator::parse("D1"), tau, tau * Rational(3), Caps::uniform(6)).is_zero());
}

TEST_CASE("BKP residue identity: catalog and Q-functions to degree 10") {
    CHECK(bkp_residue_check(OddPoly::constant(1, Caps::uniform(10)), 10).is_zero());
    for (const char* c : {"1", "1/2"}) {
        const GSpec g = GSpec::parse(std::string("c=") + c + ",r=2,s=1");
        CHECK(bkp_residue_check(tau_from_g(g, 10).body, 10).is_zero());
    }
    for (const char* lambda : {"2,1", "3,1", "3,2,1"})
        CHECK_MESSAGE(bkp_residue_check(q_tau(lambda, 10), 10).is_zero(), lambda);
    for (const auto& text : kCatalog)
        CHECK_MESSAGE(bkp_residue_check(tau_from_g(GSpec::parse(text), 10).body, 10).is_zero(), text);
}

TEST_CASE("BKP residue detects a non-tau") {
    // 1 + t_3 is not a BKP tau function
    const OddPoly bad = OddPoly::constant(1, Caps::uniform(8)) + t(3);
    CHECK(!bkp_residue_check(bad, 8).is_zero());
    // nor is 1 + Q_(3) + Q_(2,1): phi_3 phi_0 + phi_2 phi_1 does not square to zero
    const OddPoly mix = q_tau("3", 8) + q_tau("2,1", 8) + OddPoly::constant(1);
    CHECK(!bkp_residue_check(mix, 8).is_zero());
}

TEST_CASE("commutator exponential") {
    const OddPoly e = commutator_exp(4, 4);
    CHECK(e.coefficient(series::Monomial{}) == 1);
    CHECK(e.coefficient(series::Monomial::of(Var{1}) * series::Monomial::of(Var{-1})) == ratio(1, 2));
    CHECK(commutator_exp(2, 2).coefficient(series::Monomial::of(Var{3}) * series::Monomial::of(Var{-3})) == 0);
    const OddPoly e2 = commutator_exp(6, 6);
    CHECK(e2.coefficient(series::Monomial::of(Var{3}) * series::Monomial::of(Var{-3})) == ratio(3, 2));
    CHECK(e2.coefficient(series::Monomial::of(Var{1}, 2) * series::Monomial::of(Var{-1}, 2)) == ratio(1, 8));
}

TEST_CASE("two-sided tau: Q expansion matches the Wick oracle") {
    CHECK(tau_two_sided(GSpec{}, 6, 6).body == commutator_exp(6, 6));
    CHECK(tau_two_sided_wick(GSpec{}, 6, 6) == commutator_exp(6, 6));
    for (const auto& text : kCatalog) {
        const GSpec g = GSpec::parse(text);
        CHECK_MESSAGE(tau_two_sided(g, 7, 5).body == tau_two_sided_wick(g, 7, 5), text);
    }
}

TEST_CASE("two-sided tau at t_- = 0 is the one-sided tau") {
    for (const auto& text : kCatalog) {
        const GSpec g = GSpec::parse(text);
        const OddPoly two = tau_two_sided(g, 8, 4).body;
        CHECK(series::truncate_sides(two, 8, 0) == tau_from_g(g, 8).body);
        CHECK(series::truncate_sides(tau_two_sided_wick(g, 8, 4), 8, 0) == tau_from_g(g, 8).body);
    }
    const auto [a, b] = tau_pair_two_sided(GSpec::parse("c=1/2,r=3,s=1"), ratio(1, 2), 8, 3);
    CHECK(series::truncate_sides(b, 8, 0) ==
          tau_next_direct(GSpec::parse("c=1/2,r=3,s=1"), ratio(1, 2), 8));
}

TEST_CASE("vev_two_sided of two fields") {
    const OddPoly v = vev_two_sided({1, 0}, 4, 4);
    const schurq::QTable table(6);
    CHECK(series::truncate_sides(v, 4, 0) == schurq::vev_modes(table, {1, 0}));
    CHECK(v.coefficient(series::Monomial::of(Var{1})) == ratio(1, 2));
    CHECK(v.coefficient(series::Monomial::of(Var{-1})) == 0);
    CHECK(v.coefficient(series::Monomial::of(Var{1}) * series::Monomial::of(Var{3}) *
                        series::Monomial::of(Var{-3})) == ratio(-1, 4));
    CHECK_THROWS_AS(vev_two_sided({1}, 4, 4), std::invalid_argument);
}

TEST_CASE("negative flow and two-sided mBKP members at bidegree (8, 4)") {
    const HirotaOperator neg = HirotaOperator::parse("D-1D3-D-1D1^3");
    const HirotaOperator mixed = HirotaOperator::parse("D1D-1");
    const Caps check{12, 8, 4};
    CHECK(hirota_zero_check(neg, commutator_exp(11, 5), commutator_exp(11, 5), check).is_zero());
    for (const auto& text : kCatalog) {
        const GSpec g = GSpec::parse(text);
        const OddPoly tau = tau_two_sided(g, 11, 5).body;
        CHECK_MESSAGE(hirota_zero_check(neg, tau, tau, check).is_zero(), text);
        for (const Rational& z : {ratio(1, 2), ratio(1, 3)}) {
            const auto [tau0, tau1] = tau_pair_two_sided(g, z, 9, 5);
            CHECK_MESSAGE(hirota_zero_check(mixed, tau0, tau1, check).is_zero(), text);
        }
    }
}

TEST_CASE("two-contour residue forms at total degree 6") {
    for (const auto& text : {std::string("1"), kCatalog[1], kCatalog[4]}) {
        const GSpec g = text == "1" ? GSpec{} : GSpec::parse(text);
        const OddPoly tau = tau_two_sided(g, 6, 6).body;
        CHECK_MESSAGE(negflow_residue_check(tau, 6).is_zero(), text);
        const auto [tau0, tau1] = tau_pair_two_sided(g, ratio(1, 2), 6, 6);
        CHECK_MESSAGE(mixed_residue_check(tau0, tau1, 6).is_zero(), text);
        const auto one = tau_pair_from_g(g, ratio(1, 3), 6);
        CHECK_MESSAGE(mbkp_residue_check(one.first.body, one.second.body, 6).is_zero(), text);
    }
    // a perturbed tau breaks the negative-flow identity
    const OddPoly tau = tau_two_sided(GSpec{}, 6, 6).body + t(1) * t(-3);
    CHECK(!negflow_residue_check(tau, 6).is_zero());
}
