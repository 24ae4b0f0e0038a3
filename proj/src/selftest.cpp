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

#include "pfafflow/selftest.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "pfafflow/bkp.hpp"
#include "pfafflow/exec.hpp"
#include "pfafflow/linalg.hpp"
#include "pfafflow/matrixpp.hpp"
#include "pfafflow/measure.hpp"
#include "pfafflow/pfaffian.hpp"
#include "pfafflow/schurq.hpp"

namespace pfafflow::selftest {

namespace {

using series::Caps;
using series::HirotaOperator;
using series::OddPoly;

struct Outcome {
    bool pass;
    std::string detail;
};

measure::SpecPair two_two() {
    return {{ratio(2, 5), ratio(1, 5)}, {ratio(3, 10), ratio(1, 10)}};
}

const std::vector<std::string>& catalog() {
    static const std::vector<std::string> c = {
        "c=1,r=2,s=1",   "c=1/2,r=2,s=1", "c=1/2,r=3,s=1",
        "c=1/3,r=2,s=0", "c=1/2,r=3,s=1;c=1/3,r=2,s=0",
    };
    return c;
}

std::string sci(double v) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

Outcome cauchy() {
    const measure::SpecPair spec = two_two();
    const measure::TruncatedMeasure m(spec, 40);
    const Rational z = measure::z_value(spec);
    const double gap = std::abs(Rational(m.mass() * z - z).get_d());
    return {gap <= 1e-10, "|sum P Q - prod| = " + sci(gap)};
}

Outcome correlation_oracles() {
    const measure::SpecPair spec = two_two();
    double worst = 0.0;
    int count = 0;
    for (int mask = 0; mask < 32; ++mask) {
        std::vector<int> a;
        for (int i = 5; i >= 1; --i)
            if (mask & (1 << (i - 1))) a.push_back(i);
        if (a.size() > 3) continue;
        const double brute = measure::rho_brute(a, spec, 40).rho.get_d();
        const double pf = measure::rho_pf(a, spec, 1e-10).rho;
        worst = std::max(worst, std::abs(pf - brute));
        ++count;
    }
    return {worst <= 1e-8, std::to_string(count) + " sets, max gap " + sci(worst)};
}

Outcome closed_form() {
    const measure::SpecPair spec{{ratio(1, 2)}, {ratio(1, 2)}};
    double worst = 0.0;
    for (int k = 1; k <= 6; ++k) {
        const Rational closed = 2 * pow(ratio(1, 4), static_cast<unsigned>(k)) * ratio(3, 5);
        const double brute = measure::rho_brute({k}, spec, 40).rho.get_d();
        const double pf = measure::rho_pf({k}, spec, 1e-10).rho;
        worst = std::max({worst, std::abs(brute - closed.get_d()), std::abs(pf - closed.get_d())});
    }
    return {worst <= 1e-10, "k <= 6, max gap " + sci(worst)};
}

Outcome matrix_process() {
    using matrixpp::FiniteSpace;
    using matrixpp::ProcessSpec;
    auto unit = [](int p) {
        FiniteSpace s;
        for (int i = 1; i <= p; ++i) {
            s.points.emplace_back(i);
            s.weights.emplace_back(1);
        }
        return s;
    };
    const std::vector<ProcessSpec> specs = {{4, unit(4)}, {4, unit(6)}, {5, unit(5)}};
    int checked = 0, bad = 0;
    for (const auto& spec : specs) {
        const matrixpp::Kernel k(spec);
        const std::size_t p = spec.space.size();
        for (unsigned mask = 0; mask < (1u << p); ++mask) {
            std::vector<Rational> set;
            for (std::size_t i = 0; i < p; ++i)
                if (mask & (1u << i)) set.push_back(spec.space.points[i]);
            if (set.size() > static_cast<std::size_t>(spec.n)) continue;
            ++checked;
            if (matrixpp::corr_pf(k, set) != matrixpp::corr_direct(spec, set)) ++bad;
        }
    }
    return {bad == 0, std::to_string(checked) + " sets, " + std::to_string(bad) + " mismatches"};
}

Rational random_rational(std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
    return ratio(num(rng), den(rng));
}

Outcome pfaffian_identities() {
    std::mt19937 rng(2026);
    int bad = 0, checked = 0;
    for (std::size_t n : {4u, 6u}) {
        for (int trial = 0; trial < 50; ++trial) {
            SkewMatrix<Rational> a(n);
            Matrix<Rational> b(n, n);
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    b(i, j) = random_rational(rng);
                    if (i < j) a.set(i, j, random_rational(rng));
                }
            }
            ++checked;
            if (pfaffian_even(congruence(b, a)) != det(b) * pfaffian_even(a)) ++bad;
        }
    }
    for (std::size_t n : {1u, 3u, 5u}) {
        for (int trial = 0; trial < 5; ++trial) {
            SkewMatrix<Rational> a(n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j) a.set(i, j, random_rational(rng));
            ++checked;
            if (pfaffian_debruijn(a) != pfaffian_sigma_sum(a)) ++bad;
        }
    }
    return {bad == 0, std::to_string(checked) + " instances, " + std::to_string(bad) + " failures"};
}

Outcome bures() {
    const std::vector<matrixpp::FiniteSpace> spaces = {
        {{1, 2, 3, 4, 5}, {1, 1, 1, 1, 1}},
        {{1, 2, 3, 5, ratio(1, 2)}, {1, 2, 1, 3, ratio(1, 3)}},
    };
    int bad = 0, checked = 0;
    for (const auto& s : spaces) {
        for (int n = 1; n <= 4; ++n) {
            // degree 1 keeps the t_1-linear perturbation of the weights
            const matrixpp::BuresTau t = matrixpp::bures_tau(s, n, 1);
            ++checked;
            if (!t.agree()) ++bad;
            if (t.by_sum.coefficient(series::Monomial::of(series::Var{1})) == 0) ++bad;
        }
    }
    return {bad == 0, std::to_string(checked) + " partition functions, " + std::to_string(bad) + " failures"};
}

Outcome wick() {
    const std::vector<std::vector<Rational>> points = {
        {5, 3, 2, ratio(1, 2)},
        {4, ratio(7, 3), 1, ratio(1, 5)},
        {7, 5, 3, 2, 1, ratio(1, 3)},
        {ratio(9, 2), 4, ratio(7, 3), 2, ratio(1, 5), ratio(1, 7)},
    };
    int bad = 0;
    for (const auto& z : points)
        if (schurq::wick_pfaffian(z) != schurq::wick_product_formula(z)) ++bad;
    return {bad == 0, std::to_string(points.size()) + " point sets, " + std::to_string(bad) + " failures"};
}

Outcome bkp_residue() {
    const int d = 10;
    std::vector<std::pair<std::string, OddPoly>> taus;
    taus.emplace_back("1", OddPoly::constant(1, Caps::uniform(d)));
    for (const char* c : {"1", "1/2"}) {
        const std::string g = std::string("c=") + c + ",r=2,s=1";
        taus.emplace_back(g, bkp::tau_from_g(bkp::GSpec::parse(g), d).body);
    }
    const schurq::QTable table(d, ratio(1, 2));
    for (const char* lambda : {"2,1", "3,1", "3,2,1"})
        taus.emplace_back(std::string("Q") + lambda, schurq::schur_q(table, StrictPartition::parse(lambda)).truncated(d));
    std::string failed;
    for (const auto& [name, tau] : taus)
        if (!bkp::bkp_residue_check(tau, d).is_zero()) failed += " " + name;
    return {failed.empty(), std::to_string(taus.size()) + " taus to degree 10" + (failed.empty() ? "" : "; nonzero:" + failed)};
}

// Runs check(g) for every catalog entry in parallel; the failure labels are
// joined in catalog order.
std::string over_catalog(const std::function<std::string(const std::string&)>& check) {
    const auto& c = catalog();
    std::vector<std::string> failed(c.size());
    const int count = static_cast<int>(c.size());
#pragma omp parallel for schedule(dynamic) num_threads(exec::thread_count())
    for (int i = 0; i < count; ++i) failed[static_cast<std::size_t>(i)] = check(c[static_cast<std::size_t>(i)]);
    std::string out;
    for (const auto& f : failed) out += f;
    return out;
}

Outcome mbkp() {
    const HirotaOperator m1 = HirotaOperator::parse("D1^3-D3");
    const HirotaOperator m2 = HirotaOperator::parse("6D5-5D3D1^2-D1^5");
    const std::string failed = over_catalog([&](const std::string& g) {
        std::string f;
        for (const Rational& z : {ratio(1, 2), ratio(1, 3)}) {
            const auto [t0, t1] = bkp::tau_pair_from_g(bkp::GSpec::parse(g), z, 15);
            const std::string at = "[" + g + ", z=" + pfafflow::to_string(z) + "]";
            if (!bkp::hirota_zero_check(m1, t0.body, t1.body, Caps::uniform(10)).is_zero()) f += " mbkp1" + at;
            if (!bkp::hirota_zero_check(m2, t0.body, t1.body, Caps::uniform(10)).is_zero()) f += " mbkp2" + at;
        }
        return f;
    });
    return {failed.empty(), std::to_string(4 * catalog().size()) + " residuals to degree 10" + failed};
}

Outcome negative_flows() {
    const HirotaOperator neg = HirotaOperator::parse("D-1D3-D-1D1^3");
    const HirotaOperator mixed = HirotaOperator::parse("D1D-1");
    const Caps check{12, 8, 4};
    std::string failed;
    const OddPoly unit = bkp::tau_two_sided(bkp::GSpec{}, 8, 4).body;
    if (unit != bkp::commutator_exp(8, 4)) failed += " log-Z";
    failed += over_catalog([&](const std::string& g) {
        std::string f;
        const bkp::GSpec spec = bkp::GSpec::parse(g);
        const OddPoly tau = bkp::tau_two_sided(spec, 11, 5).body;
        if (!bkp::hirota_zero_check(neg, tau, tau, check).is_zero()) f += " negflow1[" + g + "]";
        for (const Rational& z : {ratio(1, 2), ratio(1, 3)}) {
            const auto [t0, t1] = bkp::tau_pair_two_sided(spec, z, 9, 5);
            if (!bkp::hirota_zero_check(mixed, t0, t1, check).is_zero()) f += " mixed1[" + g + "]";
        }
        return f;
    });
    return {failed.empty(), "bidegree (8,4), " + std::to_string(catalog().size()) + " taus" + failed};
}

struct Criterion {
    int id;
    const char* name;
    double limit;
    std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> c = {
        {1, "Cauchy identity", 10, cauchy},
        {2, "correlation oracle equivalence", 60, correlation_oracles},
        {3, "one-variable closed form", 0, closed_form},
        {4, "matrix-process exactness", 30, matrix_process},
        {5, "Pfaffian identities", 0, pfaffian_identities},
        {6, "Bures partition function", 0, bures},
        {7, "Wick product formula", 0, wick},
        {8, "BKP residue identity", 120, bkp_residue},
        {9, "mBKP members", 0, mbkp},
        {10, "negative flows", 0, negative_flows},
    };
    return c;
}

}  // namespace

std::vector<int> suite_criteria(std::string_view suite) {
    if (suite == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    if (suite == "schurq") return {1, 7};
    if (suite == "measure") return {1, 2, 3};
    if (suite == "pfaffian") return {5};
    if (suite == "matrixpp") return {4, 6};
    if (suite == "bkp") return {8, 9, 10};
    throw std::invalid_argument("unknown suite '" + std::string(suite) +
                                "' (all, schurq, measure, pfaffian, matrixpp, bkp)");
}

CheckResult run_criterion(int id) {
    if (id < 1 || id > static_cast<int>(criteria().size()))
        throw std::invalid_argument("no criterion " + std::to_string(id));
    const Criterion& c = criteria()[static_cast<std::size_t>(id - 1)];
    CheckResult r{c.id, c.name, false, {}, 0.0, c.limit};
    const auto start = std::chrono::steady_clock::now();
    try {
        const Outcome o = c.run();
        r.pass = o.pass;
        r.detail = o.detail;
    } catch (const std::exception& e) {
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit > 0 && r.seconds > c.limit) {
        r.pass = false;
        r.detail += "; over the " + std::to_string(static_cast<int>(c.limit)) + " s limit";
    }
    return r;
}

std::vector<CheckResult> run_suite(std::string_view suite) {
    std::vector<CheckResult> out;
    for (int id : suite_criteria(suite)) out.push_back(run_criterion(id));
    return out;
}

}  // namespace pfafflow::selftest
