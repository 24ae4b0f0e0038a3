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

#include "pfafflow/json_io.hpp"

#include <stdexcept>
#include <string>

namespace pfafflow::json_io {

using series::Monomial;
using series::OddPoly;
using series::Var;

json to_json(const Rational& r) { return pfafflow::to_string(r); }

Rational rational_from_json(const json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    throw std::invalid_argument("expected a rational string, got " + j.dump());
}

json to_json(const OddPoly& p) {
    const OddPoly base = p.sqrt2_power() % 2 == 0 ? p : p.times_sqrt2(-1);
    json terms = json::array();
    for (const auto& [m, c] : base.terms()) {
        json exps = json::object();
        for (const auto& [v, e] : m.powers()) exps[v.name()] = e;
        terms.push_back({{"exponents", exps}, {"coeff", to_json(c)}});
    }
    if (p.sqrt2_power() % 2 == 0) return terms;
    return {{"sqrt2_power", 1}, {"terms", terms}};
}

OddPoly poly_from_json(const json& j) {
    if (j.is_object()) {
        OddPoly p = poly_from_json(j.at("terms"));
        return p.times_sqrt2(j.value("sqrt2_power", 0));
    }
    if (!j.is_array()) throw std::invalid_argument("polynomial must be a list of terms");
    OddPoly p;
    for (const auto& term : j) {
        Monomial m;
        for (const auto& [name, e] : term.at("exponents").items()) {
            const int exp = e.get<int>();
            if (exp < 0) throw std::invalid_argument("negative exponent for " + name);
            m = m * Monomial::of(Var::parse(name), exp);
        }
        p.add_term(m, rational_from_json(term.at("coeff")));
    }
    return p;
}

json to_json(const SkewMatrix<Rational>& m) {
    json upper = json::array();
    for (std::size_t i = 0; i < m.order(); ++i)
        for (std::size_t j = i + 1; j < m.order(); ++j)
            if (m(i, j) != 0) upper.push_back({i, j, to_json(m(i, j))});
    return {{"n", m.order()}, {"upper", upper}};
}

SkewMatrix<Rational> skew_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n")) throw std::invalid_argument("matrix JSON needs \"n\" and \"upper\"");
    const long n = j.at("n").get<long>();
    if (n < 0) throw std::invalid_argument("negative matrix order");
    SkewMatrix<Rational> m(static_cast<std::size_t>(n));
    for (const auto& e : j.value("upper", json::array())) {
        if (!e.is_array() || e.size() != 3) throw std::invalid_argument("entry must be [i, j, \"p/q\"]");
        const long a = e[0].get<long>(), b = e[1].get<long>();
        if (a < 0 || b >= n || a >= b) {
            throw std::invalid_argument("entry (" + std::to_string(a) + ", " + std::to_string(b) +
                                        ") is not strictly upper triangular in order " + std::to_string(n));
        }
        m.set(static_cast<std::size_t>(a), static_cast<std::size_t>(b), rational_from_json(e[2]));
    }
    return m;
}

}  // namespace pfafflow::json_io
