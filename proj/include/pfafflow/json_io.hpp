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
 * @file json_io.hpp
 * @brief JSON forms of rationals, polynomials and skew matrices.
 *
 * Rationals are "p/q" strings. A polynomial is a list of
 * {"exponents": {"t1": 3, "t-1": 1}, "coeff": "p/q"} in graded-lex order;
 * a polynomial carrying an odd power of sqrt(2) is wrapped as
 * {"sqrt2_power": 1, "terms": [...]}. Skew matrices are
 * {"n": n, "upper": [[i, j, "p/q"], ...]} with 0-based i < j; omitted
 * entries are zero.
 */

#pragma once

#include <json.hpp>

#include "pfafflow/pfaffian.hpp"
#include "pfafflow/rational.hpp"
#include "pfafflow/series.hpp"

namespace pfafflow::json_io {

using nlohmann::json;

json to_json(const Rational& r);
/// Accepts "p/q", integers and decimal strings, or JSON integers.
Rational rational_from_json(const json& j);

json to_json(const series::OddPoly& p);
series::OddPoly poly_from_json(const json& j);

json to_json(const SkewMatrix<Rational>& m);
/// Throws std::invalid_argument on malformed input or i >= j.
SkewMatrix<Rational> skew_from_json(const json& j);

}  // namespace pfafflow::json_io
