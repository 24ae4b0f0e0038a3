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

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace pfafflow {

/// Exact rational number. Always kept canonical (gcd 1, positive denominator).
using Rational = mpq_class;

/// Parses "p/q", "p", or a plain decimal such as "0.4" / "-1.25e-2" into an
/// exact rational. Throws std::invalid_argument on malformed input or q == 0.
Rational parse_rational(std::string_view text);

/// Comma-separated list of rationals ("1/2,0.3,2").
std::vector<Rational> parse_rational_list(std::string_view text);

/// Renders as "p/q" with q > 0 and gcd(p, q) = 1; integers keep the "/1".
std::string to_string(const Rational& value);

/// p/q in canonical form (mpq_class(p, q) alone does not reduce).
inline Rational ratio(long p, long q) {
    Rational r(p, q);
    r.canonicalize();
    return r;
}

inline double to_double(const Rational& value) { return value.get_d(); }

Rational pow(const Rational& base, unsigned exponent);

/// 2^k for any integer k.
Rational pow2(int exponent);

Rational factorial(unsigned n);

Rational binomial(unsigned n, unsigned k);

}  // namespace pfafflow
