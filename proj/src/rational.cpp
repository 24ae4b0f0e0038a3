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

#include "pfafflow/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace pfafflow {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

Rational parse_integer(std::string_view s, std::string_view whole) {
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) {
        throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
    }
    mpz_class z(std::string(s), 10);
    if (negative) z = -z;
    return Rational(z);
}

Rational parse_decimal(std::string_view s, std::string_view whole) {
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        Rational ex = parse_integer(s.substr(e + 1), whole);
        if (!ex.get_num().fits_slong_p() || abs(ex.get_num()) > 4096) {
            throw std::invalid_argument("exponent out of range: '" + std::string(whole) + "'");
        }
        exponent = ex.get_num().get_si();
        s = s.substr(0, e);
    }
    std::string digits;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view ip = s.substr(0, dot);
        std::string_view fp = s.substr(dot + 1);
        if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) ||
            (!fp.empty() && !all_digits(fp))) {
            throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
        }
        digits = std::string(ip) + std::string(fp);
        exponent -= static_cast<long>(fp.size());
    } else {
        if (!all_digits(s)) {
            throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
        }
        digits = std::string(s);
    }
    Rational value(mpz_class(digits, 10));
    if (exponent > 0) {
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent));
        value *= scale;
    } else if (exponent < 0) {
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(-exponent));
        value /= scale;
    }
    value.canonicalize();
    return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = trim(text);
    if (s.empty()) throw std::invalid_argument("empty rational");
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        Rational num = parse_integer(trim(s.substr(0, slash)), text);
        Rational den = parse_integer(trim(s.substr(slash + 1)), text);
        if (den == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
        Rational r = num / den;
        r.canonicalize();
        return r;
    }
    if (s.find_first_of(".eE") != std::string_view::npos) return parse_decimal(s, text);
    return parse_integer(s, text);
}

std::vector<Rational> parse_rational_list(std::string_view text) {
    std::vector<Rational> out;
    std::string_view s = trim(text);
    if (s.empty()) return out;
    while (true) {
        auto comma = s.find(',');
        out.push_back(parse_rational(s.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        s.remove_prefix(comma + 1);
    }
    return out;
}

std::string to_string(const Rational& value) {
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Rational pow(const Rational& base, unsigned exponent) {
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Rational pow2(int exponent) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    return exponent < 0 ? Rational(mpz_class(1), p) : Rational(p);
}

Rational factorial(unsigned n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rational(f);
}

Rational binomial(unsigned n, unsigned k) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return Rational(b);
}

}  // namespace pfafflow
