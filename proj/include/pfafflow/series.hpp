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
 * @file series.hpp
 * @brief Truncated polynomials in the odd time variables t_1, t_3, ... (and
 * t_{-1}, t_{-3}, ...), Laurent series in an auxiliary variable z with
 * OddPoly coefficients, Miwa maps and shifts, z^0 extraction, and Hirota
 * bilinear derivatives.
 *
 * Truncation is by weighted degree: t_n has weight |n|. Every polynomial
 * carries a Caps record saying up to which degree its terms are exact. Three
 * gradings are tracked independently: total weight, weight in positive-index
 * variables ("plus") and weight in negative-index variables ("minus"). A term
 * is exact when it lies inside all three caps; everything outside is dropped.
 */

#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pfafflow/rational.hpp"

namespace pfafflow::series {

/// Caps large enough to mean "no truncation in practice".
inline constexpr int kExact = 1 << 20;

/// Time variable t_n (n odd, nonzero). Independent copies of the variable set
/// (t, t', t'', ...) are distinguished by `copy`.
struct Var {
    int index = 1;
    int copy = 0;

    int weight() const { return index < 0 ? -index : index; }
    bool positive() const { return index > 0; }

    /// Ordering key: copy, then t_1 < t_3 < ... < t_{-1} < t_{-3} < ...
    int key() const { return copy * 8192 + (index > 0 ? index : 4096 - index); }

    /// "t3", "t-1", "t5'" (one prime per copy).
    std::string name() const;
    static Var parse(std::string_view name);

    friend bool operator==(const Var& a, const Var& b) = default;
    friend bool operator<(const Var& a, const Var& b) { return a.key() < b.key(); }
};

/// Throws std::invalid_argument unless n is odd.
void require_odd(int n);

struct Degrees {
    int total = 0;
    int plus = 0;
    int minus = 0;
};

class Monomial {
public:
    using Power = std::pair<Var, int>;

    Monomial() = default;
    static Monomial of(Var v, int exponent = 1);

    const std::vector<Power>& powers() const { return powers_; }
    const Degrees& degrees() const { return degrees_; }
    int degree() const { return degrees_.total; }
    int exponent(Var v) const;
    bool is_one() const { return powers_.empty(); }

    Monomial operator*(const Monomial& other) const;
    /// Same monomial with variable `v` raised to `exponent` (0 removes it).
    Monomial with_exponent(Var v, int exponent) const;

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.powers_ == b.powers_; }

private:
    void recompute();

    std::vector<Power> powers_;
    Degrees degrees_;
};

/// Graded lexicographic order: total weight first, then lexicographic on the
/// (variable, exponent) list with variables in Var::key order.
struct MonomialOrder {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

struct Caps {
    int total = kExact;
    int plus = kExact;
    int minus = kExact;

    static Caps uniform(int d) { return Caps{d, d, d}; }
    bool admits(const Degrees& d) const {
        return d.total <= total && d.plus <= plus && d.minus <= minus;
    }
    Caps reduced_by(const Degrees& d) const {
        return Caps{total - d.total, plus - d.plus, minus - d.minus};
    }
    static Caps min(const Caps& a, const Caps& b);

    friend bool operator==(const Caps& a, const Caps& b) = default;
};

/// Multivariate polynomial over exact rationals in odd time variables, with
/// an optional overall factor sqrt(2)^s (s kept in {0, 1}).
class OddPoly {
public:
    using Terms = std::map<Monomial, Rational, MonomialOrder>;

    explicit OddPoly(Caps caps = Caps{}) : caps_(caps) {}
    explicit OddPoly(int degree_cap) : caps_(Caps::uniform(degree_cap)) {}

    static OddPoly constant(const Rational& c, Caps caps = Caps{});
    static OddPoly variable(Var v, Caps caps = Caps{});
    static OddPoly monomial(const Monomial& m, const Rational& c, Caps caps = Caps{});

    const Caps& caps() const { return caps_; }
    int cap() const { return caps_.total; }

    int sqrt2_power() const { return sqrt2_; }
    bool is_rational() const { return sqrt2_ == 0 || terms_.empty(); }

    /// Exposed coefficients. Throws std::logic_error if an odd power of
    /// sqrt(2) is still attached.
    const Terms& terms() const;
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    Rational coefficient(const Monomial& m) const;
    Rational constant_term() const { return coefficient(Monomial{}); }
    /// Largest total weight among nonzero terms, -1 for the zero polynomial.
    int degree() const;
    /// Lowest weight (per grading) among nonzero terms; cap + 1 when zero.
    Degrees low_degrees() const;

    /// Adds c * m if m lies inside the caps; zero results are erased.
    void add_term(const Monomial& m, const Rational& c);

    OddPoly truncated(Caps caps) const;
    OddPoly truncated(int degree_cap) const { return truncated(Caps::uniform(degree_cap)); }
    OddPoly homogeneous_part(int total_degree) const;

    /// Multiplies by sqrt(2)^k.
    OddPoly times_sqrt2(int k) const;

    OddPoly& operator+=(const OddPoly& o);
    OddPoly& operator-=(const OddPoly& o);
    OddPoly& operator*=(const Rational& c);
    friend OddPoly operator+(OddPoly a, const OddPoly& b) { return a += b; }
    friend OddPoly operator-(OddPoly a, const OddPoly& b) { return a -= b; }
    friend OddPoly operator*(OddPoly a, const Rational& c) { return a *= c; }
    friend OddPoly operator*(const Rational& c, OddPoly a) { return a *= c; }
    friend OddPoly operator*(const OddPoly& a, const OddPoly& b);
    OddPoly operator-() const;

    /// Same value and sqrt(2) power; caps are not compared.
    friend bool operator==(const OddPoly& a, const OddPoly& b);

    /// "1/6*t1^3 - 2*t3"
    std::string to_string() const;

private:
    friend OddPoly multiply(const OddPoly& a, const OddPoly& b, Caps caps);
    void fold_sqrt2();

    Terms terms_;
    Caps caps_;
    int sqrt2_ = 0;
};

/// Product truncated to `caps` (intersected with the caps implied by the
/// factors' own exactness).
OddPoly multiply(const OddPoly& a, const OddPoly& b, Caps caps);

/// d^order / d(v)^order.
OddPoly derivative(const OddPoly& p, Var v, int order = 1);

/// Replaces each variable of copy `from` by the same variable of copy `to`.
OddPoly rename_copy(const OddPoly& p, int from, int to);

/// t_n -> factor * t_n for every variable.
OddPoly scale_times(const OddPoly& p, const Rational& factor);

/// Keeps only terms whose plus/minus weights lie in the given box.
OddPoly truncate_sides(const OddPoly& p, int plus_cap, int minus_cap);

/// sum_{k>=0} p^k / k! truncated at weighted degree `degree_cap`.
/// Requires a zero constant term and degree_cap <= p.cap().
OddPoly poly_exp(const OddPoly& p, int degree_cap);

enum class Side { plus, minus };

/// Values t_n for odd n (either sign).
class TimeVector {
public:
    void set(int n, const Rational& value);
    /// Throws std::out_of_range when t_n was never set.
    const Rational& at(int n) const;
    bool contains(int n) const { return values_.count(n) != 0; }
    const std::map<int, Rational>& values() const { return values_; }
    /// Merges another vector; overlapping indices are rejected.
    TimeVector& merge(const TimeVector& other);

private:
    std::map<int, Rational> values_;
};

/// t_{+-n} = (2/n) sum_i x_i^n for odd 1 <= n <= n_max.
TimeVector miwa_times(const std::vector<Rational>& x, int n_max, Side side);

/// Evaluates the copy-`copy` variables of p at `t`. Every variable of that
/// copy must be present in `t`; other copies must not occur.
Rational evaluate(const OddPoly& p, const TimeVector& t, int copy = 0);

struct Window {
    int lo = 0;
    int hi = 0;
    bool contains(int e) const { return lo <= e && e <= hi; }
    friend bool operator==(const Window& a, const Window& b) = default;
};

/// A nonzero Laurent coefficient landed outside the window it was meant for.
class WindowOverflow : public std::runtime_error {
public:
    WindowOverflow(Window window, int exponent);
    Window window() const { return window_; }
    int exponent() const { return exponent_; }

private:
    Window window_;
    int exponent_;
};

/// Laurent polynomial in z with OddPoly coefficients on an explicit window.
/// Coefficients inside the window are exact. When complete() is false the
/// series is a projection and may have support outside the window; reading
/// outside the window always throws.
class LaurentSeries {
public:
    explicit LaurentSeries(Window window, bool complete = true)
        : window_(window), complete_(complete) {}

    Window window() const { return window_; }
    bool complete() const { return complete_; }

    /// Zero polynomial (with default caps) when the coefficient is absent.
    OddPoly coefficient(int e) const;
    const std::map<int, OddPoly>& coefficients() const { return coeffs_; }

    /// Accumulates into z^e; throws WindowOverflow if e is outside the window
    /// and c is nonzero.
    void add(int e, const OddPoly& c);

    /// Smallest window containing every nonzero coefficient.
    Window support() const;

private:
    Window window_;
    bool complete_;
    std::map<int, OddPoly> coeffs_;
};

/// Product restricted to `window`; both inputs must be complete.
LaurentSeries multiply(const LaurentSeries& a, const LaurentSeries& b, Window window);

/// The z^0 coefficient (contour integral of s dz / (2 pi i z)).
OddPoly residue_z0(const LaurentSeries& s);

/// Direction of a Miwa shift: t_n -> t_n + sign * 2 z^{-n} / n on the plus
/// side, t_{-n} -> t_{-n} + sign * 2 z^{n} / n on the minus side.
struct MiwaShift {
    int sign = -1;
    Side side = Side::plus;
    int copy = 0;
};

/// p(t -+ [z^{-1}]) (or the minus-side analogue) expanded as a Laurent series.
/// Throws WindowOverflow when the window cannot hold the expansion.
LaurentSeries miwa_shift(const OddPoly& p, MiwaShift shift, Window window);

/// One summand of xi: sign * sum_{n odd <= n_max} t_n^{(copy)} z^{+-n}.
struct XiPart {
    int sign = 1;
    int copy = 0;
};

/// exp(sum over parts of sign * xi(t^{(copy)}, z^{+-1})) truncated at weighted
/// degree `degree_cap`. Side::plus gives xi(t, z) = sum t_n z^n, Side::minus
/// gives xi(t_-, z^{-1}) = sum t_{-n} z^{-n}.
LaurentSeries exp_xi(const std::vector<XiPart>& parts, Side side, int n_max, int degree_cap,
                     Window window);

/// Linear combination of products of Hirota derivatives D_n (n odd).
struct HirotaTerm {
    Rational coeff;
    std::map<int, int> powers;  // n -> exponent of D_n
};

class HirotaOperator {
public:
    HirotaOperator() = default;
    explicit HirotaOperator(std::vector<HirotaTerm> terms);

    /// "D1^3-D3", "6D5-5D3D1^2-D1^5", "D-1D3-D-1D1^3" ('*' optional).
    static HirotaOperator parse(std::string_view text);

    const std::vector<HirotaTerm>& terms() const { return terms_; }
    /// Largest weight sum_n |n| k_n over terms, split by sign of n.
    Degrees weight() const;
    std::string to_string() const;

private:
    std::vector<HirotaTerm> terms_;
};

/// P(D) f.g = P(d_t - d_t') f(t) g(t') |_{t'=t}; D_n acts on copy-0 variable
/// t_n. Rejects even indices.
OddPoly hirota(const HirotaOperator& op, const OddPoly& f, const OddPoly& g);

}  // namespace pfafflow::series
