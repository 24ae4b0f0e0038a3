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

#include "pfafflow/series.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace pfafflow::series {

// ---------------------------------------------------------------- variables

void require_odd(int n) {
    if (n % 2 == 0) {
        throw std::invalid_argument("time index must be odd, got " + std::to_string(n));
    }
}

std::string Var::name() const {
    std::string s = "t" + std::to_string(index);
    s.append(static_cast<std::size_t>(copy), '\'');
    return s;
}

Var Var::parse(std::string_view name) {
    if (name.size() < 2 || name.front() != 't') {
        throw std::invalid_argument("bad variable name '" + std::string(name) + "'");
    }
    int copy = 0;
    while (!name.empty() && name.back() == '\'') {
        ++copy;
        name.remove_suffix(1);
    }
    std::string digits(name.substr(1));
    std::size_t used = 0;
    int index = 0;
    try {
        index = std::stoi(digits, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad variable name '" + std::string(name) + "'");
    }
    if (used != digits.size()) throw std::invalid_argument("bad variable name '" + digits + "'");
    require_odd(index);
    return Var{index, copy};
}

// ---------------------------------------------------------------- monomials

Monomial Monomial::of(Var v, int exponent) {
    require_odd(v.index);
    if (exponent < 0) throw std::invalid_argument("negative exponent");
    Monomial m;
    if (exponent > 0) m.powers_.emplace_back(v, exponent);
    m.recompute();
    return m;
}

void Monomial::recompute() {
    degrees_ = Degrees{};
    for (const auto& [v, e] : powers_) {
        const int w = v.weight() * e;
        degrees_.total += w;
        (v.positive() ? degrees_.plus : degrees_.minus) += w;
    }
}

int Monomial::exponent(Var v) const {
    for (const auto& [u, e] : powers_) {
        if (u == v) return e;
    }
    return 0;
}

Monomial Monomial::operator*(const Monomial& other) const {
    Monomial r;
    r.powers_.reserve(powers_.size() + other.powers_.size());
    auto a = powers_.begin();
    auto b = other.powers_.begin();
    while (a != powers_.end() || b != other.powers_.end()) {
        if (b == other.powers_.end() || (a != powers_.end() && a->first < b->first)) {
            r.powers_.push_back(*a++);
        } else if (a == powers_.end() || b->first < a->first) {
            r.powers_.push_back(*b++);
        } else {
            r.powers_.emplace_back(a->first, a->second + b->second);
            ++a;
            ++b;
        }
    }
    r.degrees_ = Degrees{degrees_.total + other.degrees_.total, degrees_.plus + other.degrees_.plus,
                         degrees_.minus + other.degrees_.minus};
    return r;
}

Monomial Monomial::with_exponent(Var v, int exponent) const {
    Monomial r;
    bool placed = false;
    for (const auto& p : powers_) {
        if (p.first == v) {
            if (exponent > 0) r.powers_.emplace_back(v, exponent);
            placed = true;
        } else {
            if (!placed && v < p.first) {
                if (exponent > 0) r.powers_.emplace_back(v, exponent);
                placed = true;
            }
            r.powers_.push_back(p);
        }
    }
    if (!placed && exponent > 0) r.powers_.emplace_back(v, exponent);
    r.recompute();
    return r;
}

bool MonomialOrder::operator()(const Monomial& a, const Monomial& b) const {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    const auto& pa = a.powers();
    const auto& pb = b.powers();
    const std::size_t n = std::min(pa.size(), pb.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (pa[i].first.key() != pb[i].first.key()) return pa[i].first.key() < pb[i].first.key();
        if (pa[i].second != pb[i].second) return pa[i].second > pb[i].second;
    }
    return pa.size() < pb.size();
}

Caps Caps::min(const Caps& a, const Caps& b) {
    return Caps{std::min(a.total, b.total), std::min(a.plus, b.plus), std::min(a.minus, b.minus)};
}

// ---------------------------------------------------------------- OddPoly

OddPoly OddPoly::constant(const Rational& c, Caps caps) {
    OddPoly p(caps);
    p.add_term(Monomial{}, c);
    return p;
}

OddPoly OddPoly::variable(Var v, Caps caps) {
    OddPoly p(caps);
    p.add_term(Monomial::of(v), Rational(1));
    return p;
}

OddPoly OddPoly::monomial(const Monomial& m, const Rational& c, Caps caps) {
    OddPoly p(caps);
    p.add_term(m, c);
    return p;
}

const OddPoly::Terms& OddPoly::terms() const {
    if (!is_rational()) {
        throw std::logic_error("polynomial carries an odd power of sqrt(2); not a rational value");
    }
    return terms_;
}

Rational OddPoly::coefficient(const Monomial& m) const {
    const auto& t = terms();
    auto it = t.find(m);
    return it == t.end() ? Rational(0) : it->second;
}

int OddPoly::degree() const {
    return terms_.empty() ? -1 : terms_.rbegin()->first.degree();
}

Degrees OddPoly::low_degrees() const {
    if (terms_.empty()) return Degrees{caps_.total + 1, caps_.plus + 1, caps_.minus + 1};
    Degrees low{kExact, kExact, kExact};
    for (const auto& [m, c] : terms_) {
        low.total = std::min(low.total, m.degrees().total);
        low.plus = std::min(low.plus, m.degrees().plus);
        low.minus = std::min(low.minus, m.degrees().minus);
    }
    return low;
}

void OddPoly::add_term(const Monomial& m, const Rational& c) {
    if (c == 0 || !caps_.admits(m.degrees())) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

OddPoly OddPoly::truncated(Caps caps) const {
    OddPoly r(Caps::min(caps_, caps));
    r.sqrt2_ = sqrt2_;
    for (const auto& [m, c] : terms_) {
        if (r.caps_.admits(m.degrees())) r.terms_.emplace_hint(r.terms_.end(), m, c);
    }
    if (r.terms_.empty()) r.sqrt2_ = 0;
    return r;
}

OddPoly OddPoly::homogeneous_part(int total_degree) const {
    OddPoly r(caps_);
    r.sqrt2_ = sqrt2_;
    for (const auto& [m, c] : terms_) {
        if (m.degree() == total_degree) r.terms_.emplace_hint(r.terms_.end(), m, c);
    }
    if (r.terms_.empty()) r.sqrt2_ = 0;
    return r;
}

void OddPoly::fold_sqrt2() {
    if (terms_.empty()) {
        sqrt2_ = 0;
        return;
    }
    const int r = ((sqrt2_ % 2) + 2) % 2;
    const int q = (sqrt2_ - r) / 2;
    if (q != 0) {
        const Rational f = pow2(q);
        for (auto& [m, c] : terms_) c *= f;
    }
    sqrt2_ = r;
}

OddPoly OddPoly::times_sqrt2(int k) const {
    OddPoly r = *this;
    r.sqrt2_ += k;
    r.fold_sqrt2();
    return r;
}

OddPoly& OddPoly::operator+=(const OddPoly& o) {
    caps_ = Caps::min(caps_, o.caps_);
    if (o.terms_.empty()) {
        *this = truncated(caps_);
        return *this;
    }
    if (terms_.empty()) {
        sqrt2_ = o.sqrt2_;
    } else if (sqrt2_ != o.sqrt2_) {
        throw std::logic_error("adding polynomials with incommensurate sqrt(2) factors");
    }
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    *this = truncated(caps_);
    return *this;
}

OddPoly& OddPoly::operator-=(const OddPoly& o) { return *this += -o; }

OddPoly& OddPoly::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        sqrt2_ = 0;
        return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

OddPoly OddPoly::operator-() const {
    OddPoly r = *this;
    for (auto& [m, v] : r.terms_) v = -v;
    return r;
}

bool operator==(const OddPoly& a, const OddPoly& b) {
    if (a.terms_.empty() || b.terms_.empty()) return a.terms_.empty() && b.terms_.empty();
    return a.sqrt2_ == b.sqrt2_ && a.terms_ == b.terms_;
}

OddPoly multiply(const OddPoly& a, const OddPoly& b, Caps caps) {
    const Degrees la = a.low_degrees();
    const Degrees lb = b.low_degrees();
    const Caps implied{std::min(a.caps_.total + lb.total, b.caps_.total + la.total),
                       std::min(a.caps_.plus + lb.plus, b.caps_.plus + la.plus),
                       std::min(a.caps_.minus + lb.minus, b.caps_.minus + la.minus)};
    OddPoly r(Caps::min(caps, implied));
    if (a.terms_.empty() || b.terms_.empty()) return r;
    r.sqrt2_ = a.sqrt2_ + b.sqrt2_;
    Rational prod;
    for (const auto& [ma, ca] : a.terms_) {
        if (ma.degree() + lb.total > r.caps_.total) break;
        for (const auto& [mb, cb] : b.terms_) {
            if (ma.degree() + mb.degree() > r.caps_.total) break;
            Monomial m = ma * mb;
            if (!r.caps_.admits(m.degrees())) continue;
            prod = ca * cb;
            auto [it, inserted] = r.terms_.try_emplace(std::move(m), prod);
            if (!inserted) {
                it->second += prod;
                if (it->second == 0) r.terms_.erase(it);
            }
        }
    }
    r.fold_sqrt2();
    return r;
}

OddPoly operator*(const OddPoly& a, const OddPoly& b) { return multiply(a, b, Caps{}); }

std::string OddPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    if (sqrt2_ != 0) os << "sqrt(2)^" << sqrt2_ << "*(";
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rational v = c;
        if (!first) {
            os << (v < 0 ? " - " : " + ");
            if (v < 0) v = -v;
        } else if (v < 0) {
            os << "-";
            v = -v;
        }
        first = false;
        const bool unit = (v == 1);
        if (!unit || m.is_one()) os << v.get_str();
        bool star = !unit;
        for (const auto& [var, e] : m.powers()) {
            if (star) os << "*";
            os << var.name();
            if (e != 1) os << "^" << e;
            star = true;
        }
    }
    if (sqrt2_ != 0) os << ")";
    return os.str();
}

OddPoly derivative(const OddPoly& p, Var v, int order) {
    require_odd(v.index);
    if (order < 0) throw std::invalid_argument("negative derivative order");
    if (order == 0) return p;
    const int w = v.weight() * order;
    Caps caps = p.caps();
    caps.total -= w;
    (v.positive() ? caps.plus : caps.minus) -= w;
    OddPoly r(caps);
    if (p.is_zero()) return r;
    OddPoly carrier = p.times_sqrt2(-p.sqrt2_power());  // rational view
    for (const auto& [m, c] : carrier.terms()) {
        const int e = m.exponent(v);
        if (e < order) continue;
        Rational f = c;
        for (int k = 0; k < order; ++k) f *= (e - k);
        r.add_term(m.with_exponent(v, e - order), f);
    }
    return r.times_sqrt2(p.sqrt2_power());
}

namespace {

template <typename MapVar>
OddPoly map_vars(const OddPoly& p, MapVar&& map_var) {
    OddPoly carrier = p.times_sqrt2(-p.sqrt2_power());
    OddPoly r(p.caps());
    for (const auto& [m, c] : carrier.terms()) {
        Monomial out;
        for (const auto& [v, e] : m.powers()) out = out * Monomial::of(map_var(v), e);
        r.add_term(out, c);
    }
    return r.times_sqrt2(p.sqrt2_power());
}

}  // namespace

OddPoly rename_copy(const OddPoly& p, int from, int to) {
    return map_vars(p, [&](Var v) { return v.copy == from ? Var{v.index, to} : v; });
}

OddPoly scale_times(const OddPoly& p, const Rational& factor) {
    OddPoly carrier = p.times_sqrt2(-p.sqrt2_power());
    OddPoly r(p.caps());
    for (const auto& [m, c] : carrier.terms()) {
        unsigned count = 0;
        for (const auto& pw : m.powers()) count += static_cast<unsigned>(pw.second);
        r.add_term(m, c * pow(factor, count));
    }
    return r.times_sqrt2(p.sqrt2_power());
}

OddPoly truncate_sides(const OddPoly& p, int plus_cap, int minus_cap) {
    Caps caps = p.caps();
    caps.plus = std::min(caps.plus, plus_cap);
    caps.minus = std::min(caps.minus, minus_cap);
    return p.truncated(caps);
}

OddPoly poly_exp(const OddPoly& p, int degree_cap) {
    if (!p.is_rational()) throw std::invalid_argument("poly_exp: argument is not rational");
    if (p.constant_term() != 0) {
        throw std::invalid_argument("poly_exp: nonzero constant term");
    }
    if (degree_cap > p.cap()) {
        throw std::invalid_argument("poly_exp: degree cap exceeds the argument's cap");
    }
    const Caps caps = Caps::min(p.caps(), Caps::uniform(degree_cap));
    OddPoly result = OddPoly::constant(Rational(1), caps);
    OddPoly power = result;
    for (int k = 1; k <= degree_cap; ++k) {
        power = multiply(power, p, caps);
        power *= Rational(1, k);
        if (power.is_zero()) break;
        result += power;
    }
    return result.truncated(caps);
}

// ---------------------------------------------------------------- time vectors

void TimeVector::set(int n, const Rational& value) {
    require_odd(n);
    values_[n] = value;
}

const Rational& TimeVector::at(int n) const {
    auto it = values_.find(n);
    if (it == values_.end()) {
        throw std::out_of_range("time variable t" + std::to_string(n) + " not set");
    }
    return it->second;
}

TimeVector& TimeVector::merge(const TimeVector& other) {
    for (const auto& [n, v] : other.values_) {
        if (values_.count(n)) throw std::invalid_argument("TimeVector::merge: index overlap");
        values_[n] = v;
    }
    return *this;
}

TimeVector miwa_times(const std::vector<Rational>& x, int n_max, Side side) {
    if (n_max < 1 || n_max % 2 == 0) {
        throw std::invalid_argument("miwa_times: n_max must be odd and positive");
    }
    TimeVector t;
    for (int n = 1; n <= n_max; n += 2) {
        Rational s = 0;
        for (const auto& xi : x) s += pow(xi, static_cast<unsigned>(n));
        t.set(side == Side::plus ? n : -n, Rational(2, n) * s);
    }
    return t;
}

Rational evaluate(const OddPoly& p, const TimeVector& t, int copy) {
    Rational total = 0;
    for (const auto& [m, c] : p.terms()) {
        Rational term = c;
        for (const auto& [v, e] : m.powers()) {
            if (v.copy != copy) {
                throw std::invalid_argument("evaluate: variable " + v.name() + " is not of copy " +
                                            std::to_string(copy));
            }
            term *= pow(t.at(v.index), static_cast<unsigned>(e));
        }
        total += term;
    }
    return total;
}

// ---------------------------------------------------------------- Laurent series

WindowOverflow::WindowOverflow(Window window, int exponent)
    : std::runtime_error("Laurent window [" + std::to_string(window.lo) + ", " +
                         std::to_string(window.hi) + "] cannot hold nonzero z^" +
                         std::to_string(exponent)),
      window_(window),
      exponent_(exponent) {}

OddPoly LaurentSeries::coefficient(int e) const {
    if (!window_.contains(e)) {
        throw std::out_of_range("z^" + std::to_string(e) + " lies outside the Laurent window [" +
                                std::to_string(window_.lo) + ", " + std::to_string(window_.hi) +
                                "]");
    }
    auto it = coeffs_.find(e);
    return it == coeffs_.end() ? OddPoly{} : it->second;
}

void LaurentSeries::add(int e, const OddPoly& c) {
    if (!window_.contains(e)) {
        if (c.is_zero()) return;
        throw WindowOverflow(window_, e);
    }
    auto it = coeffs_.find(e);
    if (it == coeffs_.end()) {
        coeffs_.emplace(e, c);
    } else {
        it->second += c;
    }
}

Window LaurentSeries::support() const {
    Window w{0, -1};
    bool any = false;
    for (const auto& [e, c] : coeffs_) {
        if (c.is_zero()) continue;
        if (!any) {
            w = Window{e, e};
            any = true;
        }
        w.lo = std::min(w.lo, e);
        w.hi = std::max(w.hi, e);
    }
    return w;
}

LaurentSeries multiply(const LaurentSeries& a, const LaurentSeries& b, Window window) {
    if (!a.complete() || !b.complete()) {
        throw std::logic_error("Laurent multiply: inputs must be complete (not projections)");
    }
    const Window sa = a.support();
    const Window sb = b.support();
    const bool covers = sa.lo > sa.hi || sb.lo > sb.hi ||
                        (window.lo <= sa.lo + sb.lo && sa.hi + sb.hi <= window.hi);
    LaurentSeries r(window, covers);
    for (const auto& [ea, ca] : a.coefficients()) {
        for (const auto& [eb, cb] : b.coefficients()) {
            const int e = ea + eb;
            if (!window.contains(e)) continue;
            r.add(e, multiply(ca, cb, Caps{}));
        }
    }
    return r;
}

OddPoly residue_z0(const LaurentSeries& s) { return s.coefficient(0); }

LaurentSeries miwa_shift(const OddPoly& p, MiwaShift shift, Window window) {
    if (shift.sign != 1 && shift.sign != -1) throw std::invalid_argument("shift sign must be +-1");
    const bool plus = shift.side == Side::plus;
    const Caps base = p.caps();
    auto caps_at = [&](int e) {
        const int d = e < 0 ? -e : e;
        Caps c = base;
        c.total -= d;
        (plus ? c.plus : c.minus) -= d;
        return c;
    };
    std::map<int, OddPoly> acc;
    auto slot = [&](int e) -> OddPoly& {
        auto it = acc.find(e);
        if (it == acc.end()) it = acc.emplace(e, OddPoly(caps_at(e))).first;
        return it->second;
    };
    const int s2 = p.sqrt2_power();
    OddPoly carrier = p.times_sqrt2(-s2);
    for (const auto& [m, c] : carrier.terms()) {
        // Expand prod_v (t_v + shift_v z^{-+n})^{e_v} with shifted variables
        // split binomially; partial products are keyed by z exponent.
        std::map<int, OddPoly> partial;
        partial.emplace(0, OddPoly::monomial(Monomial{}, c));
        for (const auto& [v, e] : m.powers()) {
            const bool shifted = v.copy == shift.copy && (v.positive() == plus);
            if (!shifted) {
                for (auto& [ze, poly] : partial) poly = poly * OddPoly::monomial(Monomial::of(v, e), 1);
                continue;
            }
            const int n = v.weight();
            const Rational step = Rational(2 * shift.sign, n);
            std::map<int, OddPoly> next;
            for (const auto& [ze, poly] : partial) {
                for (int j = 0; j <= e; ++j) {
                    const Rational f = binomial(static_cast<unsigned>(e), static_cast<unsigned>(j)) *
                                       pow(step, static_cast<unsigned>(j));
                    const int z_exp = ze + (plus ? -n * j : n * j);
                    OddPoly term = poly * OddPoly::monomial(Monomial::of(v, e - j), f);
                    auto it = next.find(z_exp);
                    if (it == next.end()) {
                        next.emplace(z_exp, std::move(term));
                    } else {
                        it->second += term;
                    }
                }
            }
            partial = std::move(next);
        }
        for (auto& [ze, poly] : partial) {
            if (poly.is_zero()) continue;
            OddPoly& target = slot(ze);
            for (const auto& [mm, cc] : poly.terms()) target.add_term(mm, cc);
        }
    }
    LaurentSeries out(window, true);
    for (int e = window.lo; e <= window.hi; ++e) {
        const bool reachable = plus ? e <= 0 : e >= 0;
        if (reachable) out.add(e, OddPoly(caps_at(e)));
    }
    for (auto& [e, poly] : acc) {
        if (!window.contains(e)) {
            if (!poly.is_zero()) throw WindowOverflow(window, e);
            continue;
        }
        out.add(e, poly.times_sqrt2(s2));
    }
    return out;
}

namespace {

LaurentSeries multiply_full(const LaurentSeries& a, const LaurentSeries& b, Caps caps) {
    const Window sa = a.support();
    const Window sb = b.support();
    Window w{0, 0};
    if (sa.lo <= sa.hi && sb.lo <= sb.hi) w = Window{sa.lo + sb.lo, sa.hi + sb.hi};
    LaurentSeries r(w, true);
    for (const auto& [ea, ca] : a.coefficients()) {
        if (ca.is_zero()) continue;
        for (const auto& [eb, cb] : b.coefficients()) {
            if (cb.is_zero()) continue;
            r.add(ea + eb, multiply(ca, cb, caps));
        }
    }
    return r;
}

}  // namespace

LaurentSeries exp_xi(const std::vector<XiPart>& parts, Side side, int n_max, int degree_cap,
                     Window window) {
    const bool plus = side == Side::plus;
    const Caps caps{degree_cap, plus ? degree_cap : kExact, plus ? kExact : degree_cap};
    LaurentSeries xi(Window{-n_max, n_max}, true);
    for (int n = 1; n <= n_max && n <= degree_cap; n += 2) {
        OddPoly coeff(caps);
        for (const auto& part : parts) {
            coeff.add_term(Monomial::of(Var{plus ? n : -n, part.copy}), Rational(part.sign));
        }
        xi.add(plus ? n : -n, coeff);
    }
    LaurentSeries result(window, true);
    result.add(0, OddPoly::constant(Rational(1), caps));
    LaurentSeries power(Window{0, 0}, true);
    power.add(0, OddPoly::constant(Rational(1), caps));
    for (int k = 1; k <= degree_cap; ++k) {
        power = multiply_full(power, xi, caps);
        bool any = false;
        for (const auto& [e, c] : power.coefficients()) {
            if (c.is_zero()) continue;
            any = true;
            result.add(e, c * (Rational(1) / factorial(static_cast<unsigned>(k))));
        }
        if (!any) break;
    }
    return result;
}

// ---------------------------------------------------------------- Hirota

HirotaOperator::HirotaOperator(std::vector<HirotaTerm> terms) : terms_(std::move(terms)) {
    for (const auto& t : terms_) {
        for (const auto& [n, k] : t.powers) {
            require_odd(n);
            if (k < 0) throw std::invalid_argument("negative Hirota exponent");
        }
    }
}

namespace {

class OperatorParser {
public:
    explicit OperatorParser(std::string_view s) : s_(s) {}

    HirotaOperator parse() {
        std::vector<HirotaTerm> terms;
        skip();
        int sign = 1;
        if (peek() == '+' || peek() == '-') {
            sign = get() == '-' ? -1 : 1;
        }
        while (true) {
            HirotaTerm t = term();
            t.coeff *= sign;
            terms.push_back(std::move(t));
            skip();
            if (pos_ >= s_.size()) break;
            const char op = get();
            if (op != '+' && op != '-') fail("expected '+' or '-'");
            sign = op == '-' ? -1 : 1;
        }
        return HirotaOperator(std::move(terms));
    }

private:
    HirotaTerm term() {
        skip();
        HirotaTerm t{Rational(1), {}};
        bool has_number = false;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            has_number = true;
            t.coeff = number();
            if (peek() == '/') {
                get();
                const Rational den = number();
                if (den == 0) fail("zero denominator");
                t.coeff /= den;
            }
            skip();
            if (peek() == '*') get();
        }
        bool any = false;
        while (true) {
            skip();
            if (peek() != 'D') break;
            get();
            int sign = 1;
            if (peek() == '-') {
                get();
                sign = -1;
            }
            if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected index after D");
            const int n = sign * static_cast<int>(number().get_num().get_si());
            int k = 1;
            skip();
            if (peek() == '^') {
                get();
                k = static_cast<int>(number().get_num().get_si());
            }
            t.powers[n] += k;
            any = true;
            skip();
            if (peek() == '*') get();
        }
        if (!any && !has_number) fail("expected a term");
        return t;
    }

    Rational number() {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected a number");
        return Rational(mpz_class(std::string(s_.substr(start, pos_ - start)), 10));
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    char get() { return pos_ < s_.size() ? s_[pos_++] : '\0'; }
    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("Hirota operator '" + std::string(s_) + "': " + what +
                                    " at position " + std::to_string(pos_));
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

HirotaOperator HirotaOperator::parse(std::string_view text) { return OperatorParser(text).parse(); }

Degrees HirotaOperator::weight() const {
    Degrees w;
    for (const auto& t : terms_) {
        Degrees d;
        for (const auto& [n, k] : t.powers) {
            const int x = (n < 0 ? -n : n) * k;
            d.total += x;
            (n > 0 ? d.plus : d.minus) += x;
        }
        w.total = std::max(w.total, d.total);
        w.plus = std::max(w.plus, d.plus);
        w.minus = std::max(w.minus, d.minus);
    }
    return w;
}

std::string HirotaOperator::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        Rational c = t.coeff;
        if (!first) {
            os << (c < 0 ? " - " : " + ");
            if (c < 0) c = -c;
        } else if (c < 0) {
            os << "-";
            c = -c;
        }
        first = false;
        if (c != 1 || t.powers.empty()) os << c.get_str();
        for (auto it = t.powers.rbegin(); it != t.powers.rend(); ++it) {
            os << "D" << it->first;
            if (it->second != 1) os << "^" << it->second;
        }
    }
    return os.str();
}

OddPoly hirota(const HirotaOperator& op, const OddPoly& f, const OddPoly& g) {
    const Degrees w = op.weight();
    Caps out_caps = Caps::min(f.caps(), g.caps()).reduced_by(w);
    OddPoly result(out_caps);
    for (const auto& term : op.terms()) {
        for (const auto& [n, k] : term.powers) require_odd(n);
        std::vector<std::pair<int, int>> dims(term.powers.begin(), term.powers.end());
        std::vector<int> j(dims.size(), 0);
        // Enumerate 0 <= j_i <= k_i: d^j f * d^{k-j} g with
        // prod C(k_i, j_i) (-1)^{k_i - j_i}.
        while (true) {
            Rational coeff = term.coeff;
            OddPoly df = f;
            OddPoly dg = g;
            for (std::size_t i = 0; i < dims.size(); ++i) {
                const auto [n, k] = dims[i];
                coeff *= binomial(static_cast<unsigned>(k), static_cast<unsigned>(j[i]));
                if ((k - j[i]) % 2 != 0) coeff = -coeff;
                df = derivative(df, Var{n, 0}, j[i]);
                dg = derivative(dg, Var{n, 0}, k - j[i]);
            }
            OddPoly prod = multiply(df, dg, out_caps);
            prod *= coeff;
            result += prod;
            std::size_t i = 0;
            while (i < dims.size() && j[i] == dims[i].second) j[i++] = 0;
            if (i == dims.size()) break;
            ++j[i];
        }
    }
    return result.truncated(out_caps);
}

}  // namespace pfafflow::series
