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

#include "pfafflow/bkp.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "pfafflow/partitions.hpp"
#include "pfafflow/schurq.hpp"

namespace pfafflow::bkp {

using series::LaurentSeries;
using series::MiwaShift;
using series::Side;
using series::Var;
using series::Window;
using series::XiPart;

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

int parse_int(const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(s, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad integer '" + s + "'");
    }
    if (used != s.size()) throw std::invalid_argument("bad integer '" + s + "'");
    return v;
}

// Every subset of the factors, as index lists in factor order.
std::vector<std::vector<std::size_t>> subsets(std::size_t n) {
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::size_t{1} << i)) s.push_back(i);
        out.push_back(s);
    }
    return out;
}

struct SubsetTerm {
    Rational coeff;
    std::vector<int> modes;
    int weight;
};

std::vector<SubsetTerm> expand(const GSpec& g) {
    g.validate();
    std::vector<SubsetTerm> out;
    for (const auto& s : subsets(g.factors.size())) {
        SubsetTerm t{Rational(1), {}, 0};
        for (std::size_t i : s) {
            const Factor& f = g.factors[i];
            t.coeff *= f.c;
            t.modes.push_back(f.r);
            t.modes.push_back(f.s);
            t.weight += f.r + f.s;
        }
        out.push_back(std::move(t));
    }
    return out;
}

int max_mode(const GSpec& g) {
    int m = 0;
    for (const auto& f : g.factors) m = std::max(m, f.r);
    return m;
}

Rational int_pow(const Rational& z, int e) {
    if (e >= 0) return pow(z, static_cast<unsigned>(e));
    return Rational(1) / pow(z, static_cast<unsigned>(-e));
}

Caps two_sided_caps(int d_plus, int d_minus) { return Caps{d_plus + d_minus, d_plus, d_minus}; }

// Conjugated two-point function P(a, b) and Wick expectations.
class Wick {
public:
    Wick(int d_plus, int d_minus) : d_plus_(d_plus), d_minus_(d_minus), caps_(two_sided_caps(d_plus, d_minus)) {
        const schurq::QTable qp(d_plus);
        const schurq::QTable qm(d_minus, ratio(-1, 2), Side::minus);
        for (int m = -d_minus; m <= d_plus; ++m) {
            OddPoly s(caps_);
            for (int j = std::max(0, -m); j <= d_minus && m + j <= d_plus; ++j)
                s += series::multiply(qp.q(m + j), qm.q(j), caps_);
            r_.push_back(std::move(s));
        }
    }

    OddPoly r(int m) const {
        if (m < -d_minus_ || m > d_plus_) return OddPoly(caps_);
        return r_[static_cast<std::size_t>(m + d_minus_)];
    }

    const OddPoly& pair(int a, int b) {
        auto key = std::make_pair(a, b);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        OddPoly acc = series::multiply(r(a), r(b), caps_) * ratio(1, 2);
        for (int j = 1; a + j <= d_plus_ && b - j >= -d_minus_; ++j) {
            OddPoly term = series::multiply(r(a + j), r(b - j), caps_);
            acc += (j % 2 == 0) ? term : -term;
        }
        return memo_.emplace(key, acc.truncated(caps_)).first->second;
    }

    // <0|e^{H_+} phi_{m_1} ... phi_{m_k} e^{H_-}|0> / Z
    OddPoly vev(const std::vector<int>& modes) {
        if (modes.size() % 2 != 0) throw std::invalid_argument("odd number of modes");
        SkewMatrix<OddPoly> m(modes.size());
        for (std::size_t i = 0; i < modes.size(); ++i)
            for (std::size_t j = i + 1; j < modes.size(); ++j) m.set(i, j, pair(modes[i], modes[j]));
        return pfaffian_even(m).truncated(caps_);
    }

    const Caps& caps() const { return caps_; }

private:
    int d_plus_, d_minus_;
    Caps caps_;
    std::vector<OddPoly> r_;
    std::map<std::pair<int, int>, OddPoly> memo_;
};

void require_caps(const OddPoly& p, Caps need, const char* what) {
    const Caps& c = p.caps();
    if (c.total < need.total || c.plus < need.plus || c.minus < need.minus) {
        std::ostringstream os;
        os << what << ": input known to degree " << c.total << " (plus " << c.plus << ", minus "
           << c.minus << "), need " << need.total;
        throw std::invalid_argument(os.str());
    }
}

// [z^0] e^{xi(t_+ - t'_+, z)} a(t_+ - [1/z]) b(t'_+ + [1/z]); b uses copy 1.
OddPoly infinity_contour(const OddPoly& a, const OddPoly& b, int d) {
    const LaurentSeries sa = series::miwa_shift(a, MiwaShift{-1, Side::plus, 0}, Window{-d, 0});
    const LaurentSeries sb = series::miwa_shift(b, MiwaShift{1, Side::plus, 1}, Window{-d, 0});
    const LaurentSeries e = series::exp_xi({XiPart{1, 0}, XiPart{-1, 1}}, Side::plus, d, d, Window{0, d});
    const LaurentSeries ab = series::multiply(sa, sb, Window{-2 * d, 0});
    return series::residue_z0(series::multiply(e, ab, Window{-2 * d, d}));
}

// [z^0] e^{xi(t'_- - t_-, 1/z)} a(t_+, t_- + [z]) b(t'_+, t'_- - [z]).
OddPoly zero_contour(const OddPoly& a, const OddPoly& b, int d) {
    const LaurentSeries sa = series::miwa_shift(a, MiwaShift{1, Side::minus, 0}, Window{0, d});
    const LaurentSeries sb = series::miwa_shift(b, MiwaShift{-1, Side::minus, 1}, Window{0, d});
    const LaurentSeries e = series::exp_xi({XiPart{1, 1}, XiPart{-1, 0}}, Side::minus, d, d, Window{-d, 0});
    const LaurentSeries ab = series::multiply(sa, sb, Window{0, 2 * d});
    return series::residue_z0(series::multiply(e, ab, Window{-d, 2 * d}));
}

}  // namespace

GSpec GSpec::parse(std::string_view text) {
    GSpec g;
    std::string all = trim(text);
    if (all.empty() || all == "1") return g;
    std::stringstream factors(all);
    std::string item;
    while (std::getline(factors, item, ';')) {
        item = trim(item);
        if (item.empty()) continue;
        Factor f;
        bool has_c = false, has_r = false, has_s = false;
        std::stringstream fields(item);
        std::string kv;
        while (std::getline(fields, kv, ',')) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) throw std::invalid_argument("expected key=value in '" + kv + "'");
            const std::string key = trim(kv.substr(0, eq));
            const std::string value = trim(kv.substr(eq + 1));
            if (key == "c") {
                f.c = parse_rational(value);
                has_c = true;
            } else if (key == "r") {
                f.r = parse_int(value);
                has_r = true;
            } else if (key == "s") {
                f.s = parse_int(value);
                has_s = true;
            } else {
                throw std::invalid_argument("unknown factor key '" + key + "'");
            }
        }
        if (!has_c || !has_r || !has_s) throw std::invalid_argument("factor '" + item + "' needs c, r and s");
        g.factors.push_back(f);
    }
    g.validate();
    return g;
}

void GSpec::validate() const {
    for (const auto& f : factors) {
        if (!(f.r > f.s && f.s >= 0)) {
            throw std::invalid_argument("factor (r=" + std::to_string(f.r) + ", s=" + std::to_string(f.s) +
                                        ") must satisfy r > s >= 0");
        }
    }
}

std::string GSpec::to_string() const {
    if (factors.empty()) return "1";
    std::string out;
    for (const auto& f : factors) {
        if (!out.empty()) out += ";";
        out += "c=" + pfafflow::to_string(f.c) + ",r=" + std::to_string(f.r) + ",s=" + std::to_string(f.s);
    }
    return out;
}

TauSeries tau_from_g(const GSpec& g, int d) {
    if (d < 0) throw std::invalid_argument("negative degree cap");
    const schurq::QTable table(2 * max_mode(g) + 1);
    OddPoly tau(d);
    for (const auto& t : expand(g)) {
        if (t.weight > d) continue;  // homogeneous of degree t.weight
        tau += schurq::vev_modes(table, t.modes) * t.coeff;
    }
    return TauSeries{tau.truncated(d), g, "subset expansion"};
}

std::pair<TauSeries, TauSeries> tau_pair_from_g(const GSpec& g, const Rational& z, int d) {
    if (z == 0) throw std::invalid_argument("z must be nonzero");
    TauSeries tau0 = tau_from_g(g, d);
    const int top = d + 2 * max_mode(g) + 2;
    const schurq::QTable table(top);
    const schurq::QTable minus(d, ratio(-1, 2));  // q_k(-t/2)

    // F(b) = sum_k q_k(-t/2) <0|e^{H_+} phi_{-k} phi_b|0>; vanishes unless k <= b.
    std::map<int, OddPoly> first_row;
    auto field = [&](int b) -> const OddPoly& {
        auto it = first_row.find(b);
        if (it != first_row.end()) return it->second;
        OddPoly acc(d);
        for (int k = 0; k <= std::min(b, d); ++k)
            acc += series::multiply(minus.q(k), schurq::two_point(table, -k, b), Caps::uniform(d));
        return first_row.emplace(b, acc).first->second;
    };

    OddPoly next(d);
    for (const auto& t : expand(g)) {
        for (int i = -t.weight; i <= d - t.weight; ++i) {
            // Pfaffian expansion along the row of the conjugated phi_0.
            std::vector<int> rest{i};
            rest.insert(rest.end(), t.modes.begin(), t.modes.end());
            OddPoly v(d);
            for (std::size_t j = 0; j < rest.size(); ++j) {
                std::vector<int> minor;
                for (std::size_t k = 0; k < rest.size(); ++k)
                    if (k != j) minor.push_back(rest[k]);
                const OddPoly term = series::multiply(field(rest[j]), schurq::vev_modes(table, minor), Caps::uniform(d));
                v += (j % 2 == 0) ? term : -term;
            }
            next += v * (2 * t.coeff * int_pow(z, i));
        }
    }
    return {std::move(tau0), TauSeries{next.truncated(d), g, "conjugated phi_0"}};
}

OddPoly tau_next_direct(const GSpec& g, const Rational& z, int d) {
    if (z == 0) throw std::invalid_argument("z must be nonzero");
    const schurq::QTable table(d + 2 * max_mode(g) + 2);
    OddPoly next(d);
    for (const auto& t : expand(g)) {
        for (int i = -t.weight; i <= d - t.weight; ++i) {
            std::vector<int> modes{i};
            modes.insert(modes.end(), t.modes.begin(), t.modes.end());
            modes.push_back(0);
            next += schurq::vev_modes(table, modes) * (2 * t.coeff * int_pow(z, i));
        }
    }
    return next.truncated(d);
}

OddPoly commutator_exp(int d_plus, int d_minus) {
    const Caps caps = two_sided_caps(d_plus, d_minus);
    OddPoly arg(caps);
    for (int n = 1; n <= std::min(d_plus, d_minus); n += 2)
        arg += OddPoly::variable(Var{n}) * OddPoly::variable(Var{-n}) * ratio(n, 2);
    return series::poly_exp(arg.truncated(caps), d_plus + d_minus).truncated(caps);
}

TauSeries tau_two_sided(const GSpec& g, int d_plus, int d_minus) {
    if (d_plus < 0 || d_minus < 0) throw std::invalid_argument("negative degree cap");
    const Caps caps = two_sided_caps(d_plus, d_minus);
    const schurq::QTable plus(d_plus + 2 * max_mode(g) + 2);
    const schurq::QTable minus(d_minus + 1, ratio(1, 2), Side::minus);
    const auto terms = expand(g);
    OddPoly tau(caps);
    for (const auto& lambda : strict_partitions_up_to_weight(d_minus)) {
        const int l = lambda.length();
        // Dual vector weight: 2^{-l/2} for even l; the sqrt(2) phi_0 pair gives 2^{(1-l)/2} for odd l.
        const Rational norm = pow2(l % 2 == 0 ? -l / 2 : (1 - l) / 2);
        const OddPoly q = schurq::schur_q(minus, lambda);
        OddPoly plus_part(caps);
        for (const auto& t : terms) {
            if (t.weight + (lambda.empty() ? 0 : lambda.weight()) > d_plus) continue;
            std::vector<int> modes = t.modes;
            modes.insert(modes.end(), lambda.parts().begin(), lambda.parts().end());
            if (l % 2 == 1) modes.push_back(0);
            plus_part += schurq::vev_modes(plus, modes) * t.coeff;
        }
        if (!plus_part.is_zero()) tau += series::multiply(plus_part, q, caps) * norm;
    }
    return TauSeries{tau.truncated(caps), g, "Q expansion"};
}

OddPoly vev_two_sided(const std::vector<int>& modes, int d_plus, int d_minus) {
    Wick w(d_plus, d_minus);
    return series::multiply(commutator_exp(d_plus, d_minus), w.vev(modes), w.caps());
}

OddPoly tau_two_sided_wick(const GSpec& g, int d_plus, int d_minus) {
    Wick w(d_plus, d_minus);
    OddPoly sum(w.caps());
    for (const auto& t : expand(g)) sum += w.vev(t.modes) * t.coeff;
    return series::multiply(commutator_exp(d_plus, d_minus), sum, w.caps());
}

std::pair<OddPoly, OddPoly> tau_pair_two_sided(const GSpec& g, const Rational& z, int d_plus,
                                               int d_minus) {
    if (z == 0) throw std::invalid_argument("z must be nonzero");
    Wick w(d_plus, d_minus);
    const OddPoly zfac = commutator_exp(d_plus, d_minus);
    OddPoly tau0(w.caps()), tau1(w.caps());
    // phi_0 standing right of e^{H_-} is conjugated to sum_j q_j(t_-/2) phi_j.
    const schurq::QTable right(d_minus, ratio(1, 2), Side::minus);
    for (const auto& t : expand(g)) {
        tau0 += w.vev(t.modes) * t.coeff;
        for (int j = 0; j <= d_minus; ++j) {
            OddPoly inner(w.caps());
            // plus degree - minus degree = i + weight + j
            for (int i = -d_minus - t.weight - j; i <= d_plus - t.weight - j; ++i) {
                std::vector<int> modes{i};
                modes.insert(modes.end(), t.modes.begin(), t.modes.end());
                modes.push_back(j);
                inner += w.vev(modes) * int_pow(z, i);
            }
            tau1 += series::multiply(right.q(j), inner, w.caps()) * (2 * t.coeff);
        }
    }
    return {series::multiply(zfac, tau0, w.caps()), series::multiply(zfac, tau1, w.caps())};
}

OddPoly hirota_zero_check(const HirotaOperator& p, const OddPoly& tau, const OddPoly& sigma, Caps caps) {
    const OddPoly r = series::hirota(p, tau, sigma);
    require_caps(r, caps, "hirota_zero_check");
    return r.truncated(caps);
}

OddPoly bkp_residue_check(const OddPoly& tau, int d) {
    require_caps(tau, Caps{d, d, 0}, "bkp_residue_check");
    const OddPoly a = tau.truncated(d);
    const OddPoly b = series::rename_copy(a, 0, 1);
    const OddPoly lhs = infinity_contour(a, b, d);
    return (lhs - series::multiply(a, b, Caps::uniform(d))).truncated(d);
}

OddPoly mbkp_residue_check(const OddPoly& tau0, const OddPoly& tau1, int d) {
    require_caps(tau0, Caps{d, d, 0}, "mbkp_residue_check");
    require_caps(tau1, Caps{d, d, 0}, "mbkp_residue_check");
    const OddPoly a0 = tau0.truncated(d), a1 = tau1.truncated(d);
    const OddPoly b0 = series::rename_copy(a0, 0, 1), b1 = series::rename_copy(a1, 0, 1);
    const Caps caps = Caps::uniform(d);
    const OddPoly lhs = infinity_contour(a1, b0, d);
    const OddPoly rhs = series::multiply(a0, b1, caps) * Rational(2) - series::multiply(a1, b0, caps);
    return (lhs - rhs).truncated(d);
}

OddPoly negflow_residue_check(const OddPoly& tau, int d) {
    require_caps(tau, Caps::uniform(d), "negflow_residue_check");
    const OddPoly a = tau.truncated(d);
    const OddPoly b = series::rename_copy(a, 0, 1);
    return (infinity_contour(a, b, d) - zero_contour(a, b, d)).truncated(d);
}

OddPoly mixed_residue_check(const OddPoly& tau0, const OddPoly& tau1, int d) {
    require_caps(tau0, Caps::uniform(d), "mixed_residue_check");
    require_caps(tau1, Caps::uniform(d), "mixed_residue_check");
    const OddPoly a0 = tau0.truncated(d), a1 = tau1.truncated(d);
    const OddPoly b0 = series::rename_copy(a0, 0, 1), b1 = series::rename_copy(a1, 0, 1);
    const OddPoly c0 = zero_contour(a1, b0, d);
    const OddPoly cinf = infinity_contour(a1, b0, d);
    return (c0 - series::multiply(a0, b1, Caps::uniform(d)) * Rational(2) + cinf).truncated(d);
}

}  // namespace pfafflow::bkp
