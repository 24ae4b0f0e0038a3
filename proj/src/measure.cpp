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

#include "pfafflow/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pfafflow/pfaffian.hpp"
#include "pfafflow/schurq.hpp"

namespace pfafflow::measure {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Geometric envelope of the coefficients of F(z).
struct Envelope {
    double b_plus = 1.0;   // sup |prod (1+xz)/(1-xz)| on |z| = r_plus
    double b_minus = 1.0;  // same for y on |w| = r_minus
    double r_plus = 2.0;
    double r_minus = 2.0;

    double q() const { return 1.0 / (r_plus * r_minus); }
    double magnitude() const { return b_plus * b_minus / (1.0 - q()); }
    // |f_m| <= magnitude * decay(m)
    double decay(int m) const {
        return m >= 0 ? std::pow(r_plus, -m) : std::pow(r_minus, m);
    }
};

Envelope envelope(const SpecPair& spec) {
    Envelope e;
    auto side = [](const std::vector<Rational>& pts, double& radius, double& bound) {
        double top = 0.0;
        for (const auto& p : pts) top = std::max(top, std::abs(p.get_d()));
        radius = top > 0.0 ? 1.0 / std::sqrt(top) : 2.0;
        bound = 1.0;
        for (const auto& p : pts) {
            const double v = std::abs(p.get_d()) * radius;
            bound *= (1.0 + v) / (1.0 - v);
        }
    };
    side(spec.x, e.r_plus, e.b_plus);
    side(spec.y, e.r_minus, e.b_minus);
    return e;
}

// Bound on sum_{k > k_terms} |f_{a+k}| |f_{b-k}|.
double k_tail(int a, int b, const Envelope& env, int k_terms) {
    const double c = env.magnitude();
    const int k0 = std::max({-a, b + 1, k_terms + 1});
    double s = 0.0;
    for (int k = k_terms + 1; k < k0; ++k) s += env.decay(a + k) * env.decay(b - k);
    // k >= k0: a + k >= 0 and b - k < 0, so the terms are geometric in q.
    s += std::pow(env.r_plus, -(a + k0)) * std::pow(env.r_minus, b - k0) / (1.0 - env.q());
    return c * c * s;
}

}  // namespace

void SpecPair::validate() const {
    for (const auto* side : {&x, &y}) {
        for (const auto& p : *side) {
            if (p <= 0 || p >= 1) {
                throw std::invalid_argument("specialization points must lie in (0, 1); got " +
                                            to_string(p));
            }
        }
    }
}

Rational SpecPair::r() const {
    if (x.empty() || y.empty()) return 0;
    Rational mx = 0, my = 0;
    for (const auto& p : x) mx = std::max(mx, Rational(abs(p)));
    for (const auto& p : y) my = std::max(my, Rational(abs(p)));
    return mx * my;
}

Rational z_value(const SpecPair& spec) {
    Rational z = 1;
    for (const auto& xi : spec.x) {
        for (const auto& yj : spec.y) {
            const Rational p = xi * yj;
            if (abs(p) >= 1) throw std::invalid_argument("z_value: |x_i y_j| >= 1");
            z *= (1 + p) / (1 - p);
        }
    }
    return z;
}

Rational measure_weight(const StrictPartition& lambda, const SpecPair& spec) {
    spec.validate();
    return schurq::schur_p_value(lambda, spec.x) * schurq::schur_q_value(lambda, spec.y) /
           z_value(spec);
}

TruncatedMeasure::TruncatedMeasure(const SpecPair& spec, int cutoff, exec::Mode mode)
    : cutoff_(cutoff) {
    spec.validate();
    if (cutoff < 0) throw std::invalid_argument("cutoff must be nonnegative");
    const Rational z = z_value(spec);
    const int max_len = static_cast<int>(std::min(spec.x.size(), spec.y.size()));
    const auto qx = schurq::miwa_q(spec.x, 2 * cutoff + 1);
    const auto qy = schurq::miwa_q(spec.y, 2 * cutoff + 1);

    const int slices = cutoff + 1;
    std::vector<std::vector<StrictPartition>> parts(static_cast<std::size_t>(slices));
    std::vector<std::vector<Rational>> weights(static_cast<std::size_t>(slices));
    auto slice = [&](int first) {
        auto& ps = parts[static_cast<std::size_t>(first)];
        auto& ws = weights[static_cast<std::size_t>(first)];
        ps = strict_partitions_with_first(first, max_len);
        ws.reserve(ps.size());
        for (const auto& lambda : ps) {
            Rational w = schurq::schur_q(qx, lambda) * schurq::schur_q(qy, lambda);
            w *= pow2(-lambda.length());
            w /= z;
            ws.push_back(std::move(w));
        }
    };
    if (mode == exec::Mode::parallel) {
#pragma omp parallel for schedule(dynamic) num_threads(exec::thread_count())
        for (int first = slices - 1; first >= 0; --first) slice(first);
    } else {
        for (int first = 0; first < slices; ++first) slice(first);
    }
    mass_ = 0;
    for (int first = 0; first < slices; ++first) {
        auto& ps = parts[static_cast<std::size_t>(first)];
        auto& ws = weights[static_cast<std::size_t>(first)];
        for (std::size_t i = 0; i < ps.size(); ++i) {
            mass_ += ws[i];
            partitions_.push_back(std::move(ps[i]));
            weights_.push_back(std::move(ws[i]));
        }
    }
}

Rational TruncatedMeasure::rho(const std::vector<int>& a) const {
    Rational total = 0;
    for (std::size_t i = 0; i < partitions_.size(); ++i) {
        const auto& lambda = partitions_[i];
        bool all = true;
        for (int part : a) {
            if (!lambda.contains(part)) {
                all = false;
                break;
            }
        }
        if (all) total += weights_[i];
    }
    return total;
}

std::vector<int> normalize_set(const std::vector<int>& a) {
    std::vector<int> s = a;
    std::sort(s.begin(), s.end(), std::greater<>());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] <= 0) throw std::invalid_argument("set elements must be positive integers");
        if (i > 0 && s[i] == s[i - 1]) throw std::invalid_argument("set elements must be distinct");
    }
    return s;
}

BruteResult rho_brute(const std::vector<int>& a, const SpecPair& spec, int cutoff, exec::Mode mode) {
    const std::vector<int> s = normalize_set(a);
    if (!s.empty() && cutoff < s.front()) {
        throw std::invalid_argument("cutoff " + std::to_string(cutoff) + " below max(A) = " +
                                    std::to_string(s.front()));
    }
    TruncatedMeasure m(spec, cutoff, mode);
    return BruteResult{m.rho(s), m.missing_mass()};
}

double KernelCoeffs::at(int m) const {
    if (m < -window || m > window) {
        throw std::out_of_range("f_" + std::to_string(m) + " outside the coefficient window +-" +
                                std::to_string(window));
    }
    return f[static_cast<std::size_t>(m + window)];
}

namespace {

// Coefficients with the j-sum truncated below trunc_target. The error bound
// combines the truncation tail with an a-posteriori rounding bound.
KernelCoeffs compute_coeffs(const SpecPair& spec, int window, double trunc_target) {
    const Envelope env = envelope(spec);
    const double q = env.q();

    // Truncating the j-sum after J+1 terms leaves at most b+ b- q^{J+1}/(1-q).
    int j_terms = 0;
    auto tail = [&](int j) { return env.b_plus * env.b_minus * std::pow(q, j + 1) / (1.0 - q); };
    while (tail(j_terms) > trunc_target) {
        if (++j_terms > 100000) throw ToleranceError("kernel_coeffs: truncation did not converge", tail(j_terms));
    }

    const int top = window + j_terms + 1;
    // q_k exact in rationals, rounded once: relative error below eps.
    const auto qa = schurq::miwa_q(spec.x, top);
    const auto qb = schurq::miwa_q(spec.y, top);
    std::vector<double> av(static_cast<std::size_t>(top) + 1), bv(av.size());
    for (int k = 0; k <= top; ++k) {
        av[static_cast<std::size_t>(k)] = qa.q(k).get_d();
        bv[static_cast<std::size_t>(k)] = (k % 2 == 0 ? 1.0 : -1.0) * qb.q(k).get_d();
    }

    KernelCoeffs out;
    out.window = window;
    out.f.assign(static_cast<std::size_t>(2 * window + 1), 0.0);
    out.magnitude = env.magnitude();
    out.radius_plus = env.r_plus;
    out.radius_minus = env.r_minus;
    double rounding = 0.0;
    for (int m = -window; m <= window; ++m) {
        const int j0 = std::max(0, -m);
        double s = 0.0, abs_sum = 0.0;
        for (int j = j0; j <= j0 + j_terms; ++j) {
            const double term = av[static_cast<std::size_t>(m + j)] * bv[static_cast<std::size_t>(j)];
            s += term;
            abs_sum += std::abs(term);
        }
        out.f[static_cast<std::size_t>(m + window)] = s;
        const double r = (j_terms + 6) * kEps;
        rounding = std::max(rounding, 1.01 * r * abs_sum);
    }
    out.coeff_error = tail(j_terms) + rounding;
    return out;
}

}  // namespace

KernelCoeffs kernel_coeffs(const SpecPair& spec, int window, double tol) {
    spec.validate();
    if (window < 0) throw std::invalid_argument("window must be nonnegative");
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
    KernelCoeffs out = compute_coeffs(spec, window, tol / 2);
    if (out.coeff_error > tol) {
        std::ostringstream os;
        os << "kernel_coeffs: tolerance " << tol << " unreachable; achieved bound " << out.coeff_error;
        throw ToleranceError(os.str(), out.coeff_error);
    }
    return out;
}

KernelValue kernel_K(int a, int b, const KernelCoeffs& coeffs, int k_terms) {
    if (k_terms < 0) throw std::invalid_argument("k_terms must be nonnegative");
    const int need = std::max(std::abs(a), std::abs(b)) + k_terms;
    if (need > coeffs.window) {
        throw std::out_of_range("kernel_K(" + std::to_string(a) + ", " + std::to_string(b) +
                                ") needs coefficient window " + std::to_string(need) + ", have " +
                                std::to_string(coeffs.window));
    }
    const double eps_f = coeffs.coeff_error;
    double value = 0.5 * coeffs.at(a) * coeffs.at(b);
    double err = 0.5 * (std::abs(coeffs.at(a)) * eps_f + std::abs(coeffs.at(b)) * eps_f + eps_f * eps_f);
    double abs_sum = std::abs(value);
    for (int k = 1; k <= k_terms; ++k) {
        const double fa = coeffs.at(a + k);
        const double fb = coeffs.at(b - k);
        const double term = fa * fb;
        value += (k % 2 == 0) ? term : -term;
        abs_sum += std::abs(term);
        err += std::abs(fa) * eps_f + std::abs(fb) * eps_f + eps_f * eps_f;
    }
    Envelope env;
    env.r_plus = coeffs.radius_plus;
    env.r_minus = coeffs.radius_minus;
    // magnitude() = b+ b- / (1 - q); reuse the stored value directly.
    env.b_plus = coeffs.magnitude * (1.0 - env.q());
    env.b_minus = 1.0;
    err += k_tail(a, b, env, k_terms);
    err += 2.0 * (k_terms + 2) * kEps * abs_sum;
    return KernelValue{value, err};
}

namespace {

int choose_k_terms(const std::vector<int>& indices, const Envelope& env, double target) {
    int k = 0;
    while (true) {
        double worst = 0.0;
        for (int a : indices)
            for (int b : indices) worst = std::max(worst, k_tail(a, b, env, k));
        if (worst <= target) return k;
        if (++k > 100000) throw ToleranceError("kernel: k-series truncation did not converge", worst);
    }
}

}  // namespace

KernelValue kernel_K(int a, int b, const SpecPair& spec, double tol) {
    spec.validate();
    const Envelope env = envelope(spec);
    const int k_terms = choose_k_terms({a, b}, env, tol / 4);
    const int window = std::max(std::abs(a), std::abs(b)) + k_terms;
    const double coeff_tol = tol / (8.0 * (k_terms + 1) * (env.magnitude() + 1.0));
    KernelCoeffs coeffs = compute_coeffs(spec, window, coeff_tol);
    KernelValue v = kernel_K(a, b, coeffs, k_terms);
    if (v.error > tol) {
        std::ostringstream os;
        os << "kernel_K: tolerance " << tol << " unreachable; achieved bound " << v.error;
        throw ToleranceError(os.str(), v.error);
    }
    return v;
}

std::vector<int> kernel_index_order(const std::vector<int>& a) {
    std::vector<int> s = normalize_set(a);
    std::vector<int> order = s;
    for (auto it = s.rbegin(); it != s.rend(); ++it) order.push_back(-*it);
    return order;
}

PfResult rho_pf(const std::vector<int>& a, const SpecPair& spec, double tol) {
    spec.validate();
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
    const std::vector<int> order = kernel_index_order(a);
    if (order.empty()) return PfResult{1.0, 0.0};
    const std::size_t n = order.size();
    const std::size_t s = n / 2;
    int sign = 1;
    for (std::size_t i = 0; i < s; ++i) sign *= diagonal_sign(order[i]);

    const Envelope env = envelope(spec);
    double double_factorial = 1.0;
    for (std::size_t k = 1; k < n; k += 2) double_factorial *= static_cast<double>(k);

    double entry_target = tol / 4.0;
    double achieved = std::numeric_limits<double>::infinity();
    double previous = achieved;
    for (int attempt = 0; attempt < 8; ++attempt) {
        const int k_terms = choose_k_terms(order, env, entry_target / 4);
        const int window = std::abs(order.front()) + k_terms;
        const double coeff_tol = entry_target / (8.0 * (k_terms + 1) * (env.magnitude() + 1.0));
        const KernelCoeffs coeffs = compute_coeffs(spec, window, coeff_tol);
        SkewMatrix<double> m(n);
        double delta = 0.0;
        double big = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const KernelValue kv = kernel_K(order[i], order[j], coeffs, k_terms);
                m.set(i, j, kv.value);
                delta = std::max(delta, kv.error);
                big = std::max(big, std::abs(kv.value));
            }
        }
        const double e = big + delta;
        // Each of the (n-1)!! Pfaffian terms is a product of s entries.
        const double propagated = double_factorial * static_cast<double>(s) *
                                  std::pow(e, static_cast<double>(s) - 1.0) * delta;
        const double rounding = 16.0 * static_cast<double>(n * n * n) * kEps * double_factorial *
                                std::pow(e, static_cast<double>(s));
        achieved = propagated + rounding;
        if (achieved <= tol) {
            return PfResult{sign * pfaffian_even(m), achieved};
        }
        if (rounding > tol || achieved > 0.5 * previous) break;  // no longer improving
        previous = achieved;
        entry_target /= 1000.0;
    }
    std::ostringstream os;
    os << "rho_pf: tolerance " << tol << " unreachable; achieved bound " << achieved;
    throw ToleranceError(os.str(), achieved);
}

}  // namespace pfafflow::measure
