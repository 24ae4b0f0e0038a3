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

#include "pfafflow/matrixpp.hpp"

#include <algorithm>
#include <stdexcept>

#include "pfafflow/schurq.hpp"  // RingTraits<OddPoly>

namespace pfafflow::matrixpp {

void FiniteSpace::validate() const {
    if (points.size() != weights.size()) throw std::invalid_argument("points and weights differ in length");
    if (points.empty()) throw std::invalid_argument("empty space");
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i] <= 0) throw std::invalid_argument("points must be positive; got " + to_string(points[i]));
        if (weights[i] <= 0) throw std::invalid_argument("weights must be positive; got " + to_string(weights[i]));
        for (std::size_t j = 0; j < i; ++j)
            if (points[j] == points[i]) throw std::invalid_argument("repeated point " + to_string(points[i]));
    }
}

std::size_t FiniteSpace::index_of(const Rational& x) const {
    for (std::size_t i = 0; i < points.size(); ++i)
        if (points[i] == x) return i;
    throw std::invalid_argument("point " + to_string(x) + " is not in the space");
}

Rational monomial_phi(int i, const Rational& x) { return pow(x, static_cast<unsigned>(i)); }

Rational bures_eps(const Rational& x, const Rational& y) { return (x - y) / (x + y); }

void ProcessSpec::validate() const {
    if (n < 1) throw std::invalid_argument("n must be at least 1");
    space.validate();
    if (!phi || !eps) throw std::invalid_argument("phi and eps must be set");
}

SkewMatrix<Rational> moment_matrix(const ProcessSpec& spec) {
    spec.validate();
    const std::size_t n = static_cast<std::size_t>(spec.n);
    const std::size_t order = n + n % 2;
    const auto& pts = spec.space.points;
    const auto& mu = spec.space.weights;
    const std::size_t p = pts.size();

    std::vector<std::vector<Rational>> phi(n, std::vector<Rational>(p));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t a = 0; a < p; ++a) phi[i][a] = spec.phi(static_cast<int>(i), pts[a]) * mu[a];
    Matrix<Rational> e(p, p, Rational(0));
    for (std::size_t a = 0; a < p; ++a)
        for (std::size_t b = 0; b < p; ++b) e(a, b) = spec.eps(pts[a], pts[b]);

    SkewMatrix<Rational> m(order);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            Rational s = 0;
            for (std::size_t a = 0; a < p; ++a)
                for (std::size_t b = 0; b < p; ++b) s += phi[i][a] * e(a, b) * phi[j][b];
            m.set(i, j, s);
        }
    }
    if (n % 2 == 1) {
        for (std::size_t i = 0; i < n; ++i) {
            Rational s = 0;
            for (std::size_t a = 0; a < p; ++a) s += phi[i][a];
            m.set(i, n, s);
        }
    }
    return m;
}

std::vector<Rational> eps_dot(const ProcessSpec& spec, int j) {
    spec.validate();
    const auto& pts = spec.space.points;
    std::vector<Rational> out(pts.size(), Rational(0));
    for (std::size_t a = 0; a < pts.size(); ++a)
        for (std::size_t b = 0; b < pts.size(); ++b)
            out[a] += spec.eps(pts[a], pts[b]) * spec.phi(j, pts[b]) * spec.space.weights[b];
    return out;
}

Rational density(const ProcessSpec& spec, const std::vector<Rational>& xs) {
    const std::size_t n = xs.size();
    if (n != static_cast<std::size_t>(spec.n)) throw std::invalid_argument("density: tuple size differs from n");
    Matrix<Rational> v(n, n, Rational(0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) v(i, j) = spec.phi(static_cast<int>(i), xs[j]);
    const Rational d = det(v);
    if (d == 0) return 0;
    SkewMatrix<Rational> e(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) e.set(i, j, spec.eps(xs[i], xs[j]));
    return d * pfaffian_debruijn(e);
}

Kernel::Kernel(ProcessSpec spec) : spec_(std::move(spec)), moments_(moment_matrix(spec_)) {
    pf_moments_ = pfaffian_even(moments_);
    if (pf_moments_ == 0) throw SingularMatrix("moment matrix is singular");
    inv_t_ = inverse(moments_.dense()).transpose();
    const auto& pts = spec_.space.points;
    border_.assign(static_cast<std::size_t>(spec_.n), Rational(0));
    for (int j = 0; j < spec_.n; ++j)
        for (std::size_t a = 0; a < pts.size(); ++a)
            border_[static_cast<std::size_t>(j)] += spec_.phi(j, pts[a]) * spec_.space.weights[a];
}

Rational Kernel::eps_phi(int j, const Rational& x) const {
    Rational s = 0;
    const auto& pts = spec_.space.points;
    for (std::size_t b = 0; b < pts.size(); ++b) s += spec_.eps(x, pts[b]) * spec_.phi(j, pts[b]) * spec_.space.weights[b];
    return s;
}

// Sites of the augmented system. For odd n the extra function psi_n is the
// indicator of the phantom, and eps(x, *) = 1.
Kernel::Site Kernel::site(const std::optional<Rational>& x) const {
    const std::size_t order = moments_.order();
    const std::size_t n = static_cast<std::size_t>(spec_.n);
    Site s;
    s.x = x;
    s.psi.assign(order, Rational(0));
    s.eps_psi.assign(order, Rational(0));
    if (x) {
        for (std::size_t j = 0; j < n; ++j) {
            s.psi[j] = spec_.phi(static_cast<int>(j), *x);
            s.eps_psi[j] = eps_phi(static_cast<int>(j), *x);
        }
        if (order > n) s.eps_psi[n] = 1;
    } else {
        for (std::size_t j = 0; j < n; ++j) s.eps_psi[j] = -border_[j];
        s.psi[n] = 1;
    }
    return s;
}

Rational Kernel::site_eps(const Site& a, const Site& b) const {
    if (a.x && b.x) return spec_.eps(*a.x, *b.x);
    if (!a.x && !b.x) return 0;
    return a.x ? Rational(1) : Rational(-1);
}

Matrix<Rational> Kernel::site_block(const Site& a, const Site& b) const {
    const std::size_t order = moments_.order();
    // u = inv_t * b.psi, v = inv_t * b.eps_psi
    std::vector<Rational> u(order, Rational(0)), v(order, Rational(0));
    for (std::size_t i = 0; i < order; ++i) {
        for (std::size_t j = 0; j < order; ++j) {
            if (inv_t_(i, j) == 0) continue;
            u[i] += inv_t_(i, j) * b.psi[j];
            v[i] += inv_t_(i, j) * b.eps_psi[j];
        }
    }
    Matrix<Rational> k(2, 2, Rational(0));
    for (std::size_t i = 0; i < order; ++i) {
        k(0, 0) += a.psi[i] * u[i];
        k(0, 1) += a.psi[i] * v[i];
        k(1, 0) += a.eps_psi[i] * u[i];
        k(1, 1) += a.eps_psi[i] * v[i];
    }
    k(1, 1) -= site_eps(a, b);
    return k;
}

Matrix<Rational> Kernel::block(const Rational& x, const Rational& y) const {
    const std::size_t n = static_cast<std::size_t>(spec_.n);
    Matrix<Rational> k(2, 2, Rational(0));
    std::vector<Rational> px(n), py(n), ex(n), ey(n);
    for (std::size_t i = 0; i < n; ++i) {
        px[i] = spec_.phi(static_cast<int>(i), x);
        py[i] = spec_.phi(static_cast<int>(i), y);
        ex[i] = eps_phi(static_cast<int>(i), x);
        ey[i] = eps_phi(static_cast<int>(i), y);
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const Rational& m = inv_t_(i, j);
            if (m == 0) continue;
            k(0, 0) += px[i] * m * py[j];
            k(0, 1) += px[i] * m * ey[j];
            k(1, 0) += ex[i] * m * py[j];
            k(1, 1) += ex[i] * m * ey[j];
        }
    }
    k(1, 1) -= spec_.eps(x, y);
    return k;
}

Matrix<Rational> Kernel::block_plus(const Rational& x, const Rational& y) const {
    if (spec_.n % 2 == 0) throw std::invalid_argument("block_plus needs odd n");
    const std::size_t n = static_cast<std::size_t>(spec_.n);
    const Matrix<Rational> inner = block(x, y);
    Matrix<Rational> k(4, 4, Rational(0));
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) k(a, b) = inner(a, b);
    for (std::size_t i = 0; i < n; ++i) {
        const int ii = static_cast<int>(i);
        k(0, 2) += spec_.phi(ii, x) * inv_t_(i, n);
        k(1, 2) += eps_phi(ii, x) * inv_t_(i, n);
        k(2, 0) += inv_t_(n, i) * spec_.phi(ii, y);
        k(2, 1) += inv_t_(n, i) * eps_phi(ii, y);
    }
    k(1, 3) = -1;
    k(3, 1) = 1;
    return k;
}

SkewMatrix<Rational> Kernel::matrix(const std::vector<Rational>& s) const {
    std::vector<Rational> pts = s;
    std::sort(pts.begin(), pts.end());
    std::vector<Site> sites;
    for (const auto& x : pts) sites.push_back(site(x));
    if (spec_.n % 2 == 1) sites.push_back(site(std::nullopt));
    SkewMatrix<Rational> k(2 * sites.size());
    for (std::size_t i = 0; i < sites.size(); ++i) {
        for (std::size_t j = i; j < sites.size(); ++j) {
            const Matrix<Rational> b = site_block(sites[i], sites[j]);
            for (std::size_t a = 0; a < 2; ++a)
                for (std::size_t c = 0; c < 2; ++c)
                    if (2 * i + a < 2 * j + c) k.set(2 * i + a, 2 * j + c, b(a, c));
        }
    }
    return k;
}

Matrix<Rational> Kernel::matrix_plus_verbatim(const std::vector<Rational>& s) const {
    std::vector<Rational> pts = s;
    std::sort(pts.begin(), pts.end());
    const std::size_t l = pts.size();
    Matrix<Rational> k(4 * l, 4 * l, Rational(0));
    for (std::size_t i = 0; i < l; ++i) {
        for (std::size_t j = 0; j < l; ++j) {
            const Matrix<Rational> b = block_plus(pts[i], pts[j]);
            for (std::size_t a = 0; a < 4; ++a)
                for (std::size_t c = 0; c < 4; ++c) k(4 * i + a, 4 * j + c) = b(a, c);
        }
    }
    return k;
}

Matrix<Rational> kernel_block(const ProcessSpec& spec, const Rational& x, const Rational& y) {
    return Kernel(spec).block(x, y);
}

Matrix<Rational> kernel_block_plus(const ProcessSpec& spec, const Rational& x, const Rational& y) {
    return Kernel(spec).block_plus(x, y);
}

namespace {

bool has_repeat(std::vector<Rational> s) {
    std::sort(s.begin(), s.end());
    return std::adjacent_find(s.begin(), s.end()) != s.end();
}

}  // namespace

Rational corr_direct(const ProcessSpec& spec, const std::vector<Rational>& s, exec::Mode mode) {
    spec.validate();
    for (const auto& x : s) spec.space.index_of(x);
    const int n = spec.n;
    const int l = static_cast<int>(s.size());
    if (l > n || has_repeat(s)) return 0;
    const Rational norm = factorial(static_cast<unsigned>(n - l)) * pfaffian_even(moment_matrix(spec));
    if (norm == 0) throw SingularMatrix("moment matrix is singular");
    const int rest = n - l;
    if (rest == 0) return density(spec, s) / norm;

    const auto& pts = spec.space.points;
    const auto& mu = spec.space.weights;
    const int p = static_cast<int>(pts.size());
    std::vector<Rational> partial(static_cast<std::size_t>(p), Rational(0));

    // Each leading coordinate owns the sum over the remaining rest - 1.
    auto lead = [&](int first) {
        std::vector<int> idx(static_cast<std::size_t>(rest), 0);
        idx[0] = first;
        std::vector<Rational> xs = s;
        xs.resize(static_cast<std::size_t>(n));
        Rational acc = 0;
        while (true) {
            Rational w = 1;
            for (int k = 0; k < rest; ++k) {
                xs[static_cast<std::size_t>(l + k)] = pts[static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])];
                w *= mu[static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])];
            }
            if (!has_repeat(xs)) acc += w * density(spec, xs);
            int k = 1;
            while (k < rest && idx[static_cast<std::size_t>(k)] == p - 1) idx[static_cast<std::size_t>(k++)] = 0;
            if (k == rest) break;
            ++idx[static_cast<std::size_t>(k)];
        }
        partial[static_cast<std::size_t>(first)] = acc;
    };

    if (mode == exec::Mode::parallel) {
#pragma omp parallel for schedule(dynamic) num_threads(exec::thread_count())
        for (int first = 0; first < p; ++first) lead(first);
    } else {
        for (int first = 0; first < p; ++first) lead(first);
    }
    Rational total = 0;
    for (const auto& v : partial) total += v;
    return total / norm;
}

Rational corr_pf(const Kernel& kernel, const std::vector<Rational>& s) {
    const ProcessSpec& spec = kernel.spec();
    for (const auto& x : s) spec.space.index_of(x);
    if (static_cast<int>(s.size()) > spec.n || has_repeat(s)) return 0;
    if (s.empty()) return 1;
    return pfaffian_even(kernel.matrix(s));
}

Rational corr_pf(const ProcessSpec& spec, const std::vector<Rational>& s) {
    return corr_pf(Kernel(spec), s);
}

bool BuresTau::agree() const {
    return by_sum == (sign > 0 ? by_pfaffian : -by_pfaffian);
}

BuresTau bures_tau(const FiniteSpace& space, int n, int degree_cap, int n_max) {
    space.validate();
    if (n < 1 || n > n_max) {
        throw std::invalid_argument("bures_tau: n = " + std::to_string(n) + " outside [1, " +
                                    std::to_string(n_max) + "]");
    }
    if (degree_cap < 0) throw std::invalid_argument("bures_tau: negative degree cap");
    const std::size_t p = space.size();
    const auto& x = space.points;

    // omega(x_a; t) as a truncated series in the odd times.
    std::vector<OddPoly> omega;
    for (std::size_t a = 0; a < p; ++a) {
        OddPoly xi(degree_cap);
        for (int k = 1; k <= degree_cap; k += 2)
            xi += OddPoly::variable(series::Var{k}, series::Caps::uniform(degree_cap)) *
                  pow(x[a], static_cast<unsigned>(k));
        omega.push_back(series::poly_exp(xi, degree_cap) * space.weights[a]);
    }

    // n-fold sum over ordered tuples; coincident points give zero.
    OddPoly sum(degree_cap);
    std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
    while (true) {
        Rational c = 1;
        for (int i = 0; i < n && c != 0; ++i)
            for (int j = i + 1; j < n; ++j) {
                const Rational& a = x[idx[static_cast<std::size_t>(i)]];
                const Rational& b = x[idx[static_cast<std::size_t>(j)]];
                c *= (a - b) * (a - b) / (a + b);
            }
        if (c != 0) {
            OddPoly term = omega[idx[0]] * c;
            for (int i = 1; i < n; ++i) term = term * omega[idx[static_cast<std::size_t>(i)]];
            sum += term;
        }
        int k = 0;
        while (k < n && idx[static_cast<std::size_t>(k)] == p - 1) idx[static_cast<std::size_t>(k++)] = 0;
        if (k == n) break;
        ++idx[static_cast<std::size_t>(k)];
    }
    sum *= Rational(1) / factorial(static_cast<unsigned>(n));

    // Moments omega_ij and omega_i.
    const std::size_t un = static_cast<std::size_t>(n);
    std::vector<std::vector<OddPoly>> wij(un, std::vector<OddPoly>(un, OddPoly(degree_cap)));
    for (std::size_t i = 0; i < un; ++i) {
        for (std::size_t j = i + 1; j < un; ++j) {
            OddPoly s(degree_cap);
            for (std::size_t a = 0; a < p; ++a)
                for (std::size_t b = 0; b < p; ++b) {
                    if (a == b) continue;
                    const Rational c = bures_eps(x[a], x[b]) * pow(x[a], static_cast<unsigned>(i)) *
                                       pow(x[b], static_cast<unsigned>(j));
                    s += omega[a] * omega[b] * c;
                }
            wij[i][j] = s;
        }
    }
    const std::size_t order = un + un % 2;
    const std::size_t off = un % 2;  // border index 0 for odd n
    SkewMatrix<OddPoly> m(order);
    for (std::size_t i = 0; i < un; ++i)
        for (std::size_t j = i + 1; j < un; ++j) m.set(i + off, j + off, wij[i][j]);
    if (off == 1) {
        for (std::size_t i = 0; i < un; ++i) {
            OddPoly s(degree_cap);
            for (std::size_t a = 0; a < p; ++a) s += omega[a] * pow(x[a], static_cast<unsigned>(i));
            m.set(0, i + 1, s);
        }
    }
    BuresTau out{sum, pfaffian_even(m), (n / 2) % 2 == 0 ? 1 : -1};
    return out;
}

}  // namespace pfafflow::matrixpp
