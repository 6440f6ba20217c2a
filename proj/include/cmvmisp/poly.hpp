/*
   Copyright 2026 The cmvmisp Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef CMVMISP_POLY_HPP
#define CMVMISP_POLY_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace cmvmisp {

template <std::floating_point T>
struct PolyTraits {
    /// Trailing coefficients at or below trim_rel * max|coeff| are dropped.
    static constexpr T trim_rel = T(1e-11);
    static constexpr T trim_abs = T(1e-300) > T(0) ? T(1e-300) : std::numeric_limits<T>::min();
    /// Aberth-Ehrlich stopping rule.
    static constexpr int root_max_iter = 200;
    static constexpr T root_step_tol = T(1e-13);
    /// Accepted backward error |p(z)| / sum |a_i| |z|^i of a returned root.
    static constexpr T root_residual_tol = T(1e-9);
};

/*
 * Dense polynomial with complex coefficients, stored ascending by power.
 *
 * Values are always canonical: the zero polynomial has no coefficients and
 * the leading coefficient of any other polynomial exceeds the trim threshold
 * of PolyTraits. degree() of the zero polynomial is -1, which stands for
 * minus infinity and orders below every real degree.
 */
template <std::floating_point T>
class BasicPolynomial {
public:
    using real_type = T;
    using value_type = std::complex<T>;

    BasicPolynomial() = default;

    explicit BasicPolynomial(std::vector<value_type> coeffs) : coeffs_(std::move(coeffs)) {
        canonicalize();
    }

    BasicPolynomial(std::initializer_list<value_type> coeffs)
        : BasicPolynomial(std::vector<value_type>(coeffs)) {}

    static BasicPolynomial constant(value_type c) { return BasicPolynomial({c}); }

    /// c * z^k
    static BasicPolynomial monomial(int k, value_type c = value_type(1)) {
        if (k < 0) throw DomainError("monomial: negative power");
        std::vector<value_type> v(static_cast<std::size_t>(k) + 1, value_type(0));
        v.back() = c;
        return BasicPolynomial(std::move(v));
    }

    /// Monic polynomial with the given roots (multiplicity respected).
    static BasicPolynomial from_roots(std::span<const value_type> roots) {
        std::vector<value_type> v{value_type(1)};
        for (const auto& r : roots) {
            v.push_back(value_type(0));
            for (std::size_t j = v.size() - 1; j > 0; --j) v[j] = v[j - 1] - r * v[j];
            v[0] = -r * v[0];
        }
        return BasicPolynomial(std::move(v));
    }

    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    std::span<const value_type> coeffs() const noexcept { return coeffs_; }

    /// Coefficient of z^j; zero past the degree.
    value_type operator[](std::ptrdiff_t j) const noexcept {
        if (j < 0 || j >= static_cast<std::ptrdiff_t>(coeffs_.size())) return value_type(0);
        return coeffs_[static_cast<std::size_t>(j)];
    }

    value_type leading() const noexcept { return is_zero() ? value_type(0) : coeffs_.back(); }

    T max_abs() const noexcept {
        T m = 0;
        for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
        return m;
    }

    bool is_monic(T tol = T(1e-12)) const noexcept {
        return !is_zero() && std::abs(coeffs_.back() - value_type(1)) <= tol;
    }

    value_type operator()(value_type z) const noexcept {
        value_type acc(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
        return acc;
    }

    BasicPolynomial derivative() const {
        if (coeffs_.size() <= 1) return {};
        std::vector<value_type> d(coeffs_.size() - 1);
        for (std::size_t j = 1; j < coeffs_.size(); ++j) d[j - 1] = coeffs_[j] * T(j);
        return BasicPolynomial(std::move(d));
    }

    /// z^k * p
    BasicPolynomial shifted(int k) const {
        if (k < 0) throw DomainError("shifted: negative power");
        if (is_zero()) return {};
        std::vector<value_type> v(static_cast<std::size_t>(k), value_type(0));
        v.insert(v.end(), coeffs_.begin(), coeffs_.end());
        return BasicPolynomial(std::move(v));
    }

    BasicPolynomial conj() const {
        std::vector<value_type> v(coeffs_);
        for (auto& c : v) c = std::conj(c);
        return BasicPolynomial(std::move(v));
    }

    friend BasicPolynomial operator+(const BasicPolynomial& p, const BasicPolynomial& q) {
        std::vector<value_type> v(std::max(p.coeffs_.size(), q.coeffs_.size()), value_type(0));
        for (std::size_t j = 0; j < p.coeffs_.size(); ++j) v[j] += p.coeffs_[j];
        for (std::size_t j = 0; j < q.coeffs_.size(); ++j) v[j] += q.coeffs_[j];
        return BasicPolynomial(std::move(v));
    }

    friend BasicPolynomial operator-(const BasicPolynomial& p) {
        std::vector<value_type> v(p.coeffs_);
        for (auto& c : v) c = -c;
        return BasicPolynomial(std::move(v));
    }

    friend BasicPolynomial operator-(const BasicPolynomial& p, const BasicPolynomial& q) {
        return p + (-q);
    }

    friend BasicPolynomial operator*(const BasicPolynomial& p, const BasicPolynomial& q) {
        if (p.is_zero() || q.is_zero()) return {};
        std::vector<value_type> v(p.coeffs_.size() + q.coeffs_.size() - 1, value_type(0));
        for (std::size_t i = 0; i < p.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < q.coeffs_.size(); ++j) v[i + j] += p.coeffs_[i] * q.coeffs_[j];
        return BasicPolynomial(std::move(v));
    }

    friend BasicPolynomial operator*(value_type s, const BasicPolynomial& p) {
        std::vector<value_type> v(p.coeffs_);
        for (auto& c : v) c *= s;
        return BasicPolynomial(std::move(v));
    }

    friend BasicPolynomial operator*(const BasicPolynomial& p, value_type s) { return s * p; }

    friend bool operator==(const BasicPolynomial&, const BasicPolynomial&) = default;

private:
    void canonicalize() {
        T m = 0;
        for (const auto& c : coeffs_) {
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
                throw DomainError("polynomial coefficient is not finite");
            m = std::max(m, std::abs(c));
        }
        const T thresh = std::max(PolyTraits<T>::trim_rel * m, PolyTraits<T>::trim_abs);
        while (!coeffs_.empty() && std::abs(coeffs_.back()) <= thresh) coeffs_.pop_back();
    }

    std::vector<value_type> coeffs_;
};

using Polynomial = BasicPolynomial<double>;
using Complex = std::complex<double>;

template <std::floating_point T>
BasicPolynomial<T> add(const BasicPolynomial<T>& p, const BasicPolynomial<T>& q) {
    return p + q;
}

template <std::floating_point T>
BasicPolynomial<T> mul(const BasicPolynomial<T>& p, const BasicPolynomial<T>& q) {
    return p * q;
}

template <std::floating_point T>
std::complex<T> evaluate(const BasicPolynomial<T>& p, std::complex<T> z) {
    return p(z);
}

/// max_j |c_j|, the norm used for every relative tolerance on polynomials.
template <std::floating_point T>
T norm_inf(const BasicPolynomial<T>& p) {
    return p.max_abs();
}

/*
 * Reversed-conjugate polynomial at nominal degree k:
 *   star(p, k)(z) = z^k * conj(p(1 / conj(z))).
 * k is passed explicitly because an intermediate member of a degree-k family
 * may have a smaller stored degree.
 */
template <std::floating_point T>
BasicPolynomial<T> star(const BasicPolynomial<T>& p, int k) {
    if (k < p.degree()) throw DomainError("star: nominal degree below stored degree");
    if (k < 0) throw DomainError("star: negative nominal degree");
    std::vector<std::complex<T>> v(static_cast<std::size_t>(k) + 1);
    for (int j = 0; j <= k; ++j) v[static_cast<std::size_t>(j)] = std::conj(p[k - j]);
    return BasicPolynomial<T>(std::move(v));
}

template <std::floating_point T>
struct DivisionResult {
    BasicPolynomial<T> quotient;
    /// ||p - quotient * d||_inf
    T residual;
};

/*
 * Exact polynomial division up to tolerance: succeeds when the remainder is
 * at most tol * ||p||_inf, otherwise throws NotDivisible with the remainder norm.
 */
template <std::floating_point T>
DivisionResult<T> divide_exact(const BasicPolynomial<T>& p, const BasicPolynomial<T>& d, T tol) {
    using C = std::complex<T>;
    if (d.is_zero()) throw DomainError("divide_exact: zero divisor");
    if (p.is_zero()) return {{}, T(0)};

    const int n = p.degree();
    const int m = d.degree();
    BasicPolynomial<T> q;
    if (n >= m) {
        std::vector<C> rem(p.coeffs().begin(), p.coeffs().end());
        std::vector<C> quot(static_cast<std::size_t>(n - m) + 1);
        const C lead = d.leading();
        for (int k = n - m; k >= 0; --k) {
            const C c = rem[static_cast<std::size_t>(k + m)] / lead;
            quot[static_cast<std::size_t>(k)] = c;
            for (int j = 0; j <= m; ++j) rem[static_cast<std::size_t>(k + j)] -= c * d[j];
        }
        q = BasicPolynomial<T>(std::move(quot));
    }
    const T residual = norm_inf(p - q * d);
    if (residual > tol * norm_inf(p)) throw NotDivisible(static_cast<double>(residual));
    return {std::move(q), residual};
}

/*
 * All roots of p with multiplicity, by Aberth-Ehrlich simultaneous iteration
 * started on the Cauchy-bound circle. Each root satisfies the backward-error
 * bound |p(z)| <= root_residual_tol * sum_i |a_i| |z|^i. Order is unspecified.
 */
template <std::floating_point T>
std::vector<std::complex<T>> roots(const BasicPolynomial<T>& p) {
    using C = std::complex<T>;
    using Traits = PolyTraits<T>;
    const int d = p.degree();
    if (d < 1) throw DomainError("roots: polynomial must have degree >= 1");

    const C lead = p.leading();
    std::vector<C> a(static_cast<std::size_t>(d) + 1);
    for (int j = 0; j <= d; ++j) a[static_cast<std::size_t>(j)] = p[j] / lead;
    if (d == 1) return {-a[0]};

    T bound = 0;
    for (int j = 0; j < d; ++j) bound = std::max(bound, std::abs(a[static_cast<std::size_t>(j)]));
    const T radius = T(1) + bound;

    // Horner for p and p' together.
    auto eval_with_derivative = [&](C z) {
        C f = a[static_cast<std::size_t>(d)];
        C df(0);
        for (int j = d - 1; j >= 0; --j) {
            df = df * z + f;
            f = f * z + a[static_cast<std::size_t>(j)];
        }
        return std::pair{f, df};
    };

    std::vector<C> z(static_cast<std::size_t>(d));
    const T offset = T(0.4);  // keeps the start off any symmetry axis of real polynomials
    for (int k = 0; k < d; ++k)
        z[static_cast<std::size_t>(k)] =
            std::polar(radius, T(2) * std::numbers::pi_v<T> * T(k) / T(d) + offset);

    for (int iter = 0; iter < Traits::root_max_iter; ++iter) {
        T max_step = 0;
        for (std::size_t k = 0; k < z.size(); ++k) {
            auto [f, df] = eval_with_derivative(z[k]);
            if (f == C(0)) continue;
            C s(0);
            for (std::size_t j = 0; j < z.size(); ++j)
                if (j != k) s += T(1) / (z[k] - z[j]);
            C step;
            if (df == C(0)) {
                step = C(radius * std::numeric_limits<T>::epsilon() * T(1e3), 0);
            } else {
                const C ratio = f / df;
                step = ratio / (T(1) - ratio * s);
            }
            z[k] -= step;
            max_step = std::max(max_step, std::abs(step) / std::max(T(1), std::abs(z[k])));
        }
        if (max_step < Traits::root_step_tol) break;
    }

    for (const auto& r : z) {
        T scale = 0;
        T zp = 1;
        for (int j = 0; j <= d; ++j) {
            scale += std::abs(a[static_cast<std::size_t>(j)]) * zp;
            zp *= std::abs(r);
        }
        if (std::abs(eval_with_derivative(r).first) > Traits::root_residual_tol * scale)
            throw NumericalFailure("roots: Aberth iteration did not converge");
    }
    return z;
}

/// numerator / denominator with a nonzero denominator.
template <std::floating_point T>
struct BasicRationalFunction {
    BasicPolynomial<T> numerator;
    BasicPolynomial<T> denominator;

    BasicRationalFunction(BasicPolynomial<T> num, BasicPolynomial<T> den)
        : numerator(std::move(num)), denominator(std::move(den)) {
        if (denominator.is_zero()) throw DomainError("rational function with zero denominator");
    }

    std::complex<T> operator()(std::complex<T> z) const { return numerator(z) / denominator(z); }

    /// 1 / f, exposed by swapping the two fields.
    BasicRationalFunction reciprocal() const { return {denominator, numerator}; }
};

using RationalFunction = BasicRationalFunction<double>;

} // namespace cmvmisp

#endif // CMVMISP_POLY_HPP
