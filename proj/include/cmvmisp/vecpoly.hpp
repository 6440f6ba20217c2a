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

#ifndef CMVMISP_VECPOLY_HPP
#define CMVMISP_VECPOLY_HPP

#include <array>
#include <compare>
#include <limits>
#include <vector>

#include "poly.hpp"

namespace cmvmisp {

/*
 * Height of a two-dimensional vector-polynomial,
 *   h(p) = max(2 deg P1, 2 deg P2 + 1),
 * with a minus-infinity sentinel for the zero vector that compares below
 * every finite height.
 */
class Height {
public:
    constexpr Height() = default;  // minus infinity
    constexpr explicit Height(int value) : value_(value) {}

    static constexpr Height minus_infinity() { return Height(); }

    constexpr bool is_finite() const noexcept { return value_ != kMinusInf; }
    constexpr int value() const {
        if (!is_finite()) throw DomainError("height of the zero vector is -infinity");
        return value_;
    }

    friend constexpr auto operator<=>(Height, Height) = default;
    friend constexpr bool operator==(Height, Height) = default;
    friend constexpr bool operator==(Height a, int b) { return a.is_finite() && a.value_ == b; }
    friend constexpr auto operator<=>(Height a, int b) { return a.value_ <=> b; }

private:
    static constexpr int kMinusInf = std::numeric_limits<int>::min();
    int value_ = kMinusInf;
};

/// Pair (P1, P2) of polynomials; an element of the vector-polynomial space.
template <std::floating_point T>
struct BasicVectorPolynomial {
    BasicPolynomial<T> p1;
    BasicPolynomial<T> p2;

    bool is_zero() const noexcept { return p1.is_zero() && p2.is_zero(); }

    T max_abs() const noexcept { return std::max(p1.max_abs(), p2.max_abs()); }

    friend BasicVectorPolynomial operator+(const BasicVectorPolynomial& a, const BasicVectorPolynomial& b) {
        return {a.p1 + b.p1, a.p2 + b.p2};
    }
    friend BasicVectorPolynomial operator-(const BasicVectorPolynomial& a, const BasicVectorPolynomial& b) {
        return {a.p1 - b.p1, a.p2 - b.p2};
    }
    friend BasicVectorPolynomial operator*(std::complex<T> s, const BasicVectorPolynomial& a) {
        return {s * a.p1, s * a.p2};
    }
    friend bool operator==(const BasicVectorPolynomial&, const BasicVectorPolynomial&) = default;
};

using VectorPolynomial = BasicVectorPolynomial<double>;

template <std::floating_point T>
Height height(const BasicVectorPolynomial<T>& p) {
    if (p.is_zero()) return Height::minus_infinity();
    const int h1 = p.p1.is_zero() ? -1 : 2 * p.p1.degree();
    const int h2 = p.p2.is_zero() ? -1 : 2 * p.p2.degree() + 1;
    return Height(std::max(h1, h2));
}

/// e_{2k} = (z^k, 0), e_{2k+1} = (0, z^k); height(e_k) = k.
template <std::floating_point T = double>
BasicVectorPolynomial<T> basis_e(int k) {
    if (k < 0) throw DomainError("basis_e: negative index");
    if (k % 2 == 0) return {BasicPolynomial<T>::monomial(k / 2), {}};
    return {{}, BasicPolynomial<T>::monomial(k / 2)};
}

/// Coordinates c_0..c_h of p in the basis {e_k}; empty for the zero vector.
template <std::floating_point T>
std::vector<std::complex<T>> expand_in_basis(const BasicVectorPolynomial<T>& p) {
    const Height h = height(p);
    if (!h.is_finite()) return {};
    std::vector<std::complex<T>> c(static_cast<std::size_t>(h.value()) + 1);
    for (std::size_t k = 0; k < c.size(); ++k) {
        const auto j = static_cast<std::ptrdiff_t>(k / 2);
        c[k] = (k % 2 == 0) ? p.p1[j] : p.p2[j];
    }
    return c;
}

/// Inverse of expand_in_basis; coords may be padded with trailing zeros.
template <std::floating_point T>
BasicVectorPolynomial<T> from_basis_coordinates(std::span<const std::complex<T>> coords) {
    std::vector<std::complex<T>> c1((coords.size() + 1) / 2), c2(coords.size() / 2);
    for (std::size_t k = 0; k < coords.size(); ++k) (k % 2 == 0 ? c1[k / 2] : c2[k / 2]) = coords[k];
    return {BasicPolynomial<T>(std::move(c1)), BasicPolynomial<T>(std::move(c2))};
}

/// Module action S * p; satisfies h(Sp) = h(p) + 2 deg S.
template <std::floating_point T>
BasicVectorPolynomial<T> scalar_poly_mul(const BasicPolynomial<T>& s, const BasicVectorPolynomial<T>& p) {
    return {s * p.p1, s * p.p2};
}

template <std::floating_point T>
using Matrix2 = std::array<std::array<std::complex<T>, 2>, 2>;

/// (a P1 + b P2, c P1 + d P2) for A = [[a, b], [c, d]].
template <std::floating_point T>
BasicVectorPolynomial<T> transform(const Matrix2<T>& a, const BasicVectorPolynomial<T>& p) {
    return {a[0][0] * p.p1 + a[0][1] * p.p2, a[1][0] * p.p1 + a[1][1] * p.p2};
}

/// The coefficient that determines the height: lead of P1 for even height, of P2 for odd.
template <std::floating_point T>
std::complex<T> height_leading_coefficient(const BasicVectorPolynomial<T>& p) {
    const Height h = height(p);
    if (!h.is_finite()) return std::complex<T>(0);
    const int k = h.value();
    return k % 2 == 0 ? p.p1[k / 2] : p.p2[k / 2];
}

template <std::floating_point T>
struct HeightReduction {
    std::complex<T> c;
    BasicVectorPolynomial<T> result;
};

/// For h(p) = h(q) = n returns c with h(p + c q) <= n - 1.
template <std::floating_point T>
HeightReduction<T> reduce_height_pair(const BasicVectorPolynomial<T>& p, const BasicVectorPolynomial<T>& q) {
    const Height hp = height(p);
    const Height hq = height(q);
    if (hp != hq || !hp.is_finite())
        throw ContractError("reduce_height_pair: heights must be equal and finite");
    const std::complex<T> c = -height_leading_coefficient(p) / height_leading_coefficient(q);
    BasicVectorPolynomial<T> r = p + c * q;
    // Cancellation leaves rounding noise in the top slot; remove it explicitly.
    auto coords = expand_in_basis(r);
    if (coords.size() > static_cast<std::size_t>(hp.value())) {
        coords.resize(static_cast<std::size_t>(hp.value()));
        r = from_basis_coordinates<T>(coords);
    }
    return {c, std::move(r)};
}

} // namespace cmvmisp

#endif // CMVMISP_VECPOLY_HPP
