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

#ifndef CMVMISP_CMV_HPP
#define CMVMISP_CMV_HPP

#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "poly.hpp"

namespace cmvmisp {

inline constexpr double kDiskMargin = 1e-12;

/*
 * Verblunsky parameters (alpha_0, ..., alpha_{n-2}; beta) of an n x n CMV
 * matrix. Only beta = 1 is supported; the field exists so that the JSON form
 * carries it explicitly.
 */
struct VerblunskyParams {
    std::vector<Complex> alphas;
    Complex beta{1.0, 0.0};

    int n() const noexcept { return static_cast<int>(alphas.size()) + 1; }

    double rho(int j) const { return std::sqrt(1.0 - std::norm(alphas.at(static_cast<std::size_t>(j)))); }

    /// prod_{j<m} (1 - |alpha_j|^2)^{-1/2}; kappa(0) = 1.
    double kappa(int m) const {
        double k = 1.0;
        for (int j = 0; j < m; ++j) k /= rho(j);
        return k;
    }

    void validate() const;
};

inline void validate_alphas(std::span<const Complex> alphas) {
    for (std::size_t j = 0; j < alphas.size(); ++j) {
        const auto& a = alphas[j];
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
            throw DomainError("alpha_" + std::to_string(j) + " is not finite");
        if (std::abs(a) >= 1.0 - kDiskMargin)
            throw DomainError("alpha_" + std::to_string(j) + " is not inside the unit disk");
    }
}

inline void VerblunskyParams::validate() const {
    validate_alphas(alphas);
    if (std::abs(beta - Complex(1.0, 0.0)) > 1e-12)
        throw DomainError("only beta = 1 is supported");
}

/// Szego polynomials Phi_0..Phi_{n-1} and the closing polynomial Phi~_n.
struct SzegoSystem {
    std::vector<Polynomial> phis;
    Polynomial phi_tilde;
};

/// Phi_0..Phi_K for K = alphas.size(), by the forward Szego recurrence.
inline std::vector<Polynomial> szego_polynomials(std::span<const Complex> alphas) {
    std::vector<Polynomial> phis;
    phis.reserve(alphas.size() + 1);
    phis.push_back(Polynomial::constant(1.0));
    for (std::size_t k = 1; k <= alphas.size(); ++k) {
        const Polynomial& prev = phis.back();
        const int deg = static_cast<int>(k) - 1;
        phis.push_back(prev.shifted(1) - std::conj(alphas[k - 1]) * star(prev, deg));
    }
    return phis;
}

/// z Phi_k - star(Phi_k, k): the recurrence step with terminal coefficient 1.
inline Polynomial close_with_unit_beta(const Polynomial& phi, int k) {
    return phi.shifted(1) - star(phi, k);
}

inline SzegoSystem szego_forward(const VerblunskyParams& params) {
    params.validate();
    SzegoSystem sys;
    sys.phis = szego_polynomials(params.alphas);
    const int last = params.n() - 1;
    sys.phi_tilde = sys.phis.back().shifted(1) - std::conj(params.beta) * star(sys.phis.back(), last);

    for (int k = 0; k <= last; ++k) {
        const auto& p = sys.phis[static_cast<std::size_t>(k)];
        if (p.degree() != k || !p.is_monic(1e-10))
            throw ContractError("szego_forward: Phi_" + std::to_string(k) + " is not monic of degree k");
    }
    if (std::abs(sys.phi_tilde[0] + std::conj(params.beta)) > 1e-10)
        throw ContractError("szego_forward: Phi~_n(0) != -conj(beta)");
    return sys;
}

struct SzegoInverse {
    std::vector<Complex> alphas;  ///< alpha_0..alpha_{k-1}
    std::vector<Polynomial> trail;  ///< Phi_{k-1}, ..., Phi_0
};

/*
 * Recovers alpha_0..alpha_{k-1} from a monic Schur polynomial of degree k by
 * running the recurrence downwards:
 *   alpha_{j-1} = -conj(Phi_j(0)),
 *   z Phi_{j-1} = (Phi_j + conj(alpha_{j-1}) star(Phi_j, j)) / (1 - |alpha_{j-1}|^2).
 */
inline SzegoInverse szego_inverse(const Polynomial& phi, int k, double div_tol = 1e-9) {
    if (k < 1 || phi.degree() != k) throw DomainError("szego_inverse: expected a polynomial of degree k >= 1");
    if (!phi.is_monic(1e-9)) throw DomainError("szego_inverse: polynomial is not monic");

    SzegoInverse out;
    out.alphas.assign(static_cast<std::size_t>(k), Complex(0));
    Polynomial cur = (1.0 / phi.leading()) * phi;
    const Polynomial z = Polynomial::monomial(1);
    for (int j = k; j >= 1; --j) {
        const Complex alpha = -std::conj(cur[0]);
        if (std::abs(alpha) >= 1.0 - 1e-10) throw DomainError("not a Schur-stable Szego polynomial");
        out.alphas[static_cast<std::size_t>(j - 1)] = alpha;
        const Polynomial num = (cur + std::conj(alpha) * star(cur, j)) * Complex(1.0 / (1.0 - std::norm(alpha)));
        Polynomial next;
        try {
            next = divide_exact(num, z, div_tol).quotient;
        } catch (const NotDivisible& e) {
            throw NumericalFailure(std::string("szego_inverse: ") + e.what());
        }
        // Pin the leading coefficient; rounding would otherwise drift it off 1.
        std::vector<Complex> c(next.coeffs().begin(), next.coeffs().end());
        if (static_cast<int>(c.size()) != j) throw NumericalFailure("szego_inverse: degree lost in downward step");
        c.back() = 1.0;
        cur = Polynomial(std::move(c));
        out.trail.push_back(cur);
    }
    return out;
}

using CmvMatrix = Eigen::MatrixXcd;

inline Eigen::Matrix2cd theta_block(Complex alpha) {
    const double rho = std::sqrt(1.0 - std::norm(alpha));
    Eigen::Matrix2cd t;
    t << std::conj(alpha), rho, rho, -alpha;
    return t;
}

inline void require_even(const VerblunskyParams& params) {
    if (params.n() % 2 != 0) throw DomainError("sieving not supported; n must be even");
}

/// C = L M with L = diag(Theta(a0), Theta(a2), ...), M = diag(1, Theta(a1), ..., 1).
inline CmvMatrix assemble_cmv(const VerblunskyParams& params) {
    params.validate();
    require_even(params);
    const int n = params.n();
    CmvMatrix l = CmvMatrix::Zero(n, n);
    CmvMatrix m = CmvMatrix::Zero(n, n);
    for (int j = 0; j + 1 < n; j += 2) l.block<2, 2>(j, j) = theta_block(params.alphas[static_cast<std::size_t>(j)]);
    m(0, 0) = 1.0;
    m(n - 1, n - 1) = 1.0;
    for (int j = 1; j + 1 < n - 1; j += 2) m.block<2, 2>(j, j) = theta_block(params.alphas[static_cast<std::size_t>(j)]);
    return l * m;
}

/// lambda_k = -conj(alpha_{n-2-k}); the parameters of U C U with U the reversal.
inline VerblunskyParams reflect(const VerblunskyParams& params) {
    params.validate();
    require_even(params);
    VerblunskyParams out;
    out.alphas.resize(params.alphas.size());
    const std::size_t last = params.alphas.size() - 1;
    for (std::size_t k = 0; k <= last; ++k) out.alphas[k] = -std::conj(params.alphas[last - k]);
    return out;
}

/// Principal argument mapped into [0, 2 pi); values within 1e-12 of 2 pi wrap to 0.
inline double argument_0_2pi(Complex z) {
    double a = std::arg(z);
    if (a < 0) a += 2.0 * std::numbers::pi;
    if (a > 2.0 * std::numbers::pi - 1e-12) a = 0.0;
    return a;
}

inline void sort_by_argument(std::vector<Complex>& zs) {
    std::sort(zs.begin(), zs.end(), [](Complex a, Complex b) { return argument_0_2pi(a) < argument_0_2pi(b); });
}

struct SpectrumReport {
    std::vector<Complex> zetas;  ///< sorted by argument
    double min_separation;
    std::optional<std::string> warning;
};

inline SpectrumReport spectrum_report(const VerblunskyParams& params) {
    const SzegoSystem sys = szego_forward(params);
    SpectrumReport rep{roots(sys.phi_tilde), std::numeric_limits<double>::infinity(), std::nullopt};
    for (const auto& z : rep.zetas)
        if (std::abs(std::abs(z) - 1.0) > 1e-8) throw NumericalFailure("spectrum: eigenvalue off the unit circle");
    sort_by_argument(rep.zetas);
    for (std::size_t i = 0; i < rep.zetas.size(); ++i)
        for (std::size_t j = i + 1; j < rep.zetas.size(); ++j)
            rep.min_separation = std::min(rep.min_separation, std::abs(rep.zetas[i] - rep.zetas[j]));
    if (rep.min_separation < 1e-8)
        rep.warning = "eigenvalues closer than 1e-8; the spectrum may be numerically degenerate";
    return rep;
}

/// Roots of Phi~_n, i.e. the eigenvalues of C, sorted by argument.
inline std::vector<Complex> spectrum(const VerblunskyParams& params) { return spectrum_report(params).zetas; }

/*
 * X(zeta) = [x_0, ..., x_{n-1}] with
 *   x_{2k}   = zeta^{-k}   kappa_{2k}   Phi_{2k}(zeta),
 *   x_{2k+1} = zeta^{-k-1} kappa_{2k+1} Phi*_{2k+1}(zeta).
 * An eigenvector of C when zeta is an eigenvalue.
 */
inline std::vector<Complex> eigenvector(const VerblunskyParams& params, Complex zeta) {
    params.validate();
    if (zeta == Complex(0)) throw DomainError("eigenvector: zeta must be nonzero");
    const auto phis = szego_polynomials(params.alphas);
    const int n = params.n();
    std::vector<Complex> x(static_cast<std::size_t>(n));
    double kappa = 1.0;
    for (int j = 0; j < n; ++j) {
        if (j > 0) kappa /= params.rho(j - 1);
        const auto& phi = phis[static_cast<std::size_t>(j)];
        const int k = j / 2;
        x[static_cast<std::size_t>(j)] = (j % 2 == 0)
            ? std::pow(zeta, -k) * kappa * phi(zeta)
            : std::pow(zeta, -k - 1) * kappa * star(phi, j)(zeta);
    }
    return x;
}

/// W = Phi~_{K+1} / Phi_K for the K known coefficients (reciprocal Weyl function).
struct WeylData {
    RationalFunction W;
};

inline WeylData weyl_from_prefix(std::span<const Complex> prefix) {
    validate_alphas(prefix);
    const auto phis = szego_polynomials(prefix);
    const int k = static_cast<int>(prefix.size());
    return {RationalFunction(close_with_unit_beta(phis.back(), k), phis.back())};
}

/// W = Phi~_{n-m-1} / Phi_{n-m-2}, which uses alpha_0..alpha_{n-m-3} only.
inline WeylData weyl(const VerblunskyParams& params, int m) {
    const int n = params.n();
    if (m < 1 || 2 * m > n) throw DomainError("weyl: need 1 <= m <= n/2");
    const int count = n - m - 2;
    if (count < 0) throw DomainError("weyl: not enough known coefficients for this m");
    return weyl_from_prefix(std::span<const Complex>(params.alphas).first(static_cast<std::size_t>(count)));
}

enum class SimpleOutcomeKind { Unique, InfinitelyMany, NoSolution };

struct SimpleOutcome {
    SimpleOutcomeKind kind;
    std::optional<Complex> alpha;  ///< set for Unique
    std::string reason;            ///< set for NoSolution
    Complex tau1;
    Complex tau2;
};

/*
 * Finds the last coefficient alpha_{n-2} from alpha_0..alpha_{n-3} and two
 * eigenvalues by solving b(zeta_j) = tau_j for the Moebius map
 * b(l) = (l + alpha) / (1 + l conj(alpha)), where
 * tau_j = Phi*_{n-2}(zeta_j) / (zeta_j Phi_{n-2}(zeta_j)).
 */
inline SimpleOutcome last_alpha_simple(std::span<const Complex> known, Complex zeta1, Complex zeta2,
                                       double tol = 1e-9) {
    validate_alphas(known);
    for (Complex z : {zeta1, zeta2})
        if (std::abs(std::abs(z) - 1.0) > 1e-8) throw DomainError("last_alpha_simple: eigenvalue not unimodular");
    if (std::abs(zeta1 - zeta2) <= 1e-8) throw DomainError("last_alpha_simple: eigenvalues must be distinct");

    const Polynomial phi = szego_polynomials(known).back();
    const int k = static_cast<int>(known.size());
    const Polynomial phi_star = star(phi, k);
    auto tau = [&](Complex z) {
        const Complex d = z * phi(z);
        if (std::abs(d) <= 1e-14) throw DomainError("last_alpha_simple: Phi_{n-2} vanishes at an eigenvalue");
        return phi_star(z) / d;
    };
    SimpleOutcome out{SimpleOutcomeKind::NoSolution, std::nullopt, {}, tau(zeta1), tau(zeta2)};

    // tau_j (1 + zeta_j conj(a)) = zeta_j + a, linear in (a, conj(a)):
    //   a - tau_j zeta_j conj(a) = tau_j - zeta_j.
    const Complex s1 = out.tau1 * zeta1;
    const Complex s2 = out.tau2 * zeta2;
    const Complex det = s1 - s2;
    if (std::abs(det) > tol) {
        const Complex r1 = out.tau1 - zeta1;
        const Complex r2 = out.tau2 - zeta2;
        const Complex a = (-r1 * s2 + r2 * s1) / det;
        if (std::abs(a) >= 1.0) {
            out.reason = "outside disk";
            return out;
        }
        out.kind = SimpleOutcomeKind::Unique;
        out.alpha = a;
        return out;
    }
    if (std::abs(out.tau2 + zeta1) <= tol && std::abs(out.tau1 + zeta2) <= tol) {
        out.kind = SimpleOutcomeKind::InfinitelyMany;
        return out;
    }
    out.reason = "inconsistent data";
    return out;
}

} // namespace cmvmisp

#endif // CMVMISP_CMV_HPP
