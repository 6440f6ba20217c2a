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

#ifndef CMVMISP_INTERP_HPP
#define CMVMISP_INTERP_HPP

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "poly.hpp"
#include "vecpoly.hpp"

namespace cmvmisp {

/// One condition a1 P1(z) + a2 P2(z) = 0.
struct InterpolationNode {
    Complex z;
    Complex a1;
    Complex a2;

    /// (a1, a2) scaled to unit Euclidean length; conditions are homogeneous in it.
    std::pair<Complex, Complex> unit_weights() const {
        const double s = std::hypot(std::abs(a1), std::abs(a2));
        return {a1 / s, a2 / s};
    }
};

inline constexpr double kMinNodeSeparation = 1e-10;

/// The problem (I_n): n conditions at pairwise distinct abscissas.
struct InterpolationProblem {
    std::vector<InterpolationNode> nodes;

    InterpolationProblem() = default;
    explicit InterpolationProblem(std::vector<InterpolationNode> ns) : nodes(std::move(ns)) { validate(); }

    int size() const noexcept { return static_cast<int>(nodes.size()); }

    void validate() const {
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            const auto& nd = nodes[i];
            for (Complex c : {nd.z, nd.a1, nd.a2})
                if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
                    throw DomainError("interpolation node " + std::to_string(i) + " is not finite");
            if (std::abs(nd.a1) + std::abs(nd.a2) == 0.0)
                throw DomainError("interpolation node " + std::to_string(i) + " has a1 = a2 = 0");
            for (std::size_t j = 0; j < i; ++j)
                if (std::abs(nodes[j].z - nd.z) <= kMinNodeSeparation)
                    throw DomainError("duplicate interpolation abscissa at nodes " + std::to_string(j) + " and " +
                                      std::to_string(i));
        }
    }
};

/// A value in the extended complex plane; std::nullopt is the point at infinity.
using ExtendedComplex = std::optional<Complex>;

/// omega finite -> (1, -omega); omega infinite -> (0, 1), i.e. a pole is demanded.
inline InterpolationProblem from_values(std::span<const Complex> zs, std::span<const ExtendedComplex> omegas) {
    if (zs.size() != omegas.size()) throw DomainError("from_values: length mismatch");
    std::vector<InterpolationNode> nodes;
    nodes.reserve(zs.size());
    for (std::size_t j = 0; j < zs.size(); ++j) {
        if (omegas[j]) nodes.push_back({zs[j], 1.0, -*omegas[j]});
        else nodes.push_back({zs[j], 0.0, 1.0});
    }
    return InterpolationProblem(std::move(nodes));
}

/// max_j |a1 P1(z_j) + a2 P2(z_j)| over unit-normalized weights, relative to max|coeff of p|.
inline double residual(const InterpolationProblem& problem, const VectorPolynomial& p) {
    const double scale = p.max_abs();
    if (scale == 0.0) return 0.0;
    double worst = 0.0;
    for (const auto& nd : problem.nodes) {
        const auto [w1, w2] = nd.unit_weights();
        worst = std::max(worst, std::abs(w1 * p.p1(nd.z) + w2 * p.p2(nd.z)));
    }
    return worst / scale;
}

/// Row j holds the condition at node j applied to the basis e_0..e_h.
inline Eigen::MatrixXcd condition_matrix(const InterpolationProblem& problem, int h) {
    const int n = problem.size();
    Eigen::MatrixXcd a(n, h + 1);
    for (int j = 0; j < n; ++j) {
        const auto& nd = problem.nodes[static_cast<std::size_t>(j)];
        const auto [w1, w2] = nd.unit_weights();
        Complex zp = 1.0;
        for (int k = 0; k <= h; ++k) {
            a(j, k) = (k % 2 == 0 ? w1 : w2) * zp;
            if (k % 2 == 1) zp *= nd.z;
        }
    }
    return a;
}

struct InterpTolerances {
    /// sigma_min <= rank * sigma_max declares a nontrivial nullspace.
    double rank = 1e-9;
    /// Accepted node residual of a generator, relative to its coefficient scale.
    double residual = 1e-9;
    /// Singular values of the deflated nullspace above this count as surviving directions.
    double deflation = 1e-6;
};

struct Nullspace {
    Eigen::MatrixXcd basis;  ///< orthonormal columns
    Eigen::VectorXd singular_values;
};

inline Nullspace numerical_nullspace(const Eigen::MatrixXcd& a, double rank_tol) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const double smax = s.size() > 0 ? s(0) : 0.0;
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > rank_tol * smax) ++rank;
    return {svd.matrixV().rightCols(a.cols() - rank), s};
}

/// Largest-|c_h| element of span(basis), scaled so that c_h = 1.
inline Eigen::VectorXcd top_normalized(const Eigen::MatrixXcd& basis, Eigen::Index h) {
    Eigen::VectorXcd v = basis * basis.row(h).adjoint();
    if (std::abs(v(h)) < 1e-8) throw ContractError("nullspace vector has no component at the target height");
    return v / v(h);
}

inline VectorPolynomial from_coordinates(const Eigen::VectorXcd& v) {
    std::vector<Complex> c(v.data(), v.data() + v.size());
    return from_basis_coordinates<double>(c);
}

/// Coordinates of p in e_0..e_{len-1}; p must have height < len.
inline Eigen::VectorXcd coordinates(const VectorPolynomial& p, Eigen::Index len) {
    const auto c = expand_in_basis(p);
    if (static_cast<Eigen::Index>(c.size()) > len) throw DomainError("coordinates: vector-polynomial too high");
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(len);
    for (std::size_t k = 0; k < c.size(); ++k) v(static_cast<Eigen::Index>(k)) = c[k];
    return v;
}

struct MinimalGenerator {
    VectorPolynomial r;
    int h_min;
};

/*
 * Smallest h for which the conditions admit a nonzero solution of height
 * <= h, found by sweeping h = 0, 1, ... and testing the nullspace of the
 * n x (h+1) condition matrix. The sweep ends by h = n at the latest.
 */
inline MinimalGenerator minimal_generator(const InterpolationProblem& problem, const InterpTolerances& tol = {}) {
    const int n = problem.size();
    if (n < 1) throw DomainError("minimal_generator: problem has no nodes");
    for (int h = 0; h <= n; ++h) {
        const Nullspace ns = numerical_nullspace(condition_matrix(problem, h), tol.rank);
        if (ns.basis.cols() == 0) continue;
        const VectorPolynomial r = from_coordinates(top_normalized(ns.basis, h));
        if (height(r) != h) throw ContractError("minimal_generator: normalized solution lost its height");
        const double res = residual(problem, r);
        if (res > tol.residual)
            throw NumericalFailure("minimal_generator: residual " + std::to_string(res) + " above tolerance");
        return {r, h};
    }
    throw ContractError("minimal_generator: no solution of height <= n");
}

/// Zeroes the coordinates of q at the leading slots of z^j r (h_min + 2j <= h(q)).
inline VectorPolynomial reduce_against(const VectorPolynomial& q, const VectorPolynomial& r, int h_min) {
    const int hq = height(q).value();
    Eigen::VectorXcd cq = coordinates(q, hq + 1);
    for (int j = (hq - h_min) / 2; j >= 0; --j) {
        const int slot = h_min + 2 * j;
        if (slot >= hq) continue;
        const Complex c = cq(slot);
        cq -= c * coordinates(scalar_poly_mul(Polynomial::monomial(j), r), hq + 1);
        cq(slot) = 0.0;
    }
    return from_coordinates(cq);
}

struct GeneratorPair {
    VectorPolynomial r;  ///< minimal generator
    VectorPolynomial q;  ///< second generator
    int h_min;
    int h_second;
};

/*
 * A solution of height 2n + 1 - h_min that is not a polynomial multiple of r.
 * The nullspace at that height is deflated by the span of {z^j r}; exactly one
 * direction has to survive. The result is normalized to a unit leading
 * coefficient and reduced against r, which makes it unique.
 */
inline VectorPolynomial second_generator(const InterpolationProblem& problem, const VectorPolynomial& r, int h_min,
                                         const InterpTolerances& tol = {}) {
    const int n = problem.size();
    if (height(r) != h_min) throw DomainError("second_generator: h_min does not match the height of r");
    const int big_h = 2 * n + 1 - h_min;
    const Nullspace ns = numerical_nullspace(condition_matrix(problem, big_h), tol.rank);

    const int multiples = (big_h - h_min - 1) / 2 + 1;  // z^j r with h_min + 2j <= big_h
    Eigen::MatrixXcd b(big_h + 1, multiples);
    for (int j = 0; j < multiples; ++j)
        b.col(j) = coordinates(scalar_poly_mul(Polynomial::monomial(j), r), big_h + 1);
    const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(b);
    const Eigen::MatrixXcd qb = qr.householderQ() * Eigen::MatrixXcd::Identity(big_h + 1, multiples);
    const Eigen::MatrixXcd deflated = ns.basis - qb * (qb.adjoint() * ns.basis);

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(deflated, Eigen::ComputeThinU);
    const auto& s = svd.singularValues();
    Eigen::Index surviving = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > tol.deflation) ++surviving;
    if (surviving != 1) {
        std::ostringstream msg;
        msg << "second_generator: rank ambiguity, " << surviving << " surviving directions; singular values:";
        for (Eigen::Index i = 0; i < s.size(); ++i) msg << ' ' << s(i);
        throw ContractError(msg.str());
    }
    const Eigen::VectorXcd dir = svd.matrixU().col(0);
    if (std::abs(dir(big_h)) < 1e-8) throw ContractError("second_generator: surviving direction has lower height");
    VectorPolynomial q = reduce_against(from_coordinates(dir / dir(big_h)), r, h_min);
    if (height(q) != big_h) throw ContractError("second_generator: wrong height after reduction");
    const double res = residual(problem, q);
    if (res > tol.residual)
        throw NumericalFailure("second_generator: residual " + std::to_string(res) + " above tolerance");
    return q;
}

inline GeneratorPair compute_generators(const InterpolationProblem& problem, const InterpTolerances& tol = {}) {
    auto [r, h_min] = minimal_generator(problem, tol);
    VectorPolynomial q = second_generator(problem, r, h_min, tol);
    const int h_second = height(q).value();
    return {std::move(r), std::move(q), h_min, h_second};
}

namespace detail {

inline VectorPolynomial inductive_step(std::vector<InterpolationNode> nodes) {
    constexpr double kZeroWeight = 1e-12;
    for (auto& nd : nodes) {
        const auto [w1, w2] = nd.unit_weights();
        nd.a1 = w1;
        nd.a2 = w2;
    }
    const std::size_t count = nodes.size();
    if (count == 0) return basis_e(0);
    if (count == 1) return {Polynomial::constant(-nodes[0].a2), Polynomial::constant(nodes[0].a1)};

    const bool odd_step = (count - 1) % 2 == 1;  // previous size odd: upper-triangular peel
    auto weight = [odd_step](const InterpolationNode& nd) { return std::abs(odd_step ? nd.a1 : nd.a2); };
    std::size_t s = 0;
    for (std::size_t j = 1; j < count; ++j)
        if (weight(nodes[j]) > weight(nodes[s])) s = j;
    if (weight(nodes[s]) <= kZeroWeight) return odd_step ? basis_e(0) : basis_e(1);

    const InterpolationNode pivot = nodes[s];
    nodes.erase(nodes.begin() + static_cast<std::ptrdiff_t>(s));
    const Polynomial shift{pivot.z, Complex(-1.0)};  // z_s - z

    if (odd_step) {
        // Omega0 = [[1/a1, -a2/a1], [0, 1]]; (a1_j, a2_j) Omega0 = (b1, b2).
        for (auto& nd : nodes) {
            const Complex b1 = nd.a1 / pivot.a1;
            const Complex b2 = nd.a2 - nd.a1 * pivot.a2 / pivot.a1;
            nd.a1 = (pivot.z - nd.z) * b1;
            nd.a2 = b2;
        }
        const VectorPolynomial q = inductive_step(std::move(nodes));
        return {(1.0 / pivot.a1) * (shift * q.p1) - (pivot.a2 / pivot.a1) * q.p2, q.p2};
    }
    // Omega1 = [[1, 0], [-a1/a2, 1/a2]]; (a1_j, a2_j) Omega1 = (d1, d2).
    for (auto& nd : nodes) {
        const Complex d1 = nd.a1 - nd.a2 * pivot.a1 / pivot.a2;
        const Complex d2 = nd.a2 / pivot.a2;
        nd.a1 = d1;
        nd.a2 = (pivot.z - nd.z) * d2;
    }
    const VectorPolynomial q = inductive_step(std::move(nodes));
    return {q.p1, -(pivot.a1 / pivot.a2) * q.p1 + (1.0 / pivot.a2) * (shift * q.p2)};
}

} // namespace detail

/*
 * A solution of height <= n built by peeling one node per step with the
 * triangular transforms Omega0 (upper, when the remaining count is odd) or
 * Omega1 (lower, when it is even) and mapping the reduced solution back.
 * Not minimal in general; it serves as an independent check of the h <= n bound.
 */
inline VectorPolynomial inductive_solution(const InterpolationProblem& problem) {
    return detail::inductive_step(problem.nodes);
}

struct Decomposition {
    Polynomial S;
    Polynomial T;
    double reconstruction_error;  ///< ||p - (S r + T q)||_inf / ||p||_inf
};

/// p = S r + T q for a solution p, via the triangular basis {z^j r, z^j q} restricted to h(p).
inline Decomposition decompose(const InterpolationProblem& problem, const GeneratorPair& gp,
                               const VectorPolynomial& p, double tol = 1e-8) {
    if (p.is_zero()) return {{}, {}, 0.0};
    if (residual(problem, p) > tol) throw ContractError("decompose: p does not solve the problem");
    const int hp = height(p).value();
    const int ns = hp >= gp.h_min ? (hp - gp.h_min) / 2 + 1 : 0;
    const int nt = hp >= gp.h_second ? (hp - gp.h_second) / 2 + 1 : 0;
    if (ns + nt == 0) throw ContractError("decompose: nonzero solution below the minimal height");

    Eigen::MatrixXcd basis(hp + 1, ns + nt);
    for (int j = 0; j < ns; ++j) basis.col(j) = coordinates(scalar_poly_mul(Polynomial::monomial(j), gp.r), hp + 1);
    for (int j = 0; j < nt; ++j)
        basis.col(ns + j) = coordinates(scalar_poly_mul(Polynomial::monomial(j), gp.q), hp + 1);
    const Eigen::VectorXcd target = coordinates(p, hp + 1);
    const Eigen::VectorXcd x = basis.colPivHouseholderQr().solve(target);

    const double err = (basis * x - target).cwiseAbs().maxCoeff() / p.max_abs();
    if (err > tol) throw ContractError("decompose: reconstruction error " + std::to_string(err));
    std::vector<Complex> s(x.data(), x.data() + ns), t(x.data() + ns, x.data() + ns + nt);
    return {Polynomial(std::move(s)), Polynomial(std::move(t)), err};
}

struct FamilyValue {
    RationalFunction f;
    bool common_root;  ///< numerator and denominator share a root within tolerance
};

/// (S R1 + T Q1) / (S R2 + T Q2).
inline FamilyValue family_eval(const GeneratorPair& gp, const Polynomial& s, const Polynomial& t,
                               double common_tol = 1e-8) {
    Polynomial num = s * gp.r.p1 + t * gp.q.p1;
    Polynomial den = s * gp.r.p2 + t * gp.q.p2;
    if (den.is_zero()) throw DomainError("family_eval: denominator vanishes identically");
    bool common = false;
    if (den.degree() >= 1) {
        if (num.is_zero()) {
            common = true;
        } else {
            for (const Complex& rho : roots(den)) {
                double scale = 0.0;
                double zp = 1.0;
                for (const Complex& c : num.coeffs()) {
                    scale += std::abs(c) * zp;
                    zp *= std::abs(rho);
                }
                if (std::abs(num(rho)) <= common_tol * scale) common = true;
            }
        }
    }
    return {RationalFunction(std::move(num), std::move(den)), common};
}

} // namespace cmvmisp

#endif // CMVMISP_INTERP_HPP
