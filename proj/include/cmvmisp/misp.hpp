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

#ifndef CMVMISP_MISP_HPP
#define CMVMISP_MISP_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "cmv.hpp"
#include "interp.hpp"

namespace cmvmisp {

/*
 * Mixed inverse spectral problem: n = 2l, the first n - m - 1 Verblunsky
 * coefficients and 2m eigenvalues are known; alpha_{n-m-1}..alpha_{n-2} are
 * sought.
 */
struct MispInput {
    int n = 0;
    int m = 0;
    std::vector<Complex> known_alphas;  ///< alpha_0..alpha_{n-m-2}
    std::vector<Complex> zetas;         ///< zeta_1..zeta_{2m}

    void validate() const {
        if (n < 2 || n % 2 != 0) throw DomainError("misp: n must be even and >= 2 (sieving not supported)");
        if (m < 1 || 2 * m > n) throw DomainError("misp: need 1 <= m <= n/2");
        if (static_cast<int>(known_alphas.size()) != n - m - 1)
            throw DomainError("misp: expected n - m - 1 known coefficients");
        if (static_cast<int>(zetas.size()) != 2 * m) throw DomainError("misp: expected 2m eigenvalues");
        validate_alphas(known_alphas);
        for (std::size_t j = 0; j < zetas.size(); ++j) {
            const Complex z = zetas[j];
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(std::abs(z) - 1.0) > 1e-8)
                throw DomainError("misp: eigenvalue " + std::to_string(j) + " is not on the unit circle");
            for (std::size_t i = 0; i < j; ++i)
                if (std::abs(zetas[i] - z) <= 1e-8) throw DomainError("misp: eigenvalues must be distinct");
        }
    }
};

struct MispTolerances {
    InterpTolerances interp;
    /// |R1(0)| <= degeneracy * max|coeff r| selects the non-unique branch.
    double degeneracy = 1e-6;
    /// Every input eigenvalue must lie this close to the reassembled spectrum.
    double verify = 1e-7;
    /// Relative tolerance of Lambda~_{m+1} = z Lambda_m - Lambda_m^*.
    double closure = 1e-8;
    double weyl_denominator = 1e-12;
};

/// Raised by the pipeline stages; solve_misp turns it into an Infeasible outcome.
class InfeasibleData : public Error {
public:
    InfeasibleData(std::string stage, const std::string& reason)
        : Error(reason), stage_(std::move(stage)) {}
    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

/*
 * Values of the reciprocal Weyl function of the unknown reflected block at
 * the given eigenvalues:
 *   omega_j = zeta_j [(1 + conj(a)) D_j - (1 - |a|^2)] / D_j,
 *   D_j = 1 - a - conj(zeta_j) W(zeta_j),
 * with a = alpha_{n-m-2} and W built from alpha_0..alpha_{n-m-3}. With no
 * known coefficient at all (n = 2) the unknown block is the whole matrix and
 * omega_j = 0.
 */
inline std::vector<Complex> compute_omegas(const MispInput& input, const MispTolerances& tol = {}) {
    input.validate();
    std::vector<Complex> omegas(input.zetas.size(), Complex(0));
    if (input.known_alphas.empty()) return omegas;

    const std::size_t split = input.known_alphas.size() - 1;
    const Complex a = input.known_alphas[split];
    const WeylData weyl = weyl_from_prefix(std::span<const Complex>(input.known_alphas).first(split));
    for (std::size_t j = 0; j < input.zetas.size(); ++j) {
        const Complex z = input.zetas[j];
        const Complex d = 1.0 - a - std::conj(z) * weyl.W(z);
        if (std::abs(d) <= tol.weyl_denominator)
            throw InfeasibleData("omegas", "Weyl denominator vanishes at node " + std::to_string(j));
        omegas[j] = z * ((1.0 + std::conj(a)) * d - (1.0 - std::norm(a))) / d;
    }
    return omegas;
}

inline InterpolationProblem misp_problem(const MispInput& input, const MispTolerances& tol = {}) {
    const auto omegas = compute_omegas(input, tol);
    std::vector<ExtendedComplex> ext(omegas.begin(), omegas.end());
    return from_values(input.zetas, ext);
}

/*
 * The constrained solution Lambda = (a z + b) r + c q with Lambda1 monic of
 * degree m + 1, Lambda2 monic of degree m and Lambda1(0) = -1. In the
 * degenerate branch (R1(0) = 0) b is free; the family is parametrized by
 * t = Lambda2(0), which equals alpha_{n-m-1} for every genuine member.
 */
struct ConstrainedSolution {
    bool unique = false;
    GeneratorPair generators;
    Complex a, b, c;  ///< b is meaningful only when unique
    Complex r1_at_0;
    double r1_gate;   ///< |R1(0)| / max|coeff r|

    Complex b_for(Complex t) const {
        const Complex r2 = generators.r.p2[0];
        if (std::abs(r2) < 1e-14) throw ContractError("family parameter undefined: R2(0) = 0");
        return (t - c * generators.q.p2[0]) / r2;
    }

    std::pair<Polynomial, Polynomial> lambdas(Complex bb) const {
        const Polynomial s{bb, a};
        const Polynomial tc = Polynomial::constant(c);
        return {s * generators.r.p1 + tc * generators.q.p1, s * generators.r.p2 + tc * generators.q.p2};
    }

    std::pair<Polynomial, Polynomial> member(Complex t) const { return lambdas(b_for(t)); }

    /// Least-squares b for a given Lambda_m, then t = Lambda2(0) of that member.
    Complex fit_parameter(const Polynomial& lambda_m) const {
        const Polynomial rest = lambda_m - (Polynomial{Complex(0), a} * generators.r.p2 + c * generators.q.p2);
        const Polynomial& r2 = generators.r.p2;
        const int len = std::max(rest.degree(), r2.degree()) + 1;
        Complex num(0);
        double den = 0.0;
        for (int k = 0; k < len; ++k) {
            num += std::conj(r2[k]) * rest[k];
            den += std::norm(r2[k]);
        }
        const Complex bb = num / den;
        return bb * r2[0] + c * generators.q.p2[0];
    }
};

inline ConstrainedSolution solve_constrained(const InterpolationProblem& problem, int m,
                                             const MispTolerances& tol = {}) {
    ConstrainedSolution sol;
    try {
        sol.generators = compute_generators(problem, tol.interp);
    } catch (const Error& e) {
        throw InfeasibleData("generators", e.what());
    }
    const auto& gp = sol.generators;
    if (gp.h_min != 2 * m - 1 && gp.h_min != 2 * m)
        throw InfeasibleData("generators", "inconsistent spectral data: minimal height " + std::to_string(gp.h_min) +
                                               " outside {2m-1, 2m}");
    const auto& r = gp.r;
    const auto& q = gp.q;
    sol.r1_at_0 = r.p1[0];
    sol.r1_gate = std::abs(sol.r1_at_0) / r.max_abs();

    // Unknowns (a, b, c); rows: [z^{m+1}] Lambda1 = 1, [z^m] Lambda2 = 1, Lambda1(0) = -1.
    Eigen::Matrix3cd sys;
    sys << r.p1[m], r.p1[m + 1], q.p1[m + 1],
           r.p2[m - 1], r.p2[m], q.p2[m],
           Complex(0), r.p1[0], q.p1[0];
    const Eigen::Vector3cd rhs(1.0, 1.0, -1.0);

    if (sol.r1_gate > tol.degeneracy) {
        const Eigen::Vector3cd x = sys.fullPivLu().solve(rhs);
        if ((sys * x - rhs).cwiseAbs().maxCoeff() > 1e-8)
            throw InfeasibleData("constrained", "constraint system is singular");
        sol.unique = true;
        sol.a = x(0);
        sol.b = x(1);
        sol.c = x(2);
        return sol;
    }

    Eigen::Matrix2cd top;
    top << sys(0, 0), sys(0, 2), sys(1, 0), sys(1, 2);
    const Eigen::Vector2cd ac = top.fullPivLu().solve(Eigen::Vector2cd(1.0, 1.0));
    if ((top * ac - Eigen::Vector2cd(1.0, 1.0)).cwiseAbs().maxCoeff() > 1e-8)
        throw InfeasibleData("constrained", "monicity constraints are singular");
    sol.a = ac(0);
    sol.c = ac(1);
    sol.b = Complex(std::numeric_limits<double>::quiet_NaN(), 0.0);
    if (std::abs(sol.c * q.p1[0] + 1.0) > tol.degeneracy * std::max(1.0, std::abs(sol.c) * q.max_abs()))
        throw InfeasibleData("constrained", "no Schur completion: free-term constraint is inconsistent");
    return sol;
}

/*
 * alpha_{n-m-1}..alpha_{n-2} from (Lambda~_{m+1}, Lambda_m): inverse Szego on
 * Lambda_m gives lambda_0..lambda_{m-1}, and alpha_{n-2-k} = -conj(lambda_k).
 */
inline std::vector<Complex> recover_alphas(const Polynomial& lambda1, const Polynomial& lambda2, const MispInput& input,
                                           const MispTolerances& tol = {}) {
    const int m = input.m;
    if (lambda2.degree() != m || !lambda2.is_monic(1e-8))
        throw InfeasibleData("recover", "Lambda_m is not monic of degree m");
    const double closure = norm_inf(lambda1 - close_with_unit_beta(lambda2, m));
    if (closure > tol.closure * std::max(1.0, norm_inf(lambda1)))
        throw InfeasibleData("recover", "beta=1 closing relation violated (residual " + std::to_string(closure) + ")");
    SzegoInverse inv;
    try {
        inv = szego_inverse(lambda2, m);
    } catch (const DomainError&) {
        throw InfeasibleData("recover", "reconstructed polynomial not Schur");
    } catch (const NumericalFailure& e) {
        throw InfeasibleData("recover", e.what());
    }
    std::vector<Complex> out(static_cast<std::size_t>(m));
    // lambda_k maps to alpha_{n-2-k}; out[i] holds alpha_{n-m-1+i}.
    for (int k = 0; k < m; ++k) out[static_cast<std::size_t>(m - 1 - k)] = -std::conj(inv.alphas[static_cast<std::size_t>(k)]);
    return out;
}

/// max_j distance from an input eigenvalue to the spectrum of the completed matrix.
inline double spectral_mismatch(const MispInput& input, std::span<const Complex> recovered) {
    VerblunskyParams full;
    full.alphas = input.known_alphas;
    full.alphas.insert(full.alphas.end(), recovered.begin(), recovered.end());
    const auto sigma = spectrum(full);
    double worst = 0.0;
    for (const Complex& z : input.zetas) {
        double best = std::numeric_limits<double>::infinity();
        for (const Complex& s : sigma) best = std::min(best, std::abs(z - s));
        worst = std::max(worst, best);
    }
    return worst;
}

struct MispDiagnostics {
    std::vector<Complex> omegas;
    std::optional<int> h_min;
    std::optional<int> h_second;
    std::optional<Complex> r1_at_0;
    std::optional<double> r1_gate;
    std::optional<double> residual_r;
    std::optional<double> residual_q;
    std::optional<double> spectral_mismatch;
};

struct UniqueSolution {
    std::vector<Complex> alphas;  ///< alpha_{n-m-1}..alpha_{n-2}
};

struct FamilySample {
    Complex t;  ///< free parameter, the candidate alpha_{n-m-1}
    bool valid = false;
    std::vector<Complex> alphas;
    std::string note;
};

struct FamilySolution {
    ConstrainedSolution constrained;
    std::string free_parameter;
    std::vector<FamilySample> samples;

    std::optional<FamilySample> first_valid() const {
        for (const auto& s : samples)
            if (s.valid) return s;
        return std::nullopt;
    }
};

struct Infeasibility {
    std::string stage;
    std::string reason;
};

struct MispOutcome {
    std::variant<UniqueSolution, FamilySolution, Infeasibility> result;
    MispDiagnostics diagnostics;

    bool is_unique() const noexcept { return std::holds_alternative<UniqueSolution>(result); }
    bool is_family() const noexcept { return std::holds_alternative<FamilySolution>(result); }
    bool is_infeasible() const noexcept { return std::holds_alternative<Infeasibility>(result); }

    std::string tag() const {
        if (is_unique()) return "unique";
        if (is_family()) return "family";
        return "infeasible";
    }
};

/// 39 real points in (-0.95, 0.95) followed by the 8 x 8 complex grid points of modulus < 0.95.
inline std::vector<Complex> family_sample_grid() {
    std::vector<Complex> grid;
    for (int i = 1; i <= 39; ++i) grid.emplace_back(-0.95 + 0.0475 * i, 0.0);
    for (int i = 0; i < 8; ++i)
        for (int k = 0; k < 8; ++k) {
            const Complex t(-0.95 + (2 * i + 1) * 0.95 / 8.0, -0.95 + (2 * k + 1) * 0.95 / 8.0);
            if (std::abs(t) < 0.95) grid.push_back(t);
        }
    return grid;
}

/// Completes one family member; valid when it is Schur, closes with beta = 1 and reproduces the eigenvalues.
inline FamilySample evaluate_family_member(const ConstrainedSolution& sol, const MispInput& input, Complex t,
                                           const MispTolerances& tol = {}) {
    FamilySample s{t, false, {}, {}};
    try {
        const auto [l1, l2] = sol.member(t);
        auto alphas = recover_alphas(l1, l2, input, tol);
        const double mismatch = spectral_mismatch(input, alphas);
        if (mismatch > tol.verify) {
            s.note = "eigenvalues not reproduced";
            return s;
        }
        s.valid = true;
        s.alphas = std::move(alphas);
    } catch (const Error& e) {
        s.note = e.what();
    }
    return s;
}

inline MispOutcome solve_misp(const MispInput& input, const MispTolerances& tol = {}) {
    input.validate();
    MispOutcome out{Infeasibility{}, {}};
    auto& diag = out.diagnostics;
    try {
        diag.omegas = compute_omegas(input, tol);
        std::vector<ExtendedComplex> ext(diag.omegas.begin(), diag.omegas.end());
        const InterpolationProblem problem = from_values(input.zetas, ext);
        const ConstrainedSolution sol = solve_constrained(problem, input.m, tol);
        diag.h_min = sol.generators.h_min;
        diag.h_second = sol.generators.h_second;
        diag.r1_at_0 = sol.r1_at_0;
        diag.r1_gate = sol.r1_gate;
        diag.residual_r = residual(problem, sol.generators.r);
        diag.residual_q = residual(problem, sol.generators.q);

        if (!sol.unique) {
            FamilySolution fam{sol,
                               "t = alpha_{n-m-1} = Lambda_m(0); Lambda = (a z + b(t)) r + c q with b(t) = (t - c Q2(0)) / R2(0)",
                               {}};
            for (const Complex t : family_sample_grid()) fam.samples.push_back(evaluate_family_member(sol, input, t, tol));
            out.result = std::move(fam);
            return out;
        }

        const auto [l1, l2] = sol.lambdas(sol.b);
        auto alphas = recover_alphas(l1, l2, input, tol);
        diag.spectral_mismatch = spectral_mismatch(input, alphas);
        if (*diag.spectral_mismatch > tol.verify)
            throw InfeasibleData("verify", "input eigenvalues are not in the spectrum of the completed matrix");
        out.result = UniqueSolution{std::move(alphas)};
    } catch (const InfeasibleData& e) {
        out.result = Infeasibility{e.stage(), e.what()};
    } catch (const NumericalFailure& e) {
        out.result = Infeasibility{"numerics", e.what()};
    }
    return out;
}

struct SubsetOutcome {
    std::vector<std::size_t> indices;  ///< positions in the supplied eigenvalue list
    std::string tag;
};

/// Runs solve_misp on every 2m-subset of the supplied eigenvalues; intended for small n.
inline std::vector<SubsetOutcome> scan_subsets(int n, int m, const std::vector<Complex>& known,
                                               const std::vector<Complex>& eigenvalues,
                                               const MispTolerances& tol = {}) {
    if (n > 12) throw DomainError("scan_subsets: n > 12 is not supported");
    const std::size_t k = static_cast<std::size_t>(2 * m);
    if (eigenvalues.size() < k) throw DomainError("scan_subsets: fewer than 2m eigenvalues");
    std::vector<SubsetOutcome> out;
    std::vector<bool> mask(eigenvalues.size(), false);
    std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(k), true);
    do {
        SubsetOutcome s;
        MispInput in{n, m, known, {}};
        for (std::size_t i = 0; i < mask.size(); ++i)
            if (mask[i]) {
                s.indices.push_back(i);
                in.zetas.push_back(eigenvalues[i]);
            }
        s.tag = solve_misp(in, tol).tag();
        out.push_back(std::move(s));
    } while (std::prev_permutation(mask.begin(), mask.end()));
    return out;
}

/// (Lambda~_{m+1}, Lambda_m) of the reflected matrix: the pair the MISP reconstructs.
inline std::pair<Polynomial, Polynomial> reflected_weyl_pair(const VerblunskyParams& params, int m) {
    const VerblunskyParams r = reflect(params);
    const WeylData w = weyl_from_prefix(std::span<const Complex>(r.alphas).first(static_cast<std::size_t>(m)));
    return {w.W.numerator, w.W.denominator};
}

struct RoundtripRow {
    int trial;
    std::string subset;  ///< "leading" or "random"
    std::string outcome;
    bool gate_passed;
    double max_error;    ///< NaN unless unique
    double r1_at_0_modulus;  ///< NaN when generators were not reached
};

struct RoundtripReport {
    int n = 0, m = 0, trials = 0;
    std::uint64_t seed = 0;
    int unique = 0, family = 0, infeasible = 0;
    int gate_passed = 0;
    int gate_passed_recovered = 0;  ///< gate passed and error within 1e-6
    double max_unique_error = 0.0;
    double min_r1_at_0 = std::numeric_limits<double>::infinity();
    double min_r1_gate = std::numeric_limits<double>::infinity();
    std::vector<RoundtripRow> rows;

    int runs() const noexcept { return static_cast<int>(rows.size()); }
    double unique_rate() const noexcept { return rows.empty() ? 0.0 : double(unique) / double(rows.size()); }
    double gate_rate() const noexcept { return rows.empty() ? 0.0 : double(gate_passed) / double(rows.size()); }
};

/// Per-trial generator seeded from (seed, trial) so the report is schedule independent.
inline std::mt19937_64 trial_rng(std::uint64_t seed, int trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial)};
    return std::mt19937_64(seq);
}

/// alpha uniform in the disk of the given radius.
inline Complex random_disk_point(std::mt19937_64& rng, double radius) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double rad = radius * std::sqrt(u(rng));
    const double ang = 2.0 * std::numbers::pi * u(rng);
    return std::polar(rad, ang);
}

/*
 * Draws random Verblunsky coefficients with |alpha| <= 0.8, hands the first
 * n - m - 1 of them plus 2m eigenvalues to solve_misp, and tallies outcomes.
 * Each trial runs twice: with the leading 2m eigenvalues (by argument) and
 * with a random 2m-subset.
 */
inline RoundtripReport roundtrip_experiment(int n, int m, std::uint64_t seed, int trials,
                                            const MispTolerances& tol = {}) {
    if (n < 2 || n % 2 != 0) throw DomainError("roundtrip: n must be even");
    if (m < 1 || 2 * m > n) throw DomainError("roundtrip: need 1 <= m <= n/2");
    if (trials < 0) throw DomainError("roundtrip: negative trial count");

    RoundtripReport rep;
    rep.n = n;
    rep.m = m;
    rep.trials = trials;
    rep.seed = seed;
    for (int trial = 0; trial < trials; ++trial) {
        auto rng = trial_rng(seed, trial);
        VerblunskyParams params;
        for (int j = 0; j < n - 1; ++j) params.alphas.push_back(random_disk_point(rng, 0.8));
        const auto sigma = spectrum(params);

        std::vector<std::size_t> order(sigma.size());
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        std::vector<std::size_t> random_pick(order.begin(), order.begin() + 2 * m);
        std::sort(random_pick.begin(), random_pick.end());

        for (const char* subset : {"leading", "random"}) {
            MispInput input{n, m, {params.alphas.begin(), params.alphas.begin() + (n - m - 1)}, {}};
            for (int j = 0; j < 2 * m; ++j)
                input.zetas.push_back(subset[0] == 'l' ? sigma[static_cast<std::size_t>(j)]
                                                       : sigma[random_pick[static_cast<std::size_t>(j)]]);

            const MispOutcome out = solve_misp(input, tol);
            RoundtripRow row{trial, subset, out.tag(), false, std::numeric_limits<double>::quiet_NaN(),
                             std::numeric_limits<double>::quiet_NaN()};
            if (out.diagnostics.r1_at_0) {
                row.r1_at_0_modulus = std::abs(*out.diagnostics.r1_at_0);
                row.gate_passed = *out.diagnostics.r1_gate > tol.degeneracy;
                rep.min_r1_at_0 = std::min(rep.min_r1_at_0, row.r1_at_0_modulus);
                rep.min_r1_gate = std::min(rep.min_r1_gate, *out.diagnostics.r1_gate);
            }
            if (const auto* u = std::get_if<UniqueSolution>(&out.result)) {
                double err = 0.0;
                for (int k = 0; k < m; ++k)
                    err = std::max(err, std::abs(u->alphas[static_cast<std::size_t>(k)] -
                                                 params.alphas[static_cast<std::size_t>(n - m - 1 + k)]));
                row.max_error = err;
                rep.max_unique_error = std::max(rep.max_unique_error, err);
                ++rep.unique;
                if (row.gate_passed && err <= 1e-6) ++rep.gate_passed_recovered;
            } else if (out.is_family()) {
                ++rep.family;
            } else {
                ++rep.infeasible;
            }
            if (row.gate_passed) ++rep.gate_passed;
            rep.rows.push_back(std::move(row));
        }
    }
    return rep;
}

} // namespace cmvmisp

#endif // CMVMISP_MISP_HPP
