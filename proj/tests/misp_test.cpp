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

#include <gtest/gtest.h>

#include <random>

#include "cmvmisp/misp.hpp"
#include "test_util.hpp"

namespace {

using namespace cmvmisp;
using check::max_abs_diff;

const Complex I(0.0, 1.0);

MispInput pm_one_input() { return MispInput{4, 1, {0.0, 0.0}, {1.0, -1.0}}; }

MispInput full_spectrum_input(double x, double y) {
    return MispInput{4, 2, {0.0}, spectrum(VerblunskyParams{{0.0, -y, -x}})};
}

MispInput forward_input(const VerblunskyParams& p, int m, const std::vector<Complex>& zetas) {
    const int n = p.n();
    return MispInput{n, m, {p.alphas.begin(), p.alphas.begin() + (n - m - 1)}, zetas};
}

TEST(MispInput, Validation) {
    EXPECT_NO_THROW(pm_one_input().validate());
    EXPECT_THROW((MispInput{5, 1, {0.0, 0.0, 0.0}, {1.0, -1.0}}.validate()), DomainError);
    EXPECT_THROW((MispInput{4, 3, {}, {1.0, -1.0, I, -I, 0.6 + 0.8 * I, 0.6 - 0.8 * I}}.validate()), DomainError);
    EXPECT_THROW((MispInput{4, 1, {0.0}, {1.0, -1.0}}.validate()), DomainError);
    EXPECT_THROW((MispInput{4, 1, {0.0, 0.0}, {1.0, 0.5}}.validate()), DomainError);
    EXPECT_THROW((MispInput{4, 1, {0.0, 0.0}, {1.0, 1.0}}.validate()), DomainError);
    EXPECT_THROW((MispInput{4, 1, {0.0, 1.2}, {1.0, -1.0}}.validate()), DomainError);
}

TEST(Omegas, PmOne) {
    const auto w = compute_omegas(pm_one_input());
    EXPECT_LT(std::abs(w[0]), 1e-14);
    EXPECT_LT(std::abs(w[1]), 1e-14);
}

TEST(Omegas, FullSpectrum) {
    const auto in = full_spectrum_input(0.3, 0.4);
    const auto w = compute_omegas(in);
    for (std::size_t j = 0; j < 4; ++j) {
        const Complex z = in.zetas[j];
        EXPECT_LT(std::abs(w[j] - z * (1.0 - z)), 1e-12);
        if (std::abs(z - 1.0) < 1e-9) EXPECT_LT(std::abs(w[j]), 1e-12);
        if (std::abs(z + 1.0) < 1e-9) EXPECT_LT(std::abs(w[j] + 2.0), 1e-12);
    }
}

TEST(Omegas, ZeroWhereWeylVanishes) {
    // alpha_{n-m-2} = 0 and W(1) = 0 for the empty prefix (W = z - 1).
    const auto w = compute_omegas(MispInput{4, 2, {0.0}, {1.0, I, -1.0, -I}});
    EXPECT_LT(std::abs(w[0]), 1e-15);
}

TEST(Omegas, NoKnownCoefficients) {
    const auto w = compute_omegas(MispInput{2, 1, {}, {1.0, -1.0}});
    EXPECT_EQ(w, (std::vector<Complex>{0.0, 0.0}));
}

TEST(Omegas, MidpointIdentity) {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 100; ++t) {
        const int n = 2 * (2 + t % 4);
        const int m = 1 + t % (n / 2);
        const auto p = check::random_params(rng, n, 0.8);
        const auto [l1, l2] = reflected_weyl_pair(p, m);
        const auto phis = szego_polynomials(std::span<const Complex>(p.alphas).first(static_cast<std::size_t>(n - m - 1)));
        const int k = n - m - 2;
        const Polynomial& phi = phis[static_cast<std::size_t>(k)];
        const Polynomial tilde = close_with_unit_beta(phi, k);
        const Complex a = p.alphas[static_cast<std::size_t>(k)];
        for (const Complex& z : spectrum(p)) {
            const Complex lhs = l1(z) / star(l2, m)(z);
            const Complex rhs = -1.0 - a + (1.0 - std::norm(a)) / (tilde(z) / star(phi, k)(z) + 1.0 - std::conj(a));
            EXPECT_LT(std::abs(lhs - rhs), 1e-8);
            const RationalFunction wr(l1, l2);
            EXPECT_LT(std::abs(lhs + z * std::conj(wr(z))), 1e-8);
        }
    }
}

TEST(Omegas, TruePairInterpolates) {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 100; ++t) {
        const int n = 2 * (2 + t % 4);
        const int m = 1 + t % (n / 2);
        const auto p = check::random_params(rng, n, 0.8);
        const auto s = spectrum(p);
        const auto in = forward_input(p, m, {s.begin(), s.begin() + 2 * m});
        const auto [l1, l2] = reflected_weyl_pair(p, m);
        const VectorPolynomial lambda{l1, l2};
        EXPECT_EQ(height(lambda), 2 * m + 2);
        EXPECT_LE(residual(misp_problem(in), lambda), 1e-8);
    }
}

TEST(Constrained, HeightWindow) {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 200; ++t) {
        const int n = 2 * (1 + t % 5);
        const int m = 1 + t % (n / 2);
        const auto p = check::random_params(rng, n, 0.8);
        const auto s = spectrum(p);
        const auto in = forward_input(p, m, {s.begin(), s.begin() + 2 * m});
        const auto gp = compute_generators(misp_problem(in));
        EXPECT_TRUE(gp.h_min == 2 * m - 1 || gp.h_min == 2 * m) << "h_min " << gp.h_min << " m " << m;
    }
}

TEST(Constrained, PmOneIsDegenerate) {
    const auto sol = solve_constrained(misp_problem(pm_one_input()), 1);
    EXPECT_FALSE(sol.unique);
    EXPECT_EQ(sol.generators.h_min, 1);
    EXPECT_LT(sol.r1_gate, 1e-6);
    for (double b : {-0.5, 0.3, 0.9}) {
        const auto [l1, l2] = sol.member(b);
        EXPECT_LT(max_abs_diff(l1, {-1.0, 0.0, 1.0}), 1e-12);
        EXPECT_LT(max_abs_diff(l2, {b, 1.0}), 1e-12);
        EXPECT_LT(std::abs(sol.fit_parameter(Polynomial{b, 1.0}) - b), 1e-12);
    }
}

TEST(Constrained, InconsistentDataIsInfeasible) {
    // Two nodes with the same finite value force r = (1, ...) shapes outside the window for m = 1.
    const std::vector<Complex> zs{1.0, I};
    const std::vector<ExtendedComplex> w{std::nullopt, std::nullopt};
    EXPECT_THROW(solve_constrained(from_values(zs, w), 1), InfeasibleData);
}

TEST(RecoverAlphas, Fixtures) {
    const auto in1 = pm_one_input();
    const double b = 0.6;
    const Polynomial l2{b, 1.0};
    const auto a = recover_alphas(close_with_unit_beta(l2, 1), l2, in1);
    ASSERT_EQ(a.size(), 1u);
    EXPECT_LT(std::abs(a[0] - b), 1e-14);

    const double x = 0.3, y = 0.4;
    const Polynomial l22{-y, x * y - x, 1.0};
    const auto in2 = full_spectrum_input(x, y);
    const auto a2 = recover_alphas(close_with_unit_beta(l22, 2), l22, in2);
    ASSERT_EQ(a2.size(), 2u);
    EXPECT_LT(std::abs(a2[0] + y), 1e-14);
    EXPECT_LT(std::abs(a2[1] + x), 1e-14);

    const auto zero = recover_alphas(close_with_unit_beta(Polynomial::monomial(2), 2), Polynomial::monomial(2), in2);
    EXPECT_EQ(zero, (std::vector<Complex>{0.0, 0.0}));
}

TEST(RecoverAlphas, Errors) {
    const auto in = pm_one_input();
    const Polynomial bad{1.5, 1.0};
    EXPECT_THROW(recover_alphas(close_with_unit_beta(bad, 1), bad, in), InfeasibleData);
    const Polynomial ok{0.2, 1.0};
    EXPECT_THROW(recover_alphas(Polynomial{-1.0, 0.5, 1.0}, ok, in), InfeasibleData);
}

TEST(SolveMisp, PmOneFamily) {
    const auto out = solve_misp(pm_one_input());
    ASSERT_TRUE(out.is_family());
    EXPECT_EQ(out.tag(), "family");
    const auto& fam = std::get<FamilySolution>(out.result);
    EXPECT_EQ(*out.diagnostics.h_min, 1);
    EXPECT_EQ(*out.diagnostics.h_second, 4);
    int valid_real = 0;
    for (const auto& s : fam.samples) {
        if (s.t.imag() == 0.0) {
            EXPECT_TRUE(s.valid) << s.t;
            ++valid_real;
            EXPECT_LT(std::abs(s.alphas[0] - s.t), 1e-12);
        } else {
            EXPECT_FALSE(s.valid);
        }
    }
    EXPECT_EQ(valid_real, 39);
    ASSERT_TRUE(fam.first_valid().has_value());
}

TEST(SolveMisp, FullSpectrumFamilyKeepsInvariant) {
    const double x = 0.3, y = 0.4;
    const auto out = solve_misp(full_spectrum_input(x, y));
    ASSERT_TRUE(out.is_family());
    const auto& fam = std::get<FamilySolution>(out.result);
    const double k = x * y - x;
    int valid = 0;
    for (const auto& s : fam.samples) {
        if (!s.valid) continue;
        ++valid;
        const Complex xs = -s.alphas[1], ys = -s.alphas[0];
        EXPECT_LT(std::abs(xs * ys - xs - k), 1e-7);
    }
    EXPECT_GT(valid, 0);
    // The forward model sits at t = alpha_1 = -y.
    const auto& c = fam.constrained;
    EXPECT_LT(std::abs(c.fit_parameter(Polynomial{-y, k, 1.0}) + y), 1e-9);
    const auto member = evaluate_family_member(c, full_spectrum_input(x, y), -y);
    ASSERT_TRUE(member.valid) << member.note;
    EXPECT_LT(std::abs(member.alphas[0] + y), 1e-9);
    EXPECT_LT(std::abs(member.alphas[1] + x), 1e-9);
}

TEST(SolveMisp, UniqueFromLastOnlyMatrix) {
    const double b = 0.5;
    const auto s = spectrum(VerblunskyParams{{0.0, 0.0, b}});
    const Complex z3(-0.25, 0.96824583655185422);
    const MispInput in{4, 1, {0.0, 0.0}, {1.0, z3}};
    const auto out = solve_misp(in);
    ASSERT_TRUE(out.is_unique());
    EXPECT_LT(std::abs(std::get<UniqueSolution>(out.result).alphas[0] - b), 1e-8);
    const auto [l1, l2] = reflected_weyl_pair(VerblunskyParams{{0.0, 0.0, b}}, 1);
    const auto sol = solve_constrained(misp_problem(in), 1);
    const auto [m1, m2] = sol.lambdas(sol.b);
    EXPECT_LT(max_abs_diff(m1, l1), 1e-8);
    EXPECT_LT(max_abs_diff(m2, l2), 1e-8);
    EXPECT_LT(check::set_distance(in.zetas, s), 1e-12);
}

TEST(SolveMisp, TwoByTwoWithRealAlphaIsFamily) {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 20; ++t) {
        const double a0 = std::uniform_real_distribution<double>(-0.9, 0.9)(rng);
        const auto s = spectrum(VerblunskyParams{{a0}});
        EXPECT_LT(check::symmetric_set_distance(s, {1.0, -1.0}), 1e-12);
        EXPECT_TRUE(solve_misp(MispInput{2, 1, {}, s}).is_family());
    }
}

TEST(SolveMisp, InfeasibleIsReported) {
    // Eigenvalues that no completion of the known block can carry: the 2m-subset of z^4 + 1 roots
    // paired with a prefix whose Weyl data rules them out.
    const MispInput in{4, 1, {0.5, -0.5}, {std::polar(1.0, 0.1), std::polar(1.0, 0.2)}};
    const auto out = solve_misp(in);
    ASSERT_TRUE(out.is_infeasible()) << out.tag();
    const auto& inf = std::get<Infeasibility>(out.result);
    EXPECT_FALSE(inf.stage.empty());
    EXPECT_FALSE(inf.reason.empty());
}

TEST(SolveMisp, UniqueGateSoundness) {
    std::mt19937_64 rng(5);
    int unique = 0;
    for (int t = 0; t < 200; ++t) {
        const int n = 2 * (2 + t % 4);
        const int m = 1 + t % 2;
        const auto p = check::random_params(rng, n, 0.8);
        const auto s = spectrum(p);
        const auto in = forward_input(p, m, {s.begin(), s.begin() + 2 * m});
        const auto out = solve_misp(in);
        if (!out.diagnostics.r1_gate || *out.diagnostics.r1_gate <= 1e-6) continue;
        ASSERT_TRUE(out.is_unique()) << out.tag();
        ++unique;
        const auto& a = std::get<UniqueSolution>(out.result).alphas;
        for (int k = 0; k < m; ++k)
            EXPECT_LT(std::abs(a[static_cast<std::size_t>(k)] - p.alphas[static_cast<std::size_t>(n - m - 1 + k)]), 1e-6);
        for (const Complex& al : a) EXPECT_LT(std::abs(al), 1.0);
        EXPECT_LE(*out.diagnostics.spectral_mismatch, 1e-7);
    }
    EXPECT_GT(unique, 100);
}

TEST(SolveMisp, FamilyContainsForwardModel) {
    std::mt19937_64 rng(6);
    for (int t = 0; t < 30; ++t) {
        const int n = 2 * (2 + t % 3);
        const int m = n / 2;
        const auto p = check::random_params(rng, n, 0.8);
        const auto in = forward_input(p, m, spectrum(p));
        const auto out = solve_misp(in);
        ASSERT_TRUE(out.is_family()) << out.tag();
        const auto& c = std::get<FamilySolution>(out.result).constrained;
        const auto [l1, l2] = reflected_weyl_pair(p, m);
        const Complex t0 = c.fit_parameter(l2);
        EXPECT_LT(std::abs(t0 - p.alphas[static_cast<std::size_t>(n - m - 1)]), 1e-8);
        const auto member = evaluate_family_member(c, in, t0);
        ASSERT_TRUE(member.valid) << member.note;
        for (int k = 0; k < m; ++k)
            EXPECT_LT(std::abs(member.alphas[static_cast<std::size_t>(k)] - p.alphas[static_cast<std::size_t>(n - m - 1 + k)]),
                      1e-7);
    }
}

TEST(ScanSubsets, CountsAllSubsets) {
    const auto s = spectrum(VerblunskyParams{{0.0, 0.0, 0.5}});
    const auto scan = scan_subsets(4, 1, {0.0, 0.0}, s);
    ASSERT_EQ(scan.size(), 6u);
    int unique = 0;
    for (const auto& r : scan) {
        const bool pm1 = std::abs(s[r.indices[0]] + s[r.indices[1]]) < 1e-9 && std::abs(s[r.indices[0]].imag()) < 1e-9;
        if (pm1) EXPECT_EQ(r.tag, "family");
        unique += r.tag == "unique";
    }
    EXPECT_GE(unique, 4);
}

TEST(Roundtrip, DeterministicAndSelfConsistent) {
    const auto a = roundtrip_experiment(4, 1, 0, 50);
    const auto b = roundtrip_experiment(4, 1, 0, 50);
    ASSERT_EQ(a.rows.size(), 100u);
    EXPECT_EQ(a.unique + a.family + a.infeasible, a.runs());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        EXPECT_EQ(a.rows[i].outcome, b.rows[i].outcome);
        EXPECT_EQ(std::isnan(a.rows[i].max_error), std::isnan(b.rows[i].max_error));
        if (!std::isnan(a.rows[i].max_error)) EXPECT_EQ(a.rows[i].max_error, b.rows[i].max_error);
    }
    EXPECT_LE(a.max_unique_error, 1e-6);
    EXPECT_EQ(a.gate_passed, a.gate_passed_recovered);
}

TEST(Roundtrip, EmptyAndInvalid) {
    const auto r = roundtrip_experiment(6, 2, 3, 0);
    EXPECT_EQ(r.runs(), 0);
    EXPECT_EQ(r.unique_rate(), 0.0);
    EXPECT_THROW(roundtrip_experiment(5, 1, 0, 1), DomainError);
    EXPECT_THROW(roundtrip_experiment(4, 3, 0, 1), DomainError);
}

TEST(Roundtrip, TwoByTwoRealIsFamily) {
    // Phi~_2 = z^2 + (alpha_0 - conj(alpha_0)) z - 1 does not see Re alpha_0.
    const VerblunskyParams p{{0.37}};
    const auto s = spectrum(p);
    EXPECT_LT(check::max_abs_diff(szego_forward(p).phi_tilde, {-1.0, 0.0, 1.0}), 1e-15);
    EXPECT_TRUE(solve_misp(MispInput{2, 1, {}, s}).is_family());
}

} // namespace
