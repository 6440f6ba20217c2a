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

#include "cmvmisp/poly.hpp"
#include "test_util.hpp"

namespace {

using namespace cmvmisp;
using cmvmisp::check::max_abs_diff;
using cmvmisp::check::set_distance;

const Complex I(0.0, 1.0);

TEST(Polynomial, ZeroAndCanonicalForm) {
    Polynomial zero;
    EXPECT_TRUE(zero.is_zero());
    EXPECT_EQ(zero.degree(), -1);
    EXPECT_EQ(Polynomial({1.0, 2.0, 0.0, 1e-14}).degree(), 1);
    EXPECT_TRUE(Polynomial({0.0, 0.0}).is_zero());
    EXPECT_THROW(Polynomial({Complex(std::nan(""), 0.0)}), DomainError);
}

TEST(Polynomial, AddCancels) {
    const Polynomial p = Polynomial{1.0, 1.0} + Polynomial{0.0, -1.0};
    EXPECT_EQ(p.degree(), 0);
    EXPECT_EQ(p[0], Complex(1.0));
    const Polynomial q{1.0, I, 3.0};
    EXPECT_EQ(add(q, Polynomial{}), q);
}

TEST(Polynomial, AddExpansion) {
    const double x = 0.5, y = 0.5;
    const Polynomial lhs = Polynomial{y, 0.0, 1.0} + x * Polynomial{1.0, 0.0, y};
    EXPECT_LT(max_abs_diff(lhs, {1.0, 0.0, 1.25}), 1e-15);
}

TEST(Polynomial, Multiply) {
    EXPECT_LT(max_abs_diff(mul(Polynomial{-1.0, 1.0}, Polynomial{1.0, 1.0}), {-1.0, 0.0, 1.0}), 1e-15);
    EXPECT_LT(max_abs_diff(Polynomial{-1.0, 0.0, 1.0} * Polynomial{1.0, 0.0, 1.0}, {-1.0, 0.0, 0.0, 0.0, 1.0}), 1e-15);
    EXPECT_TRUE((Polynomial{} * Polynomial{1.0, 2.0}).is_zero());
}

TEST(Polynomial, Evaluate) {
    EXPECT_EQ(evaluate(Polynomial{-1.0, 0.0, 1.0}, Complex(1.0)), Complex(0.0));
    const double b = 0.5;
    const Polynomial phi = Polynomial{-1.0, 0.0, 1.0} * Polynomial{1.0, b, 1.0};
    const Complex z(-b / 2, std::sqrt(1 - b * b / 4));
    EXPECT_LT(std::abs(phi(z)), 1e-12);
    EXPECT_EQ(Polynomial{}(Complex(3.0)), Complex(0.0));
}

TEST(Polynomial, EvaluateMatchesPowerSum) {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 50; ++t) {
        std::vector<Complex> c;
        for (int j = 0; j <= 6; ++j) c.push_back(check::random_complex(rng));
        const Polynomial p(c);
        const Complex z = check::random_complex(rng);
        Complex naive(0);
        for (int j = 0; j <= 6; ++j) naive += c[static_cast<std::size_t>(j)] * std::pow(z, j);
        EXPECT_LT(std::abs(p(z) - naive), 1e-12 * std::max(1.0, std::abs(naive)));
    }
}

TEST(Polynomial, Star) {
    const Complex a(0.3, -0.2);
    EXPECT_LT(max_abs_diff(star(Polynomial{-a, 1.0}, 1), {1.0, -std::conj(a)}), 1e-15);
    const double b = 0.7;
    EXPECT_LT(max_abs_diff(star(Polynomial{-b, 0.0, 0.0, 1.0}, 3), {1.0, 0.0, 0.0, -b}), 1e-15);
    EXPECT_EQ(star(Polynomial::constant(1.0), 0), Polynomial::constant(1.0));
    EXPECT_THROW(star(Polynomial{1.0, 1.0, 1.0}, 1), DomainError);
    // Nominal degree above the stored degree shifts the reversal.
    EXPECT_EQ(star(Polynomial{1.0}, 2), Polynomial::monomial(2));
}

TEST(Polynomial, StarProperties) {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 100; ++t) {
        const int d = 1 + t % 7;
        std::vector<Complex> c;
        for (int j = 0; j < d; ++j) c.push_back(check::random_complex(rng));
        c.push_back(1.0);
        const Polynomial p(c);
        const int k = d + t % 3;
        EXPECT_EQ(star(star(p, k), k), p);
        EXPECT_EQ(star(p, d)[0], Complex(1.0));
    }
}

TEST(Polynomial, RootsOfUnity) {
    const auto r = roots(Polynomial{-1.0, 0.0, 0.0, 0.0, 1.0});
    ASSERT_EQ(r.size(), 4u);
    EXPECT_LT(check::symmetric_set_distance(r, {1.0, I, -1.0, -I}), 1e-12);
}

TEST(Polynomial, RootsFixture) {
    const Polynomial p = Polynomial{-1.0, 0.0, 1.0} * Polynomial{1.0, 0.5, 1.0};
    const std::vector<Complex> expected{1.0, -1.0, Complex(-0.25, 0.96824583655185422), Complex(-0.25, -0.96824583655185422)};
    EXPECT_LT(check::symmetric_set_distance(roots(p), expected), 1e-12);
}

TEST(Polynomial, RootsRejectConstants) {
    EXPECT_THROW(roots(Polynomial{}), DomainError);
    EXPECT_THROW(roots(Polynomial::constant(2.0)), DomainError);
}

TEST(Polynomial, RootsRecoverConstructedRoots) {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 50; ++t) {
        std::vector<Complex> rs;
        for (int j = 0; j < 5; ++j) rs.push_back(check::random_complex(rng));
        const auto found = roots(Polynomial::from_roots(rs));
        EXPECT_LT(check::symmetric_set_distance(found, rs), 1e-9);
    }
}

TEST(Polynomial, RootsMulConsistency) {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 100; ++t) {
        const int d = 1 + t % 12;
        std::vector<Complex> c;
        for (int j = 0; j <= d; ++j) c.push_back(check::random_complex(rng));
        const Polynomial p(c);
        const auto r = roots(p);
        ASSERT_EQ(static_cast<int>(r.size()), d);
        const Polynomial rebuilt = Polynomial::from_roots(r);
        EXPECT_LT(max_abs_diff(rebuilt, (1.0 / p.leading()) * p), 1e-8 * std::max(1.0, rebuilt.max_abs()));
        for (const Complex& z : r) EXPECT_LE(std::abs(p(z)), 1e-9 * p.max_abs() * std::max(1.0, std::pow(std::abs(z), d)));
    }
}

TEST(Polynomial, DivideExact) {
    EXPECT_LT(max_abs_diff(divide_exact(Polynomial{-1.0, 0.0, 1.0}, Polynomial{-1.0, 1.0}, 1e-12).quotient, {1.0, 1.0}), 1e-15);
    EXPECT_LT(max_abs_diff(divide_exact(Polynomial{-1.0, 0.0, 0.0, 0.0, 1.0}, Polynomial{1.0, 0.0, 1.0}, 1e-12).quotient,
                           {-1.0, 0.0, 1.0}),
              1e-15);
    const auto r = divide_exact(Polynomial{-1.0, 1e-14, 1.0}, Polynomial{-1.0, 1.0}, 1e-10);
    EXPECT_LT(max_abs_diff(r.quotient, {1.0, 1.0}), 1e-13);
    EXPECT_GT(r.residual, 0.0);
}

TEST(Polynomial, DivideExactRejectsRemainder) {
    try {
        divide_exact(Polynomial{1.0, 0.0, 1.0}, Polynomial{-1.0, 1.0}, 1e-10);
        FAIL() << "expected NotDivisible";
    } catch (const NotDivisible& e) {
        EXPECT_NEAR(e.residual(), 2.0, 1e-12);
    }
    EXPECT_THROW(divide_exact(Polynomial{1.0}, Polynomial{}, 1e-10), DomainError);
}

TEST(Polynomial, RationalFunction) {
    const RationalFunction w(Polynomial{-1.0, 0.0, 1.0}, Polynomial{0.0, 1.0});
    EXPECT_LT(std::abs(w(Complex(2.0)) - 1.5), 1e-15);
    EXPECT_THROW(RationalFunction(Polynomial{1.0}, Polynomial{}), DomainError);
}

TEST(Polynomial, LongDoubleInstantiation) {
    using LP = BasicPolynomial<long double>;
    using LC = std::complex<long double>;
    const LP p{LC(-1), LC(0), LC(1)};
    const auto r = roots(p);
    ASSERT_EQ(r.size(), 2u);
    for (const auto& z : r) EXPECT_LT(std::abs(p(z)), 1e-15L);
    EXPECT_EQ(star(star(p, 3), 3), p);
}

} // namespace
