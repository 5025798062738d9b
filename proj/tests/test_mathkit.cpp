// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>

#include "mimome/errors.hpp"
#include "mimome/mathkit.hpp"
#include "oracles.hpp"

namespace mimome::math {
namespace {

TEST(StdNormalPdf, ClosedFormAndTails)
{
    EXPECT_NEAR(std_normal_pdf(0.0), 1.0 / std::sqrt(2.0 * M_PI), 1e-15);
    EXPECT_NEAR(std_normal_pdf(0.0), 0.398942, 1e-6);
    EXPECT_EQ(std_normal_pdf(1.3), std_normal_pdf(-1.3));

    const double far = std_normal_pdf(40.0);
    EXPECT_FALSE(std::isnan(far));
    EXPECT_LT(far, 1e-300);
}

TEST(QFunction, MatchesQuadrature)
{
    EXPECT_DOUBLE_EQ(q_function(0.0), 0.5);

    const double x = 1.6449;
    const double tail = oracle::integrate(std_normal_pdf, x, x + 40.0);
    EXPECT_NEAR(q_function(x), tail, 1e-10);
    EXPECT_NEAR(q_function(x), 0.0500, 1e-4);
}

TEST(QFunction, BelowMillsRatioBound)
{
    for (double x = 0.01; x <= 30.0; x += 0.01)
        ASSERT_LT(q_function(x), std_normal_pdf(x) / x) << "x=" << x;
}

TEST(ChiSquarePdf, SpecialCases)
{
    for (double x : {0.0, 0.3, 1.0, 7.5})
        EXPECT_NEAR(chi_square_pdf(x, 1), std::exp(-x), 1e-15);
    EXPECT_NEAR(chi_square_pdf(1.0, 2), 0.36788, 1e-5);
    EXPECT_EQ(chi_square_pdf(-0.5, 3), 0.0);
    EXPECT_EQ(chi_square_pdf(0.0, 4), 0.0);
    // Factorial route would overflow long before n = 400.
    EXPECT_TRUE(std::isfinite(chi_square_pdf(400.0, 400)));
    EXPECT_THROW(chi_square_pdf(1.0, 0), DomainError);
}

TEST(ChiSquarePdf, IntegratesToOne)
{
    for (int n : {1, 2, 3, 4, 8, 16, 32}) {
        const double mass = oracle::integrate([n](double x) { return chi_square_pdf(x, n); }, 0.0,
                                              40.0 + 10.0 * n, 1e-13);
        EXPECT_NEAR(mass, 1.0, 1e-8) << "n=" << n;
    }
}

TEST(UpperTail, ClosedForms)
{
    for (int n : {1, 2, 5, 100})
        EXPECT_EQ(upper_tail(0.0, n), 1.0);
    for (double u : {0.1, 1.0, 3.7, 20.0})
        EXPECT_NEAR(upper_tail(u, 1), std::exp(-u), 1e-15);

    const double half = oracle::bisect([](double u) { return (1.0 + u) * std::exp(-u) - 0.5; }, 0.0, 10.0);
    EXPECT_NEAR(half, 1.6783, 1e-4);
    EXPECT_NEAR(upper_tail(1.6783, 2), 0.5, 5e-4);
    EXPECT_NEAR(upper_tail(half, 2), 0.5, 1e-14);
}

TEST(UpperTail, MatchesQuadratureOfDensity)
{
    for (int n : {1, 2, 3, 6}) {
        for (double u : {0.5, 2.0, 5.0}) {
            const double tail = oracle::integrate([n](double x) { return chi_square_pdf(x, n); }, u,
                                                  u + 60.0 + 10.0 * n, 1e-13);
            EXPECT_NEAR(upper_tail(u, n), tail, 1e-9) << "n=" << n << " u=" << u;
        }
    }
}

TEST(UpperTail, BoundedAndStrictlyDecreasing)
{
    for (int n : {1, 2, 3, 8, 64, 512, 700}) {
        double previous = 1.0;
        for (double u = 0.05; u < 2.0 * n + 40.0; u += 0.05) {
            const double t = upper_tail(u, n);
            ASSERT_GE(t, 0.0);
            ASSERT_LE(t, 1.0);
            ASSERT_LE(t, previous) << "n=" << n << " u=" << u;
            // Strictness is only observable away from the ends of [0, 1] in doubles.
            if (previous > 1e-300 && previous < 1.0 - 1e-12)
                ASSERT_LT(t, previous) << "n=" << n << " u=" << u;
            previous = t;
        }
    }
}

TEST(SolveMonotoneRoot, Examples)
{
    RootSolveSettings s;
    s.bracket_lo = 0.0;
    s.bracket_hi = 5.0;
    EXPECT_NEAR(solve_monotone_root([](double x) { return x - 2.0; }, s).x, 2.0, 1e-12);

    s.bracket_hi = 50.0;
    const double oracle_u =
        oracle::bisect([](double u) { return (1.0 + u) * std::exp(-u) - 0.5; }, 0.0, 10.0);
    const auto tail = solve_monotone_root([](double u) { return upper_tail(u, 2) - 0.5; }, s);
    EXPECT_NEAR(tail.x, oracle_u, 1e-6);

    s.bracket_lo = 1e-6;
    s.bracket_hi = 100.0;
    const auto log_root = solve_monotone_root([](double x) { return std::log(x) - std::log(7.0); }, s);
    EXPECT_NEAR(log_root.x, 7.0, 1e-9);
}

TEST(SolveMonotoneRoot, ResidualWithinTolerance)
{
    RootSolveSettings s;
    s.bracket_lo = -3.0;
    s.bracket_hi = 4.0;
    const auto f = [](double x) { return std::tanh(x - 0.3) + 0.1 * x; };
    const auto r = solve_monotone_root(f, s);
    EXPECT_LE(std::abs(f(r.x)), s.abs_tol);
    EXPECT_GE(r.iterations, 1);
}

TEST(SolveMonotoneRoot, RecoversZeroForFullTailMass)
{
    RootSolveSettings s;
    s.bracket_lo = 0.0;
    s.bracket_hi = 30.0;
    for (int n : {1, 2, 4})
        EXPECT_EQ(solve_monotone_root([n](double u) { return upper_tail(u, n) - 1.0; }, s).x, 0.0);
}

TEST(SolveMonotoneRoot, Errors)
{
    RootSolveSettings s;
    s.bracket_lo = 3.0;
    s.bracket_hi = 5.0;
    EXPECT_THROW(solve_monotone_root([](double x) { return x - 2.0; }, s), NoSignChange);

    s.bracket_lo = 0.0;
    s.max_iter = 1;
    EXPECT_THROW(solve_monotone_root([](double x) { return x - 2.0; }, s), NoConvergence);

    RootSolveSettings bad;
    bad.bracket_lo = 1.0;
    bad.bracket_hi = 1.0;
    EXPECT_THROW(solve_monotone_root([](double x) { return x; }, bad), DomainError);
    bad.bracket_hi = 2.0;
    bad.abs_tol = 0.0;
    EXPECT_THROW(solve_monotone_root([](double x) { return x; }, bad), DomainError);
}

TEST(GoldenSection, FindsParabolaPeak)
{
    const auto r = golden_section_maximize([](double x) { return -(x - 3.25) * (x - 3.25); }, 0.0, 10.0);
    EXPECT_NEAR(r.x, 3.25, 1e-8);
}

}  // namespace
}  // namespace mimome::math
