#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracle.hpp"
#include "support.hpp"

using namespace krylov;

TEST(Chebyshev, TrigonometricForms) {
    for (double th : {0.1, 0.7, 1.3, 2.9})
        for (std::size_t k = 0; k < 12; ++k) {
            EXPECT_NEAR(cheb_T(k, std::cos(th)), std::cos(static_cast<double>(k) * th), 1e-12);
            EXPECT_NEAR(cheb_U(k, std::cos(th)), std::sin(static_cast<double>(k + 1) * th) / std::sin(th), 1e-10);
        }
}

TEST(Chebyshev, RecurrenceOutsideInterval) {
    for (double x : {-3.0, -1.2, 1.05, 2.5}) {
        double t0 = 1.0, t1 = x;
        EXPECT_DOUBLE_EQ(cheb_T(0, x), 1.0);
        for (std::size_t k = 1; k < 15; ++k) {
            EXPECT_NEAR(cheb_T(k, x), t1, 1e-12 * std::abs(t1));
            const double t2 = 2 * x * t1 - t0;
            t0 = t1;
            t1 = t2;
        }
    }
    EXPECT_EQ(cheb_U(0, 5.0), 1.0);
    EXPECT_EQ(cheb_U(1, 5.0), 10.0);
}

TEST(Chebyshev, CoefficientMap) {
    const ChebCoeffs c(-0.5, 0.5);
    EXPECT_DOUBLE_EQ(c.mu(-0.5), -1.0);
    EXPECT_DOUBLE_EQ(c.mu(0.5), 1.0);
    EXPECT_DOUBLE_EQ(c.mu1(), c.mu(1.0));
    EXPECT_THROW(ChebCoeffs(0.5, 0.2), std::invalid_argument);
    EXPECT_THROW(ChebCoeffs(-0.5, 1.0), std::invalid_argument);
}

TEST(Chebyshev, MinimaxBoundIsAttainedBySampledPolynomial) {
    const double a = -0.3, b = 0.9;
    const ChebCoeffs c(a, b);
    for (std::size_t j : {1u, 4u, 10u, 25u}) {
        double worst = 0.0;
        for (int s = 0; s <= 2000; ++s) {
            const double lam = a + (b - a) * s / 2000.0;
            worst = std::max(worst, std::abs(cheb_T(j, c.mu(lam)) / cheb_T(j, c.mu1())));
        }
        const double bound = minimax_error_bound(a, b, j);
        EXPECT_NEAR(worst, bound, 1e-10);
        EXPECT_LE(bound, minimax_asymptotic_bound(a, b, j) * (1 + 1e-12));
    }
}

TEST(SemiIterative, ZeroIterationMatrixSolvesInOneStep) {
    const SparseMatrix A = support::sparse({{2, 0, 0}, {0, 3, 0}, {0, 0, 5}}, Format::row);
    const Splitting S = split(A, {StationaryKind::jacobi, 1.0, 0});
    const SolveReport r = semi_iterative(S, {2, 3, 5}, -0.5, 0.5, {TolKind::abs, 1e-14, 0.0}, 10, Vector(3, 0.0));
    EXPECT_EQ(r.status, Status::converged);
    EXPECT_EQ(r.iterations, 1u);
    EXPECT_LT(oracle::diff_norm(r.x, {1, 1, 1}), 1e-15);
}

TEST(SemiIterative, PoissonErrorObeysMinimaxBound) {
    const ProblemInstance p = poisson_test(10);
    const oracle::Mat D = oracle::poisson(10);
    const Vector xs = oracle::solve(D, p.b);
    const Splitting S = split(p.A, {StationaryKind::jacobi, 1.0, 0});
    const double rho = std::cos(std::numbers::pi / 11.0);
    const double e0 = oracle::norm2(xs);
    for (std::size_t k : {1u, 5u, 20u, 60u}) {
        const SolveReport r = semi_iterative(S, p.b, -rho, rho, {TolKind::abs, 0.0, 0.0}, k, Vector(100, 0.0));
        EXPECT_EQ(r.iterations, k);
        EXPECT_LE(oracle::diff_norm(r.x, xs), e0 * minimax_error_bound(-rho, rho, k) * (1 + 1e-8) + 1e-13);
    }
    const SolveReport cheb = semi_iterative(S, p.b, -rho, rho, {TolKind::rel_to_r0, 1e-6, 0.0}, 0, Vector(100, 0.0));
    const SolveReport jac = iterate_splitting(S, p.b, {TolKind::rel_to_r0, 1e-6, 0.0}, 10000, Vector(100, 0.0));
    ASSERT_EQ(cheb.status, Status::converged);
    ASSERT_EQ(jac.status, Status::converged);
    EXPECT_LT(3 * cheb.iterations, jac.iterations);
}

TEST(SemiIterative, EstimatedIntervalContainsSpectrum) {
    const ProblemInstance p = poisson_test(8);
    const Splitting S = split(p.A, {StationaryKind::jacobi, 1.0, 0});
    const auto [lo, hi] = estimate_interval(S, 64);
    EXPECT_NEAR(hi, std::cos(std::numbers::pi / 9.0), 1e-3);
    EXPECT_DOUBLE_EQ(lo, -hi);
}

TEST(SemiIterative, WrongIntervalIsDetected) {
    const ProblemInstance p = poisson_test(10);
    const Splitting S = split(p.A, {StationaryKind::jacobi, 1.0, 0});
    const SolveReport r = semi_iterative(S, p.b, 0.5, 0.96, {TolKind::rel_to_r0, 1e-8, 0.0}, 5000, Vector(100, 0.0));
    EXPECT_EQ(r.status, Status::breakdown);
    EXPECT_TRUE(r.reason == breakdown::interval_mismatch || r.reason == breakdown::solve_failed) << r.reason;
}
