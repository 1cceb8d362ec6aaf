#include <gtest/gtest.h>

#include <cmath>

#include "oracle.hpp"
#include "support.hpp"

using namespace krylov;

namespace {

SolveConfig abs_tol(double tol, std::size_t max_iter = 0) {
    SolveConfig c;
    c.stop = {TolKind::abs, tol, 0.0};
    c.max_iter = max_iter;
    return c;
}

oracle::Mat laplace_1d(std::size_t n) {
    oracle::Mat A = oracle::zeros(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        A[i][i] = 2.0;
        if (i > 0) A[i][i - 1] = A[i - 1][i] = -1.0;
    }
    return A;
}

oracle::Mat minus(const oracle::Mat& A, const oracle::Mat& B) {
    oracle::Mat C = A;
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = 0; j < A.size(); ++j) C[i][j] -= B[i][j];
    return C;
}

}  // namespace

TEST(Pcg, IdentityPreconditionerMatchesCg) {
    const oracle::Mat A = oracle::random_spd(15, 2);
    const Vector b = oracle::random_vector(15, 3);
    SolveConfig c = abs_tol(0.0, 10);
    c.record_iterates = true;
    const SolveReport p = pcg(support::op(A), b, identity_preconditioner(), Vector(15, 0.0), c);
    const CgReport q = cg(support::op(A), b, Vector(15, 0.0), c);
    ASSERT_EQ(p.iterates.size(), q.iterates.size());
    for (std::size_t i = 0; i < p.iterates.size(); ++i)
        EXPECT_LT(oracle::diff_norm(p.iterates[i], q.iterates[i]), 1e-10 * (1 + oracle::norm2(q.iterates[i])));
}

TEST(Pcg, JacobiResidualsArePreconditionerOrthogonal) {
    oracle::Mat A = oracle::random_spd(12, 5);
    for (std::size_t i = 0; i < 12; ++i) A[i][i] *= 1.0 + static_cast<double>(i);
    const SparseMatrix S = support::sparse(A, Format::row);
    const Preconditioner C = jacobi_preconditioner(S);
    SolveConfig c = abs_tol(0.0, 6);
    c.record_iterates = true;
    const SolveReport r = pcg(as_operator(S), oracle::random_vector(12, 6), C, Vector(12, 0.0), c);
    for (std::size_t i = 0; i < r.residuals.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) {
            const double cij = dot(r.residuals[i], C(r.residuals[j]));
            const double ni = std::sqrt(dot(r.residuals[i], C(r.residuals[i])));
            const double nj = std::sqrt(dot(r.residuals[j], C(r.residuals[j])));
            EXPECT_LT(std::abs(cij), 1e-10 * ni * nj);
        }
    EXPECT_EQ(r.aux.size(), r.history.size());
}

TEST(Pcg, IndefinitePreconditionerDetected) {
    const auto neg = [](const Vector& v) { return scaled(v, -1.0); };
    const SolveReport r = pcg([](const Vector& v) { return v; }, {1, 2}, neg, {0, 0}, abs_tol(1e-12));
    EXPECT_EQ(r.status, Status::breakdown);
    EXPECT_EQ(r.reason, breakdown::precond_not_spd);
    EXPECT_THROW(jacobi_preconditioner(support::sparse({{0, 1}, {1, 1}}, Format::row)), std::domain_error);
}

TEST(IncompleteCholesky, PivotsMatchHandRecurrence) {
    const std::size_t N = 3;
    const IcFactors f = ic0_pentadiagonal(poisson_test(N).A, N);
    Vector d(N * N);
    for (std::size_t i = 0; i < N * N; ++i) {
        d[i] = 4.0;
        if (i % N != 0) d[i] -= 1.0 / d[i - 1];
        if (i >= N) d[i] -= 1.0 / d[i - N];
    }
    for (std::size_t i = 0; i < N * N; ++i) EXPECT_NEAR(f.dt[i], d[i], 1e-14);
}

TEST(IncompleteCholesky, ExactOnTridiagonal) {
    const oracle::Mat T = laplace_1d(8);
    const IcFactors f = ic0_pentadiagonal(support::sparse(T, Format::row), 3);
    const oracle::Mat M = support::dense_of([&f](const Vector& v) { return apply_ic_matrix(f, v); }, 8);
    EXPECT_LT(oracle::max_abs(minus(M, T)), 1e-13);
    const Vector dl = oracle::ldlt_diagonal(T);
    for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(f.dt[i], dl[i], 1e-13);
}

TEST(IncompleteCholesky, RemainderOnlyAtFillPositions) {
    const std::size_t N = 5;
    const oracle::Mat A = oracle::poisson(N);
    const IcFactors f = ic0_pentadiagonal(poisson_test(N).A, N);
    const oracle::Mat R = minus(support::dense_of([&f](const Vector& v) { return apply_ic_matrix(f, v); }, N * N), A);
    for (std::size_t i = 0; i < N * N; ++i)
        for (std::size_t j = 0; j < N * N; ++j) {
            const std::size_t d = i > j ? i - j : j - i;
            if (d == N - 1) continue;
            EXPECT_NEAR(R[i][j], 0.0, 1e-13) << i << "," << j;
        }
}

TEST(IncompleteCholesky, PivotsDominateExactFactorization) {
    for (std::size_t N : {3u, 6u, 9u}) {
        const IcFactors f = ic0_pentadiagonal(poisson_test(N).A, N);
        const Vector d = oracle::ldlt_diagonal(oracle::poisson(N));
        for (std::size_t i = 0; i < N * N; ++i) EXPECT_GE(f.dt[i], d[i] - 1e-12);
    }
}

TEST(IncompleteCholesky, RejectsOutOfBandAndBadPivot) {
    EXPECT_THROW(ic0_pentadiagonal(support::sparse(oracle::random_spd(6, 1), Format::row), 2), std::invalid_argument);
    EXPECT_THROW(ic0_pentadiagonal(support::sparse({{1, 2, 0}, {2, 1, 0}, {0, 0, 1}}, Format::row), 2),
                 breakdown_error);
}

TEST(ModifiedIC, RowSumsPreservedAndSmallestEigenvalueIsOne) {
    for (std::size_t N : {4u, 7u, 10u}) {
        const oracle::Mat A = oracle::poisson(N);
        const IcFactors f = mic_pentadiagonal(poisson_test(N).A, N);
        const Vector ones(N * N, 1.0);
        EXPECT_LT(oracle::diff_norm(apply_ic_matrix(f, ones), oracle::mul(A, ones)), 1e-11);
        // A - M psd with (A - M) 1 = 0  <=>  min eig of M^{-1}A is 1
        const oracle::Mat M = support::dense_of([&f](const Vector& v) { return apply_ic_matrix(f, v); }, N * N);
        EXPECT_GE(oracle::symmetric_eigenvalues(minus(A, M)).front(), -1e-10);
    }
}

TEST(IncompleteCholesky, SolveInvertsMatrixAndIsSymmetric) {
    const std::size_t N = 6;
    for (const IcFactors& f : {ic0_pentadiagonal(poisson_test(N).A, N), mic_pentadiagonal(poisson_test(N).A, N)}) {
        const Vector v = oracle::random_vector(N * N, 4);
        EXPECT_LT(oracle::diff_norm(apply_ic_solve(f, apply_ic_matrix(f, v)), v), 1e-12);
        const oracle::Mat C = support::dense_of([&f](const Vector& x) { return apply_ic_solve(f, x); }, N * N);
        for (std::size_t i = 0; i < N * N; ++i)
            for (std::size_t j = 0; j < i; ++j) EXPECT_NEAR(C[i][j], C[j][i], 1e-13);
    }
}

TEST(IncompleteCholesky, LadderOrdering) {
    for (std::size_t N : {10u, 20u}) {
        const ProblemInstance p = poisson_test(N);
        const Vector x0(N * N, 0.0);
        const auto A = as_operator(p.A);
        const std::size_t it_cg = cg(A, p.b, x0, abs_tol(1e-6)).iterations;
        const std::size_t it_ic = pcg(A, p.b, ic_preconditioner(ic0_pentadiagonal(p.A, N)), x0, abs_tol(1e-6)).iterations;
        const std::size_t it_mic = pcg(A, p.b, ic_preconditioner(mic_pentadiagonal(p.A, N)), x0, abs_tol(1e-6)).iterations;
        EXPECT_LT(it_mic, it_ic);
        EXPECT_LT(it_ic, it_cg);
    }
}

TEST(BlockPrecond, UnitBlocksAreExactOnTridiagonal) {
    const oracle::Mat T = laplace_1d(7);
    const BlockFactors f = block_precond(support::sparse(T, Format::row), 1);
    const Vector b = oracle::random_vector(7, 8);
    EXPECT_LT(oracle::diff_norm(apply_block_solve(f, b), oracle::solve(T, b)), 1e-12);
}

TEST(BlockPrecond, FullSigmaIsExact) {
    const std::size_t N = 5;
    const BlockFactors f = block_precond(poisson_test(N).A, N, SigmaRule::full);
    const Vector b = oracle::random_vector(N * N, 9);
    EXPECT_LT(oracle::diff_norm(apply_block_solve(f, b), oracle::solve(oracle::poisson(N), b)), 1e-11);
}

TEST(BlockPrecond, TridiagonalSigmaAcceleratesCg) {
    const std::size_t N = 10;
    const ProblemInstance p = poisson_test(N);
    const BlockFactors f = block_precond(p.A, N);
    const oracle::Mat C = support::dense_of([&f](const Vector& v) { return apply_block_solve(f, v); }, N * N);
    for (std::size_t i = 0; i < N * N; ++i)
        for (std::size_t j = 0; j < i; ++j) EXPECT_NEAR(C[i][j], C[j][i], 1e-12);
    const Vector x0(N * N, 0.0);
    const SolveReport pr = pcg(as_operator(p.A), p.b, block_preconditioner(f), x0, abs_tol(1e-6));
    EXPECT_EQ(pr.status, Status::converged);
    EXPECT_LT(pr.iterations, cg(as_operator(p.A), p.b, x0, abs_tol(1e-6)).iterations);
    EXPECT_THROW(block_precond(p.A, 3), std::invalid_argument);
}

TEST(PolyPrecond, DegreeOneIsScaledIdentity) {
    const PolyPrecond p = poly_precond_build(1, 0.5, 3.5);
    EXPECT_NEAR(poly_eval_C(p, 1.7), 2.0 / 4.0, 1e-15);
    EXPECT_THROW(poly_precond_build(0, 0.5, 1.0), std::invalid_argument);
    EXPECT_THROW(poly_precond_build(3, 0.0, 1.0), std::invalid_argument);
}

TEST(PolyPrecond, EpsilonIsSampledMaximumAndDecreases) {
    double prev = 1.0;
    for (std::size_t m : {1u, 3u, 6u, 11u}) {
        const PolyPrecond p = poly_precond_build(m, 0.05, 7.9);
        double worst = 0.0;
        for (int s = 0; s <= 4000; ++s) worst = std::max(worst, std::abs(poly_error_function(p, 0.05 + 7.85 * s / 4000.0)));
        EXPECT_NEAR(worst, p.epsilon(), 1e-10);
        EXPECT_LT(p.epsilon(), prev);
        prev = p.epsilon();
        for (double lam : {0.05, 0.7, 3.3, 7.9})
            EXPECT_NEAR(lam * poly_eval_C(p, lam), 1.0 - poly_error_function(p, lam), 1e-12);
    }
}

TEST(PolyPrecond, MatrixPolynomialOnDiagonalOperator) {
    const Vector lam{0.2, 0.9, 1.6, 2.5, 3.9};
    const auto D = [&lam](const Vector& v) {
        Vector y(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) y[i] = lam[i] * v[i];
        return y;
    };
    const PolyPrecond p = poly_precond_build(4, 0.2, 3.9);
    const Vector v = oracle::random_vector(5, 10);
    const Vector got = poly_apply_pmA(p, D, v);
    const Vector cb = poly_apply_Cb(p, D, v);
    for (std::size_t i = 0; i < 5; ++i) {
        EXPECT_NEAR(got[i], (1.0 - poly_error_function(p, lam[i])) * v[i], 1e-13);
        EXPECT_NEAR(cb[i], poly_eval_C(p, lam[i]) * v[i], 1e-12);
    }
}

TEST(PolyPrecond, ClenshawSatisfiesPolynomialIdentity) {
    const ProblemInstance q = poisson_test(8);
    const auto A = as_operator(q.A);
    const auto [lo, hi] = oracle::poisson_extremes(8);
    for (std::size_t m : {2u, 5u, 9u}) {
        const PolyPrecond p = poly_precond_build(m, lo, hi);
        const Vector b = oracle::random_vector(64, m);
        EXPECT_LT(oracle::diff_norm(A(poly_apply_Cb(p, A, b)), poly_apply_pmA(p, A, b)), 1e-11 * oracle::norm2(b));
    }
}

TEST(PolyPrecond, ConditionBoundOnPoisson) {
    const std::size_t N = 6;
    const ProblemInstance q = poisson_test(N);
    const auto A = as_operator(q.A);
    const auto [lo, hi] = oracle::poisson_extremes(N);
    for (std::size_t m : {2u, 4u, 7u}) {
        const PolyPrecond p = poly_precond_build(m, lo, hi);
        const oracle::Mat P = support::dense_of([&](const Vector& v) { return poly_apply_pmA(p, A, v); }, N * N);
        const auto ev = oracle::symmetric_eigenvalues(P);
        const double eps = p.epsilon();
        EXPECT_GE(ev.front(), 1.0 - eps - 1e-12);
        EXPECT_LE(ev.back(), 1.0 + eps + 1e-12);
        EXPECT_LE(ev.back() / ev.front(), (1.0 + eps) / (1.0 - eps) * (1 + 1e-12));
    }
}

TEST(PolyPrecond, MonomialExpansion) {
    const PolyPrecond p = poly_precond_build(11, 1e-3, 1.001);
    const std::vector<double> c = poly_pm_monomial(p);
    ASSERT_EQ(c.size(), 12u);
    const std::vector<double> ref{1.6752660329527138e+06, -9.2323911076024063e+06, 2.1975394326889034e+07,
                                  -2.9566871007963315e+07, 2.4710334661370583e+07, -1.3273250212561980e+07,
                                  4.5826267022750815e+06, -9.8775156863499968e+05, 1.2453502849456538e+05,
                                  -8.1003898374282262e+03, 2.0914774360373008e+02, 0.0};
    for (std::size_t i = 0; i < 11; ++i) EXPECT_NEAR(c[i], ref[i], 1e-6 * std::abs(ref[i]));
    EXPECT_NEAR(c[11], 0.0, 1e-9);
    const PolyPrecond q = poly_precond_build(5, 0.3, 2.0);
    const std::vector<double> cq = poly_pm_monomial(q);
    for (double lam : {0.3, 0.8, 1.5, 2.0}) {
        double horner = 0.0;
        for (double ci : cq) horner = horner * lam + ci;
        EXPECT_NEAR(horner, lam * poly_eval_C(q, lam), 1e-12);
    }
}

TEST(PolyPrecond, PcgConvergesFasterThanCg) {
    const std::size_t N = 10;
    const ProblemInstance q = poisson_test(N);
    const auto A = as_operator(q.A);
    const auto [lo, hi] = oracle::poisson_extremes(N);
    const Vector x0(N * N, 0.0);
    const SolveReport r = pcg(A, q.b, poly_preconditioner(poly_precond_build(9, lo, hi), A), x0, abs_tol(1e-6));
    EXPECT_EQ(r.status, Status::converged);
    EXPECT_LE(r.iterations, 6u);
    EXPECT_LT(r.iterations, cg(A, q.b, x0, abs_tol(1e-6)).iterations);
}
