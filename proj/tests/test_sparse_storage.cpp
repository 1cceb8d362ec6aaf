#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "support.hpp"

using namespace krylov;

namespace {

oracle::Mat random_sparse_dense(std::size_t n, double density, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> U(-1.0, 1.0), P(0.0, 1.0);
    oracle::Mat A = oracle::zeros(n, n);
    for (auto& r : A)
        for (double& v : r)
            if (P(gen) < density) v = U(gen);
    return A;
}

double rel_err(const Vector& a, const Vector& ref) {
    const double s = oracle::norm2(ref);
    return oracle::diff_norm(a, ref) / (s > 0 ? s : 1.0);
}

}  // namespace

TEST(MatvecRow, Identity) {
    const Triplets t{3, {{0, 0, 1}, {1, 1, 1}, {2, 2, 1}}};
    const RowCompressed A = build_row(t);
    EXPECT_EQ(A.k, 1u);
    EXPECT_EQ(matvec_row(A, {1, 2, 3}), (Vector{1, 2, 3}));
    EXPECT_EQ(matvec_col(build_col(t), {1, 2, 3}), (Vector{1, 2, 3}));
}

TEST(MatvecRow, PoissonOnesMatchesDense) {
    const oracle::Mat D = oracle::poisson(3);
    const Triplets t = support::triplets(D);
    const Vector x(9, 1.0), ref = oracle::mul(D, x);
    EXPECT_LT(rel_err(matvec_row(build_row(t), x), ref), 1e-15);
    EXPECT_LT(rel_err(matvec_col(build_col(t), x), ref), 1e-15);
    EXPECT_LT(rel_err(matvec_diag(build_diag(t), x), ref), 1e-15);
}

TEST(MatvecCol, ZeroColumnContributesNothing) {
    const Triplets t{3, {{0, 0, 2}, {2, 0, 1}, {1, 2, 5}}};
    const Vector y = matvec_col(build_col(t), {1, 100, 1});
    EXPECT_EQ(y, (Vector{2, 5, 1}));
}

TEST(MatvecDiag, DiagonalAndTridiagonal) {
    const Triplets d{3, {{0, 0, 2}, {1, 1, 3}, {2, 2, 4}}};
    EXPECT_EQ(matvec_diag(build_diag(d), {1, 1, 2}), (Vector{2, 3, 8}));
    Triplets t{4, {}};
    for (std::size_t i = 0; i < 4; ++i) {
        t.entries.push_back({i, i, 2});
        if (i > 0) t.entries.push_back({i, i - 1, -1});
        if (i + 1 < 4) t.entries.push_back({i, i + 1, -1});
    }
    EXPECT_EQ(matvec_diag(build_diag(t), Vector(4, 1.0)), (Vector{1, 0, 0, 1}));
}

TEST(MatvecDiag, PoissonN5MatchesDense) {
    const oracle::Mat D = oracle::poisson(5);
    const Vector x = oracle::random_vector(25, 3);
    EXPECT_LT(rel_err(matvec_diag(build_diag(support::triplets(D)), x), oracle::mul(D, x)), 1e-14);
}

TEST(Build, EmptyRowsUseOwnIndex) {
    const RowCompressed A = build_row(Triplets{3, {}});
    EXPECT_EQ(A.k, 1u);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(A.val(i, 0), 0.0);
        EXPECT_EQ(A.col(i, 0), i);
    }
}

TEST(Build, DuplicatesSummed) {
    const Triplets acc = to_triplets(build(Triplets{1, {{0, 0, 1}, {0, 0, 2}}}, Format::row));
    ASSERT_EQ(acc.entries.size(), 1u);
    EXPECT_EQ(acc.entries[0].value, 3.0);
}

TEST(Build, PoissonDiagOffsets) {
    const DiagCompressed A = build_diag(support::triplets(oracle::poisson(3)));
    EXPECT_EQ(A.k, 5u);
    EXPECT_EQ(A.nu, (std::vector<long>{-3, -1, 0, 1, 3}));
}

TEST(Build, PaddingRepeatsLastIndex) {
    const RowCompressed A = build_row(Triplets{3, {{0, 0, 1}, {0, 1, 1}, {0, 2, 1}, {1, 0, 4}}});
    EXPECT_EQ(A.k, 3u);
    EXPECT_EQ(A.col(1, 1), 0u);
    EXPECT_EQ(A.col(1, 2), 0u);
    EXPECT_EQ(A.col(2, 0), 2u);
}

TEST(Build, RejectsBadTriplets) {
    EXPECT_THROW(build_row(Triplets{2, {{2, 0, 1}}}), std::out_of_range);
    EXPECT_THROW(build_row(Triplets{2, {{0, 0, std::nan("")}}}), std::invalid_argument);
}

TEST(Matvec, PaddingSafety) {
    const Triplets t{4, {{0, 0, 1}, {0, 3, 2}, {1, 1, 1}, {2, 2, 1}, {3, 0, 1}}};
    const RowCompressed A = build_row(t);
    const Vector y = matvec_row(A, {1, 1, 1, 1});
    EXPECT_EQ(y, (Vector{3, 1, 1, 1}));
}

TEST(Matvec, CrossFormatEquivalence200Random) {
    std::mt19937_64 gen(2024);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + gen() % 32;
        const double density = 0.05 + 0.5 * static_cast<double>(gen() % 100) / 100.0;
        const oracle::Mat D = random_sparse_dense(n, density, gen());
        const Triplets t = support::triplets(D);
        const Vector x = oracle::random_vector(n, gen());
        const Vector ref = oracle::mul(D, x);
        const Vector refT = oracle::mul(oracle::transpose(D), x);
        for (Format f : {Format::row, Format::col, Format::diag, Format::dense}) {
            const SparseMatrix A = build(t, f);
            EXPECT_LE(rel_err(matvec(A, x), ref), 1e-13);
            EXPECT_LE(rel_err(matvec_transpose(A, x), refT), 1e-13);
        }
    }
}

TEST(Matvec, RebuildFromTripletsPreservesAction) {
    const oracle::Mat D = random_sparse_dense(20, 0.2, 11);
    for (Format f : {Format::row, Format::col, Format::diag}) {
        const SparseMatrix A = build(support::triplets(D), f);
        const SparseMatrix B = build(to_triplets(A), f);
        for (std::uint64_t s = 0; s < 50; ++s) {
            const Vector x = oracle::random_vector(20, s);
            EXPECT_EQ(matvec(A, x), matvec(B, x));
        }
    }
}

TEST(Matvec, DimensionMismatch) {
    const SparseMatrix A = build(Triplets{3, {{0, 0, 1}}}, Format::row);
    EXPECT_THROW(matvec(A, Vector(2, 1.0)), std::invalid_argument);
}

TEST(MatrixMarket, ReadSingleEntry) {
    const Triplets t = read_matrix_market("%%MatrixMarket matrix coordinate real general\n1 1 1\n1 1 5.0\n");
    ASSERT_EQ(t.n, 1u);
    ASSERT_EQ(t.entries.size(), 1u);
    EXPECT_EQ(t.entries[0].row, 0u);
    EXPECT_EQ(t.entries[0].value, 5.0);
}

TEST(MatrixMarket, SymmetricExpansion) {
    const Triplets t = read_matrix_market(
        "%%MatrixMarket matrix coordinate real symmetric\n% comment\n2 2 3\n1 1 2\n2 1 -1\n2 2 2\n");
    EXPECT_EQ(t.entries.size(), 4u);
    const oracle::Mat M = support::dense(build(t, Format::dense));
    EXPECT_EQ(M[0][1], -1.0);
    EXPECT_EQ(M[1][0], -1.0);
}

TEST(MatrixMarket, RoundTrip) {
    const oracle::Mat D = random_sparse_dense(20, 0.3, 5);
    const Triplets t = to_triplets(build(support::triplets(D), Format::row));
    const Triplets back = read_matrix_market(write_matrix_market(t));
    ASSERT_EQ(back.entries.size(), t.entries.size());
    for (std::size_t i = 0; i < t.entries.size(); ++i) {
        EXPECT_EQ(back.entries[i].row, t.entries[i].row);
        EXPECT_EQ(back.entries[i].col, t.entries[i].col);
        EXPECT_EQ(back.entries[i].value, t.entries[i].value);
    }
}

TEST(MatrixMarket, Errors) {
    EXPECT_THROW(read_matrix_market("%%MatrixMarket matrix coordinate complex general\n1 1 1\n1 1 1\n"),
                 matrix_market_error);
    EXPECT_THROW(read_matrix_market("%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1\n"),
                 matrix_market_error);
    EXPECT_THROW(read_matrix_market("%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1 abc\n"),
                 matrix_market_error);
    EXPECT_THROW(read_matrix_market("%%MatrixMarket matrix coordinate real general\n2 3 1\n1 1 1\n"),
                 matrix_market_error);
}

TEST(MatrixMarket, VectorRoundTrip) {
    const Vector v{1.0 / 3.0, -2.5e-300, 7.0};
    EXPECT_EQ(read_matrix_market_vector(write_matrix_market_vector(v)), v);
}
