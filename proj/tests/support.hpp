// Conversions between the oracle's nested vectors and library types.
#ifndef KRYLOV_TESTS_SUPPORT_HPP
#define KRYLOV_TESTS_SUPPORT_HPP

#include <krylov/krylov.hpp>

#include "oracle.hpp"

namespace support {

inline krylov::Triplets triplets(const oracle::Mat& A) {
    krylov::Triplets t{A.size(), {}};
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = 0; j < A.size(); ++j)
            if (A[i][j] != 0.0) t.entries.push_back({i, j, A[i][j]});
    return t;
}

inline krylov::SparseMatrix sparse(const oracle::Mat& A, krylov::Format f = krylov::Format::row) {
    return krylov::build(triplets(A), f);
}

inline oracle::Mat dense(const krylov::SparseMatrix& A) {
    const krylov::DenseMatrix D = krylov::to_dense(A);
    oracle::Mat M = oracle::zeros(D.n_rows, D.n_cols);
    for (std::size_t i = 0; i < D.n_rows; ++i)
        for (std::size_t j = 0; j < D.n_cols; ++j) M[i][j] = D(i, j);
    return M;
}

/// Dense matrix of a linear map, column by column.
template <class F>
oracle::Mat dense_of(const F& f, std::size_t n) {
    oracle::Mat M = oracle::zeros(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        krylov::Vector e(n, 0.0);
        e[j] = 1.0;
        const krylov::Vector c = f(e);
        for (std::size_t i = 0; i < n; ++i) M[i][j] = c[i];
    }
    return M;
}

inline auto op(const oracle::Mat& A) {
    return [A](const krylov::Vector& x) { return oracle::mul(A, x); };
}

inline auto op_t(const oracle::Mat& A) {
    return [At = oracle::transpose(A)](const krylov::Vector& x) { return oracle::mul(At, x); };
}

}  // namespace support

#endif
