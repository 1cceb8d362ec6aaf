// SPDX-License-Identifier: Apache-2.0
#ifndef KRYLOV_SPARSE_STORAGE_HPP
#define KRYLOV_SPARSE_STORAGE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <type_traits>
#include <variant>
#include <vector>

#include "core_linalg.hpp"

namespace krylov {

struct Triplet {
    std::size_t row = 0;
    std::size_t col = 0;
    double value = 0.0;
};

struct Triplets {
    std::size_t n = 0;
    std::vector<Triplet> entries;
};

/// Padded row storage: n x k panels of values and column indices.
struct RowCompressed {
    std::size_t n = 0;
    std::size_t k = 0;
    std::vector<double> vals;       // vals[i*k + r]
    std::vector<std::size_t> cols;  // cols[i*k + r]

    double val(std::size_t i, std::size_t r) const { return vals[i * k + r]; }
    std::size_t col(std::size_t i, std::size_t r) const { return cols[i * k + r]; }
};

/// Padded column storage: k x n panels of values and row indices.
struct ColCompressed {
    std::size_t n = 0;
    std::size_t k = 0;
    std::vector<double> vals;       // vals[r*n + j]
    std::vector<std::size_t> rows;  // rows[r*n + j]

    double val(std::size_t r, std::size_t j) const { return vals[r * n + j]; }
    std::size_t row(std::size_t r, std::size_t j) const { return rows[r * n + j]; }
};

/// Diagonal storage: column r of vals holds the diagonal with offset nu[r] = j - i.
struct DiagCompressed {
    std::size_t n = 0;
    std::size_t k = 0;
    std::vector<double> vals;  // vals[i*k + r]
    std::vector<long> nu;      // sorted ascending

    double val(std::size_t i, std::size_t r) const { return vals[i * k + r]; }
};

using SparseMatrix = std::variant<RowCompressed, ColCompressed, DiagCompressed, DenseMatrix>;

enum class Format { row, col, diag, dense };

// ---------------------------------------------------------------------------
// kernels

inline Vector matvec_row(const RowCompressed& A, const Vector& x) {
    if (x.size() != A.n) throw std::invalid_argument("matvec_row: dimension mismatch");
    Vector y(A.n, 0.0);
    for (std::size_t i = 0; i < A.n; ++i) {
        double s = 0.0;
        for (std::size_t r = 0; r < A.k; ++r) s += A.val(i, r) * x[A.col(i, r)];
        y[i] = s;
    }
    return y;
}

inline Vector matvec_col(const ColCompressed& A, const Vector& x) {
    if (x.size() != A.n) throw std::invalid_argument("matvec_col: dimension mismatch");
    Vector y(A.n, 0.0);
    for (std::size_t j = 0; j < A.n; ++j)
        for (std::size_t r = 0; r < A.k; ++r) y[A.row(r, j)] += A.val(r, j) * x[j];
    return y;
}

inline Vector matvec_diag(const DiagCompressed& A, const Vector& x) {
    if (x.size() != A.n) throw std::invalid_argument("matvec_diag: dimension mismatch");
    Vector y(A.n, 0.0);
    const long n = static_cast<long>(A.n);
    for (std::size_t r = 0; r < A.k; ++r) {
        const long nu = A.nu[r];
        const long start = std::max(0L, -nu);
        const long end = std::min(n, n - nu);  // exclusive
        for (long i = start; i < end; ++i) {
            const auto iu = static_cast<std::size_t>(i);
            y[iu] += A.val(iu, r) * x[static_cast<std::size_t>(i + nu)];
        }
    }
    return y;
}

// transposed products, needed by the nonsymmetric solvers

inline Vector matvec_row_transpose(const RowCompressed& A, const Vector& x) {
    if (x.size() != A.n) throw std::invalid_argument("matvec_row_transpose: dimension mismatch");
    Vector y(A.n, 0.0);
    for (std::size_t i = 0; i < A.n; ++i)
        for (std::size_t r = 0; r < A.k; ++r) y[A.col(i, r)] += A.val(i, r) * x[i];
    return y;
}

inline Vector matvec_col_transpose(const ColCompressed& A, const Vector& x) {
    if (x.size() != A.n) throw std::invalid_argument("matvec_col_transpose: dimension mismatch");
    Vector y(A.n, 0.0);
    for (std::size_t j = 0; j < A.n; ++j) {
        double s = 0.0;
        for (std::size_t r = 0; r < A.k; ++r) s += A.val(r, j) * x[A.row(r, j)];
        y[j] = s;
    }
    return y;
}

inline Vector matvec_diag_transpose(const DiagCompressed& A, const Vector& x) {
    if (x.size() != A.n) throw std::invalid_argument("matvec_diag_transpose: dimension mismatch");
    Vector y(A.n, 0.0);
    const long n = static_cast<long>(A.n);
    for (std::size_t r = 0; r < A.k; ++r) {
        const long nu = A.nu[r];
        for (long i = std::max(0L, -nu); i < std::min(n, n - nu); ++i) {
            const auto iu = static_cast<std::size_t>(i);
            y[static_cast<std::size_t>(i + nu)] += A.val(iu, r) * x[iu];
        }
    }
    return y;
}

// ---------------------------------------------------------------------------
// building

namespace detail {

/// Sums duplicates and drops exact zeros; result sorted by (row, col).
inline std::map<std::pair<std::size_t, std::size_t>, double> accumulate(const Triplets& t) {
    std::map<std::pair<std::size_t, std::size_t>, double> acc;
    for (const auto& e : t.entries) {
        if (e.row >= t.n || e.col >= t.n) throw std::out_of_range("triplet index out of range");
        if (!std::isfinite(e.value)) throw std::invalid_argument("triplet value is not finite");
        acc[{e.row, e.col}] += e.value;
    }
    for (auto it = acc.begin(); it != acc.end();) {
        if (it->second == 0.0) it = acc.erase(it);
        else ++it;
    }
    return acc;
}

}  // namespace detail

inline RowCompressed build_row(const Triplets& t) {
    const auto acc = detail::accumulate(t);
    std::vector<std::vector<std::pair<std::size_t, double>>> rows(t.n);
    for (const auto& [ij, v] : acc) rows[ij.first].push_back({ij.second, v});
    std::size_t k = 1;
    for (const auto& r : rows) k = std::max(k, r.size());
    RowCompressed A{t.n, k, std::vector<double>(t.n * k, 0.0), std::vector<std::size_t>(t.n * k, 0)};
    for (std::size_t i = 0; i < t.n; ++i) {
        std::size_t last = i;
        for (std::size_t r = 0; r < k; ++r) {
            if (r < rows[i].size()) {
                A.vals[i * k + r] = rows[i][r].second;
                last = rows[i][r].first;
            }
            A.cols[i * k + r] = last;
        }
    }
    return A;
}

inline ColCompressed build_col(const Triplets& t) {
    const auto acc = detail::accumulate(t);
    std::vector<std::vector<std::pair<std::size_t, double>>> cols(t.n);
    for (const auto& [ij, v] : acc) cols[ij.second].push_back({ij.first, v});
    std::size_t k = 1;
    for (const auto& c : cols) k = std::max(k, c.size());
    ColCompressed A{t.n, k, std::vector<double>(t.n * k, 0.0), std::vector<std::size_t>(t.n * k, 0)};
    for (std::size_t j = 0; j < t.n; ++j) {
        std::size_t last = j;
        for (std::size_t r = 0; r < k; ++r) {
            if (r < cols[j].size()) {
                A.vals[r * t.n + j] = cols[j][r].second;
                last = cols[j][r].first;
            }
            A.rows[r * t.n + j] = last;
        }
    }
    return A;
}

inline DiagCompressed build_diag(const Triplets& t) {
    const auto acc = detail::accumulate(t);
    std::vector<long> offsets;
    for (const auto& [ij, v] : acc)
        offsets.push_back(static_cast<long>(ij.second) - static_cast<long>(ij.first));
    std::sort(offsets.begin(), offsets.end());
    offsets.erase(std::unique(offsets.begin(), offsets.end()), offsets.end());
    if (offsets.empty()) offsets.push_back(0);
    const std::size_t k = offsets.size();
    DiagCompressed A{t.n, k, std::vector<double>(t.n * k, 0.0), offsets};
    for (const auto& [ij, v] : acc) {
        const long nu = static_cast<long>(ij.second) - static_cast<long>(ij.first);
        const auto r = static_cast<std::size_t>(
            std::lower_bound(offsets.begin(), offsets.end(), nu) - offsets.begin());
        A.vals[ij.first * k + r] = v;
    }
    return A;
}

inline DenseMatrix build_dense(const Triplets& t) {
    DenseMatrix A(t.n, t.n);
    for (const auto& e : t.entries) {
        if (e.row >= t.n || e.col >= t.n) throw std::out_of_range("triplet index out of range");
        A(e.row, e.col) += e.value;
    }
    return A;
}

inline SparseMatrix build(const Triplets& t, Format target) {
    switch (target) {
    case Format::row: return build_row(t);
    case Format::col: return build_col(t);
    case Format::diag: return build_diag(t);
    case Format::dense: return build_dense(t);
    }
    throw std::invalid_argument("build: unknown format");
}

// ---------------------------------------------------------------------------
// extraction back to triplets (padding slots skipped)

inline Triplets to_triplets(const RowCompressed& A) {
    Triplets t{A.n, {}};
    for (std::size_t i = 0; i < A.n; ++i)
        for (std::size_t r = 0; r < A.k; ++r)
            if (A.val(i, r) != 0.0) t.entries.push_back({i, A.col(i, r), A.val(i, r)});
    return t;
}

inline Triplets to_triplets(const ColCompressed& A) {
    Triplets t{A.n, {}};
    for (std::size_t j = 0; j < A.n; ++j)
        for (std::size_t r = 0; r < A.k; ++r)
            if (A.val(r, j) != 0.0) t.entries.push_back({A.row(r, j), j, A.val(r, j)});
    return t;
}

inline Triplets to_triplets(const DiagCompressed& A) {
    Triplets t{A.n, {}};
    for (std::size_t i = 0; i < A.n; ++i)
        for (std::size_t r = 0; r < A.k; ++r) {
            const double v = A.val(i, r);
            if (v == 0.0) continue;
            const long j = static_cast<long>(i) + A.nu[r];
            t.entries.push_back({i, static_cast<std::size_t>(j), v});
        }
    return t;
}

inline Triplets to_triplets(const DenseMatrix& A) {
    Triplets t{A.n_rows, {}};
    for (std::size_t i = 0; i < A.n_rows; ++i)
        for (std::size_t j = 0; j < A.n_cols; ++j)
            if (A(i, j) != 0.0) t.entries.push_back({i, j, A(i, j)});
    return t;
}

inline Triplets to_triplets(const SparseMatrix& A) {
    return std::visit([](const auto& m) { return to_triplets(m); }, A);
}

inline SparseMatrix convert(const SparseMatrix& A, Format target) { return build(to_triplets(A), target); }

// ---------------------------------------------------------------------------
// uniform access

inline std::size_t size(const SparseMatrix& A) {
    return std::visit(
        [](const auto& m) -> std::size_t {
            if constexpr (std::is_same_v<std::decay_t<decltype(m)>, DenseMatrix>) return m.n_rows;
            else return m.n;
        },
        A);
}

inline Vector matvec(const SparseMatrix& A, const Vector& x) {
    return std::visit(
        [&](const auto& m) -> Vector {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, RowCompressed>) return matvec_row(m, x);
            else if constexpr (std::is_same_v<T, ColCompressed>) return matvec_col(m, x);
            else if constexpr (std::is_same_v<T, DiagCompressed>) return matvec_diag(m, x);
            else return krylov::matvec(m, x);
        },
        A);
}

inline Vector matvec_transpose(const SparseMatrix& A, const Vector& x) {
    return std::visit(
        [&](const auto& m) -> Vector {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, RowCompressed>) return matvec_row_transpose(m, x);
            else if constexpr (std::is_same_v<T, ColCompressed>) return matvec_col_transpose(m, x);
            else if constexpr (std::is_same_v<T, DiagCompressed>) return matvec_diag_transpose(m, x);
            else return krylov::matvec_transpose(m, x);
        },
        A);
}

/// Callable wrappers; the matrix must outlive them.
inline auto as_operator(const SparseMatrix& A) {
    return [&A](const Vector& x) { return matvec(A, x); };
}

inline auto as_transpose_operator(const SparseMatrix& A) {
    return [&A](const Vector& x) { return matvec_transpose(A, x); };
}

inline DenseMatrix to_dense(const SparseMatrix& A) { return build_dense(to_triplets(A)); }

inline std::size_t nnz(const SparseMatrix& A) { return to_triplets(A).entries.size(); }

inline Vector diagonal(const SparseMatrix& A) {
    Vector d(size(A), 0.0);
    for (const auto& e : to_triplets(A).entries)
        if (e.row == e.col) d[e.row] += e.value;
    return d;
}

inline bool is_symmetric(const SparseMatrix& A) {
    const Triplets t = to_triplets(A);
    const auto acc = detail::accumulate(t);
    for (const auto& [ij, v] : acc) {
        const auto it = acc.find({ij.second, ij.first});
        if (it == acc.end() || it->second != v) return false;
    }
    return true;
}

}  // namespace krylov

#endif
