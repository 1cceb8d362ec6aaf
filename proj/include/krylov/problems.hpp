// SPDX-License-Identifier: Apache-2.0
#ifndef KRYLOV_PROBLEMS_HPP
#define KRYLOV_PROBLEMS_HPP

#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>

#include "sparse_storage.hpp"

namespace krylov {

struct ProblemInstance {
    SparseMatrix A;
    Vector b;
    std::optional<Vector> x_true;
    std::string label;
};

/// T_N (x) I + I (x) T_N with unknowns ordered i fastest; b_k = h^3 (i + j).
inline ProblemInstance poisson_test(std::size_t N) {
    if (N < 1) throw std::invalid_argument("poisson_test: N must be >= 1");
    const std::size_t n = N * N;
    const double h = 1.0 / static_cast<double>(N + 1);
    Triplets t{n, {}};
    Vector b(n);
    for (std::size_t j = 0; j < N; ++j)
        for (std::size_t i = 0; i < N; ++i) {
            const std::size_t k = i + j * N;
            t.entries.push_back({k, k, 4.0});
            if (i > 0) t.entries.push_back({k, k - 1, -1.0});
            if (i + 1 < N) t.entries.push_back({k, k + 1, -1.0});
            if (j > 0) t.entries.push_back({k, k - N, -1.0});
            if (j + 1 < N) t.entries.push_back({k, k + N, -1.0});
            b[k] = h * h * h * static_cast<double>((i + 1) + (j + 1));
        }
    return {build_diag(t), std::move(b), std::nullopt, "poisson N=" + std::to_string(N)};
}

/// Outlet index: nearest integer to (1-delta)/h, ties toward the smaller index.
inline std::size_t cavity_outlet_index(std::size_t N, double delta) {
    const double raw = (1.0 - delta) * static_cast<double>(N + 1);
    const double nu = std::ceil(raw - 0.5);
    if (!(nu >= 1.0) || nu > static_cast<double>(N) - 1.0)
        throw std::invalid_argument("cavity_laplace: outlet index out of range");
    return static_cast<std::size_t>(nu);
}

/// Porous cavity pressure problem: five-point Laplacian with ghost-node elimination.
/// Scaled by 1/h^2. Inflow p=1 on x=0, outlet p=0 on the bottom for i > nu.
inline ProblemInstance cavity_laplace(std::size_t N, double delta) {
    if (N < 2) throw std::invalid_argument("cavity_laplace: N must be >= 2");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("cavity_laplace: delta must lie in (0,1)");
    const std::size_t nu = cavity_outlet_index(N, delta);
    const std::size_t n = N * N;
    const double h = 1.0 / static_cast<double>(N + 1);
    const double s = 1.0 / (h * h);
    Triplets t{n, {}};
    Vector b(n, 0.0);
    for (std::size_t j = 1; j <= N; ++j)
        for (std::size_t i = 1; i <= N; ++i) {
            const std::size_t k = (i - 1) + (j - 1) * N;
            double d = 4.0;
            if (i == 1) b[k] += s;  // p_{0j} = 1
            else t.entries.push_back({k, k - 1, -s});
            if (i == N) d -= 1.0;  // p_{N+1,j} = p_{Nj}
            else t.entries.push_back({k, k + 1, -s});
            if (j == 1) {
                if (i <= nu) d -= 1.0;  // p_{i0} = p_{i1}; otherwise p_{i0} = 0
            } else {
                t.entries.push_back({k, k - N, -s});
            }
            if (j == N) d -= 1.0;  // p_{i,N+1} = p_{iN}
            else t.entries.push_back({k, k + N, -s});
            t.entries.push_back({k, k, d * s});
        }
    return {build_diag(t), std::move(b), std::nullopt,
            "cavity N=" + std::to_string(N) + " nu=" + std::to_string(nu)};
}

/// a_ij = 1/(i+j-1) + shift*[i==j], b = A * ones.
inline ProblemInstance hilbert(std::size_t n, double shift = 0.0) {
    if (n < 1) throw std::invalid_argument("hilbert: n must be >= 1");
    DenseMatrix A(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            A(i, j) = 1.0 / static_cast<double>(i + j + 1) + (i == j ? shift : 0.0);
    Vector ones(n, 1.0);
    Vector b = matvec(A, ones);
    return {A, std::move(b), ones, "hilbert n=" + std::to_string(n)};
}

/// T1 (x) I + I (x) T1 where T1 has unit diagonal and -1 off-diagonals.
inline ProblemInstance indefinite_kron(std::size_t N) {
    if (N < 2) throw std::invalid_argument("indefinite_kron: N must be >= 2");
    const std::size_t n = N * N;
    Triplets t{n, {}};
    for (std::size_t j = 0; j < N; ++j)
        for (std::size_t i = 0; i < N; ++i) {
            const std::size_t k = i + j * N;
            t.entries.push_back({k, k, 2.0});
            if (i > 0) t.entries.push_back({k, k - 1, -1.0});
            if (i + 1 < N) t.entries.push_back({k, k + 1, -1.0});
            if (j > 0) t.entries.push_back({k, k - N, -1.0});
            if (j + 1 < N) t.entries.push_back({k, k + N, -1.0});
        }
    SparseMatrix A = build_diag(t);
    Vector ones(n, 1.0);
    Vector b = matvec(A, ones);
    return {std::move(A), std::move(b), ones, "indefinite N=" + std::to_string(N)};
}

/// Seeded nonsymmetric pattern with round(density*n^2) entries including the diagonal.
/// Off-diagonal values uniform in [-1,1); diagonal = diag_shift + row abs sum.
inline ProblemInstance random_sparse(std::size_t n, double density, std::uint64_t seed,
                                     double diag_shift = 1.0, Format format = Format::row) {
    if (n < 1) throw std::invalid_argument("random_sparse: n must be >= 1");
    if (!(density > 0.0 && density <= 1.0)) throw std::invalid_argument("random_sparse: density must lie in (0,1]");
    Lcg64 rng(seed);
    const std::size_t total = n * n;
    std::size_t target = static_cast<std::size_t>(std::llround(density * static_cast<double>(total)));
    target = std::max(target, n);
    std::set<std::pair<std::size_t, std::size_t>> picked;
    for (std::size_t i = 0; i < n; ++i) picked.insert({i, i});
    if (target == total) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) picked.insert({i, j});
    }
    while (picked.size() < target) {
        const auto i = static_cast<std::size_t>(rng.next() >> 33) % n;
        const auto j = static_cast<std::size_t>(rng.next() >> 33) % n;
        picked.insert({i, j});
    }
    Triplets t{n, {}};
    Vector rowsum(n, 0.0);
    for (const auto& [i, j] : picked) {
        if (i == j) continue;
        double v = 2.0 * rng.uniform() - 1.0;
        if (v == 0.0) v = 0.5;
        t.entries.push_back({i, j, v});
        rowsum[i] += std::abs(v);
    }
    for (std::size_t i = 0; i < n; ++i) t.entries.push_back({i, i, diag_shift + rowsum[i]});
    SparseMatrix A = build(t, format);
    Vector ones(n, 1.0);
    Vector b = matvec(A, ones);
    return {std::move(A), std::move(b), ones, "random n=" + std::to_string(n)};
}

}  // namespace krylov

#endif
