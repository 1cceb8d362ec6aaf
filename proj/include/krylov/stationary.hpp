// SPDX-License-Identifier: Apache-2.0
#ifndef KRYLOV_STATIONARY_HPP
#define KRYLOV_STATIONARY_HPP

#include <cmath>
#include <functional>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "core_linalg.hpp"
#include "solve_report.hpp"
#include "sparse_storage.hpp"

namespace krylov {

using LinearMap = std::function<Vector(const Vector&)>;

enum class StationaryKind { jacobi, gauss_seidel, sor, ssor, block_jacobi, block_gs };

struct StationaryMethod {
    StationaryKind kind = StationaryKind::jacobi;
    double omega = 1.0;
    std::size_t block_size = 0;  // 0: sqrt(n) when n is a perfect square
};

struct StationaryConfig {
    StationaryMethod method{};
    StopRule stop{};
    std::size_t max_iter = 0;  // 0: 100 n
};

/// A = M - N, with M available only through its solve.
struct Splitting {
    LinearMap m_solve;
    LinearMap n_apply;
    LinearMap a_apply;
};

namespace detail {

inline void check_omega(double omega) {
    if (!(omega > 0.0 && omega < 2.0)) throw std::invalid_argument("relaxation parameter must lie in (0,2)");
}

inline std::size_t resolve_block_size(std::size_t n, std::size_t requested) {
    std::size_t bs = requested;
    if (bs == 0) {
        bs = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
        if (bs * bs != n) throw std::invalid_argument("block size required when n is not a perfect square");
    }
    if (bs == 0 || n % bs != 0) throw std::invalid_argument("block size must divide n");
    return bs;
}

struct DiagonalBlocks {
    std::size_t bs = 0;
    std::vector<LuFactors> lu;
};

inline DiagonalBlocks factor_diagonal_blocks(const RowCompressed& A, std::size_t bs) {
    DiagonalBlocks out{bs, {}};
    const std::size_t nb = A.n / bs;
    for (std::size_t I = 0; I < nb; ++I) {
        DenseMatrix B(bs, bs);
        for (std::size_t i = I * bs; i < (I + 1) * bs; ++i)
            for (std::size_t r = 0; r < A.k; ++r) {
                const std::size_t j = A.col(i, r);
                if (j / bs == I) B(i - I * bs, j - I * bs) += A.val(i, r);
            }
        try {
            out.lu.push_back(lu_factor(B));
        } catch (const breakdown_error&) {
            throw std::domain_error("singular diagonal block");
        }
    }
    return out;
}

inline Vector zero_diagonal_checked(const RowCompressed& A) {
    Vector d(A.n, 0.0);
    for (std::size_t i = 0; i < A.n; ++i)
        for (std::size_t r = 0; r < A.k; ++r)
            if (A.col(i, r) == i) d[i] += A.val(i, r);
    for (double v : d)
        if (v == 0.0) throw std::domain_error("zero diagonal entry");
    return d;
}

}  // namespace detail

inline Splitting split(const SparseMatrix& Ain, const StationaryMethod& method) {
    auto A = std::make_shared<const RowCompressed>(build_row(to_triplets(Ain)));
    const std::size_t n = A->n;
    LinearMap a_apply = [A](const Vector& x) { return matvec_row(*A, x); };

    switch (method.kind) {
    case StationaryKind::jacobi: {
        auto d = std::make_shared<const Vector>(detail::zero_diagonal_checked(*A));
        LinearMap m = [d](const Vector& r) {
            Vector u(r.size());
            for (std::size_t i = 0; i < r.size(); ++i) u[i] = r[i] / (*d)[i];
            return u;
        };
        LinearMap N = [A](const Vector& x) {
            Vector y(A->n, 0.0);
            for (std::size_t i = 0; i < A->n; ++i)
                for (std::size_t r = 0; r < A->k; ++r)
                    if (A->col(i, r) != i) y[i] -= A->val(i, r) * x[A->col(i, r)];
            return y;
        };
        return {m, N, a_apply};
    }
    case StationaryKind::gauss_seidel:
    case StationaryKind::sor: {
        const double w = method.kind == StationaryKind::sor ? method.omega : 1.0;
        detail::check_omega(w);
        auto d = std::make_shared<const Vector>(detail::zero_diagonal_checked(*A));
        // M = (D - wL)/w: forward sweep
        LinearMap m = [A, d, w](const Vector& r) {
            Vector u(A->n, 0.0);
            for (std::size_t i = 0; i < A->n; ++i) {
                double s = r[i];
                for (std::size_t q = 0; q < A->k; ++q) {
                    const std::size_t j = A->col(i, q);
                    if (j < i) s -= A->val(i, q) * u[j];
                }
                u[i] = w * s / (*d)[i];
            }
            return u;
        };
        // N = ((1-w)D + wU)/w
        LinearMap N = [A, d, w](const Vector& x) {
            Vector y(A->n, 0.0);
            for (std::size_t i = 0; i < A->n; ++i) {
                double s = (1.0 / w - 1.0) * (*d)[i] * x[i];
                for (std::size_t q = 0; q < A->k; ++q) {
                    const std::size_t j = A->col(i, q);
                    if (j > i) s -= A->val(i, q) * x[j];
                }
                y[i] = s;
            }
            return y;
        };
        return {m, N, a_apply};
    }
    case StationaryKind::block_jacobi:
    case StationaryKind::block_gs: {
        const std::size_t bs = detail::resolve_block_size(n, method.block_size);
        auto blocks = std::make_shared<const detail::DiagonalBlocks>(detail::factor_diagonal_blocks(*A, bs));
        const bool gs = method.kind == StationaryKind::block_gs;
        LinearMap m = [A, blocks, gs](const Vector& r) {
            const std::size_t b = blocks->bs;
            Vector u(A->n, 0.0);
            for (std::size_t I = 0; I < blocks->lu.size(); ++I) {
                Vector rhs(b);
                for (std::size_t i = I * b; i < (I + 1) * b; ++i) {
                    double s = r[i];
                    if (gs)
                        for (std::size_t q = 0; q < A->k; ++q) {
                            const std::size_t j = A->col(i, q);
                            if (j / b < I) s -= A->val(i, q) * u[j];
                        }
                    rhs[i - I * b] = s;
                }
                const Vector uI = lu_solve(blocks->lu[I], rhs);
                for (std::size_t t = 0; t < b; ++t) u[I * b + t] = uI[t];
            }
            return u;
        };
        LinearMap N = [A, bs, gs](const Vector& x) {
            Vector y(A->n, 0.0);
            for (std::size_t i = 0; i < A->n; ++i)
                for (std::size_t q = 0; q < A->k; ++q) {
                    const std::size_t j = A->col(i, q);
                    const bool outside = gs ? (j / bs > i / bs) : (j / bs != i / bs);
                    if (outside) y[i] -= A->val(i, q) * x[j];
                }
            return y;
        };
        return {m, N, a_apply};
    }
    case StationaryKind::ssor:
        break;
    }
    throw std::invalid_argument("split: SSOR has no single splitting here; use ssor_iterate");
}

namespace detail {

/// Symmetrically scaled matrix with unit diagonal, plus the scaling vector sqrt(d).
struct ScaledSystem {
    RowCompressed A_hat;
    Vector sqrt_d;
};

inline ScaledSystem scale_symmetric(const SparseMatrix& Ain) {
    RowCompressed A = build_row(to_triplets(Ain));
    const Vector d = zero_diagonal_checked(A);
    Vector sd(A.n);
    for (std::size_t i = 0; i < A.n; ++i) {
        if (d[i] < 0.0) throw breakdown_error("negative-diagonal");
        sd[i] = std::sqrt(d[i]);
    }
    for (std::size_t i = 0; i < A.n; ++i)
        for (std::size_t r = 0; r < A.k; ++r) A.vals[i * A.k + r] /= sd[i] * sd[A.col(i, r)];
    return {std::move(A), std::move(sd)};
}

/// One forward or backward SOR sweep on a unit-diagonal system.
inline void sor_sweep(const RowCompressed& A, const Vector& b, double w, Vector& x, bool forward) {
    const std::size_t n = A.n;
    for (std::size_t t = 0; t < n; ++t) {
        const std::size_t i = forward ? t : n - 1 - t;
        double s = b[i];
        for (std::size_t q = 0; q < A.k; ++q) {
            const std::size_t j = A.col(i, q);
            if (j != i) s -= A.val(i, q) * x[j];
        }
        x[i] = (1.0 - w) * x[i] + w * s;
    }
}

}  // namespace detail

/// Residual-update form: r_k = b - A x_k, M u_k = r_k, x_{k+1} = x_k + u_k.
inline SolveReport iterate_splitting(const Splitting& S, const Vector& b, const StopRule& stop,
                                     std::size_t max_iter, Vector x0) {
    SolveReport rep;
    rep.x = std::move(x0);
    Vector r = sub(b, S.a_apply(rep.x));
    const StopContext ctx{norm(b), norm(r)};
    rep.history.push_back(ctx.r0_norm);
    if (stopping_check(ctx.r0_norm, stop, ctx).stop) {
        rep.status = Status::converged;
        return rep;
    }
    for (std::size_t k = 0; k < max_iter; ++k) {
        const Vector u = S.m_solve(r);
        if (!all_finite(u)) {
            rep.status = Status::breakdown;
            rep.reason = breakdown::solve_failed;
            return rep;
        }
        axpy(1.0, u, rep.x);
        r = sub(b, S.a_apply(rep.x));
        const double rn = norm(r);
        rep.history.push_back(rn);
        rep.iterations = k + 1;
        if (!std::isfinite(rn)) {
            rep.status = Status::breakdown;
            rep.reason = breakdown::solve_failed;
            return rep;
        }
        if (stopping_check(rn, stop, ctx).stop) {
            rep.status = Status::converged;
            return rep;
        }
    }
    rep.status = Status::max_iter;
    return rep;
}

inline SolveReport ssor_iterate(const SparseMatrix& A, const Vector& b, double omega, const StopRule& stop,
                                std::size_t max_iter, Vector x0) {
    detail::check_omega(omega);
    const std::size_t n = size(A);
    if (max_iter == 0) max_iter = 100 * n;
    SolveReport rep;
    rep.x = std::move(x0);
    detail::ScaledSystem sys;
    try {
        sys = detail::scale_symmetric(A);
    } catch (const breakdown_error& e) {
        rep.status = Status::breakdown;
        rep.reason = e.kind();
        rep.history.push_back(norm(sub(b, matvec(A, rep.x))));
        return rep;
    }
    Vector b_hat(n), x_hat(n);
    for (std::size_t i = 0; i < n; ++i) {
        b_hat[i] = b[i] / sys.sqrt_d[i];
        x_hat[i] = rep.x[i] * sys.sqrt_d[i];
    }
    const StopContext ctx{norm(b), norm(sub(b, matvec(A, rep.x)))};
    rep.history.push_back(ctx.r0_norm);
    if (stopping_check(ctx.r0_norm, stop, ctx).stop) {
        rep.status = Status::converged;
        return rep;
    }
    for (std::size_t k = 0; k < max_iter; ++k) {
        detail::sor_sweep(sys.A_hat, b_hat, omega, x_hat, true);
        detail::sor_sweep(sys.A_hat, b_hat, omega, x_hat, false);
        for (std::size_t i = 0; i < n; ++i) rep.x[i] = x_hat[i] / sys.sqrt_d[i];
        const double rn = norm(sub(b, matvec(A, rep.x)));
        rep.history.push_back(rn);
        rep.iterations = k + 1;
        if (!std::isfinite(rn)) {
            rep.status = Status::breakdown;
            rep.reason = breakdown::solve_failed;
            return rep;
        }
        if (stopping_check(rn, stop, ctx).stop) {
            rep.status = Status::converged;
            return rep;
        }
    }
    rep.status = Status::max_iter;
    return rep;
}

inline SolveReport iterate(const SparseMatrix& A, const Vector& b, const StationaryConfig& cfg, Vector x0) {
    const std::size_t max_iter = cfg.max_iter > 0 ? cfg.max_iter : 100 * size(A);
    if (cfg.method.kind == StationaryKind::ssor)
        return ssor_iterate(A, b, cfg.method.omega, cfg.stop, max_iter, std::move(x0));
    return iterate_splitting(split(A, cfg.method), b, cfg.stop, max_iter, std::move(x0));
}

/// v -> M^{-1} N v; for SSOR the product of the two half-step maps.
inline LinearMap iteration_matrix_applier(const SparseMatrix& A, const StationaryMethod& method) {
    if (method.kind == StationaryKind::ssor) {
        detail::check_omega(method.omega);
        auto sys = std::make_shared<const detail::ScaledSystem>(detail::scale_symmetric(A));
        const double w = method.omega;
        return [sys, w](const Vector& v) {
            const std::size_t n = v.size();
            const Vector zero(n, 0.0);
            Vector x(n);
            for (std::size_t i = 0; i < n; ++i) x[i] = v[i] * sys->sqrt_d[i];
            detail::sor_sweep(sys->A_hat, zero, w, x, true);
            detail::sor_sweep(sys->A_hat, zero, w, x, false);
            for (std::size_t i = 0; i < n; ++i) x[i] /= sys->sqrt_d[i];
            return x;
        };
    }
    Splitting S = split(A, method);
    return [S](const Vector& v) { return S.m_solve(S.n_apply(v)); };
}

/// 1 + (rho_J / (1 + sqrt(1 - rho_GS)))^2 with rho_GS = rho_J^2.
inline double optimal_omega_estimate(double rho_j) {
    if (!(rho_j > 0.0 && rho_j < 1.0)) throw std::invalid_argument("optimal_omega_estimate: rho_j must lie in (0,1)");
    const double t = rho_j / (1.0 + std::sqrt(1.0 - rho_j * rho_j));
    return 1.0 + t * t;
}

struct SweepPoint {
    double omega = 0.0;
    double rho = 0.0;
};

/// rho(G_omega) on omega_min, omega_min+step, ... <= omega_max.
inline std::vector<SweepPoint> omega_sweep(const SparseMatrix& A, double omega_min, double omega_max, double step,
                                           bool symmetric_sor = false, std::size_t m_max = 2000) {
    if (!(step > 0.0)) throw std::invalid_argument("omega_sweep: step must be positive");
    detail::check_omega(omega_min);
    detail::check_omega(omega_max);
    std::vector<SweepPoint> out;
    const auto count = static_cast<std::size_t>(std::floor((omega_max - omega_min) / step + 1e-9));
    for (std::size_t k = 0; k <= count; ++k) {
        const double w = omega_min + static_cast<double>(k) * step;
        const StationaryMethod m{symmetric_sor ? StationaryKind::ssor : StationaryKind::sor, w, 0};
        out.push_back({w, spectral_radius_estimate(iteration_matrix_applier(A, m), size(A), m_max)});
    }
    return out;
}

struct Diagnostics {
    bool diag_dominant_rows = false;  // weak in every row, strict in at least one
    bool diag_dominant_cols = false;
    bool strictly_dominant_rows = false;
    bool strictly_dominant_cols = false;
    bool m_matrix_sign_pattern = false;
    bool symmetric = false;
};

inline Diagnostics diagnostics(const SparseMatrix& A) {
    const std::size_t n = size(A);
    const auto acc = detail::accumulate(to_triplets(A));
    Vector d(n, 0.0), row_off(n, 0.0), col_off(n, 0.0);
    bool sign = true;
    for (const auto& [ij, v] : acc) {
        if (ij.first == ij.second) {
            d[ij.first] = v;
        } else {
            row_off[ij.first] += std::abs(v);
            col_off[ij.second] += std::abs(v);
            if (v > 0.0) sign = false;
        }
    }
    Diagnostics out;
    bool weak_r = true, weak_c = true, strict_r = true, strict_c = true, any_r = false, any_c = false;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = std::abs(d[i]);
        if (d[i] <= 0.0) sign = false;
        if (a < row_off[i]) weak_r = false;
        if (a < col_off[i]) weak_c = false;
        if (!(a > row_off[i])) strict_r = false;
        else any_r = true;
        if (!(a > col_off[i])) strict_c = false;
        else any_c = true;
    }
    out.diag_dominant_rows = weak_r && any_r;
    out.diag_dominant_cols = weak_c && any_c;
    out.strictly_dominant_rows = strict_r;
    out.strictly_dominant_cols = strict_c;
    out.m_matrix_sign_pattern = sign;
    out.symmetric = is_symmetric(A);
    return out;
}

}  // namespace krylov

#endif
