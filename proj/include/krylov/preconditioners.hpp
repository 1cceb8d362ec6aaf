// SPDX-License-Identifier: Apache-2.0
#ifndef KRYLOV_PRECONDITIONERS_HPP
#define KRYLOV_PRECONDITIONERS_HPP

#include <cmath>
#include <functional>
#include <memory>
#include <stdexcept>
#include <vector>

#include "chebyshev.hpp"
#include "core_linalg.hpp"
#include "krylov_spd.hpp"
#include "solve_report.hpp"
#include "sparse_storage.hpp"

namespace krylov {

using Preconditioner = std::function<Vector(const Vector&)>;

inline Preconditioner identity_preconditioner() {
    return [](const Vector& r) { return r; };
}

inline Preconditioner jacobi_preconditioner(const SparseMatrix& A) {
    auto d = std::make_shared<const Vector>(diagonal(A));
    for (double v : *d)
        if (v == 0.0) throw std::domain_error("jacobi_preconditioner: zero diagonal entry");
    return [d](const Vector& r) {
        Vector s(r.size());
        for (std::size_t i = 0; i < r.size(); ++i) s[i] = r[i] / (*d)[i];
        return s;
    };
}

/// s_i = C r_i, eta_i = r_i^T s_i. aux holds sqrt(eta_i), the C-norm of r_i.
template <Operator Op, Operator Prec>
SolveReport pcg(const Op& A, const Vector& b, const Prec& C, Vector x0, const SolveConfig& cfg = {}) {
    const std::size_t n = b.size();
    const std::size_t max_iter = max_iter_or(cfg, 10 * n);
    SolveReport rep;
    rep.x = std::move(x0);
    Vector r = sub(b, A(rep.x));
    const StopContext ctx{norm(b), norm(r)};
    Vector s = C(r);
    double eta = dot(r, s);
    rep.history.push_back(ctx.r0_norm);
    if (cfg.record_iterates) {
        rep.iterates.push_back(rep.x);
        rep.residuals.push_back(r);
    }
    if (eta < 0.0) {
        rep.status = Status::breakdown;
        rep.reason = breakdown::precond_not_spd;
        return rep;
    }
    rep.aux.push_back(std::sqrt(eta));
    Vector p = s;
    for (std::size_t i = 1;; ++i) {
        if (eta == 0.0 || stopping_check(rep.history.back(), cfg.stop, ctx).stop) {
            rep.status = Status::converged;
            return rep;
        }
        if (i > max_iter) break;
        const Vector v = A(p);
        const double d_hat = dot(p, v);
        if (!(d_hat > 0.0)) {
            rep.status = Status::breakdown;
            rep.reason = breakdown::not_spd;
            return rep;
        }
        const double lambda_hat = eta / d_hat;
        axpy(lambda_hat, p, rep.x);
        axpy(-lambda_hat, v, r);
        s = C(r);
        const double eta_new = dot(r, s);
        rep.iterations = i;
        rep.history.push_back(norm(r));
        if (cfg.record_true_residual) rep.true_history.push_back(norm(sub(b, A(rep.x))));
        if (cfg.record_iterates) {
            rep.iterates.push_back(rep.x);
            rep.residuals.push_back(r);
        }
        if (eta_new < 0.0) {
            rep.status = Status::breakdown;
            rep.reason = breakdown::precond_not_spd;
            return rep;
        }
        rep.aux.push_back(std::sqrt(eta_new));
        const double mu = eta_new / eta;
        for (std::size_t k = 0; k < n; ++k) p[k] = s[k] + mu * p[k];
        eta = eta_new;
    }
    rep.status = Status::max_iter;
    return rep;
}

// ---------------------------------------------------------------------------
// incomplete factorizations of pentadiagonal Stieltjes matrices

/// Bands of a symmetric pentadiagonal matrix: a_i = A(i,i), b_i = A(i,i-1), c_i = A(i,i-N).
struct PentaBands {
    std::size_t N = 0;
    Vector a, b, c;
};

inline PentaBands penta_bands(const SparseMatrix& A, std::size_t N) {
    const std::size_t n = size(A);
    if (N < 1 || N >= n) throw std::invalid_argument("penta_bands: band offset out of range");
    PentaBands p{N, Vector(n, 0.0), Vector(n, 0.0), Vector(n, 0.0)};
    for (const auto& [ij, v] : detail::accumulate(to_triplets(A))) {
        const auto [i, j] = ij;
        if (i == j) p.a[i] = v;
        else if (j + 1 == i) p.b[i] = v;
        else if (j + N == i) p.c[i] = v;
        else if (i + 1 == j || i + N == j) continue;  // upper bands, mirrored below
        else throw std::invalid_argument("penta_bands: entry outside the five bands");
    }
    if (N == 1)
        for (std::size_t i = 0; i < n; ++i) p.c[i] = 0.0;
    return p;
}

/// L~D~ shares its strictly lower part with A; only d~ is stored.
struct IcFactors {
    PentaBands bands;
    Vector dt;
};

namespace detail {

inline IcFactors incomplete_factor(const SparseMatrix& A, std::size_t N, bool modified) {
    IcFactors f{penta_bands(A, N), {}};
    const auto& [Nb, a, b, c] = f.bands;
    const std::size_t n = a.size();
    f.dt.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double d = a[i];
        if (i >= 1) {
            const double extra = (modified && i + Nb - 1 < n) ? c[i + Nb - 1] : 0.0;
            d -= b[i] * (b[i] + extra) / f.dt[i - 1];
        }
        if (i >= Nb) {
            const double extra = modified ? b[i - Nb + 1] : 0.0;
            d -= c[i] * (c[i] + extra) / f.dt[i - Nb];
        }
        if (!(d > 0.0)) throw breakdown_error("ic-pivot");
        f.dt[i] = d;
    }
    return f;
}

}  // namespace detail

inline IcFactors ic0_pentadiagonal(const SparseMatrix& A, std::size_t N) {
    return detail::incomplete_factor(A, N, false);
}

/// Modified variant: dropped fill is compensated on the diagonal, so M 1 = A 1.
inline IcFactors mic_pentadiagonal(const SparseMatrix& A, std::size_t N) {
    return detail::incomplete_factor(A, N, true);
}

/// Solves (L~D~) D~^{-1} (L~D~)^T s = r.
inline Vector apply_ic_solve(const IcFactors& f, const Vector& r) {
    const auto& [N, a, b, c] = f.bands;
    const std::size_t n = f.dt.size();
    Vector y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = r[i];
        if (i >= 1) s -= b[i] * y[i - 1];
        if (i >= N) s -= c[i] * y[i - N];
        y[i] = s / f.dt[i];
    }
    for (std::size_t i = 0; i < n; ++i) y[i] *= f.dt[i];
    Vector x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = y[i];
        if (i + 1 < n) s -= b[i + 1] * x[i + 1];
        if (i + N < n) s -= c[i + N] * x[i + N];
        x[i] = s / f.dt[i];
    }
    return x;
}

/// M v = (L~D~) D~^{-1} (L~D~)^T v.
inline Vector apply_ic_matrix(const IcFactors& f, const Vector& v) {
    const auto& [N, a, b, c] = f.bands;
    const std::size_t n = f.dt.size();
    Vector w(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = f.dt[i] * v[i];
        if (i + 1 < n) s += b[i + 1] * v[i + 1];
        if (i + N < n) s += c[i + N] * v[i + N];
        w[i] = s / f.dt[i];
    }
    Vector y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = f.dt[i] * w[i];
        if (i >= 1) s += b[i] * w[i - 1];
        if (i >= N) s += c[i] * w[i - N];
        y[i] = s;
    }
    return y;
}

inline Preconditioner ic_preconditioner(IcFactors f) {
    auto p = std::make_shared<const IcFactors>(std::move(f));
    return [p](const Vector& r) { return apply_ic_solve(*p, r); };
}

// ---------------------------------------------------------------------------
// block preconditioner for block-tridiagonal matrices

enum class SigmaRule { tridiagonal, full };

struct BlockFactors {
    std::size_t block_size = 0;
    std::vector<DenseMatrix> D;      // D~_i
    std::vector<DenseMatrix> chol;   // Cholesky factors of D~_i
    std::vector<DenseMatrix> Sigma;  // sparse approximations of D~_i^{-1}
    std::vector<DenseMatrix> B;      // subdiagonal blocks, B[0] unused
};

inline BlockFactors block_precond(const SparseMatrix& A, std::size_t N, SigmaRule rule = SigmaRule::tridiagonal) {
    const std::size_t n = size(A);
    if (N < 1 || n % N != 0) throw std::invalid_argument("block_precond: block size must divide n");
    const std::size_t nb = n / N;
    std::vector<DenseMatrix> Ad(nb, DenseMatrix(N, N)), Bs(nb, DenseMatrix(N, N));
    for (const auto& e : to_triplets(A).entries) {
        const std::size_t I = e.row / N, J = e.col / N;
        if (I == J) Ad[I](e.row % N, e.col % N) += e.value;
        else if (J + 1 == I) Bs[I](e.row % N, e.col % N) += e.value;
        else if (I + 1 == J) continue;
        else throw std::invalid_argument("block_precond: matrix is not block tridiagonal");
    }
    BlockFactors f{N, {}, {}, {}, Bs};
    for (std::size_t I = 0; I < nb; ++I) {
        DenseMatrix D = Ad[I];
        if (I > 0) {
            const DenseMatrix BS = multiply(Bs[I], f.Sigma[I - 1]);
            const DenseMatrix corr = multiply(BS, transpose(Bs[I]));
            for (std::size_t k = 0; k < D.entries.size(); ++k) D.entries[k] -= corr.entries[k];
        }
        DenseMatrix L;
        try {
            L = cholesky(D);
        } catch (const breakdown_error&) {
            throw breakdown_error("block-pivot");
        }
        DenseMatrix Sig(N, N);
        Vector e(N, 0.0);
        for (std::size_t j = 0; j < N; ++j) {
            e[j] = 1.0;
            const Vector col = cholesky_solve(L, e);
            e[j] = 0.0;
            for (std::size_t i = 0; i < N; ++i) {
                const bool keep = rule == SigmaRule::full || (i + 1 >= j && i <= j + 1);
                if (keep) Sig(i, j) = col[i];
            }
        }
        f.D.push_back(std::move(D));
        f.chol.push_back(std::move(L));
        f.Sigma.push_back(std::move(Sig));
    }
    return f;
}

/// Solves L~ D~^{-1} L~^T s = r with L~ block lower bidiagonal (D~_i, B_i).
inline Vector apply_block_solve(const BlockFactors& f, const Vector& r) {
    const std::size_t N = f.block_size, nb = f.D.size();
    auto block = [N](const Vector& v, std::size_t I) { return Vector(v.begin() + I * N, v.begin() + (I + 1) * N); };
    std::vector<Vector> w(nb);
    for (std::size_t I = 0; I < nb; ++I) {
        Vector rhs = block(r, I);
        if (I > 0) axpy(-1.0, matvec(f.B[I], w[I - 1]), rhs);
        w[I] = cholesky_solve(f.chol[I], rhs);
    }
    std::vector<Vector> s(nb);
    for (std::size_t I = nb; I-- > 0;) {
        Vector rhs = matvec(f.D[I], w[I]);
        if (I + 1 < nb) axpy(-1.0, matvec_transpose(f.B[I + 1], s[I + 1]), rhs);
        s[I] = cholesky_solve(f.chol[I], rhs);
    }
    Vector out;
    out.reserve(N * nb);
    for (const auto& v : s) out.insert(out.end(), v.begin(), v.end());
    return out;
}

inline Preconditioner block_preconditioner(BlockFactors f) {
    auto p = std::make_shared<const BlockFactors>(std::move(f));
    return [p](const Vector& r) { return apply_block_solve(*p, r); };
}

// ---------------------------------------------------------------------------
// polynomial preconditioner C_{m-1}(A) = sum_k gamma_k U_{m-1-k}(mu(A))

struct PolyPrecond {
    std::size_t m = 1;
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    std::vector<double> gammas;  // gamma_0 .. gamma_{m-1}
    double t_m_mu0 = 1.0;        // T_m(mu(0))

    double mu(double lambda) const { return (lambda_max + lambda_min - 2.0 * lambda) / (lambda_max - lambda_min); }
    double mu0() const { return mu(0.0); }
    double epsilon() const { return 1.0 / t_m_mu0; }
};

inline PolyPrecond poly_precond_build(std::size_t m, double lambda_min, double lambda_max) {
    if (m < 1) throw std::invalid_argument("poly_precond_build: degree must be >= 1");
    if (!(lambda_min > 0.0 && lambda_min < lambda_max))
        throw std::invalid_argument("poly_precond_build: need 0 < lambda_min < lambda_max");
    PolyPrecond p{m, lambda_min, lambda_max, {}, 1.0};
    const double mu0 = p.mu0();
    std::vector<double> T{1.0, mu0};
    for (std::size_t i = 1; i < m; ++i) T.push_back(2.0 * mu0 * T[i] - T[i - 1]);
    p.t_m_mu0 = T[m];
    const double width = lambda_max - lambda_min;
    p.gammas.push_back(2.0 / (width * p.t_m_mu0));
    for (std::size_t k = 1; k < m; ++k) p.gammas.push_back(4.0 * T[k] / (width * p.t_m_mu0));
    return p;
}

namespace detail {

/// G v = 2 mu(A) v = (2(lmax + lmin) v - 4 A v)/(lmax - lmin)
template <Operator Op>
Vector apply_G(const PolyPrecond& p, const Op& A, const Vector& v) {
    const Vector Av = A(v);
    const double w = p.lambda_max - p.lambda_min;
    const double c0 = 2.0 * (p.lambda_max + p.lambda_min) / w, c1 = -4.0 / w;
    Vector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = c0 * v[i] + c1 * Av[i];
    return out;
}

}  // namespace detail

/// p_m(A) v = v - T_m(mu(A)) v / T_m(mu(0)); m matvecs.
template <Operator Op>
Vector poly_apply_pmA(const PolyPrecond& p, const Op& A, const Vector& v) {
    Vector y_prev = v;
    Vector y = detail::apply_G(p, A, v);
    scale(y, 0.5);
    for (std::size_t i = 1; i < p.m; ++i) {
        Vector next = detail::apply_G(p, A, y);
        axpy(-1.0, y_prev, next);
        y_prev = std::move(y);
        y = std::move(next);
    }
    Vector out = v;
    axpy(-1.0 / p.t_m_mu0, y, out);
    return out;
}

/// Clenshaw: y_0 = gamma_0 b, y_k = G y_{k-1} - y_{k-2} + gamma_k b; m-1 matvecs.
template <Operator Op>
Vector poly_apply_Cb(const PolyPrecond& p, const Op& A, const Vector& b) {
    Vector y_prev(b.size(), 0.0);
    Vector y = scaled(b, p.gammas[0]);
    for (std::size_t k = 1; k < p.m; ++k) {
        Vector next = detail::apply_G(p, A, y);
        axpy(-1.0, y_prev, next);
        axpy(p.gammas[k], b, next);
        y_prev = std::move(y);
        y = std::move(next);
    }
    return y;
}

/// Scalar Clenshaw evaluation of C_{m-1}(lambda).
inline double poly_eval_C(const PolyPrecond& p, double lambda) {
    const double two_mu = 2.0 * p.mu(lambda);
    double y_prev = 0.0, y = p.gammas[0];
    for (std::size_t k = 1; k < p.m; ++k) {
        const double next = two_mu * y - y_prev + p.gammas[k];
        y_prev = y;
        y = next;
    }
    return y;
}

/// e_m(lambda) = T_m(mu(lambda)) / T_m(mu(0))
inline double poly_error_function(const PolyPrecond& p, double lambda) {
    return cheb_T(p.m, p.mu(lambda)) / p.t_m_mu0;
}

/// Power-basis coefficients of p_m(lambda) = sum_i c_i lambda^{m-i}, highest degree first.
inline std::vector<double> poly_pm_monomial(const PolyPrecond& p) {
    // mu(lambda) = s + t lambda
    const double s = p.mu0();
    const double t = -2.0 / (p.lambda_max - p.lambda_min);
    // T_k(mu(lambda)) in ascending powers
    std::vector<double> T_prev{1.0}, T_cur{s, t};
    if (p.m == 1) T_prev = T_cur;
    for (std::size_t k = 1; k < p.m; ++k) {
        std::vector<double> next(T_cur.size() + 1, 0.0);
        for (std::size_t i = 0; i < T_cur.size(); ++i) {
            next[i] += 2.0 * s * T_cur[i];
            next[i + 1] += 2.0 * t * T_cur[i];
        }
        for (std::size_t i = 0; i < T_prev.size(); ++i) next[i] -= T_prev[i];
        T_prev = std::move(T_cur);
        T_cur = std::move(next);
    }
    const std::vector<double>& Tm = p.m == 1 ? T_prev : T_cur;
    std::vector<double> asc(p.m + 1, 0.0);
    for (std::size_t i = 0; i < Tm.size(); ++i) asc[i] = -Tm[i] / p.t_m_mu0;
    asc[0] += 1.0;
    return std::vector<double>(asc.rbegin(), asc.rend());
}

template <Operator Op>
Preconditioner poly_preconditioner(PolyPrecond p, const Op& A) {
    auto pp = std::make_shared<const PolyPrecond>(std::move(p));
    return [pp, A](const Vector& r) { return poly_apply_Cb(*pp, A, r); };
}

}  // namespace krylov

#endif
