// SPDX-License-Identifier: Apache-2.0
#ifndef KRYLOV_KRYLOV_NONSYMMETRIC_HPP
#define KRYLOV_KRYLOV_NONSYMMETRIC_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "core_linalg.hpp"
#include "solve_report.hpp"

namespace krylov {

inline constexpr double zero_threshold = 1e-14;

// ---------------------------------------------------------------------------
// Arnoldi / GMRES

/// A U_m = U_{m+1} H with H (m+1) x m upper Hessenberg.
struct ArnoldiBasis {
    std::vector<Vector> U;
    DenseMatrix H;
    std::size_t steps = 0;
    bool invariant = false;
};

template <Operator Op>
ArnoldiBasis arnoldi(const Op& A, const Vector& u1, std::size_t steps) {
    const double n0 = norm(u1);
    if (n0 == 0.0) throw std::invalid_argument("arnoldi: zero start vector");
    ArnoldiBasis res;
    res.H = DenseMatrix(steps + 1, steps);
    res.U.push_back(scaled(u1, 1.0 / n0));
    double scale_ref = 0.0;
    for (std::size_t i = 0; i < steps; ++i) {
        Vector w = A(res.U[i]);
        scale_ref = std::max(scale_ref, norm(w));
        for (std::size_t j = 0; j <= i; ++j) {
            const double h = dot(res.U[j], w);
            res.H(j, i) = h;
            axpy(-h, res.U[j], w);
        }
        const double h_next = norm(w);
        res.H(i + 1, i) = h_next;
        res.steps = i + 1;
        if (h_next <= zero_threshold * scale_ref) {
            res.H(i + 1, i) = 0.0;
            res.invariant = true;
            break;
        }
        res.U.push_back(scaled(w, 1.0 / h_next));
    }
    return res;
}

namespace detail {

/// Back substitution on the leading k x k block of the column-stored R.
inline Vector solve_upper(const std::vector<Vector>& Rcols, const Vector& g, std::size_t k) {
    Vector y(k, 0.0);
    for (std::size_t i = k; i-- > 0;) {
        double s = g[i];
        for (std::size_t j = i + 1; j < k; ++j) s -= Rcols[j][i] * y[j];
        y[i] = s / Rcols[i][i];
    }
    return y;
}

inline Vector combine(const Vector& x0, const std::vector<Vector>& U, const Vector& y) {
    Vector x = x0;
    for (std::size_t j = 0; j < y.size(); ++j) axpy(y[j], U[j], x);
    return x;
}

}  // namespace detail

struct GmresOptions {
    std::size_t restart = 0;  // 0: no restart
};

/// aux holds |g_i|; history is the same value, equal to ||r_i|| in exact arithmetic.
template <Operator Op>
SolveReport gmres(const Op& A, const Vector& b, Vector x0, const SolveConfig& cfg = {}, GmresOptions opt = {}) {
    const std::size_t n = b.size();
    const std::size_t max_iter = max_iter_or(cfg, 10 * n);
    const std::size_t cycle = opt.restart > 0 ? opt.restart : max_iter;
    SolveReport rep;
    rep.x = std::move(x0);
    Vector r = sub(b, A(rep.x));
    const StopContext ctx{norm(b), norm(r)};
    const double tol = residual_threshold(cfg.stop, ctx);
    double beta = ctx.r0_norm;
    rep.history.push_back(beta);
    rep.aux.push_back(beta);
    if (cfg.record_iterates) rep.iterates.push_back(rep.x);
    double scale_ref = 0.0;
    std::size_t total = 0;

    while (true) {
        if (beta == 0.0 || beta <= tol) {
            rep.status = Status::converged;
            return rep;
        }
        if (total >= max_iter) break;
        const Vector x_start = rep.x;
        std::vector<Vector> U{scaled(r, 1.0 / beta)};
        std::vector<Vector> Rcols;
        std::vector<GivensRotation> rots;
        Vector g{beta};
        bool lucky = false;
        for (std::size_t j = 0; j < cycle && total < max_iter; ++j) {
            Vector w = A(U[j]);
            scale_ref = std::max(scale_ref, norm(w));
            Vector h(j + 1);
            for (std::size_t k = 0; k <= j; ++k) {
                h[k] = dot(U[k], w);
                axpy(-h[k], U[k], w);
            }
            const double h_next = norm(w);
            for (std::size_t k = 0; k < j; ++k) {
                const auto [a, c] = rots[k].apply(h[k], h[k + 1]);
                h[k] = a;
                h[k + 1] = c;
            }
            const auto [rot, rr] = make_givens(h[j], h_next);
            h[j] = rr;
            rots.push_back(rot);
            Rcols.push_back(h);
            const auto [gj, gj1] = rot.apply(g[j], 0.0);
            g[j] = gj;
            g.push_back(gj1);
            ++total;
            rep.iterations = total;
            rep.history.push_back(std::abs(gj1));
            rep.aux.push_back(std::abs(gj1));
            if (rr <= zero_threshold * scale_ref) {
                rep.x = detail::combine(x_start, U, detail::solve_upper(Rcols, g, j));
                rep.status = Status::breakdown;
                rep.reason = breakdown::singular_r;
                return rep;
            }
            lucky = h_next <= zero_threshold * scale_ref;
            const bool done = lucky || std::abs(gj1) <= tol;
            if (cfg.record_true_residual || cfg.record_iterates || done || j + 1 == cycle || total == max_iter) {
                rep.x = detail::combine(x_start, U, detail::solve_upper(Rcols, g, j + 1));
                if (cfg.record_true_residual) rep.true_history.push_back(norm(sub(b, A(rep.x))));
                if (cfg.record_iterates) rep.iterates.push_back(rep.x);
            }
            if (done) break;
            U.push_back(scaled(w, 1.0 / h_next));
        }
        r = sub(b, A(rep.x));
        beta = norm(r);
        if (lucky && beta > tol) {
            rep.status = Status::breakdown;
            rep.reason = breakdown::invariant_subspace;
            return rep;
        }
        if (lucky || std::abs(g.back()) <= tol) {
            rep.status = Status::converged;
            return rep;
        }
    }
    rep.status = Status::max_iter;
    return rep;
}

// ---------------------------------------------------------------------------
// nonsymmetric Lanczos

/// A U = U T + ..., A^T W = W T^T + ..., W^T U = I. T has gamma on the
/// diagonal, alpha below and beta above.
struct BiLanczosResult {
    std::vector<Vector> U, W;
    std::vector<double> gamma, alpha, beta;
    Status status = Status::max_iter;
    std::string reason;
};

template <Operator Op, Operator OpT>
BiLanczosResult bilanczos(const Op& A, const OpT& At, const Vector& r0, const Vector& r0_hat, std::size_t steps) {
    BiLanczosResult res;
    const double n0 = norm(r0);
    if (n0 == 0.0) throw std::invalid_argument("bilanczos: zero start vector");
    Vector u = scaled(r0, 1.0 / n0);
    const double s = dot(u, r0_hat);
    if (std::abs(s) <= zero_threshold * norm(r0_hat)) {
        res.status = Status::breakdown;
        res.reason = breakdown::serious;
        return res;
    }
    Vector w = scaled(r0_hat, 1.0 / s);
    const std::size_t n = r0.size();
    Vector u_prev(n, 0.0), w_prev(n, 0.0);
    double alpha_prev = 0.0, beta_prev = 0.0, scale_ref = 0.0;
    res.U.push_back(u);
    res.W.push_back(w);
    for (std::size_t i = 0; i < steps; ++i) {
        Vector au = A(u);
        Vector aw = At(w);
        scale_ref = std::max(scale_ref, norm(au));
        const double gamma = dot(w, au);
        axpy(-gamma, u, au);
        axpy(-beta_prev, u_prev, au);
        axpy(-gamma, w, aw);
        axpy(-alpha_prev, w_prev, aw);
        const double alpha = norm(au);
        res.gamma.push_back(gamma);
        if (alpha <= zero_threshold * scale_ref) {
            res.status = Status::breakdown;
            res.reason = breakdown::invariant_subspace;
            return res;
        }
        Vector u_next = scaled(au, 1.0 / alpha);
        const double beta = dot(u_next, aw);
        res.alpha.push_back(alpha);
        if (std::abs(beta) <= zero_threshold * std::max(norm(aw), 1e-300)) {
            res.status = Status::breakdown;
            res.reason = breakdown::serious;
            return res;
        }
        res.beta.push_back(beta);
        Vector w_next = scaled(aw, 1.0 / beta);
        u_prev = std::move(u);
        w_prev = std::move(w);
        u = std::move(u_next);
        w = std::move(w_next);
        res.U.push_back(u);
        res.W.push_back(w);
        alpha_prev = alpha;
        beta_prev = beta;
    }
    res.status = Status::max_iter;
    return res;
}

// ---------------------------------------------------------------------------
// Bi-CG

struct BicgReport : SolveReport {
    std::vector<double> lambda_hat;
    std::vector<double> mu;
    std::vector<Vector> shadow_residuals;   // r^_i, when iterates are recorded
    std::vector<Vector> directions;         // p_i
    std::vector<Vector> shadow_directions;  // p^_i
};

template <Operator Op, Operator OpT>
BicgReport bicg(const Op& A, const OpT& At, const Vector& b, Vector x0, const SolveConfig& cfg = {}) {
    const std::size_t n = b.size();
    const std::size_t max_iter = max_iter_or(cfg, 10 * n);
    BicgReport rep;
    rep.x = std::move(x0);
    Vector r = sub(b, A(rep.x));
    const StopContext ctx{norm(b), norm(r)};
    Vector r_hat = r, p = r, p_hat = r;
    double eta = dot(r_hat, r);
    rep.history.push_back(ctx.r0_norm);
    auto record = [&] {
        if (!cfg.record_iterates) return;
        rep.iterates.push_back(rep.x);
        rep.residuals.push_back(r);
        rep.shadow_residuals.push_back(r_hat);
    };
    record();
    for (std::size_t i = 1;; ++i) {
        const double rn = rep.history.back();
        if (rn == 0.0 || stopping_check(rn, cfg.stop, ctx).stop) {
            rep.status = Status::converged;
            return rep;
        }
        if (i > max_iter) break;
        if (std::abs(eta) <= zero_threshold * rn * norm(r_hat)) {
            rep.status = Status::breakdown;
            rep.reason = breakdown::serious;
            return rep;
        }
        const Vector v = A(p);
        const Vector v_hat = At(p_hat);
        const double d_hat = dot(p_hat, v);
        if (std::abs(d_hat) <= zero_threshold * norm(p_hat) * norm(v)) {
            rep.status = Status::breakdown;
            rep.reason = breakdown::serious;
            return rep;
        }
        const double lambda_hat = eta / d_hat;
        if (cfg.record_iterates) {
            rep.directions.push_back(p);
            rep.shadow_directions.push_back(p_hat);
        }
        axpy(lambda_hat, p, rep.x);
        axpy(-lambda_hat, v, r);
        axpy(-lambda_hat, v_hat, r_hat);
        const double eta_new = dot(r_hat, r);
        const double mu = eta_new / eta;
        for (std::size_t k = 0; k < n; ++k) {
            p[k] = r[k] + mu * p[k];
            p_hat[k] = r_hat[k] + mu * p_hat[k];
        }
        eta = eta_new;
        rep.lambda_hat.push_back(lambda_hat);
        rep.mu.push_back(mu);
        rep.iterations = i;
        rep.history.push_back(norm(r));
        if (cfg.record_true_residual) rep.true_history.push_back(norm(sub(b, A(rep.x))));
        record();
    }
    rep.status = Status::max_iter;
    return rep;
}

// ---------------------------------------------------------------------------
// QMR

/// history and aux hold the quasi-residual |g_i|.
template <Operator Op, Operator OpT>
SolveReport qmr(const Op& A, const OpT& At, const Vector& b, Vector x0, const SolveConfig& cfg = {}) {
    const std::size_t n = b.size();
    const std::size_t max_iter = max_iter_or(cfg, 10 * n);
    SolveReport rep;
    rep.x = std::move(x0);
    const Vector r0 = sub(b, A(rep.x));
    const StopContext ctx{norm(b), norm(r0)};
    const double tol = residual_threshold(cfg.stop, ctx);
    double g = ctx.r0_norm;
    rep.history.push_back(g);
    rep.aux.push_back(g);
    if (cfg.record_iterates) rep.iterates.push_back(rep.x);
    if (g == 0.0 || g <= tol) {
        rep.status = Status::converged;
        return rep;
    }
    Vector u = scaled(r0, 1.0 / g), w = u, u_prev(n, 0.0), w_prev(n, 0.0);
    Vector p_prev(n, 0.0), p_prev2(n, 0.0);
    GivensRotation rot_prev, rot_prev2;
    double alpha_prev = 0.0, beta_prev = 0.0, scale_ref = 0.0;
    for (std::size_t i = 1; i <= max_iter; ++i) {
        const Vector v = A(u);
        scale_ref = std::max(scale_ref, norm(v));
        const double gamma = dot(w, v);
        Vector u_hat = v;
        axpy(-gamma, u, u_hat);
        axpy(-beta_prev, u_prev, u_hat);
        const double alpha = norm(u_hat);

        Vector p = u;
        double r_im1 = beta_prev, r_ii = gamma;
        if (i > 2) {
            const auto [r_im2, r_new] = rot_prev2.apply(0.0, r_im1);
            r_im1 = r_new;
            axpy(-r_im2, p_prev2, p);
        }
        if (i > 1) {
            const auto [a, c] = rot_prev.apply(r_im1, r_ii);
            r_im1 = a;
            r_ii = c;
            axpy(-r_im1, p_prev, p);
        }
        const auto [rot, rr] = make_givens(r_ii, alpha);
        if (rr <= zero_threshold * scale_ref) {
            rep.status = Status::breakdown;
            rep.reason = breakdown::singular_r;
            return rep;
        }
        scale(p, 1.0 / rr);
        const auto [xi, g_new] = rot.apply(g, 0.0);
        axpy(xi, p, rep.x);
        g = g_new;

        rep.iterations = i;
        rep.history.push_back(std::abs(g));
        rep.aux.push_back(std::abs(g));
        if (cfg.record_true_residual) rep.true_history.push_back(norm(sub(b, A(rep.x))));
        if (cfg.record_iterates) rep.iterates.push_back(rep.x);
        if (alpha <= zero_threshold * scale_ref || std::abs(g) <= tol) {
            rep.status = Status::converged;
            return rep;
        }
        Vector u_next = scaled(u_hat, 1.0 / alpha);
        Vector w_hat = At(w);
        axpy(-gamma, w, w_hat);
        axpy(-alpha_prev, w_prev, w_hat);
        const double beta = dot(u_next, w_hat);
        if (std::abs(beta) <= zero_threshold * norm(w_hat)) {
            rep.status = Status::breakdown;
            rep.reason = breakdown::serious;
            return rep;
        }
        u_prev = std::move(u);
        w_prev = std::move(w);
        u = std::move(u_next);
        w = scaled(w_hat, 1.0 / beta);
        alpha_prev = alpha;
        beta_prev = beta;
        p_prev2 = std::move(p_prev);
        p_prev = std::move(p);
        rot_prev2 = rot_prev;
        rot_prev = rot;
    }
    rep.status = Status::max_iter;
    return rep;
}

/// QMR through the LU factorization T = L H of the Lanczos matrix. Only two
/// rotations' worth of state: the least-squares matrix is lower bidiagonal.
template <Operator Op, Operator OpT>
SolveReport qmr_alt(const Op& A, const OpT& At, const Vector& b, Vector x0, const SolveConfig& cfg = {}) {
    const std::size_t n = b.size();
    const std::size_t max_iter = max_iter_or(cfg, 10 * n);
    SolveReport rep;
    rep.x = std::move(x0);
    const Vector r0 = sub(b, A(rep.x));
    const StopContext ctx{norm(b), norm(r0)};
    const double tol = residual_threshold(cfg.stop, ctx);
    double g = ctx.r0_norm;
    rep.history.push_back(g);
    rep.aux.push_back(g);
    if (cfg.record_iterates) rep.iterates.push_back(rep.x);
    if (g == 0.0 || g <= tol) {
        rep.status = Status::converged;
        return rep;
    }
    Vector u = scaled(r0, 1.0 / g), v = u, q = u, z = u;
    Vector p_prev(n, 0.0);
    GivensRotation rot_prev;
    double f = 1.0, scale_ref = 0.0;
    for (std::size_t i = 1; i <= max_iter; ++i) {
        const Vector q_hat = A(q);
        scale_ref = std::max(scale_ref, norm(q_hat));
        const double ell = dot(z, q_hat) / f;
        if (std::abs(ell) <= zero_threshold * scale_ref) {
            rep.status = Status::breakdown;
            rep.reason = breakdown::lu;
            return rep;
        }
        Vector u_hat = q_hat;
        axpy(-ell, u, u_hat);
        const double alpha = norm(u_hat);

        Vector p = q;
        double r_ii = ell;
        if (i > 1) {
            const auto [r_im1, c] = rot_prev.apply(0.0, ell);
            r_ii = c;
            axpy(-r_im1, p_prev, p);
        }
        const auto [rot, rr] = make_givens(r_ii, alpha);
        if (rr <= zero_threshold * scale_ref) {
            rep.status = Status::breakdown;
            rep.reason = breakdown::singular_r;
            return rep;
        }
        scale(p, 1.0 / rr);
        const auto [xi, g_new] = rot.apply(g, 0.0);
        axpy(xi, p, rep.x);
        g = g_new;

        rep.iterations = i;
        rep.history.push_back(std::abs(g));
        rep.aux.push_back(std::abs(g));
        if (cfg.record_true_residual) rep.true_history.push_back(norm(sub(b, A(rep.x))));
        if (cfg.record_iterates) rep.iterates.push_back(rep.x);
        if (alpha <= zero_threshold * scale_ref || std::abs(g) <= tol) {
            rep.status = Status::converged;
            return rep;
        }
        u = scaled(u_hat, 1.0 / alpha);
        Vector v_new = At(z);
        axpy(-ell, v, v_new);
        scale(v_new, 1.0 / alpha);
        v = std::move(v_new);
        const double f_new = dot(v, u);
        if (std::abs(f_new) <= zero_threshold * norm(v)) {
            rep.status = Status::breakdown;
            rep.reason = breakdown::serious;
            return rep;
        }
        const double phi = alpha * f_new / (ell * f);
        for (std::size_t k = 0; k < n; ++k) {
            q[k] = u[k] - phi * q[k];
            z[k] = v[k] - phi * z[k];
        }
        f = f_new;
        p_prev = std::move(p);
        rot_prev = rot;
    }
    rep.status = Status::max_iter;
    return rep;
}

// ---------------------------------------------------------------------------
// Golub-Kahan bidiagonalization

/// A V_k = U_{k+1} B_k, A^T U_k = V_k L_k^T with L_k lower bidiagonal
/// (alpha on the diagonal, beta below).
struct Bidiagonalization {
    std::vector<Vector> U, V;
    std::vector<double> alpha, beta;
    bool terminated = false;
};

template <Operator Op, Operator OpT>
Bidiagonalization bidiagonalize(const Op& A, const OpT& At, const Vector& u1, std::size_t steps) {
    const double n0 = norm(u1);
    if (n0 == 0.0) throw std::invalid_argument("bidiagonalize: zero start vector");
    Bidiagonalization res;
    res.U.push_back(scaled(u1, 1.0 / n0));
    double scale_ref = 0.0;
    for (std::size_t i = 0; i < steps; ++i) {
        Vector v_hat = At(res.U[i]);
        if (i > 0) axpy(-res.beta[i - 1], res.V[i - 1], v_hat);
        const double alpha = norm(v_hat);
        scale_ref = std::max(scale_ref, alpha);
        if (alpha <= zero_threshold * scale_ref) {
            res.terminated = true;
            break;
        }
        res.alpha.push_back(alpha);
        res.V.push_back(scaled(v_hat, 1.0 / alpha));
        Vector u_hat = A(res.V[i]);
        axpy(-alpha, res.U[i], u_hat);
        const double beta = norm(u_hat);
        res.beta.push_back(beta);
        if (beta <= zero_threshold * scale_ref) {
            res.terminated = true;
            break;
        }
        res.U.push_back(scaled(u_hat, 1.0 / beta));
    }
    return res;
}

/// ||r_i|| = beta_i |xi_i| is tracked without forming the residual.
template <Operator Op, Operator OpT>
SolveReport bidiag_solve(const Op& A, const OpT& At, const Vector& b, Vector x0, const SolveConfig& cfg = {}) {
    const std::size_t n = b.size();
    const std::size_t max_iter = max_iter_or(cfg, 10 * n);
    SolveReport rep;
    rep.x = std::move(x0);
    const Vector r0 = sub(b, A(rep.x));
    const StopContext ctx{norm(b), norm(r0)};
    const double tol = residual_threshold(cfg.stop, ctx);
    rep.history.push_back(ctx.r0_norm);
    if (cfg.record_iterates) rep.iterates.push_back(rep.x);
    if (ctx.r0_norm == 0.0 || ctx.r0_norm <= tol) {
        rep.status = Status::converged;
        return rep;
    }
    Vector u = scaled(r0, 1.0 / ctx.r0_norm), v_prev(n, 0.0);
    double beta_prev = 0.0, xi = 0.0, scale_ref = 0.0;
    for (std::size_t i = 1; i <= max_iter; ++i) {
        Vector v = At(u);
        axpy(-beta_prev, v_prev, v);
        const double alpha = norm(v);
        scale_ref = std::max(scale_ref, alpha);
        if (alpha <= zero_threshold * scale_ref) {
            rep.status = Status::breakdown;
            rep.reason = breakdown::invariant_subspace;
            return rep;
        }
        scale(v, 1.0 / alpha);
        Vector u_hat = A(v);
        axpy(-alpha, u, u_hat);
        const double beta = norm(u_hat);
        xi = i == 1 ? ctx.r0_norm / alpha : -xi * beta_prev / alpha;
        axpy(xi, v, rep.x);
        const double rn = beta * std::abs(xi);
        rep.iterations = i;
        rep.history.push_back(rn);
        if (cfg.record_true_residual) rep.true_history.push_back(norm(sub(b, A(rep.x))));
        if (cfg.record_iterates) rep.iterates.push_back(rep.x);
        if (beta <= zero_threshold * scale_ref || rn <= tol) {
            rep.status = Status::converged;
            return rep;
        }
        u = scaled(u_hat, 1.0 / beta);
        v_prev = std::move(v);
        beta_prev = beta;
    }
    rep.status = Status::max_iter;
    return rep;
}

// ---------------------------------------------------------------------------
// CGS and Bi-CGStab

template <Operator Op>
SolveReport cgs(const Op& A, const Vector& b, Vector x0, const SolveConfig& cfg = {}) {
    const std::size_t n = b.size();
    const std::size_t max_iter = max_iter_or(cfg, 10 * n);
    SolveReport rep;
    rep.x = std::move(x0);
    Vector r = sub(b, A(rep.x));
    const StopContext ctx{norm(b), norm(r)};
    const Vector r0_hat = r;
    Vector p = r, g = r;
    double eta = dot(r0_hat, r);
    rep.history.push_back(ctx.r0_norm);
    if (cfg.record_iterates) {
        rep.iterates.push_back(rep.x);
        rep.residuals.push_back(r);
    }
    for (std::size_t i = 1;; ++i) {
        const double rn = rep.history.back();
        if (rn == 0.0 || stopping_check(rn, cfg.stop, ctx).stop) {
            rep.status = Status::converged;
            return rep;
        }
        if (i > max_iter) break;
        if (std::abs(eta) <= zero_threshold * rn * ctx.r0_norm) {
            rep.status = Status::breakdown;
            rep.reason = breakdown::serious;
            return rep;
        }
        const Vector v = A(p);
        const double d_hat = dot(r0_hat, v);
        if (std::abs(d_hat) <= zero_threshold * ctx.r0_norm * norm(v)) {
            rep.status = Status::breakdown;
            rep.reason = breakdown::serious;
            return rep;
        }
        const double lambda_hat = eta / d_hat;
        Vector w = g;
        axpy(-lambda_hat, v, w);
        const Vector gw = add(g, w);
        axpy(lambda_hat, gw, rep.x);
        axpy(-lambda_hat, A(gw), r);
        const double eta_new = dot(r0_hat, r);
        const double mu = eta_new / eta;
        for (std::size_t k = 0; k < n; ++k) {
            g[k] = r[k] + mu * w[k];
            p[k] = g[k] + mu * (w[k] + mu * p[k]);
        }
        eta = eta_new;
        rep.iterations = i;
        rep.history.push_back(norm(r));
        if (cfg.record_true_residual) rep.true_history.push_back(norm(sub(b, A(rep.x))));
        if (cfg.record_iterates) {
            rep.iterates.push_back(rep.x);
            rep.residuals.push_back(r);
        }
    }
    rep.status = Status::max_iter;
    return rep;
}

/// aux holds the half-step residual norms ||r_{i-1/2}||.
struct BicgstabReport : SolveReport {
    std::vector<double> lambda_hat;
    std::vector<double> omega;
    std::vector<double> mu;
    std::vector<double> eta;
    std::vector<Vector> half_residuals;  // r_{i-1/2}, when iterates are recorded
};

template <Operator Op>
BicgstabReport bicgstab(const Op& A, const Vector& b, Vector x0, const SolveConfig& cfg = {}) {
    const std::size_t n = b.size();
    const std::size_t max_iter = max_iter_or(cfg, 10 * n);
    BicgstabReport rep;
    rep.x = std::move(x0);
    Vector r = sub(b, A(rep.x));
    const StopContext ctx{norm(b), norm(r)};
    const Vector r0_hat = r;
    Vector p = r;
    double eta = dot(r0_hat, r);
    rep.eta.push_back(eta);
    rep.history.push_back(ctx.r0_norm);
    if (cfg.record_iterates) {
        rep.iterates.push_back(rep.x);
        rep.residuals.push_back(r);
    }
    for (std::size_t i = 1;; ++i) {
        const double rn = rep.history.back();
        if (rn == 0.0 || stopping_check(rn, cfg.stop, ctx).stop) {
            rep.status = Status::converged;
            return rep;
        }
        if (i > max_iter) break;
        if (std::abs(eta) <= zero_threshold * rn * ctx.r0_norm) {
            rep.status = Status::breakdown;
            rep.reason = breakdown::serious;
            return rep;
        }
        const Vector v = A(p);
        const double d_hat = dot(r0_hat, v);
        if (std::abs(d_hat) <= zero_threshold * ctx.r0_norm * norm(v)) {
            rep.status = Status::breakdown;
            rep.reason = breakdown::serious;
            return rep;
        }
        const double lambda_hat = eta / d_hat;
        axpy(lambda_hat, p, rep.x);
        Vector r_half = r;
        axpy(-lambda_hat, v, r_half);
        const double half_norm = norm(r_half);
        rep.aux.push_back(half_norm);
        rep.lambda_hat.push_back(lambda_hat);
        if (cfg.record_iterates) rep.half_residuals.push_back(r_half);
        if (half_norm == 0.0 || stopping_check(half_norm, cfg.stop, ctx).stop) {
            r = std::move(r_half);
            rep.iterations = i;
            rep.history.push_back(half_norm);
            if (cfg.record_true_residual) rep.true_history.push_back(norm(sub(b, A(rep.x))));
            if (cfg.record_iterates) {
                rep.iterates.push_back(rep.x);
                rep.residuals.push_back(r);
            }
            rep.status = Status::converged;
            return rep;
        }
        const Vector t = A(r_half);
        const double tt = dot(t, t);
        const double omega = tt > 0.0 ? dot(t, r_half) / tt : 0.0;
        if (std::abs(omega) <= zero_threshold) {
            rep.iterations = i;
            rep.status = Status::breakdown;
            rep.reason = breakdown::stagnation;
            return rep;
        }
        axpy(omega, r_half, rep.x);
        r = std::move(r_half);
        axpy(-omega, t, r);
        const double eta_new = dot(r0_hat, r);
        const double mu = (eta_new / eta) * (lambda_hat / omega);
        for (std::size_t k = 0; k < n; ++k) p[k] = r[k] + mu * (p[k] - omega * v[k]);
        eta = eta_new;
        rep.omega.push_back(omega);
        rep.mu.push_back(mu);
        rep.eta.push_back(eta);
        rep.iterations = i;
        rep.history.push_back(norm(r));
        if (cfg.record_true_residual) rep.true_history.push_back(norm(sub(b, A(rep.x))));
        if (cfg.record_iterates) {
            rep.iterates.push_back(rep.x);
            rep.residuals.push_back(r);
        }
    }
    rep.status = Status::max_iter;
    return rep;
}

// ---------------------------------------------------------------------------
// left preconditioning: A <- C A, b <- C b

template <Operator Op, Operator Prec>
auto left_precondition(const Op& A, const Prec& C) {
    return [A, C](const Vector& v) { return C(A(v)); };
}

/// Transpose of C A for a symmetric C: A^T C.
template <Operator OpT, Operator Prec>
auto left_precondition_transpose(const OpT& At, const Prec& C) {
    return [At, C](const Vector& v) { return At(C(v)); };
}

}  // namespace krylov

#endif
