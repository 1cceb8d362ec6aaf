// SPDX-License-Identifier: Apache-2.0
#ifndef KRYLOV_KRYLOV_SYMMETRIC_HPP
#define KRYLOV_KRYLOV_SYMMETRIC_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "core_linalg.hpp"
#include "solve_report.hpp"

namespace krylov {

/// A U_m = U_m T_m + beta_m u_{m+1} e_m^T with orthonormal U.
struct LanczosResult {
    std::vector<Vector> U;       // u_1 .. u_m (u_{m+1} appended unless the space is invariant)
    TridiagSym T;                // gamma on the diagonal, beta_1 .. beta_{m-1} off it
    std::vector<double> beta;    // beta_1 .. beta_m
    bool invariant = false;
};

template <Operator Op>
LanczosResult lanczos(const Op& A, const Vector& u1, std::size_t steps, bool keep_basis = true) {
    const double n0 = norm(u1);
    if (n0 == 0.0) throw std::invalid_argument("lanczos: zero start vector");
    LanczosResult res;
    Vector u = scaled(u1, 1.0 / n0), u_prev(u1.size(), 0.0);
    double beta_prev = 0.0, scale_ref = 0.0;
    if (keep_basis) res.U.push_back(u);
    for (std::size_t i = 0; i < steps; ++i) {
        Vector v = A(u);
        scale_ref = std::max(scale_ref, norm(v));
        const double gamma = dot(u, v);
        axpy(-gamma, u, v);
        axpy(-beta_prev, u_prev, v);
        const double beta = norm(v);
        res.T.diag.push_back(gamma);
        res.beta.push_back(beta);
        if (beta <= 1e-14 * scale_ref) {
            res.invariant = true;
            break;
        }
        if (i + 1 < steps) res.T.offdiag.push_back(beta);
        u_prev = std::move(u);
        u = scaled(v, 1.0 / beta);
        beta_prev = beta;
        if (keep_basis) res.U.push_back(u);
    }
    return res;
}

/// Minimal residual for symmetric indefinite systems. aux holds |g_i|, the
/// recurrence residual norm.
template <Operator Op>
SolveReport minres(const Op& A, const Vector& b, Vector x0, const SolveConfig& cfg = {}) {
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
    Vector u = scaled(r0, 1.0 / g), u_prev(n, 0.0);
    Vector p_prev(n, 0.0), p_prev2(n, 0.0);
    GivensRotation rot_prev, rot_prev2;
    double beta_prev = 0.0, scale_ref = 0.0;
    for (std::size_t i = 1; i <= max_iter; ++i) {
        Vector v = A(u);
        scale_ref = std::max(scale_ref, norm(v));
        const double gamma = dot(u, v);
        axpy(-gamma, u, v);
        axpy(-beta_prev, u_prev, v);
        const double beta = norm(v);

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
        const auto [rot, rr] = make_givens(r_ii, beta);
        if (rr == 0.0) {
            rep.status = Status::breakdown;
            rep.reason = breakdown::singular_r;
            return rep;
        }
        scale(p, 1.0 / rr);
        const auto [xi, g_new] = rot.apply(g, 0.0);
        axpy(xi, p, rep.x);
        g = g_new;

        rep.iterations = i;
        rep.aux.push_back(std::abs(g));
        rep.history.push_back(std::abs(g));
        if (cfg.record_true_residual) rep.true_history.push_back(norm(sub(b, A(rep.x))));
        if (cfg.record_iterates) rep.iterates.push_back(rep.x);
        if (beta <= 1e-14 * scale_ref || std::abs(g) <= tol) {
            rep.status = Status::converged;
            return rep;
        }
        u_prev = std::move(u);
        u = scaled(v, 1.0 / beta);
        beta_prev = beta;
        p_prev2 = std::move(p_prev);
        p_prev = std::move(p);
        rot_prev2 = rot_prev;
        rot_prev = rot;
    }
    rep.status = Status::max_iter;
    return rep;
}

}  // namespace krylov

#endif
