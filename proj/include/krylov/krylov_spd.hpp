// SPDX-License-Identifier: Apache-2.0
#ifndef KRYLOV_KRYLOV_SPD_HPP
#define KRYLOV_KRYLOV_SPD_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

#include "core_linalg.hpp"
#include "solve_report.hpp"

namespace krylov {

/// A U = U T with U^T B U = D diagonal.
struct LanczosLikeFactorization {
    std::vector<Vector> U;
    std::vector<double> gamma;  // diagonal of T
    std::vector<double> beta;   // beta_1 .. beta_{m-1}
    std::vector<double> d;      // u_i^T B u_i
};

template <Operator OpA, Operator OpB>
LanczosLikeFactorization factorize_aut(const OpA& A, const OpB& B, const Vector& u1, std::size_t steps) {
    LanczosLikeFactorization f;
    const double scale_ref = norm(u1);
    Vector u = u1, u_prev(u1.size(), 0.0);
    double beta_prev = 0.0;
    for (std::size_t i = 0; i < steps; ++i) {
        const Vector v = A(u);
        const Vector z = B(u);
        const double d = dot(u, z);
        const double gamma = dot(v, z) / d;
        if (i > 0) {
            beta_prev = d / f.d.back();
            f.beta.push_back(beta_prev);
        }
        f.U.push_back(u);
        f.gamma.push_back(gamma);
        f.d.push_back(d);
        Vector next = v;
        axpy(-gamma, u, next);
        axpy(-beta_prev, u_prev, next);
        if (norm(next) <= 1e-14 * scale_ref) break;
        u_prev = std::move(u);
        u = std::move(next);
    }
    return f;
}

/// Algorithm with the unnormalized three-term basis u_{i+1} = v - gamma u - beta u_prev.
template <Operator Op>
SolveReport cg_basic(const Op& A, const Vector& b, Vector x0, const SolveConfig& cfg = {}) {
    const std::size_t n = b.size();
    const std::size_t max_iter = max_iter_or(cfg, 10 * n);
    SolveReport rep;
    rep.x = std::move(x0);
    Vector r = sub(b, A(rep.x));
    const StopContext ctx{norm(b), norm(r)};
    rep.history.push_back(ctx.r0_norm);
    if (cfg.record_iterates) rep.iterates.push_back(rep.x);
    Vector u = r, u_prev(n, 0.0);
    double d_prev = 0.0;
    for (std::size_t i = 1;; ++i) {
        const double rn = rep.history.back();
        if (rn == 0.0 || stopping_check(rn, cfg.stop, ctx).stop) {
            rep.status = Status::converged;
            return rep;
        }
        if (i > max_iter) break;
        const Vector v = A(u);
        const double d = dot(u, v);
        if (!(d > 0.0)) {
            rep.status = Status::breakdown;
            rep.reason = breakdown::not_spd;
            return rep;
        }
        const double lambda = dot(u, r) / d;
        axpy(lambda, u, rep.x);
        axpy(-lambda, v, r);
        const double gamma = dot(v, v) / d;
        const double beta = i == 1 ? 0.0 : d / d_prev;
        Vector next = v;
        axpy(-gamma, u, next);
        axpy(-beta, u_prev, next);
        u_prev = std::move(u);
        u = std::move(next);
        d_prev = d;
        rep.iterations = i;
        rep.history.push_back(norm(r));
        if (cfg.record_true_residual) rep.true_history.push_back(norm(sub(b, A(rep.x))));
        if (cfg.record_iterates) rep.iterates.push_back(rep.x);
    }
    rep.status = Status::max_iter;
    return rep;
}

/// Efficient form with the scalar histories needed to rebuild the tridiagonal matrix.
struct CgReport : SolveReport {
    std::vector<double> lambda_hat;
    std::vector<double> mu;
    std::vector<double> d_hat;
    std::vector<Vector> directions;  // p_i, when iterates are recorded
};

template <Operator Op>
CgReport cg(const Op& A, const Vector& b, Vector x0, const SolveConfig& cfg = {}) {
    const std::size_t n = b.size();
    const std::size_t max_iter = max_iter_or(cfg, 10 * n);
    CgReport rep;
    rep.x = std::move(x0);
    Vector r = sub(b, A(rep.x));
    const StopContext ctx{norm(b), norm(r)};
    double eta = dot(r, r);
    rep.history.push_back(std::sqrt(eta));
    if (cfg.record_true_residual) rep.true_history.push_back(ctx.r0_norm);
    if (cfg.record_iterates) {
        rep.iterates.push_back(rep.x);
        rep.residuals.push_back(r);
    }
    Vector p = r;
    for (std::size_t i = 1;; ++i) {
        const double rn = std::sqrt(eta);
        if (eta == 0.0 || stopping_check(rn, cfg.stop, ctx).stop) {
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
        const double eta_new = dot(r, r);
        const double mu = eta_new / eta;
        if (cfg.record_iterates) rep.directions.push_back(p);
        for (std::size_t k = 0; k < n; ++k) p[k] = r[k] + mu * p[k];
        eta = eta_new;
        rep.lambda_hat.push_back(lambda_hat);
        rep.mu.push_back(mu);
        rep.d_hat.push_back(d_hat);
        rep.iterations = i;
        rep.history.push_back(std::sqrt(eta));
        if (cfg.record_true_residual) rep.true_history.push_back(norm(sub(b, A(rep.x))));
        if (cfg.record_iterates) {
            rep.iterates.push_back(rep.x);
            rep.residuals.push_back(r);
        }
    }
    rep.status = Status::max_iter;
    return rep;
}

/// T-bar_k from the first k CG steps: a_1 = d_1/|r_0|^2,
/// a_{i+1} = (d_{i+1} + d_i mu_i^2)/|r_i|^2, off-diagonal -d_i mu_i/(|r_{i-1}| |r_i|).
inline TridiagSym assemble_tbar(const CgReport& rep, std::size_t k = 0) {
    std::size_t avail = rep.d_hat.size();
    // a zero residual ends the usable prefix
    for (std::size_t i = 0; i < avail; ++i)
        if (rep.history[i] == 0.0) {
            avail = i;
            break;
        }
    if (k == 0 || k > avail) k = avail;
    if (k == 0) throw std::invalid_argument("assemble_tbar: no CG steps recorded");
    TridiagSym T;
    const auto& rn = rep.history;
    T.diag.push_back(rep.d_hat[0] / (rn[0] * rn[0]));
    for (std::size_t i = 1; i < k; ++i) {
        T.diag.push_back((rep.d_hat[i] + rep.d_hat[i - 1] * rep.mu[i - 1] * rep.mu[i - 1]) / (rn[i] * rn[i]));
        T.offdiag.push_back(-rep.d_hat[i - 1] * rep.mu[i - 1] / (rn[i - 1] * rn[i]));
    }
    return T;
}

/// 4 ((sqrt(k)-1)/(sqrt(k)+1))^{2i}
inline double convergence_bound(double kappa, std::size_t i) {
    if (!(kappa >= 1.0)) throw std::invalid_argument("convergence_bound: kappa must be >= 1");
    const double s = std::sqrt(kappa);
    return 4.0 * std::pow((s - 1.0) / (s + 1.0), 2.0 * static_cast<double>(i));
}

/// Extreme eigenvalue estimates of A from a CG warm-up of `iters` steps.
template <Operator Op>
std::pair<double, double> cg_eigen_estimates(const Op& A, const Vector& b, std::size_t iters) {
    SolveConfig cfg;
    cfg.stop = {TolKind::abs, 0.0};
    cfg.max_iter = iters;
    const CgReport rep = cg(A, b, Vector(b.size(), 0.0), cfg);
    return sturm_extreme_eigs(assemble_tbar(rep, iters));
}

}  // namespace krylov

#endif
