// SPDX-License-Identifier: Apache-2.0
#ifndef KRYLOV_CHEBYSHEV_HPP
#define KRYLOV_CHEBYSHEV_HPP

#include <cmath>
#include <stdexcept>
#include <utility>

#include "core_linalg.hpp"
#include "solve_report.hpp"
#include "stationary.hpp"

namespace krylov {

/// First kind. cos form inside [-1,1], cosh form outside.
inline double cheb_T(std::size_t k, double x) {
    const double kd = static_cast<double>(k);
    if (std::abs(x) <= 1.0) return std::cos(kd * std::acos(x));
    const double v = std::cosh(kd * std::acosh(std::abs(x)));
    return (x < 0.0 && k % 2 == 1) ? -v : v;
}

/// Second kind, U_{-1} = 0, U_0 = 1.
inline double cheb_U(std::size_t k, double x) {
    double prev = 0.0, cur = 1.0;
    for (std::size_t i = 0; i < k; ++i) {
        const double next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

struct ChebCoeffs {
    double alpha = 0.0;
    double beta = 0.0;

    ChebCoeffs(double a, double b) : alpha(a), beta(b) {
        if (!(a > -1.0 && a < b && b < 1.0)) throw std::invalid_argument("chebyshev: need -1 < alpha < beta < 1");
    }

    /// Maps [alpha, beta] onto [-1, 1].
    double mu(double lambda) const { return (2.0 * lambda - alpha - beta) / (beta - alpha); }
    double mu1() const { return 1.0 + 2.0 * (1.0 - beta) / (beta - alpha); }
};

inline double minimax_error_bound(double alpha, double beta, std::size_t j) {
    const ChebCoeffs c(alpha, beta);
    return 1.0 / cheb_T(j, c.mu1());
}

/// Asymptotic form 2 (mu + sqrt(mu^2 - 1))^{-j}.
inline double minimax_asymptotic_bound(double alpha, double beta, std::size_t j) {
    const double m = ChebCoeffs(alpha, beta).mu1();
    return 2.0 * std::pow(m + std::sqrt(m * m - 1.0), -static_cast<double>(j));
}

/// Symmetric inclusion interval (-rho, rho) from a spectral radius estimate.
inline std::pair<double, double> estimate_interval(const Splitting& S, std::size_t n, std::size_t m_max = 2000) {
    const double rho = spectral_radius_estimate([&S](const Vector& v) { return S.m_solve(S.n_apply(v)); }, n, m_max);
    return {-rho, rho};
}

/// Chebyshev acceleration of the splitting A = M - N.
/// z_k = M^{-1}(N x_k + b) is formed as x_k + M^{-1}(b - A x_k).
inline SolveReport semi_iterative(const Splitting& S, const Vector& b, double alpha, double beta,
                                  const StopRule& stop, std::size_t max_iter, Vector x0,
                                  std::size_t divergence_window = 50) {
    const ChebCoeffs cc(alpha, beta);
    const double mu1 = cc.mu1();
    const double ab = 2.0 * (alpha + beta) / (beta - alpha);
    const double four = 4.0 / (beta - alpha);

    auto base_step = [&S, &b](const Vector& x) {
        Vector z = x;
        axpy(1.0, S.m_solve(sub(b, S.a_apply(x))), z);
        return z;
    };

    SolveReport rep;
    Vector x_prev = std::move(x0);
    const StopContext ctx{norm(b), norm(sub(b, S.a_apply(x_prev)))};
    rep.history.push_back(ctx.r0_norm);
    rep.x = x_prev;
    if (stopping_check(ctx.r0_norm, stop, ctx).stop) {
        rep.status = Status::converged;
        return rep;
    }
    if (max_iter == 0) max_iter = 100 * b.size();

    // first step: p_1(lambda) = mu(lambda)/mu(1); reduces to x_1 = z_0 when alpha = -beta
    Vector x = base_step(x_prev);
    {
        const double c1 = 2.0 / (2.0 - alpha - beta);
        const double c0 = (alpha + beta) / (2.0 - alpha - beta);
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = c1 * x[i] - c0 * x_prev[i];
    }
    double t = 1.0 / mu1;  // gamma_{k-1} / gamma_k
    std::size_t rising = 0;

    for (std::size_t k = 1;; ++k) {
        const double rn = norm(sub(b, S.a_apply(x)));
        rising = rn > rep.history.back() ? rising + 1 : 0;
        rep.history.push_back(rn);
        rep.iterations = k;
        rep.x = x;
        if (!std::isfinite(rn) || !all_finite(x)) {
            rep.status = Status::breakdown;
            rep.reason = breakdown::solve_failed;
            return rep;
        }
        if (stopping_check(rn, stop, ctx).stop) {
            rep.status = Status::converged;
            return rep;
        }
        if (rising >= divergence_window) {
            rep.status = Status::breakdown;
            rep.reason = breakdown::interval_mismatch;
            return rep;
        }
        if (k >= max_iter) break;

        const double ratio = 1.0 / (2.0 * mu1 - t);  // gamma_k / gamma_{k+1}
        const Vector z = base_step(x);
        Vector x_next(x.size());
        const double a1 = ratio * four, a2 = ratio * ab, a3 = t * ratio;
        for (std::size_t i = 0; i < x.size(); ++i) x_next[i] = a1 * z[i] - a2 * x[i] - a3 * x_prev[i];
        x_prev = std::move(x);
        x = std::move(x_next);
        t = ratio;
    }
    rep.status = Status::max_iter;
    return rep;
}

}  // namespace krylov

#endif
