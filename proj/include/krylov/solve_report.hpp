// SPDX-License-Identifier: Apache-2.0
#ifndef KRYLOV_SOLVE_REPORT_HPP
#define KRYLOV_SOLVE_REPORT_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "core_linalg.hpp"

namespace krylov {

enum class Status { converged, max_iter, breakdown };

inline const char* to_string(Status s) {
    switch (s) {
    case Status::converged: return "converged";
    case Status::max_iter: return "max_iter";
    case Status::breakdown: return "breakdown";
    }
    return "unknown";
}

// breakdown tags
namespace breakdown {
inline constexpr const char* invariant_subspace = "invariant_subspace";
inline constexpr const char* serious = "serious_breakdown";
inline constexpr const char* lu = "lu_breakdown";
inline constexpr const char* stagnation = "stagnation";
inline constexpr const char* not_spd = "not-spd";
inline constexpr const char* precond_not_spd = "precond-not-spd";
inline constexpr const char* singular_r = "singular-R";
inline constexpr const char* interval_mismatch = "interval-mismatch";
inline constexpr const char* solve_failed = "m-solve-failed";
}  // namespace breakdown

struct SolveReport {
    Vector x;
    std::size_t iterations = 0;
    std::vector<double> history;  // residual 2-norms, history[0] = ||r_0||
    Status status = Status::max_iter;
    std::string reason;           // breakdown tag when status == breakdown

    std::vector<double> true_history;  // ||b - A x_i||, when recorded
    std::vector<double> aux;           // quasi-residuals, half-step norms, C-norms
    std::vector<Vector> iterates;      // x_i, when recorded
    std::vector<Vector> residuals;     // r_i, when recorded
};

enum class TolKind { abs, rel_to_b, rel_to_r0, error_bound };

struct StopRule {
    TolKind kind = TolKind::rel_to_r0;
    double tol = 1e-6;
    double lambda_min = 0.0;  // error_bound only
};

struct SolveConfig {
    StopRule stop{};
    std::size_t max_iter = 0;  // 0 selects a method default
    bool record_true_residual = false;
    bool record_iterates = false;
};

struct StopContext {
    double b_norm = 0.0;
    double r0_norm = 0.0;
};

struct StopDecision {
    bool stop = false;
    std::optional<double> error_bound;
};

inline StopDecision stopping_check(double r_norm, const StopRule& rule, const StopContext& ctx) {
    switch (rule.kind) {
    case TolKind::abs: return {r_norm <= rule.tol, std::nullopt};
    case TolKind::rel_to_b: return {r_norm <= rule.tol * ctx.b_norm, std::nullopt};
    case TolKind::rel_to_r0: return {r_norm <= rule.tol * ctx.r0_norm, std::nullopt};
    case TolKind::error_bound: {
        if (!(rule.lambda_min > 0.0)) throw std::invalid_argument("stopping_check: lambda_min must be positive");
        const double bound = r_norm / rule.lambda_min;
        return {bound <= rule.tol, bound};
    }
    }
    return {};
}

inline StopDecision stopping_check(const Vector& r, const StopRule& rule, const StopContext& ctx) {
    return stopping_check(norm(r), rule, ctx);
}

/// Absolute residual threshold equivalent to the rule, for solvers that test a scalar.
inline double residual_threshold(const StopRule& rule, const StopContext& ctx) {
    switch (rule.kind) {
    case TolKind::abs: return rule.tol;
    case TolKind::rel_to_b: return rule.tol * ctx.b_norm;
    case TolKind::rel_to_r0: return rule.tol * ctx.r0_norm;
    case TolKind::error_bound:
        if (!(rule.lambda_min > 0.0)) throw std::invalid_argument("stopping_check: lambda_min must be positive");
        return rule.tol * rule.lambda_min;
    }
    return rule.tol;
}

inline std::size_t max_iter_or(const SolveConfig& cfg, std::size_t fallback) {
    return cfg.max_iter > 0 ? cfg.max_iter : fallback;
}

}  // namespace krylov

#endif
