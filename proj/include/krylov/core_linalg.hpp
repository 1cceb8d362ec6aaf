// SPDX-License-Identifier: Apache-2.0
#ifndef KRYLOV_CORE_LINALG_HPP
#define KRYLOV_CORE_LINALG_HPP

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace krylov {

using Vector = std::vector<double>;

/// Anything that maps a vector to a vector of the same length.
template <class F>
concept Operator = requires(const F& f, const Vector& v) {
    { f(v) } -> std::convertible_to<Vector>;
};

class breakdown_error : public std::runtime_error {
public:
    explicit breakdown_error(const std::string& kind)
        : std::runtime_error(kind), kind_(kind) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

// ---------------------------------------------------------------------------
// vector kernels

inline double dot(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

enum class NormKind { one, two, inf };

inline double norm(const Vector& v, NormKind kind = NormKind::two) {
    if (v.empty()) throw std::invalid_argument("norm: empty vector");
    double s = 0.0;
    switch (kind) {
    case NormKind::one:
        for (double x : v) s += std::abs(x);
        return s;
    case NormKind::inf:
        for (double x : v) s = std::max(s, std::abs(x));
        return s;
    case NormKind::two:
        break;
    }
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

/// y += a*x
inline void axpy(double a, const Vector& x, Vector& y) {
    if (x.size() != y.size()) throw std::invalid_argument("axpy: dimension mismatch");
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

inline void scale(Vector& v, double a) {
    for (double& x : v) x *= a;
}

inline Vector scaled(const Vector& v, double a) {
    Vector r(v);
    scale(r, a);
    return r;
}

inline Vector sub(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("sub: dimension mismatch");
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vector add(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("add: dimension mismatch");
    Vector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline bool all_finite(const Vector& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

template <Operator Op>
Vector residual(const Op& A, const Vector& b, const Vector& x) {
    return sub(b, A(x));
}

// ---------------------------------------------------------------------------
// dense matrices (desk scale only)

struct DenseMatrix {
    std::size_t n_rows = 0;
    std::size_t n_cols = 0;
    std::vector<double> entries;  // row-major

    DenseMatrix() = default;
    DenseMatrix(std::size_t r, std::size_t c, double fill = 0.0)
        : n_rows(r), n_cols(c), entries(r * c, fill) {}

    static DenseMatrix identity(std::size_t n) {
        DenseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    double& operator()(std::size_t i, std::size_t j) { return entries[i * n_cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return entries[i * n_cols + j]; }
};

inline Vector matvec(const DenseMatrix& A, const Vector& x) {
    if (x.size() != A.n_cols) throw std::invalid_argument("matvec: dimension mismatch");
    Vector y(A.n_rows, 0.0);
    for (std::size_t i = 0; i < A.n_rows; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < A.n_cols; ++j) s += A(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

inline Vector matvec_transpose(const DenseMatrix& A, const Vector& x) {
    if (x.size() != A.n_rows) throw std::invalid_argument("matvec_transpose: dimension mismatch");
    Vector y(A.n_cols, 0.0);
    for (std::size_t i = 0; i < A.n_rows; ++i)
        for (std::size_t j = 0; j < A.n_cols; ++j) y[j] += A(i, j) * x[i];
    return y;
}

inline DenseMatrix transpose(const DenseMatrix& A) {
    DenseMatrix t(A.n_cols, A.n_rows);
    for (std::size_t i = 0; i < A.n_rows; ++i)
        for (std::size_t j = 0; j < A.n_cols; ++j) t(j, i) = A(i, j);
    return t;
}

inline DenseMatrix multiply(const DenseMatrix& A, const DenseMatrix& B) {
    if (A.n_cols != B.n_rows) throw std::invalid_argument("multiply: dimension mismatch");
    DenseMatrix C(A.n_rows, B.n_cols);
    for (std::size_t i = 0; i < A.n_rows; ++i)
        for (std::size_t k = 0; k < A.n_cols; ++k) {
            const double a = A(i, k);
            if (a == 0.0) continue;
            for (std::size_t j = 0; j < B.n_cols; ++j) C(i, j) += a * B(k, j);
        }
    return C;
}

/// Columns of an operator applied to the unit vectors.
template <Operator Op>
DenseMatrix to_dense(const Op& A, std::size_t n) {
    DenseMatrix M(n, n);
    Vector e(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        e[j] = 1.0;
        const Vector col = A(e);
        e[j] = 0.0;
        for (std::size_t i = 0; i < n; ++i) M(i, j) = col[i];
    }
    return M;
}

enum class MatrixNormKind { one, inf };

inline double induced_matrix_norm(const DenseMatrix& A, MatrixNormKind kind) {
    if (A.n_rows == 0 || A.n_cols == 0) throw std::invalid_argument("induced_matrix_norm: empty matrix");
    double best = 0.0;
    if (kind == MatrixNormKind::inf) {
        for (std::size_t i = 0; i < A.n_rows; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < A.n_cols; ++j) s += std::abs(A(i, j));
            best = std::max(best, s);
        }
    } else {
        for (std::size_t j = 0; j < A.n_cols; ++j) {
            double s = 0.0;
            for (std::size_t i = 0; i < A.n_rows; ++i) s += std::abs(A(i, j));
            best = std::max(best, s);
        }
    }
    return best;
}

/// In-place Cholesky A = L L^T; the lower triangle of the result holds L.
inline DenseMatrix cholesky(const DenseMatrix& A) {
    const std::size_t n = A.n_rows;
    DenseMatrix L(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double d = A(j, j);
        for (std::size_t k = 0; k < j; ++k) d -= L(j, k) * L(j, k);
        if (!(d > 0.0)) throw breakdown_error("cholesky-pivot");
        const double ljj = std::sqrt(d);
        L(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = A(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= L(i, k) * L(j, k);
            L(i, j) = s / ljj;
        }
    }
    return L;
}

inline Vector cholesky_solve(const DenseMatrix& L, Vector b) {
    const std::size_t n = L.n_rows;
    for (std::size_t i = 0; i < n; ++i) {
        double s = b[i];
        for (std::size_t k = 0; k < i; ++k) s -= L(i, k) * b[k];
        b[i] = s / L(i, i);
    }
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t k = i + 1; k < n; ++k) s -= L(k, i) * b[k];
        b[i] = s / L(i, i);
    }
    return b;
}

/// LU with partial pivoting, packed.
struct LuFactors {
    DenseMatrix lu;
    std::vector<std::size_t> perm;
};

inline LuFactors lu_factor(DenseMatrix A) {
    const std::size_t n = A.n_rows;
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    double scale_ref = 0.0;
    for (double v : A.entries) scale_ref = std::max(scale_ref, std::abs(v));
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(A(i, k)) > std::abs(A(p, k))) p = i;
        if (std::abs(A(p, k)) <= 1e-14 * scale_ref || A(p, k) == 0.0)
            throw breakdown_error("singular-block");
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(A(k, j), A(p, j));
            std::swap(perm[k], perm[p]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            A(i, k) /= A(k, k);
            const double m = A(i, k);
            for (std::size_t j = k + 1; j < n; ++j) A(i, j) -= m * A(k, j);
        }
    }
    return {std::move(A), std::move(perm)};
}

inline Vector lu_solve(const LuFactors& f, const Vector& b) {
    const std::size_t n = f.lu.n_rows;
    Vector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[f.perm[i]];
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < i; ++k) x[i] -= f.lu(i, k) * x[k];
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t k = i + 1; k < n; ++k) x[i] -= f.lu(i, k) * x[k];
        x[i] /= f.lu(i, i);
    }
    return x;
}

// ---------------------------------------------------------------------------
// energy norm

template <Operator Op>
double a_norm(const Vector& v, const Op& A) {
    const double q = dot(v, A(v));
    if (q < 0.0) throw std::domain_error("a_norm: operator is not positive definite");
    return std::sqrt(q);
}

// ---------------------------------------------------------------------------
// Givens rotations, convention [c s; -s c]

struct GivensRotation {
    double c = 1.0;
    double s = 0.0;

    std::pair<double, double> apply(double a, double b) const {
        return {c * a + s * b, -s * a + c * b};
    }
};

/// Rotation zeroing beta against w, with r = hypot(w, beta) >= 0.
inline std::pair<GivensRotation, double> make_givens(double w, double beta) {
    const double r = std::hypot(w, beta);
    if (r == 0.0) return {GivensRotation{1.0, 0.0}, 0.0};
    return {GivensRotation{w / r, beta / r}, r};
}

// ---------------------------------------------------------------------------
// symmetric tridiagonal matrices and Sturm bisection

struct TridiagSym {
    std::vector<double> diag;
    std::vector<double> offdiag;  // length diag.size()-1

    std::size_t size() const { return diag.size(); }
};

/// Number of eigenvalues of T strictly below x.
inline std::size_t sturm_count(const TridiagSym& T, double x) {
    const std::size_t m = T.size();
    std::size_t count = 0;
    double q = 1.0;
    double scale_ref = 0.0;
    for (double d : T.diag) scale_ref = std::max(scale_ref, std::abs(d));
    for (double e : T.offdiag) scale_ref = std::max(scale_ref, std::abs(e));
    const double tiny = std::max(scale_ref, 1.0) * 1e-300;
    for (std::size_t i = 0; i < m; ++i) {
        const double e2 = i > 0 ? T.offdiag[i - 1] * T.offdiag[i - 1] : 0.0;
        q = (T.diag[i] - x) - (i > 0 ? e2 / q : 0.0);
        if (q == 0.0) q = -tiny;
        if (q < 0.0) ++count;
    }
    return count;
}

inline std::pair<double, double> gershgorin_bounds(const TridiagSym& T) {
    double lo = 0.0, hi = 0.0;
    for (std::size_t i = 0; i < T.size(); ++i) {
        double rad = 0.0;
        if (i > 0) rad += std::abs(T.offdiag[i - 1]);
        if (i + 1 < T.size()) rad += std::abs(T.offdiag[i]);
        const double a = T.diag[i] - rad, b = T.diag[i] + rad;
        if (i == 0 || a < lo) lo = a;
        if (i == 0 || b > hi) hi = b;
    }
    return {lo, hi};
}

/// k-th smallest eigenvalue (0-based) by bisection.
inline double sturm_eigenvalue(const TridiagSym& T, std::size_t k, double tol = 1e-12) {
    if (T.size() == 0 || k >= T.size()) throw std::invalid_argument("sturm_eigenvalue: bad index");
    if (!(tol > 0.0)) throw std::invalid_argument("sturm_eigenvalue: tol must be positive");
    auto [lo, hi] = gershgorin_bounds(T);
    const double pad = 1e-12 * std::max({1.0, std::abs(lo), std::abs(hi)});
    lo -= pad;
    hi += pad;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (sturm_count(T, mid) > k) hi = mid;
        else lo = mid;
    }
    return 0.5 * (lo + hi);
}

inline std::pair<double, double> sturm_extreme_eigs(const TridiagSym& T, double tol = 1e-12) {
    return {sturm_eigenvalue(T, 0, tol), sturm_eigenvalue(T, T.size() - 1, tol)};
}

// ---------------------------------------------------------------------------
// spectral radius by norm growth

/// Deterministic 53-bit uniform draws in [0,1) from a 64-bit LCG.
class Lcg64 {
public:
    explicit Lcg64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
        return state_;
    }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

template <Operator Op>
double spectral_radius_estimate(const Op& G, std::size_t n, std::size_t m_max = 2000,
                                std::uint64_t seed = 12345) {
    if (m_max < 100) throw std::invalid_argument("spectral_radius_estimate: m_max must be >= 100");
    Lcg64 rng(seed);
    Vector v(n);
    for (double& x : v) x = rng.uniform() - 0.5;
    scale(v, 1.0 / norm(v));

    // cumulative log-growth; log_growth[k] = sum of log ||G v_j|| for j < k
    std::vector<double> log_growth(1, 0.0);
    log_growth.reserve(m_max + 1);
    double previous = -1.0;
    for (std::size_t k = 1; k <= m_max; ++k) {
        v = G(v);
        const double s = norm(v);
        if (s == 0.0 || !std::isfinite(s)) return s == 0.0 ? 0.0 : s;
        scale(v, 1.0 / s);
        log_growth.push_back(log_growth.back() + std::log(s));
        if (k % 100 == 0) {
            const std::size_t h = k / 2;
            const double est = std::exp((log_growth[k] - log_growth[h]) / static_cast<double>(k - h));
            if (previous >= 0.0 && std::abs(est - previous) <= 1e-6 * std::max(est, 1e-300))
                return est;
            previous = est;
        }
    }
    const std::size_t h = m_max / 2;
    return std::exp((log_growth[m_max] - log_growth[h]) / static_cast<double>(m_max - h));
}

}  // namespace krylov

#endif
