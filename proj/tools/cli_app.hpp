// SPDX-License-Identifier: Apache-2.0
#ifndef KRYLOV_TOOLS_CLI_APP_HPP
#define KRYLOV_TOOLS_CLI_APP_HPP

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <krylov/krylov.hpp>

namespace krylov::cli {

enum exit_code : int { ok = 0, usage = 2, not_converged = 3, broke_down = 4 };

class usage_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ProblemArgs {
    std::string problem;
    std::string matrix_path;
    std::string rhs_path;
    std::size_t n = 10;
    double delta = 0.3;
    double shift = 0.0;
    double density = 0.04;
    std::uint64_t seed = 1;
    std::string format = "row";
};

struct LoadedProblem {
    SparseMatrix A;
    Vector b;
    std::size_t band = 0;  // grid width N for IC/MIC/block, 0 when unknown
    std::string label;
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw usage_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw usage_error("cannot write " + path);
    out << text;
}

inline Format parse_format(const std::string& s) {
    if (s == "row") return Format::row;
    if (s == "col") return Format::col;
    if (s == "diag") return Format::diag;
    if (s == "dense") return Format::dense;
    throw usage_error("unknown format: " + s);
}

inline std::uint64_t effective_seed(std::uint64_t seed) {
    if (const char* env = std::getenv("KRYLOV_SEED")) {
        try {
            std::size_t used = 0;
            const unsigned long long v = std::stoull(env, &used);
            if (used != std::string(env).size()) throw std::invalid_argument(env);
            return v;
        } catch (const std::exception&) {
            throw usage_error(std::string("KRYLOV_SEED is not an unsigned integer: ") + env);
        }
    }
    return seed;
}

inline std::size_t perfect_square_root(std::size_t n) {
    auto r = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
    return r * r == n ? r : 0;
}

inline ProblemInstance generate_problem(const ProblemArgs& a) {
    if (a.problem == "poisson") return poisson_test(a.n);
    if (a.problem == "cavity") return cavity_laplace(a.n, a.delta);
    if (a.problem == "hilbert") return hilbert(a.n, a.shift);
    if (a.problem == "indefinite") return indefinite_kron(a.n);
    if (a.problem == "random") return random_sparse(a.n, a.density, effective_seed(a.seed), a.shift == 0.0 ? 1.0 : a.shift);
    throw usage_error("unknown problem: " + a.problem);
}

inline LoadedProblem load_problem(const ProblemArgs& a) {
    if (a.problem.empty() == a.matrix_path.empty())
        throw usage_error("give exactly one of --problem or --matrix");
    const Format fmt = parse_format(a.format);
    if (!a.problem.empty()) {
        ProblemInstance p = generate_problem(a);
        const bool grid = a.problem == "poisson" || a.problem == "cavity" || a.problem == "indefinite";
        return {convert(p.A, fmt), std::move(p.b), grid ? a.n : 0, p.label};
    }
    LoadedProblem lp{build(read_matrix_market(read_file(a.matrix_path)), fmt), {}, 0, a.matrix_path};
    const std::size_t n = size(lp.A);
    lp.band = perfect_square_root(n);
    if (!a.rhs_path.empty()) {
        lp.b = read_matrix_market_vector(read_file(a.rhs_path));
        if (lp.b.size() != n) throw usage_error("rhs length does not match the matrix");
    } else {
        lp.b = matvec(lp.A, Vector(n, 1.0));
    }
    return lp;
}

inline void add_problem_options(CLI::App* cmd, ProblemArgs& a) {
    cmd->add_option("--problem", a.problem, "poisson | cavity | hilbert | indefinite | random");
    cmd->add_option("--matrix", a.matrix_path, "MatrixMarket coordinate file");
    cmd->add_option("--rhs", a.rhs_path, "MatrixMarket array file; default A*ones");
    cmd->add_option("--n", a.n, "grid size N (or order n for hilbert/random)");
    cmd->add_option("--delta", a.delta, "cavity outlet width");
    cmd->add_option("--shift", a.shift, "hilbert diagonal shift / random diagonal shift");
    cmd->add_option("--density", a.density, "random fill ratio");
    cmd->add_option("--seed", a.seed, "random seed (KRYLOV_SEED overrides)");
    cmd->add_option("--format", a.format, "row | col | diag | dense");
}

inline std::string config_echo(const std::vector<std::pair<std::string, std::string>>& kv) {
    std::string s = "#";
    for (const auto& [k, v] : kv) s += " " + k + "=" + v;
    return s + "\n";
}

inline std::vector<std::size_t> parse_size_list(const std::string& s) {
    std::vector<std::size_t> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoul(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw usage_error("bad list entry: " + tok);
        }
    }
    if (out.empty()) throw usage_error("empty list");
    return out;
}

// ---------------------------------------------------------------------------
// generate

struct GenerateArgs {
    ProblemArgs problem;
    std::string out;
    std::string rhs_out;
};

inline int cmd_generate(const GenerateArgs& g, std::ostream& out, std::ostream& err) {
    if (g.problem.problem.empty()) throw usage_error("generate needs --problem");
    if (g.out.empty()) throw usage_error("generate needs --out");
    const ProblemInstance p = generate_problem(g.problem);
    const bool symmetric = g.problem.problem == "cavity" || g.problem.problem == "poisson" ||
                           g.problem.problem == "hilbert" || g.problem.problem == "indefinite";
    Triplets t = to_triplets(p.A);
    write_file(g.out, write_matrix_market(t, symmetric && is_symmetric(p.A)));
    if (!g.rhs_out.empty()) write_file(g.rhs_out, write_matrix_market_vector(p.b));
    if (g.problem.problem == "hilbert") err << "warning: hilbert matrices are dense; sparse storage gives no savings\n";
    const Diagnostics d = diagnostics(p.A);
    out << "n=" << size(p.A) << " nnz=" << t.entries.size() << " symmetric=" << (d.symmetric ? "true" : "false")
        << " diag_dominant_rows=" << (d.diag_dominant_rows ? "true" : "false")
        << " m_matrix_sign_pattern=" << (d.m_matrix_sign_pattern ? "true" : "false") << '\n';
    return ok;
}

// ---------------------------------------------------------------------------
// solve

struct SolveArgs {
    ProblemArgs problem;
    std::string method = "cg";
    std::string precond = "none";
    double tol = 1e-6;
    std::string tol_kind = "abs";
    std::size_t max_iter = 0;
    double omega = 1.0;
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    std::string base = "jacobi";
    std::optional<double> alpha;
    std::optional<double> beta;
    std::string out;
};

inline TolKind parse_tol_kind(const std::string& s) {
    if (s == "abs") return TolKind::abs;
    if (s == "rel-b") return TolKind::rel_to_b;
    if (s == "rel-r0") return TolKind::rel_to_r0;
    throw usage_error("unknown tol kind: " + s);
}

/// Extreme eigenvalue estimates from a 25-step CG warm-up, widened outward.
inline std::pair<double, double> warmup_interval(const SparseMatrix& A, const Vector& b) {
    const std::size_t steps = std::min<std::size_t>(25, size(A));
    auto [lo, hi] = cg_eigen_estimates(as_operator(A), b, steps);
    return {0.9 * lo, 1.05 * hi};
}

inline Preconditioner make_preconditioner(const std::string& name, const LoadedProblem& p, double lmin, double lmax) {
    if (name == "none") return identity_preconditioner();
    if (name == "jacobi") return jacobi_preconditioner(p.A);
    if (name == "ic" || name == "mic" || name == "block") {
        if (p.band == 0) throw usage_error(name + " needs a square grid matrix");
        if (name == "ic") return ic_preconditioner(ic0_pentadiagonal(p.A, p.band));
        if (name == "mic") return ic_preconditioner(mic_pentadiagonal(p.A, p.band));
        return block_preconditioner(block_precond(p.A, p.band));
    }
    if (name.rfind("poly:", 0) == 0) {
        std::size_t m = 0;
        try {
            std::size_t used = 0;
            m = std::stoul(name.substr(5), &used);
            if (used != name.size() - 5) throw std::invalid_argument(name);
        } catch (const std::exception&) {
            throw usage_error("bad polynomial degree in " + name);
        }
        if (lmin <= 0.0 || lmax <= 0.0) std::tie(lmin, lmax) = warmup_interval(p.A, p.b);
        return poly_preconditioner(poly_precond_build(m, lmin, lmax), as_operator(p.A));
    }
    throw usage_error("unknown preconditioner: " + name);
}

struct SolveOutcome {
    SolveReport report;
    std::string extra_column;  // quasi_residual | half_step | empty
    std::vector<double> residual_column;
    std::vector<double> extra_values;
};

inline SolveOutcome run_solver(const SolveArgs& s, const LoadedProblem& p) {
    const std::size_t n = size(p.A);
    const auto A = as_operator(p.A);
    const auto At = as_transpose_operator(p.A);
    SolveConfig cfg;
    cfg.stop = {parse_tol_kind(s.tol_kind), s.tol, 0.0};
    cfg.max_iter = s.max_iter;
    const Vector x0(n, 0.0);
    SolveOutcome o;

    std::string method = s.method;
    std::size_t restart = 0;
    if (method.rfind("gmres,restart=", 0) == 0) {
        try {
            std::size_t used = 0;
            restart = std::stoul(method.substr(14), &used);
            if (used != method.size() - 14 || restart == 0) throw std::invalid_argument(method);
        } catch (const std::exception&) {
            throw usage_error("bad restart length in " + method);
        }
        method = "gmres";
    }
    const bool stationary = method == "jacobi" || method == "gs" || method == "sor" || method == "ssor" ||
                            method == "block-jacobi" || method == "block-gs" || method == "chebyshev";
    if (stationary && s.precond != "none") throw usage_error("stationary methods take no preconditioner");
    if (method == "bidiag" && s.precond != "none") throw usage_error("bidiag takes no preconditioner");

    const Preconditioner C = stationary ? identity_preconditioner()
                                        : make_preconditioner(s.precond, p, s.lambda_min, s.lambda_max);
    const bool pre = s.precond != "none";
    const auto CA = left_precondition(A, C);
    const auto CAt = left_precondition_transpose(At, C);
    const Vector Cb = pre ? C(p.b) : p.b;

    auto stationary_kind = [](const std::string& m) {
        if (m == "jacobi") return StationaryKind::jacobi;
        if (m == "gs") return StationaryKind::gauss_seidel;
        if (m == "sor") return StationaryKind::sor;
        if (m == "ssor") return StationaryKind::ssor;
        if (m == "block-jacobi") return StationaryKind::block_jacobi;
        return StationaryKind::block_gs;
    };

    if (method == "cg") {
        o.report = pre ? pcg(A, p.b, C, x0, cfg) : static_cast<SolveReport>(cg(A, p.b, x0, cfg));
    } else if (method == "cg-basic") {
        if (pre) throw usage_error("cg-basic takes no preconditioner");
        o.report = cg_basic(A, p.b, x0, cfg);
    } else if (method == "minres") {
        if (pre) throw usage_error("minres takes no preconditioner");
        o.report = minres(A, p.b, x0, cfg);
    } else if (method == "gmres") {
        o.report = gmres(CA, Cb, x0, cfg, {restart});
    } else if (method == "bicg") {
        o.report = bicg(CA, CAt, Cb, x0, cfg);
    } else if (method == "qmr" || method == "qmr-alt") {
        cfg.record_true_residual = true;
        o.report = method == "qmr" ? qmr(CA, CAt, Cb, x0, cfg) : qmr_alt(CA, CAt, Cb, x0, cfg);
        o.extra_column = "quasi_residual";
        o.extra_values = o.report.history;
        o.residual_column.push_back(o.report.history.front());
        o.residual_column.insert(o.residual_column.end(), o.report.true_history.begin(), o.report.true_history.end());
    } else if (method == "bidiag") {
        o.report = bidiag_solve(A, At, p.b, x0, cfg);
    } else if (method == "cgs") {
        o.report = cgs(CA, Cb, x0, cfg);
    } else if (method == "bicgstab") {
        o.report = bicgstab(CA, Cb, x0, cfg);
        o.extra_column = "half_step";
        o.extra_values.push_back(o.report.history.front());
        o.extra_values.insert(o.extra_values.end(), o.report.aux.begin(), o.report.aux.end());
    } else if (method == "chebyshev") {
        if (s.base != "jacobi" && s.base != "gs" && s.base != "block-jacobi")
            throw usage_error("unknown chebyshev base: " + s.base);
        const Splitting S = split(p.A, {stationary_kind(s.base), 1.0, p.band});
        double a = 0.0, b = 0.0;
        if (s.alpha && s.beta) {
            a = *s.alpha;
            b = *s.beta;
        } else if (s.alpha || s.beta) {
            throw usage_error("give both --alpha and --beta");
        } else {
            std::tie(a, b) = estimate_interval(S, n);
        }
        o.report = semi_iterative(S, p.b, a, b, cfg.stop, cfg.max_iter, x0);
    } else if (stationary) {
        StationaryConfig sc{{stationary_kind(method), s.omega, 0}, cfg.stop, cfg.max_iter};
        o.report = iterate(p.A, p.b, sc, x0);
    } else {
        throw usage_error("unknown method: " + s.method);
    }
    if (o.residual_column.empty()) o.residual_column = o.report.history;
    return o;
}

inline int cmd_solve(const SolveArgs& s, std::ostream& out, std::ostream& err) {
    const LoadedProblem p = load_problem(s.problem);
    const bool needs_symmetry = s.method == "cg" || s.method == "cg-basic" || s.method == "minres";
    if (needs_symmetry && !is_symmetric(p.A)) err << "warning: " << s.method << " expects a symmetric matrix\n";

    const auto t0 = std::chrono::steady_clock::now();
    const SolveOutcome o = run_solver(s, p);
    const auto t1 = std::chrono::steady_clock::now();
    const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

    std::ostringstream csv;
    csv << config_echo({{"command", "solve"},
                        {"input", p.label},
                        {"method", s.method},
                        {"precond", s.precond},
                        {"tol", format_real(s.tol)},
                        {"tol_kind", s.tol_kind},
                        {"max_iter", std::to_string(s.max_iter)},
                        {"seed", std::to_string(effective_seed(s.problem.seed))}});
    csv << "iter,residual_norm";
    if (!o.extra_column.empty()) csv << ',' << o.extra_column;
    csv << '\n';
    for (std::size_t i = 0; i < o.residual_column.size(); ++i) {
        csv << i << ',' << format_real(o.residual_column[i]);
        if (!o.extra_column.empty()) csv << ',' << (i < o.extra_values.size() ? format_real(o.extra_values[i]) : "");
        csv << '\n';
    }
    const double final_res = norm(sub(p.b, matvec(p.A, o.report.x)));
    std::ostringstream summary;
    summary << to_string(o.report.status);
    if (o.report.status == Status::breakdown) summary << '(' << o.report.reason << ')';
    summary << ' ' << o.report.iterations << ' ' << format_real(final_res) << ' ' << format_real(ms) << '\n';

    if (s.out.empty()) {
        out << csv.str();
        err << summary.str();
    } else {
        write_file(s.out, csv.str());
        out << summary.str();
    }
    switch (o.report.status) {
    case Status::converged: return ok;
    case Status::max_iter: return not_converged;
    case Status::breakdown: return broke_down;
    }
    return not_converged;
}

// ---------------------------------------------------------------------------
// spectrum

struct SpectrumArgs {
    ProblemArgs problem;
    double omega_min = 1.0;
    double omega_max = 1.9;
    double step = 0.05;
    bool ssor = false;
    std::string methods;
    std::size_t m_max = 2000;
    std::string out;
};

inline int cmd_spectrum(const SpectrumArgs& s, std::ostream& out, std::ostream&) {
    const LoadedProblem p = load_problem(s.problem);
    std::ostringstream csv;
    csv << config_echo({{"command", "spectrum"},
                        {"input", p.label},
                        {"omega_min", format_real(s.omega_min)},
                        {"omega_max", format_real(s.omega_max)},
                        {"step", format_real(s.step)},
                        {"ssor", s.ssor ? "true" : "false"},
                        {"methods", s.methods.empty() ? "-" : s.methods},
                        {"m_max", std::to_string(s.m_max)}});
    if (!s.methods.empty()) {
        csv << "method,rho\n";
        std::stringstream ss(s.methods);
        std::string m;
        while (std::getline(ss, m, ',')) {
            StationaryMethod sm;
            if (m == "jacobi") sm.kind = StationaryKind::jacobi;
            else if (m == "gs") sm.kind = StationaryKind::gauss_seidel;
            else if (m == "block-jacobi") sm.kind = StationaryKind::block_jacobi;
            else if (m == "block-gs") sm.kind = StationaryKind::block_gs;
            else throw usage_error("unknown method for spectrum: " + m);
            sm.block_size = p.band;
            csv << m << ',' << format_real(spectral_radius_estimate(iteration_matrix_applier(p.A, sm), size(p.A), s.m_max))
                << '\n';
        }
    } else {
        if (!(s.omega_min > 0.0 && s.omega_max < 2.0 && s.omega_min <= s.omega_max))
            throw usage_error("sweep bounds must satisfy 0 < omega_min <= omega_max < 2");
        csv << "omega,rho\n";
        for (const auto& pt : omega_sweep(p.A, s.omega_min, s.omega_max, s.step, s.ssor, s.m_max))
            csv << format_real(pt.omega) << ',' << format_real(pt.rho) << '\n';
    }
    if (s.out.empty()) out << csv.str();
    else write_file(s.out, csv.str());
    return ok;
}

// ---------------------------------------------------------------------------
// precond-compare

struct CompareArgs {
    std::string n_list = "10,20,30,40,50";
    std::string poly_degrees;
    double tol = 1e-6;
    std::string out;
};

/// Extremes of the Poisson matrix from Sturm bisection on the 1D factor.
inline std::pair<double, double> poisson_extremes(std::size_t N) {
    TridiagSym T{Vector(N, 2.0), Vector(N - 1, -1.0)};
    const auto [lo, hi] = sturm_extreme_eigs(T);
    return {2.0 * lo, 2.0 * hi};
}

inline int cmd_precond_compare(const CompareArgs& c, std::ostream& out, std::ostream&) {
    const auto Ns = parse_size_list(c.n_list);
    const std::vector<std::size_t> degrees = c.poly_degrees.empty() ? std::vector<std::size_t>{}
                                                                     : parse_size_list(c.poly_degrees);
    std::ostringstream csv;
    csv << config_echo({{"command", "precond-compare"},
                        {"n_list", c.n_list},
                        {"poly", c.poly_degrees.empty() ? "-" : c.poly_degrees},
                        {"tol", format_real(c.tol)},
                        {"tol_kind", "abs"},
                        {"x0", "zero"}});
    csv << "N,method,iterations,status\n";
    SolveConfig cfg;
    cfg.stop = {TolKind::abs, c.tol, 0.0};
    for (std::size_t N : Ns) {
        if (N < 2) throw usage_error("N must be >= 2");
        const ProblemInstance p = poisson_test(N);
        const auto A = as_operator(p.A);
        const Vector x0(N * N, 0.0);
        auto row = [&](const std::string& name, const SolveReport& r) {
            csv << N << ',' << name << ',' << r.iterations << ',' << to_string(r.status) << '\n';
        };
        row("cg", cg(A, p.b, x0, cfg));
        row("pcg-ic", pcg(A, p.b, ic_preconditioner(ic0_pentadiagonal(p.A, N)), x0, cfg));
        row("pcg-mic", pcg(A, p.b, ic_preconditioner(mic_pentadiagonal(p.A, N)), x0, cfg));
        for (std::size_t m : degrees) {
            const auto [lo, hi] = poisson_extremes(N);
            row("pcg-poly:" + std::to_string(m), pcg(A, p.b, poly_preconditioner(poly_precond_build(m, lo, hi), A), x0, cfg));
        }
    }
    if (c.out.empty()) out << csv.str();
    else write_file(c.out, csv.str());
    return ok;
}

// ---------------------------------------------------------------------------
// eigs

struct EigsArgs {
    ProblemArgs problem;
    std::string estimates = "cg";
    std::size_t iters = 25;
    std::string out;
};

inline int cmd_eigs(const EigsArgs& e, std::ostream& out, std::ostream& err) {
    if (e.estimates != "cg") throw usage_error("only cg estimates are available");
    const LoadedProblem p = load_problem(e.problem);
    if (!is_symmetric(p.A)) err << "warning: eigenvalue estimates assume a symmetric matrix\n";
    SolveConfig cfg;
    cfg.stop = {TolKind::abs, 0.0, 0.0};
    cfg.max_iter = e.iters;
    const CgReport rep = cg(as_operator(p.A), p.b, Vector(size(p.A), 0.0), cfg);
    std::ostringstream csv;
    csv << config_echo({{"command", "eigs"}, {"input", p.label}, {"iters", std::to_string(e.iters)}});
    csv << "k,lambda_min,lambda_max\n";
    const std::size_t avail = rep.d_hat.size();
    for (std::size_t k = 1; k <= std::min(avail, e.iters); ++k) {
        if (rep.history[k - 1] == 0.0) break;
        const auto [lo, hi] = sturm_extreme_eigs(assemble_tbar(rep, k));
        csv << k << ',' << format_real(lo) << ',' << format_real(hi) << '\n';
    }
    if (e.out.empty()) out << csv.str();
    else write_file(e.out, csv.str());
    return ok;
}

// ---------------------------------------------------------------------------

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Iterative solvers for sparse linear systems"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* g = app.add_subcommand("generate", "write a test matrix in MatrixMarket format");
    add_problem_options(g, gen.problem);
    g->add_option("--out", gen.out, "matrix output path");
    g->add_option("--rhs-out", gen.rhs_out, "rhs output path");

    SolveArgs sol;
    auto* s = app.add_subcommand("solve", "solve A x = b and print the residual history as CSV");
    add_problem_options(s, sol.problem);
    s->add_option("--method", sol.method,
                  "cg | cg-basic | minres | gmres[,restart=k] | bicg | qmr | qmr-alt | bidiag | cgs | bicgstab | "
                  "jacobi | gs | sor | ssor | block-jacobi | block-gs | chebyshev");
    s->add_option("--precond", sol.precond, "none | jacobi | ic | mic | block | poly:m");
    s->add_option("--tol", sol.tol);
    s->add_option("--tol-kind", sol.tol_kind, "abs | rel-b | rel-r0");
    s->add_option("--max-iter", sol.max_iter);
    s->add_option("--omega", sol.omega, "relaxation parameter for sor/ssor");
    s->add_option("--lambda-min", sol.lambda_min, "interval for poly:m");
    s->add_option("--lambda-max", sol.lambda_max, "interval for poly:m");
    s->add_option("--base", sol.base, "chebyshev base splitting: jacobi | gs | block-jacobi");
    s->add_option("--alpha", sol.alpha, "chebyshev interval, default -rho(G)");
    s->add_option("--beta", sol.beta, "chebyshev interval, default rho(G)");
    s->add_option("--out", sol.out, "CSV output path");

    SpectrumArgs sargs;
    auto* sp = app.add_subcommand("spectrum", "spectral radii of stationary iteration matrices");
    add_problem_options(sp, sargs.problem);
    sp->add_option("--omega-min", sargs.omega_min);
    sp->add_option("--omega-max", sargs.omega_max);
    sp->add_option("--step", sargs.step);
    sp->add_flag("--ssor", sargs.ssor, "sweep the symmetric variant");
    sp->add_option("--methods", sargs.methods, "comma list of jacobi, gs, block-jacobi, block-gs");
    sp->add_option("--m-max", sargs.m_max, "power iteration cap");
    sp->add_option("--out", sargs.out);

    CompareArgs cmp;
    auto* pc = app.add_subcommand("precond-compare", "PCG iteration counts on the Poisson problem");
    pc->add_option("--n-list", cmp.n_list);
    pc->add_option("--poly", cmp.poly_degrees, "comma list of polynomial degrees");
    pc->add_option("--tol", cmp.tol);
    pc->add_option("--out", cmp.out);

    EigsArgs eig;
    auto* ei = app.add_subcommand("eigs", "extreme eigenvalue estimates from CG");
    add_problem_options(ei, eig.problem);
    ei->add_option("--estimates", eig.estimates, "cg");
    ei->add_option("--iters", eig.iters);
    ei->add_option("--out", eig.out);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : usage;
    }
    try {
        if (g->parsed()) return cmd_generate(gen, out, err);
        if (s->parsed()) return cmd_solve(sol, out, err);
        if (sp->parsed()) return cmd_spectrum(sargs, out, err);
        if (pc->parsed()) return cmd_precond_compare(cmp, out, err);
        if (ei->parsed()) return cmd_eigs(eig, out, err);
    } catch (const usage_error& e) {
        err << "error: " << e.what() << '\n';
        return usage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return usage;
    } catch (const matrix_market_error& e) {
        err << "error: " << e.what() << '\n';
        return usage;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << '\n';
        return usage;
    } catch (const breakdown_error& e) {
        err << "breakdown: " << e.kind() << '\n';
        return broke_down;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return usage;
    }
    return usage;
}

}  // namespace krylov::cli

#endif
