// akhsylv: batch front end. Every command writes CSV (or matrix text) and exits with
// 0 ok, 1 usage, 2 accuracy/convergence, 3 geometry/domain/dimension, 4 I/O.

#include "akhsylv/acceptance.hpp"
#include "akhsylv/akhiezer.hpp"
#include "akhsylv/apps.hpp"
#include "akhsylv/cutdomain.hpp"
#include "akhsylv/errors.hpp"
#include "akhsylv/linalg.hpp"
#include "akhsylv/oracles.hpp"
#include "akhsylv/solvers.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>

using namespace akhsylv;

namespace {

constexpr const char* kHeader = "# akhsylv-csv v1\n";

// Output sink: a file when a path is given, stdout otherwise.
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw IoError("cannot open '" + path + "' for writing");
        }
        stream().precision(17);
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }
    void close() {
        if (!file_) return;
        file_->close();
        if (!*file_) throw IoError("write failed");
    }

private:
    std::unique_ptr<std::ofstream> file_;
};

Interval parse_interval(const std::string& text, const std::string& flag) {
    const CutDomain d = CutDomain::parse(text);
    if (d.size() != 1) throw ParseError(flag + " expects a single interval lo,hi", 0);
    return d[0];
}

void write_report(const std::string& path, const ConvergenceReport& report, bool timing) {
    if (path.empty()) return;
    Sink s(path);
    write_csv(s.stream(), report, timing);
    s.close();
}

// ---------------------------------------------------------------------------

struct RatesOpts {
    std::string domain;
    std::string method = "sign";
    std::vector<int> sizes{100, 1000};
};

void run_rates(const RatesOpts& o) {
    const CutDomain d = CutDomain::parse(o.domain);
    const Method method = o.method == "sign" ? Method::Sign : Method::Inverse;
    double rho = 0, rho_inv = 0, z = 0;
    if (method == Method::Sign) {
        if (d.size() != 2) throw UnsupportedDomainError("the sign rate needs exactly two intervals");
        const RateInfo r = sign_rate(d);
        rho = r.rho;
        rho_inv = 1 / rho;
        z = r.z_star;
    } else {
        if (d.contains(0.0)) throw SingularDomainError("0 lies in the domain; 1/x has no series there");
        rho = inverse_rho(d);
        rho_inv = d.size() == 1 ? inverse_rate(d[0]) : 1 / rho;
    }
    std::ostream& out = std::cout;
    out << std::setprecision(17) << kHeader;
    out << "# rates method=" << o.method << " domain=" << d.str() << '\n';
    out << (method == Method::Sign ? "# z_star=" : "# z_ref=") << z << '\n';
    out << "# rho=" << rho << '\n' << "# rho_inv=" << rho_inv << '\n';
    out << "tol,n,m,iterations\n";
    for (int e = 4; e <= 12; e += 2)
        for (int n : o.sizes) {
            const double tol = std::pow(10.0, -e);
            out << "1e-" << std::setw(2) << std::setfill('0') << e << std::setfill(' ') << ',' << n << ',' << n << ','
                << iterations_for_tolerance(method, rho, tol, n, n) << '\n';
        }
}

// ---------------------------------------------------------------------------

struct CoeffsOpts {
    std::string domain;
    std::string function = "sign";
    int count = 60;
    bool recurrence = false;
    std::string out;
};

void run_coeffs(const CoeffsOpts& o) {
    const CutDomain d = CutDomain::parse(o.domain);
    const std::size_t K = static_cast<std::size_t>(o.count);
    SeriesData s;
    if (o.function == "sign") {
        if (d.size() != 2) throw UnsupportedDomainError("sign coefficients need exactly two intervals");
        s = sign_series(d[0], d[1], K);
    } else if (o.function == "inverse") {
        s = inverse_series(d, K);
    } else {
        s = function_series(d, [](cplx z) { return std::exp(z); }, K);
    }
    Sink sink(o.out);
    if (o.recurrence) {
        RecurrenceTable t = s.table;
        t.a.resize(std::min(t.a.size(), K));
        t.b.resize(std::min(t.b.size(), K));
        write_csv(sink.stream(), t);
    } else {
        write_csv(sink.stream(), s.coeffs, K);
    }
    sink.close();
}

// ---------------------------------------------------------------------------

struct SolveOpts {
    std::string method = "inverse";
    std::string a, b, c, u, v;
    std::string dom_a, dom_b;
    double tol = 1e-12;
    double eps_rank = 1e-14;
    int max_iter = 0;
    bool unweighted = false;
    bool timing = false;
    std::string prefix = "solution";
    std::string log;
};

void run_solve(const SolveOpts& o) {
    const bool dense = !o.c.empty();
    if (dense == (!o.u.empty() || !o.v.empty()))
        throw ParseError("give either --c or both --u and --v", 0);
    if (!dense && (o.u.empty() || o.v.empty())) throw ParseError("--u and --v must be given together", 0);
    SylvesterProblem p;
    p.domain_A = parse_interval(o.dom_a, "--dom-a");
    p.domain_B = parse_interval(o.dom_b, "--dom-b");
    p.A = read_matrix_file(o.a);
    p.B = read_matrix_file(o.b);
    if (dense) {
        p.C = read_matrix_file(o.c);
    } else {
        p.U = read_matrix_file(o.u);
        p.V = read_matrix_file(o.v);
    }
    SolverConfig cfg;
    cfg.tol = o.tol;
    cfg.eps_rank = o.eps_rank;
    cfg.weighted = !o.unweighted;
    if (o.max_iter > 0) cfg.max_iterations = o.max_iter;
    p.validate();

    const bool sign = o.method == "sign";
    ConvergenceReport report;
    if (dense) {
        DenseSolution s = sign ? solve_sign_dense(p, cfg) : solve_inverse_dense(p, cfg);
        write_matrix_file(o.prefix + ".x", s.X);
        report = std::move(s.report);
    } else {
        LowRankSolution s = sign ? solve_sign_lowrank(p, cfg) : solve_inverse_lowrank(p, cfg);
        write_matrix_file(o.prefix + ".w", s.X.W);
        write_matrix_file(o.prefix + ".z", s.X.Z);
        report = std::move(s.report);
    }
    write_report(o.log, report, o.timing);
    std::cout << std::setprecision(17) << kHeader << "method,iterations,rho,final_bound\n"
              << o.method << ',' << report.iterations << ',' << report.rho << ','
              << (report.records.empty() ? 0.0 : report.records.back().bound) << '\n';
}

// ---------------------------------------------------------------------------

struct BenchOpts {
    std::string figure;
    int n = 200;
    int m = 200;
    std::uint64_t seed = 7;
    std::string out = ".";
    std::string domain = "-1.8,-0.5;2,3";
};

void run_bench(const BenchOpts& o) {
    std::error_code ec;
    std::filesystem::create_directories(o.out, ec);
    if (ec) throw IoError("cannot create directory '" + o.out + "': " + ec.message());
    const std::string path = (std::filesystem::path(o.out) / (o.figure + ".csv")).string();
    Sink sink(path);
    std::ostream& out = sink.stream();
    out << kHeader << "# bench figure=" << o.figure << " n=" << o.n << " m=" << o.m << " seed=" << o.seed << '\n';
    const Interval ia(2, 3), ib(-1.8, -0.5);
    const SolverConfig cfg;

    if (o.figure == "coeff-rate") {
        const CutDomain d = CutDomain::parse(o.domain);
        if (d.size() != 2) throw UnsupportedDomainError("coeff-rate needs a two-interval domain");
        const double rho = sign_rate(d).rho;
        const std::size_t K = static_cast<std::size_t>(std::ceil(std::log(5e16) / std::log(rho))) + 1;
        const SeriesData s = sign_series(d[0], d[1], K);
        out << "# rho=" << rho << "\nj,abs_alpha,envelope\n";
        for (std::size_t j = 0; j < K; ++j)
            out << j << ',' << std::abs(s.coeffs[j]) << ',' << 5 * std::pow(rho, -double(j)) << '\n';
    } else if (o.figure == "err-heur" || o.figure == "err-heur-inv") {
        const BenchmarkProblem b = benchmark_problem(o.n, o.m, ia, ib, 2, o.seed);
        const bool sign = o.figure == "err-heur";
        const double D = sign ? 5.0 * (o.n + o.m) : 20.0 * (o.n + o.m);
        std::vector<double> err;
        LowRankSolution s;
        if (sign)
            s = solve_sign_lowrank(b.p, sign_series_for(b.p, cfg), cfg,
                                   [&](int, const LowRankPair& X) { err.push_back(norm2(X.product() - b.X)); });
        else
            s = solve_inverse_lowrank(b.p, inverse_series_for(b.p, cfg), cfg,
                                      [&](int, const LowRankPair& X) { err.push_back((X.product() - b.X).norm()); });
        const double rho = s.report.rho;
        out << "# rho=" << rho << " norm=" << (sign ? "2" : "frobenius") << "\nk,error,bound\n";
        for (std::size_t i = 0; i < err.size(); ++i)
            out << i + 1 << ',' << err[i] << ',' << D * std::pow(rho, -double(i + 1)) / (1 - 1 / rho) << '\n';
    } else if (o.figure == "weight-rank" || o.figure == "storage") {
        const BenchmarkProblem b = benchmark_problem(o.n, o.m, ia, ib, 2, o.seed);
        if (o.figure == "weight-rank")
            out << "# oracle_rank=" << numerical_rank(b.X, 1e-14) << "\nmethod,weighted,k,rank_jk,rank_wz,error\n";
        else
            out << "method,k,stored_entries,rank_jk,rank_wz\n";
        for (int method = 1; method <= 2; ++method)
            for (int w = 1; w >= (o.figure == "weight-rank" ? 0 : 1); --w) {
                SolverConfig c = cfg;
                c.weighted = w == 1;
                std::vector<double> err;
                auto obs = [&](int, const LowRankPair& X) { err.push_back(norm2(X.product() - b.X)); };
                const LowRankSolution s = method == 1 ? solve_sign_lowrank(b.p, sign_series_for(b.p, c), c, obs)
                                                      : solve_inverse_lowrank(b.p, inverse_series_for(b.p, c), c, obs);
                for (std::size_t i = 0; i < s.report.records.size(); ++i) {
                    const IterationRecord& r = s.report.records[i];
                    if (o.figure == "weight-rank")
                        out << method << ',' << w << ',' << r.iter << ',' << r.rank_jk << ',' << r.rank_wz << ','
                            << err[i] << '\n';
                    else
                        out << method << ',' << r.iter << ',' << r.stored_entries << ',' << r.rank_jk << ','
                            << r.rank_wz << '\n';
                }
            }
    } else if (o.figure == "mult-int-inv") {
        Rng rng(o.seed);
        std::vector<double> la(o.n), lb(o.m);
        for (int i = 0; i < o.n - 1; ++i) la[i] = rng.uniform(0.5, 1);
        la[o.n - 1] = 10;
        for (auto& x : lb) x = rng.uniform(-1.8, -0.5);
        const KnownFactorization fa = known_factorization(la, o.seed * 1000 + 1);
        const KnownFactorization fb = known_factorization(lb, o.seed * 1000 + 2);
        SylvesterProblem p;
        p.A = fa.matrix();
        p.B = fb.matrix();
        p.U = rng.gaussian(o.m, 2) / std::sqrt(double(o.m));
        p.V = rng.gaussian(2, o.n) / std::sqrt(double(o.n));
        const Matrix Xo = sylvester_eigen_oracle(fa, fb, p.U * p.V);
        SolverConfig c = cfg;
        c.max_iterations = 150;
        out << "intervals,k,error\n";
        const SeriesData one = inverse_series(Interval(1, 11.8), 160);
        const SeriesData two = inverse_series(CutDomain{Interval(1, 2.8), Interval(10.5, 11.8)}, 160);
        for (const SeriesData* d : {&one, &two})
            solve_inverse_lowrank(p, *d, c, [&](int k, const LowRankPair& X) {
                out << d->domain.size() << ',' << k << ',' << (X.product() - Xo).norm() << '\n';
            });
    } else {
        throw ParseError("unknown figure '" + o.figure + "'", 0);
    }
    sink.close();
    std::cout << path << '\n';
}

// ---------------------------------------------------------------------------

struct FredholmOpts {
    std::string kernel = "exp-abs";
    int n = 200;
    double delta = 0.5;
    std::string out;
    std::string log;
    bool timing = false;
};

void run_fredholm(const FredholmOpts& o) {
    const FredholmSpec spec = fredholm_preset(o.kernel, o.n, o.delta);
    IntegralSystem sys;
    Matrix U;
    int iterations = 0, gmres_iterations = 0;
    if (spec.generalized()) {
        GeneralizedSolution g = solve_generalized(spec);
        sys = std::move(g.system);
        U = std::move(g.U);
        gmres_iterations = g.gmres_iterations;
    } else {
        FredholmSolution f = solve_fredholm(spec);
        sys = std::move(f.system);
        U = f.U.product();
        iterations = f.report.iterations;
        write_report(o.log, f.report, o.timing);
    }
    const double residual = fredholm_residual(sys, U);
    if (!o.out.empty()) {
        Sink s(o.out);
        const Matrix u = sys.grid_values(U);
        s.stream() << kHeader << "x,y,u\n";
        for (int j = 0; j < o.n; ++j)
            for (int k = 0; k < o.n; ++k) s.stream() << sys.nodes[j] << ',' << sys.nodes[k] << ',' << u(j, k) << '\n';
        s.close();
    }
    std::cout << std::setprecision(17) << kHeader << "kernel,n,residual,iterations,gmres_iterations\n"
              << o.kernel << ',' << o.n << ',' << residual << ',' << iterations << ',' << gmres_iterations << '\n';
}

// ---------------------------------------------------------------------------

struct FrechetOpts {
    std::string a, e, u, v;
    std::string function = "sign";
    std::string domain;
    double tol = 1e-12;
    int iters = 0;
    std::string prefix = "frechet";
    std::string log;
    bool timing = false;
};

void run_frechet(const FrechetOpts& o) {
    const bool dense = !o.e.empty();
    if (dense == (!o.u.empty() || !o.v.empty())) throw ParseError("give either --e or both --u and --v", 0);
    if (!dense && (o.u.empty() || o.v.empty())) throw ParseError("--u and --v must be given together", 0);
    const CutDomain d = CutDomain::parse(o.domain);
    const Matrix A = read_matrix_file(o.a);
    SolverConfig cfg;
    cfg.tol = o.tol;
    if (o.iters > 0) cfg.max_iterations = o.iters;
    SeriesData data;
    if (o.function == "sign") {
        if (d.size() != 2) throw UnsupportedDomainError("the sign function needs a two-interval domain");
        const double rho = sign_rate(d).rho;
        const int k = o.iters > 0 ? o.iters : iterations_for_tolerance(Method::Sign, rho, o.tol, A.rows(), A.rows());
        data = sign_series(d[0], d[1], std::size_t(k));
    } else {
        if (o.iters <= 0) throw ParseError("--iters is required for exp", 0);
        data = function_series(d, [](cplx z) { return std::exp(z); }, std::size_t(o.iters));
    }
    ConvergenceReport report;
    if (dense) {
        DenseSolution s = frechet_dense(A, read_matrix_file(o.e), data, cfg);
        write_matrix_file(o.prefix + ".l", s.X);
        report = std::move(s.report);
    } else {
        LowRankSolution s = frechet_lowrank(A, read_matrix_file(o.u), read_matrix_file(o.v), data, cfg);
        write_matrix_file(o.prefix + ".w", s.X.W);
        write_matrix_file(o.prefix + ".z", s.X.Z);
        report = std::move(s.report);
    }
    write_report(o.log, report, o.timing);
    std::cout << std::setprecision(17) << kHeader << "function,iterations,rho\n"
              << o.function << ',' << report.iterations << ',' << report.rho << '\n';
}

// ---------------------------------------------------------------------------

struct GridOpts {
    std::string domain;
    std::string re = "-3,3";
    std::string im = "-2,2";
    int nx = 61;
    int ny = 41;
    std::string out;
};

void run_grid(const GridOpts& o) {
    const CutDomain d = CutDomain::parse(o.domain);
    const Interval re = parse_interval(o.re, "--re"), im = parse_interval(o.im, "--im");
    if (o.nx < 2 || o.ny < 2) throw ParseError("--nx and --ny must be at least 2", 0);
    const GreenGrid g = g_grid(d, re.lo, re.hi, im.lo, im.hi, o.nx, o.ny);
    Sink s(o.out);
    s.stream() << kHeader << "re,im,exp_g\n";
    for (std::size_t iy = 0; iy < g.im.size(); ++iy)
        for (std::size_t ix = 0; ix < g.re.size(); ++ix)
            s.stream() << g.re[ix] << ',' << g.im[iy] << ',' << g.value[iy][ix] << '\n';
    s.close();
}

// ---------------------------------------------------------------------------

struct VerifyOpts {
    std::string suite = "all";
    std::uint64_t seed = 0;
    double tol_scale = 1.0;
};

int run_verify(const VerifyOpts& o) {
    AcceptanceOptions opt;
    opt.seed = o.seed;
    opt.tolerance_scale = o.tol_scale;
    const auto results = run_criteria(suite_criteria(o.suite), opt);
    return report_results(std::cout, results) ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sylvester solvers from orthogonal-polynomial series on cut domains"};
    app.require_subcommand(1);
    app.footer(
        "Exit codes: 0 ok, 1 usage, 2 accuracy or convergence, 3 geometry/domain/dimension, 4 I/O.\n"
        "CSV outputs start with '# akhsylv-csv v1'; floats carry 17 significant digits.");

    RatesOpts ro;
    auto* rates = app.add_subcommand("rates", "Decay rates and predicted iteration counts.\n"
                                              "CSV: tol,n,m,iterations with z_star/rho/rho_inv in comments.");
    rates->add_option("--domain", ro.domain, "Intervals \"lo,hi;lo,hi\"")->required();
    rates->add_option("--method", ro.method, "sign or inverse")->check(CLI::IsMember({"sign", "inverse"}));
    rates->add_option("--size", ro.sizes, "Sizes n = m for the iteration table");

    CoeffsOpts co;
    auto* coeffs = app.add_subcommand("coeffs", "Series coefficients (CSV j,alpha,envelope) or the recurrence "
                                                "table (CSV k,a,b).");
    coeffs->add_option("--domain", co.domain, "Intervals \"lo,hi;lo,hi\"")->required();
    coeffs->add_option("--function", co.function, "sign, inverse or exp")
        ->check(CLI::IsMember({"sign", "inverse", "exp"}));
    coeffs->add_option("--count", co.count, "Number of terms")->check(CLI::Range(1, 100000));
    coeffs->add_flag("--recurrence", co.recurrence, "Write the recurrence table instead");
    coeffs->add_option("--out", co.out, "Output file (default stdout)");

    SolveOpts so;
    auto* solve = app.add_subcommand("solve", "Solve X A - B X = C from matrix-text files.\n"
                                              "Writes P.x (dense C) or P.w, P.z (factored C).\n"
                                              "Log CSV: iter,bound,rank_jk,rank_wz,stored_entries[,seconds].");
    solve->add_option("--method", so.method, "sign or inverse")->check(CLI::IsMember({"sign", "inverse"}));
    solve->add_option("--a", so.a, "A (n x n)")->required();
    solve->add_option("--b", so.b, "B (m x m)")->required();
    solve->add_option("--c", so.c, "C (m x n)");
    solve->add_option("--u", so.u, "U (m x r)");
    solve->add_option("--v", so.v, "V (r x n)");
    solve->add_option("--dom-a", so.dom_a, "Interval lo,hi containing the eigenvalues of A")->required();
    solve->add_option("--dom-b", so.dom_b, "Interval lo,hi containing the eigenvalues of B")->required();
    solve->add_option("--tol", so.tol, "Target accuracy")->check(CLI::PositiveNumber);
    solve->add_option("--eps-rank", so.eps_rank, "Relative truncation threshold")->check(CLI::NonNegativeNumber);
    solve->add_option("--max-iter", so.max_iter, "Fixed iteration count")->check(CLI::NonNegativeNumber);
    solve->add_flag("--unweighted", so.unweighted, "Compress J K with eps-rank alone");
    solve->add_flag("--timing", so.timing, "Add a seconds column to the log");
    solve->add_option("--out-prefix", so.prefix, "Prefix for solution files");
    solve->add_option("--log", so.log, "Convergence report CSV");

    BenchOpts bo;
    auto* bench = app.add_subcommand("bench", "Regenerate figure data as <out>/<figure>.csv.\n"
                                              "coeff-rate: j,abs_alpha,envelope; err-heur(-inv): k,error,bound;\n"
                                              "weight-rank: method,weighted,k,rank_jk,rank_wz,error;\n"
                                              "mult-int-inv: intervals,k,error; "
                                              "storage: method,k,stored_entries,rank_jk,rank_wz.");
    bench->add_option("--figure", bo.figure, "Figure name")
        ->required()
        ->check(CLI::IsMember({"err-heur", "err-heur-inv", "weight-rank", "mult-int-inv", "coeff-rate", "storage"}));
    bench->add_option("--n", bo.n, "Size of A")->check(CLI::Range(2, 2000));
    bench->add_option("--m", bo.m, "Size of B")->check(CLI::Range(2, 2000));
    bench->add_option("--seed", bo.seed, "Problem seed");
    bench->add_option("--out", bo.out, "Output directory");
    bench->add_option("--domain", bo.domain, "Domain for coeff-rate");

    FredholmOpts fo;
    auto* fred = app.add_subcommand("fredholm", "Collocated Fredholm equation with a kernel preset.\n"
                                                "stdout CSV: kernel,n,residual,iterations,gmres_iterations; "
                                                "--out CSV: x,y,u.");
    fred->add_option("--kernel", fo.kernel, "exp-abs or gauss")->check(CLI::IsMember({"exp-abs", "gauss"}));
    fred->add_option("--n", fo.n, "Grid size")->check(CLI::Range(2, 5000));
    fred->add_option("--delta", fo.delta, "Lower spectral margin")->check(CLI::PositiveNumber);
    fred->add_option("--out", fo.out, "Solution grid CSV");
    fred->add_option("--log", fo.log, "Convergence report CSV (exp-abs)");
    fred->add_flag("--timing", fo.timing, "Add a seconds column to the log");

    FrechetOpts ho;
    auto* frechet = app.add_subcommand("frechet", "Frechet derivative L_f(A, E) for f = sign or exp.\n"
                                                  "Writes P.l (dense E) or P.w, P.z (E = U V).");
    frechet->add_option("--a", ho.a, "A (n x n)")->required();
    frechet->add_option("--e", ho.e, "E (n x n)");
    frechet->add_option("--u", ho.u, "U (n x r)");
    frechet->add_option("--v", ho.v, "V (r x n)");
    frechet->add_option("--function", ho.function, "sign or exp")->check(CLI::IsMember({"sign", "exp"}));
    frechet->add_option("--domain", ho.domain, "Intervals containing the eigenvalues of A")->required();
    frechet->add_option("--tol", ho.tol, "Target accuracy (sign)")->check(CLI::PositiveNumber);
    frechet->add_option("--iters", ho.iters, "Iteration count (required for exp)")->check(CLI::NonNegativeNumber);
    frechet->add_option("--out-prefix", ho.prefix, "Prefix for result files");
    frechet->add_option("--log", ho.log, "Convergence report CSV");
    frechet->add_flag("--timing", ho.timing, "Add a seconds column to the log");

    GridOpts go;
    auto* grid = app.add_subcommand("grid-g", "exp(re g) on a rectangle. CSV: re,im,exp_g.");
    grid->add_option("--domain", go.domain, "Intervals \"lo,hi;lo,hi\"")->required();
    grid->add_option("--re", go.re, "Real range lo,hi");
    grid->add_option("--im", go.im, "Imaginary range lo,hi");
    grid->add_option("--nx", go.nx, "Columns");
    grid->add_option("--ny", go.ny, "Rows");
    grid->add_option("--out", go.out, "Output file (default stdout)");

    VerifyOpts vo;
    auto* verify = app.add_subcommand("verify", "Run acceptance criteria; one PASS/FAIL line each. Exit 2 on any "
                                                "failure.");
    verify->add_option("--suite", vo.suite, "rates, coeffs, oracles, solvers or all")
        ->check(CLI::IsMember({"rates", "coeffs", "oracles", "solvers", "all"}));
    verify->add_option("--seed", vo.seed, "Offset added to every problem seed");
    verify->add_option("--tol-scale", vo.tol_scale, "Multiplier on every tolerance")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (rates->parsed()) run_rates(ro);
        if (coeffs->parsed()) run_coeffs(co);
        if (solve->parsed()) run_solve(so);
        if (bench->parsed()) run_bench(bo);
        if (fred->parsed()) run_fredholm(fo);
        if (frechet->parsed()) run_frechet(ho);
        if (grid->parsed()) run_grid(go);
        if (verify->parsed()) return run_verify(vo);
    } catch (const ParseError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 1;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return 4;
    } catch (const GeometryError& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return 3;
    } catch (const AccuracyError& e) {
        std::cerr << "accuracy error: " << e.what() << '\n';
        return 2;
    } catch (const ConvergenceError& e) {
        std::cerr << "convergence error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
