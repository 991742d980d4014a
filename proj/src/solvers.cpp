#include "akhsylv/solvers.hpp"

#include "akhsylv/errors.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>

namespace akhsylv {

Matrix SylvesterProblem::rhs() const { return C ? *C : Matrix(U * V); }

void SylvesterProblem::validate() const {
    if (A.rows() != A.cols()) throw DimensionError("A must be square");
    if (B.rows() != B.cols()) throw DimensionError("B must be square");
    if (C) {
        if (C->rows() != m() || C->cols() != n())
            throw DimensionError("C must be " + std::to_string(m()) + " x " + std::to_string(n()));
    } else {
        if (U.rows() != m() || V.cols() != n() || U.cols() != V.rows())
            throw DimensionError("factors must satisfy U: m x r, V: r x n");
    }
}

Matrix LowRankPair::product() const {
    if (W.cols() == 0) return Matrix::Zero(W.rows(), Z.cols());
    return W * Z;
}

void SolverConfig::validate() const {
    if (!(tol > 0 && tol < 1)) throw DomainError("tolerance must lie in (0, 1)");
    if (!(c > 0)) throw DomainError("envelope constant c must be positive");
    if (!(eps_rank >= 0)) throw DomainError("rank tolerance must be nonnegative");
    if (max_iterations && *max_iterations < 1) throw DomainError("max_iterations must be at least 1");
}

long ConvergenceReport::max_stored_entries() const {
    long v = 0;
    for (const auto& r : records) v = std::max(v, r.stored_entries);
    return v;
}

int ConvergenceReport::max_rank_jk() const {
    int v = 0;
    for (const auto& r : records) v = std::max(v, r.rank_jk);
    return v;
}

int ConvergenceReport::max_rank_wz() const {
    int v = 0;
    for (const auto& r : records) v = std::max(v, r.rank_wz);
    return v;
}

void write_csv(std::ostream& out, const ConvergenceReport& report, bool timing) {
    out << "# akhsylv-csv v1\n" << std::setprecision(17);
    out << "# rho=" << report.rho << " iterations=" << report.iterations;
    if (report.nu) out << " nu=" << *report.nu;
    if (report.predicted_convergent) out << " predicted_convergent=" << (*report.predicted_convergent ? 1 : 0);
    out << "\niter,bound,rank_jk,rank_wz,stored_entries" << (timing ? ",seconds\n" : "\n");
    for (const auto& r : report.records) {
        out << r.iter << ',' << r.bound << ',' << r.rank_jk << ',' << r.rank_wz << ',' << r.stored_entries;
        if (timing) out << ',' << r.seconds;
        out << '\n';
    }
}

// ---------------------------------------------------------------------------

Eigen::Index numerical_rank(const Vector& s, double eps) {
    const double total = s.norm();
    if (total == 0.0) return 0;
    Eigen::Index k = 0;
    while (k < s.size() && s(k) / total >= eps) ++k;
    return k;
}

Eigen::Index numerical_rank(const Matrix& M, double eps) {
    if (M.size() == 0) return 0;
    return numerical_rank(svd(M).S, eps);
}

LowRankPair compress(const Matrix& J, const Matrix& K, double eps) {
    if (J.cols() != K.rows()) throw DimensionError("compress: inner dimensions differ");
    if (eps < 0) throw DomainError("compress: eps must be nonnegative");
    const Eigen::Index m = J.rows(), n = K.cols();
    if (J.cols() == 0 || m == 0 || n == 0) return {Matrix(m, 0), Matrix(0, n)};
    const QRResult qj = qr(J);
    const LQResult lk = lq(K);
    const SVDResult core = svd(qj.R * lk.L);
    const Eigen::Index keep = eps == 0.0 ? (core.S.norm() == 0.0 ? 0 : core.S.size()) : numerical_rank(core.S, eps);
    const Vector root = core.S.head(keep).cwiseSqrt();
    LowRankPair out;
    out.W = qj.Q * (core.U.leftCols(keep) * root.asDiagonal());
    out.Z = root.asDiagonal() * core.V.leftCols(keep).transpose() * lk.Q;
    return out;
}

// ---------------------------------------------------------------------------

Matrix akhiezer_matfun(const Matrix& M, const CoefficientStream& coeffs, const RecurrenceTable& table, int k) {
    if (M.rows() != M.cols()) throw DimensionError("akhiezer_matfun needs a square matrix");
    if (k < 1) throw DomainError("akhiezer_matfun needs k >= 1");
    if (static_cast<std::size_t>(k) > coeffs.size() || static_cast<std::size_t>(k) > table.count() + 1)
        throw DomainError("akhiezer_matfun: series data shorter than k");
    const Eigen::Index n = M.rows();
    Matrix prev = Matrix::Zero(n, n), cur = Matrix::Identity(n, n);
    Matrix F = coeffs[0] * cur;
    for (int j = 1; j < k; ++j) {
        const double a = static_cast<double>(table.a[j - 1]), b = static_cast<double>(table.b[j - 1]);
        const double bp = j >= 2 ? static_cast<double>(table.b[j - 2]) : 0.0;
        Matrix next = (M * cur - a * cur - bp * prev) / b;
        prev.swap(cur);
        cur.swap(next);
        F += coeffs[j] * cur;
    }
    return F;
}

double envelope_constant(Method method, Eigen::Index n, Eigen::Index m) {
    return (method == Method::Sign ? 10.0 : 20.0) * static_cast<double>(n + m);
}

int iterations_for_tolerance(Method method, double rho, double eps, Eigen::Index n, Eigen::Index m, int cap) {
    if (!(rho > 1) || !std::isfinite(rho))
        throw ConvergenceError("rate base rho = " + std::to_string(rho) + " does not give convergence");
    if (!(eps > 0)) throw DomainError("tolerance must be positive");
    const double D = envelope_constant(method, n, m);
    const double lr = std::log(rho);
    const double by_tol = -std::log(eps * (1 - 1 / rho) / D) / lr;
    const double by_precision = -std::log(std::ldexp(1.0, -52) / 5) / lr;
    const double k = std::ceil(std::min(by_tol, by_precision));
    if (!(k >= 1)) return 1;
    return static_cast<int>(std::min<double>(k, cap));
}

// ---------------------------------------------------------------------------

SeriesData sign_series(const Interval& left, const Interval& right, std::size_t count) {
    SeriesData d;
    d.domain = CutDomain{left, right};
    const WeightSpec w = WeightSpec::akhiezer(d.domain);
    d.table = stieltjes_recurrence(w, count + 1);
    d.coeffs = sign_coeffs_circles_adaptive(w, d.table, count);
    d.rho = d.coeffs.rho();
    return d;
}

SeriesData inverse_series(const Interval& interval, std::size_t count) {
    SeriesData d;
    d.domain = CutDomain{interval};
    d.table = chebyshev_recurrence(interval, count + 1);
    d.coeffs = inverse_coeffs_chebyshev(interval);
    d.rho = d.coeffs.rho();
    return d;
}

namespace {

WeightSpec default_weight(const CutDomain& domain) {
    if (domain.size() == 1) return WeightSpec::chebyshev(domain[0]);
    if (domain.size() == 2) return WeightSpec::akhiezer(domain);
    return WeightSpec::general(domain, std::vector<std::pair<int, int>>(domain.size(), {-1, -1}));
}

}  // namespace

SeriesData inverse_series(const CutDomain& domain, std::size_t count) {
    if (domain.size() == 1) return inverse_series(domain[0], count);
    SeriesData d;
    d.domain = domain;
    const WeightSpec w = default_weight(domain);
    d.table = stieltjes_recurrence(w, count + 1);
    d.coeffs = inverse_coeffs_general(w, d.table, count);
    d.rho = d.coeffs.rho();
    return d;
}

SeriesData function_series(const CutDomain& domain, const std::function<cplx(cplx)>& f, std::size_t count,
                           int contour_nodes) {
    SeriesData d;
    d.domain = domain;
    const WeightSpec w = default_weight(domain);
    d.table = domain.size() == 1 ? chebyshev_recurrence(domain[0], count + 1) : stieltjes_recurrence(w, count + 1);
    d.coeffs = general_f_coeffs(f, w, d.table, count, contour_nodes);
    d.rho = 0.0;
    return d;
}

Interval difference_interval(const Interval& a, const Interval& b) { return Interval(a.lo - b.hi, a.hi - b.lo); }

bool sign_orientation_flipped(const SylvesterProblem& p) {
    if (!p.domain_A || !p.domain_B) throw DomainError("spectral interval hints for A and B are required");
    const Interval &a = *p.domain_A, &b = *p.domain_B;
    if (b.hi < a.lo) return false;
    if (a.hi < b.lo) return true;
    throw GeometryError("spectral intervals of A and B intersect; the sign iteration needs them disjoint");
}

namespace {

int iteration_count(Method method, double rho, const SolverConfig& config, Eigen::Index n, Eigen::Index m) {
    if (config.max_iterations) return *config.max_iterations;
    return iterations_for_tolerance(method, rho, config.tol, n, m);
}

Interval negate(const Interval& iv) { return Interval(-iv.hi, -iv.lo); }

}  // namespace

SeriesData sign_series_for(const SylvesterProblem& p, const SolverConfig& config) {
    config.validate();
    const bool flip = sign_orientation_flipped(p);
    const Interval left = flip ? negate(*p.domain_B) : *p.domain_B;
    const Interval right = flip ? negate(*p.domain_A) : *p.domain_A;
    const double rho = sign_rate(CutDomain{left, right}).rho;
    const int k = iteration_count(Method::Sign, rho, config, p.n(), p.m());
    return sign_series(left, right, static_cast<std::size_t>(k));
}

SeriesData inverse_series_for(const SylvesterProblem& p, const SolverConfig& config) {
    config.validate();
    if (!p.domain_A || !p.domain_B) throw DomainError("spectral interval hints for A and B are required");
    const Interval s = difference_interval(*p.domain_A, *p.domain_B);
    if (s.contains(0.0))
        throw SingularDomainError("0 lies in the spectral interval of the Sylvester operator; no unique solution");
    const double rho = 1 / std::abs(inverse_rate(s));
    const int k = iteration_count(Method::Inverse, rho, config, p.n(), p.m());
    return inverse_series(s, static_cast<std::size_t>(k));
}

// ---------------------------------------------------------------------------

namespace {

using Clock = std::chrono::steady_clock;

struct Tracker {
    ConvergenceReport report;
    Clock::time_point start = Clock::now();
    double D = 0.0;

    double bound(int k) const {
        const double rho = report.rho;
        if (!(rho > 1) || !std::isfinite(rho)) return std::numeric_limits<double>::quiet_NaN();
        return D * std::pow(rho, -static_cast<double>(k)) / (1 - 1 / rho);
    }
    void record(int k, int rank_jk, int rank_wz, long stored) {
        const double t = std::chrono::duration<double>(Clock::now() - start).count();
        report.records.push_back({k, bound(k), rank_jk, rank_wz, stored, t});
    }
};

long entries(std::initializer_list<const Matrix*> ms) {
    long s = 0;
    for (const Matrix* M : ms) s += static_cast<long>(M->size());
    return s;
}

void check_series(const SeriesData& data, int k) {
    if (static_cast<std::size_t>(k) > data.coeffs.size())
        throw DomainError("series data has " + std::to_string(data.coeffs.size()) + " coefficients, " +
                          std::to_string(k) + " needed");
    if (data.table.count() + 1 < static_cast<std::size_t>(k))
        throw DomainError("recurrence table too short for " + std::to_string(k) + " iterations");
}

double ta(const SeriesData& d, int j) { return static_cast<double>(d.table.a[j]); }
double tb(const SeriesData& d, int j) { return j < 0 ? 0.0 : static_cast<double>(d.table.b[j]); }

void attach_nu(ConvergenceReport& report, const SolverConfig& config, const CutDomain& domain, cplx z_ref,
               double sign) {
    if (config.eigenvalue_hints.empty()) return;
    std::vector<cplx> eig;
    for (cplx z : config.eigenvalue_hints) eig.push_back(sign * z);
    report.nu = nu(domain, eig, z_ref);
    report.predicted_convergent = *report.nu < 0;
}

// Lower-left block L_k of p_k([[A, 0], [C, B]]):
//   L_0 = 0,  L_{k+1} = (L_k (A - a_k) + p_k(B) C - b_{k-1} L_{k-1}) / b_k,
// accumulated as X = sum_j factor alpha_j L_j.
Matrix lower_left_dense(const Matrix& A, const Matrix& B, const Matrix& C, const SeriesData& data, int k,
                        double factor, Tracker& tr, const DenseObserver& observer, double out_sign) {
    const Eigen::Index n = A.rows(), m = B.rows();
    Matrix Lp = Matrix::Zero(m, n), L = Matrix::Zero(m, n);
    Matrix Pp = Matrix::Zero(m, m), P = Matrix::Identity(m, m);
    Matrix X = Matrix::Zero(m, n);
    for (int j = 0; j < k; ++j) {
        if (j > 0) X += factor * data.coeffs[j] * L;
        tr.record(j + 1, 0, 0, entries({&Lp, &L, &Pp, &P, &X, &A, &B, &C}));
        if (observer) observer(j + 1, out_sign * X);
        if (j + 1 == k) break;
        const double a = ta(data, j), b = tb(data, j), bp = tb(data, j - 1);
        Matrix Ln = (L * A - a * L + P * C - bp * Lp) / b;
        Matrix Pn = (B * P - a * P - bp * Pp) / b;
        Lp.swap(L);
        L.swap(Ln);
        Pp.swap(P);
        P.swap(Pn);
    }
    return out_sign * X;
}

double weighted_tol(const SolverConfig& config, double rho, int k) {
    if (!config.weighted || !(rho > 1) || !std::isfinite(rho)) return config.eps_rank;
    return config.eps_rank * std::pow(rho, static_cast<double>(k)) / config.c;
}

LowRankPair lower_left_lowrank(const Matrix& A, const Matrix& B, const Matrix& U, const Matrix& V,
                               const SeriesData& data, const SolverConfig& config, int k, double factor,
                               Tracker& tr, const LowRankObserver& observer, double out_sign) {
    const Eigen::Index n = A.rows(), m = B.rows(), r = U.cols();
    Matrix J(m, 0), K(0, n), Jp(m, 0), Kp(0, n);
    Matrix PU = U, PUp = Matrix::Zero(m, r);
    LowRankPair X{Matrix(m, 0), Matrix(0, n)};
    for (int j = 0; j < k; ++j) {
        long peak = 0;
        if (j > 0 && J.cols() > 0) {
            Matrix Wn(m, X.W.cols() + J.cols()), Zn(X.Z.rows() + K.rows(), n);
            Wn << X.W, factor * data.coeffs[j] * J;
            Zn << X.Z, K;
            peak = entries({&Wn, &Zn, &X.W, &X.Z, &J, &K, &Jp, &Kp, &PU, &PUp, &U, &V});
            X = compress(Wn, Zn, config.eps_rank);
        }
        if (j + 1 < k) {
            const double a = ta(data, j), b = tb(data, j), bp = tb(data, j - 1);
            Matrix Jn(m, J.cols() + r + Jp.cols()), Kn(K.rows() + r + Kp.rows(), n);
            Jn << J / b, PU / b, (-bp / b) * Jp;
            Kn << K * A - a * K, V, Kp;
            Matrix PUn = (B * PU - a * PU - bp * PUp) / b;
            peak = std::max(peak, entries({&X.W, &X.Z, &J, &K, &Jp, &Kp, &Jn, &Kn, &PU, &PUp, &PUn, &U, &V}));
            Jp.swap(J);
            Kp.swap(K);
            LowRankPair c = compress(Jn, Kn, weighted_tol(config, data.rho, j + 1));
            J = std::move(c.W);
            K = std::move(c.Z);
            PUp.swap(PU);
            PU.swap(PUn);
        }
        peak = std::max(peak, entries({&X.W, &X.Z, &J, &K, &Jp, &Kp, &PU, &PUp, &U, &V}));
        tr.record(j + 1, static_cast<int>(J.cols()), static_cast<int>(X.rank()), peak);
        if (observer) observer(j + 1, LowRankPair{out_sign * X.W, X.Z});
    }
    X.W *= out_sign;
    return X;
}

}  // namespace

DenseSolution solve_sign_dense(const SylvesterProblem& p, const SeriesData& data, const SolverConfig& config,
                               const DenseObserver& observer) {
    p.validate();
    config.validate();
    if (data.domain.size() != 2) throw UnsupportedDomainError("sign data must live on two intervals");
    const bool flip = p.domain_A && p.domain_B && sign_orientation_flipped(p);
    const double s = flip ? -1.0 : 1.0;
    const int k = iteration_count(Method::Sign, data.rho, config, p.n(), p.m());
    check_series(data, k);
    Tracker tr;
    tr.report.rho = data.rho;
    tr.D = envelope_constant(Method::Sign, p.n(), p.m()) / 2;
    attach_nu(tr.report, config, data.domain, sign_rate(data.domain).z_star, s);
    const Matrix C = p.rhs();
    DenseSolution out;
    out.X = lower_left_dense(s * p.A, s * p.B, s * C, data, k, 0.5, tr, observer, 1.0);
    tr.report.iterations = k;
    out.report = std::move(tr.report);
    return out;
}

DenseSolution solve_sign_dense(const SylvesterProblem& p, const SolverConfig& config) {
    return solve_sign_dense(p, sign_series_for(p, config), config);
}

LowRankSolution solve_sign_lowrank(const SylvesterProblem& p, const SeriesData& data, const SolverConfig& config,
                                   const LowRankObserver& observer) {
    p.validate();
    config.validate();
    if (!p.factored()) throw DimensionError("the low-rank solver needs the right-hand side as factors U, V");
    if (data.domain.size() != 2) throw UnsupportedDomainError("sign data must live on two intervals");
    const bool flip = p.domain_A && p.domain_B && sign_orientation_flipped(p);
    const double s = flip ? -1.0 : 1.0;
    const int k = iteration_count(Method::Sign, data.rho, config, p.n(), p.m());
    check_series(data, k);
    Tracker tr;
    tr.report.rho = data.rho;
    tr.D = envelope_constant(Method::Sign, p.n(), p.m()) / 2;
    attach_nu(tr.report, config, data.domain, sign_rate(data.domain).z_star, s);
    LowRankSolution out;
    out.X = lower_left_lowrank(s * p.A, s * p.B, s * p.U, p.V, data, config, k, 0.5, tr, observer, 1.0);
    tr.report.iterations = k;
    out.report = std::move(tr.report);
    return out;
}

LowRankSolution solve_sign_lowrank(const SylvesterProblem& p, const SolverConfig& config) {
    return solve_sign_lowrank(p, sign_series_for(p, config), config);
}

// ---------------------------------------------------------------------------
// Inverse iteration: P_0 = C, P_{k+1} = (P_k (A - a_k) - B P_k - b_{k-1} P_{k-1}) / b_k.

DenseSolution solve_inverse_dense(const SylvesterProblem& p, const SeriesData& data, const SolverConfig& config,
                                  const DenseObserver& observer) {
    p.validate();
    config.validate();
    if (data.domain.contains(0.0)) throw SingularDomainError("0 lies in the spectral set of the Sylvester operator");
    const int k = iteration_count(Method::Inverse, data.rho, config, p.n(), p.m());
    check_series(data, k);
    Tracker tr;
    tr.report.rho = data.rho;
    tr.D = envelope_constant(Method::Inverse, p.n(), p.m());
    attach_nu(tr.report, config, data.domain, 0.0, 1.0);
    const Eigen::Index n = p.n(), m = p.m();
    Matrix Pp = Matrix::Zero(m, n), P = p.rhs();
    Matrix X = Matrix::Zero(m, n);
    for (int j = 0; j < k; ++j) {
        X += data.coeffs[j] * P;
        tr.record(j + 1, 0, 0, entries({&Pp, &P, &X, &p.A, &p.B}));
        if (observer) observer(j + 1, X);
        if (j + 1 == k) break;
        const double a = ta(data, j), b = tb(data, j), bp = tb(data, j - 1);
        Matrix Pn = (P * p.A - p.B * P - a * P - bp * Pp) / b;
        Pp.swap(P);
        P.swap(Pn);
    }
    tr.report.iterations = k;
    return {std::move(X), std::move(tr.report)};
}

DenseSolution solve_inverse_dense(const SylvesterProblem& p, const SolverConfig& config) {
    return solve_inverse_dense(p, inverse_series_for(p, config), config);
}

LowRankSolution solve_inverse_lowrank(const SylvesterProblem& p, const SeriesData& data, const SolverConfig& config,
                                      const LowRankObserver& observer) {
    p.validate();
    config.validate();
    if (!p.factored()) throw DimensionError("the low-rank solver needs the right-hand side as factors U, V");
    if (data.domain.contains(0.0)) throw SingularDomainError("0 lies in the spectral set of the Sylvester operator");
    const int k = iteration_count(Method::Inverse, data.rho, config, p.n(), p.m());
    check_series(data, k);
    Tracker tr;
    tr.report.rho = data.rho;
    tr.D = envelope_constant(Method::Inverse, p.n(), p.m());
    attach_nu(tr.report, config, data.domain, 0.0, 1.0);
    const Eigen::Index n = p.n(), m = p.m();
    LowRankPair first = compress(p.U, p.V, weighted_tol(config, data.rho, 0));
    Matrix J = std::move(first.W), K = std::move(first.Z), Jp(m, 0), Kp(0, n);
    LowRankPair X{Matrix(m, 0), Matrix(0, n)};
    for (int j = 0; j < k; ++j) {
        long peak = 0;
        if (J.cols() > 0) {
            Matrix Wn(m, X.W.cols() + J.cols()), Zn(X.Z.rows() + K.rows(), n);
            Wn << X.W, data.coeffs[j] * J;
            Zn << X.Z, K;
            peak = entries({&Wn, &Zn, &X.W, &X.Z, &J, &K, &Jp, &Kp});
            X = compress(Wn, Zn, config.eps_rank);
        }
        if (j + 1 < k) {
            const double a = ta(data, j), b = tb(data, j), bp = tb(data, j - 1);
            Matrix Jn(m, 2 * J.cols() + Jp.cols()), Kn(2 * K.rows() + Kp.rows(), n);
            Jn << J / b, (-1 / b) * (p.B * J), (-bp / b) * Jp;
            Kn << K * p.A - a * K, K, Kp;
            peak = std::max(peak, entries({&X.W, &X.Z, &J, &K, &Jp, &Kp, &Jn, &Kn}));
            Jp.swap(J);
            Kp.swap(K);
            LowRankPair c = compress(Jn, Kn, weighted_tol(config, data.rho, j + 1));
            J = std::move(c.W);
            K = std::move(c.Z);
        }
        peak = std::max(peak, entries({&X.W, &X.Z, &J, &K, &Jp, &Kp}));
        tr.record(j + 1, static_cast<int>(J.cols()), static_cast<int>(X.rank()), peak);
        if (observer) observer(j + 1, X);
    }
    tr.report.iterations = k;
    return {std::move(X), std::move(tr.report)};
}

LowRankSolution solve_inverse_lowrank(const SylvesterProblem& p, const SolverConfig& config) {
    return solve_inverse_lowrank(p, inverse_series_for(p, config), config);
}

// ---------------------------------------------------------------------------

namespace {

int frechet_iterations(const SeriesData& data, const SolverConfig& config, Eigen::Index n) {
    if (config.max_iterations) return *config.max_iterations;
    if (!(data.rho > 1))
        throw ConvergenceError("no decay rate for this function; set an explicit iteration count");
    return iterations_for_tolerance(Method::Sign, data.rho, config.tol, n, n);
}

}  // namespace

DenseSolution frechet_dense(const Matrix& A, const Matrix& E, const SeriesData& data, const SolverConfig& config,
                            const DenseObserver& observer) {
    config.validate();
    if (A.rows() != A.cols() || E.rows() != A.rows() || E.cols() != A.cols())
        throw DimensionError("Frechet derivative needs square A and E of the same size");
    const int k = frechet_iterations(data, config, A.rows());
    check_series(data, k);
    Tracker tr;
    tr.report.rho = data.rho;
    tr.D = envelope_constant(Method::Sign, A.rows(), A.rows());
    DenseSolution out;
    out.X = lower_left_dense(A, A, E, data, k, 1.0, tr, observer, 1.0);
    tr.report.iterations = k;
    out.report = std::move(tr.report);
    return out;
}

LowRankSolution frechet_lowrank(const Matrix& A, const Matrix& U, const Matrix& V, const SeriesData& data,
                                const SolverConfig& config, const LowRankObserver& observer) {
    config.validate();
    if (A.rows() != A.cols() || U.rows() != A.rows() || V.cols() != A.rows() || U.cols() != V.rows())
        throw DimensionError("Frechet derivative needs E = U V with the size of A");
    const int k = frechet_iterations(data, config, A.rows());
    check_series(data, k);
    Tracker tr;
    tr.report.rho = data.rho;
    tr.D = envelope_constant(Method::Sign, A.rows(), A.rows());
    LowRankSolution out;
    out.X = lower_left_lowrank(A, A, U, V, data, config, k, 1.0, tr, observer, 1.0);
    tr.report.iterations = k;
    out.report = std::move(tr.report);
    return out;
}

}  // namespace akhsylv
