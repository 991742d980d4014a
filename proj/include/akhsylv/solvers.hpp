#pragma once

#include "akhsylv/akhiezer.hpp"
#include "akhsylv/cutdomain.hpp"
#include "akhsylv/linalg.hpp"

#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

namespace akhsylv {

/// X A - B X = C with A n x n, B m x m and either a dense C (m x n) or factors C = U V.
struct SylvesterProblem {
    Matrix A;
    Matrix B;
    std::optional<Matrix> C;
    Matrix U;  // m x r
    Matrix V;  // r x n
    std::optional<Interval> domain_A;
    std::optional<Interval> domain_B;

    Eigen::Index n() const { return A.rows(); }
    Eigen::Index m() const { return B.rows(); }
    bool factored() const { return !C.has_value(); }
    /// C, formed from the factors when needed.
    Matrix rhs() const;
    /// Throws DimensionError on inconsistent shapes.
    void validate() const;
};

/// W Z with W m x k and Z k x n.
struct LowRankPair {
    Matrix W;
    Matrix Z;

    Eigen::Index rank() const { return W.cols(); }
    Matrix product() const;
};

struct SolverConfig {
    double tol = 1e-12;
    double c = 5.0;
    double eps_rank = 1e-14;
    std::optional<int> max_iterations;
    bool weighted = true;
    /// Optional eigenvalue estimates; when given, the report carries the nu diagnostic.
    std::vector<cplx> eigenvalue_hints;

    void validate() const;
};

struct IterationRecord {
    int iter = 0;
    double bound = 0.0;
    int rank_jk = 0;
    int rank_wz = 0;
    long stored_entries = 0;
    double seconds = 0.0;
};

struct ConvergenceReport {
    std::vector<IterationRecord> records;
    int iterations = 0;
    double rho = 0.0;
    std::optional<double> nu;
    std::optional<bool> predicted_convergent;

    long max_stored_entries() const;
    int max_rank_jk() const;
    int max_rank_wz() const;
};

/// Columns iter, bound, rank_jk, rank_wz, stored_entries and, with timing, seconds. Without
/// timing the output is identical across runs.
void write_csv(std::ostream& out, const ConvergenceReport& report, bool timing = true);

/// Number of singular values with sigma_j / ||sigma||_2 >= eps.
Eigen::Index numerical_rank(const Vector& singular_values, double eps);
Eigen::Index numerical_rank(const Matrix& M, double eps);

/// Recompresses J K: QR of J, LQ of K, SVD of the small core, trailing singular values with
/// sigma_j / ||sigma||_2 < eps dropped and sqrt(Sigma) split between the factors.
LowRankPair compress(const Matrix& J, const Matrix& K, double eps);

/// sum_{j<k} alpha_j p_j(M) by the three-term matrix recurrence.
Matrix akhiezer_matfun(const Matrix& M, const CoefficientStream& coeffs, const RecurrenceTable& table, int k);

enum class Method { Sign, Inverse };

/// Envelope constant for the error in the full block: 10 (n + m) for the sign iteration,
/// 20 (n + m) for the inverse iteration.
double envelope_constant(Method method, Eigen::Index n, Eigen::Index m);

/// ceil(min(-log_rho(eps (1 - 1/rho) / D), -log_rho(eps_mach / 5))), clamped to [1, cap].
int iterations_for_tolerance(Method method, double rho, double eps, Eigen::Index n, Eigen::Index m,
                             int cap = 20000);

/// Recurrence and coefficients of one scalar series on a domain, with its decay base.
struct SeriesData {
    CutDomain domain{Interval(-1.0, 1.0)};
    RecurrenceTable table;
    CoefficientStream coeffs;
    double rho = 0.0;
};

/// sign data on left u right (+1 on right), at least count terms.
SeriesData sign_series(const Interval& left, const Interval& right, std::size_t count);

/// 1/x data on a single interval (closed-form Chebyshev stream).
SeriesData inverse_series(const Interval& interval, std::size_t count);

/// 1/x data on a cut domain: Chebyshev for one interval, Akhiezer weight for two, and
/// inverse square-root endpoint weights otherwise.
SeriesData inverse_series(const CutDomain& domain, std::size_t count);

/// Contour coefficients of an analytic f with the Akhiezer (two intervals) or Chebyshev (one
/// interval) weight. rho is left at 0 since it depends on f.
SeriesData function_series(const CutDomain& domain, const std::function<cplx(cplx)>& f, std::size_t count,
                           int contour_nodes = 800);

/// [lo_A - hi_B, hi_A - lo_B]: an interval containing sigma(A) - sigma(B).
Interval difference_interval(const Interval& a, const Interval& b);

/// The sign iteration needs A's interval on the right. For a problem whose A interval lies left
/// of B's, the solvers negate A, B and C; this returns true in that case.
bool sign_orientation_flipped(const SylvesterProblem& problem);

/// Builds sign data for the problem's domain hints with enough terms for config.
/// Throws DomainError when hints are missing or the intervals intersect.
SeriesData sign_series_for(const SylvesterProblem& problem, const SolverConfig& config);

/// Builds Chebyshev 1/x data on difference_interval of the problem's hints.
SeriesData inverse_series_for(const SylvesterProblem& problem, const SolverConfig& config);

struct DenseSolution {
    Matrix X;
    ConvergenceReport report;
};

struct LowRankSolution {
    LowRankPair X;
    ConvergenceReport report;
};

/// Called after each iteration with the number of accumulated terms and the current iterate.
using DenseObserver = std::function<void(int, const Matrix&)>;
using LowRankObserver = std::function<void(int, const LowRankPair&)>;

/// Sign iteration with dense matrices. data must come from sign_series_for (or be built on the
/// oriented domain B u A).
DenseSolution solve_sign_dense(const SylvesterProblem& problem, const SeriesData& data, const SolverConfig& config,
                               const DenseObserver& observer = {});
DenseSolution solve_sign_dense(const SylvesterProblem& problem, const SolverConfig& config = {});

/// Sign iteration on factors U, V with compression after each step.
LowRankSolution solve_sign_lowrank(const SylvesterProblem& problem, const SeriesData& data,
                                   const SolverConfig& config, const LowRankObserver& observer = {});
LowRankSolution solve_sign_lowrank(const SylvesterProblem& problem, const SolverConfig& config = {});

/// Series for 1/x applied to the Sylvester operator Y -> Y A - B Y. data lives on a set
/// containing sigma(A) - sigma(B).
DenseSolution solve_inverse_dense(const SylvesterProblem& problem, const SeriesData& data,
                                  const SolverConfig& config, const DenseObserver& observer = {});
DenseSolution solve_inverse_dense(const SylvesterProblem& problem, const SolverConfig& config = {});

LowRankSolution solve_inverse_lowrank(const SylvesterProblem& problem, const SeriesData& data,
                                      const SolverConfig& config, const LowRankObserver& observer = {});
LowRankSolution solve_inverse_lowrank(const SylvesterProblem& problem, const SolverConfig& config = {});

/// L_f(A, E) from the lower-left block of f([[A, 0], [E, A]]). data holds the f series on a
/// domain containing sigma(A). The iteration count is config.max_iterations, or derived from
/// data.rho with the 10 (2n) envelope when that is a valid rate.
DenseSolution frechet_dense(const Matrix& A, const Matrix& E, const SeriesData& data, const SolverConfig& config,
                            const DenseObserver& observer = {});

/// Same with E = U V.
LowRankSolution frechet_lowrank(const Matrix& A, const Matrix& U, const Matrix& V, const SeriesData& data,
                                const SolverConfig& config, const LowRankObserver& observer = {});

}  // namespace akhsylv
