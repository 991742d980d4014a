#include "akhsylv/apps.hpp"

#include "akhsylv/errors.hpp"

#include <cmath>
#include <limits>

namespace akhsylv {

void FredholmSpec::validate() const {
    if (n < 2) throw DomainError("Fredholm grid needs n >= 2");
    if (!(delta > 0)) throw DomainError("Fredholm spectral margin delta must be positive");
    if (!K1 || !K2) throw DomainError("Fredholm kernels K1 and K2 are required");
    if (f.empty() || f.size() != g.size()) throw DomainError("Fredholm right-hand side needs matching f and g lists");
    if (K3.has_value() != K4.has_value()) throw DomainError("K3 and K4 must be given together");
}

Interval IntegralSystem::operator_interval() const {
    return difference_interval(*problem.domain_A, *problem.domain_B);
}

Matrix IntegralSystem::grid_values(const Matrix& U) const {
    const Eigen::Index n = static_cast<Eigen::Index>(weights.size());
    Vector s(n);
    for (Eigen::Index j = 0; j < n; ++j) s(j) = std::sqrt(weights[j]);
    return U.cwiseQuotient(s * s.transpose());
}

namespace {

Matrix kernel_matrix(const Kernel& K, const std::vector<double>& x, const Vector& sw) {
    const Eigen::Index n = sw.size();
    Matrix M(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index k = 0; k < n; ++k) M(j, k) = sw(j) * sw(k) * K(x[j], x[k]);
    return M;
}

// Lowest Rayleigh quotient seen over a few seeded vectors pushed toward the bottom of the
// spectrum of the symmetric M by power steps on s I - M.
double rayleigh_floor(const Matrix& M, std::uint64_t seed) {
    const double s = M.norm();
    Rng rng(seed);
    double best = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < 3; ++trial) {
        Vector v = rng.gaussian(M.rows(), 1);
        for (int it = 0; it < 40; ++it) {
            v = s * v - M * v;
            v.normalize();
            best = std::min(best, v.dot(M * v));
        }
    }
    return best;
}

}  // namespace

IntegralSystem build_integral_system(const FredholmSpec& spec) {
    spec.validate();
    IntegralSystem sys;
    const GaussLegendre gl = gauss_legendre(spec.n);
    sys.nodes = gl.nodes;
    sys.weights = gl.weights;
    const Eigen::Index n = spec.n;
    Vector sw(n);
    for (Eigen::Index j = 0; j < n; ++j) sw(j) = std::sqrt(gl.weights[j]);

    sys.K1 = kernel_matrix(spec.K1, gl.nodes, sw);
    sys.K2 = kernel_matrix(spec.K2, gl.nodes, sw);
    if (spec.generalized()) {
        sys.K3 = kernel_matrix(*spec.K3, gl.nodes, sw);
        sys.K4 = kernel_matrix(*spec.K4, gl.nodes, sw);
    }

    const Matrix I = Matrix::Identity(n, n);
    const Matrix M1 = I + sys.K1, M2 = I + sys.K2;
    for (const auto* M : {&M1, &M2}) {
        const double floor = rayleigh_floor(*M, M == &M1 ? 1 : 2);
        if (floor < spec.delta)
            throw DomainError("Rayleigh quotient " + std::to_string(floor) + " of I + K lies below delta = " +
                              std::to_string(spec.delta));
    }

    const std::size_t r = spec.f.size();
    Matrix F(n, static_cast<Eigen::Index>(r)), G(static_cast<Eigen::Index>(r), n);
    for (std::size_t l = 0; l < r; ++l)
        for (Eigen::Index j = 0; j < n; ++j) {
            F(j, static_cast<Eigen::Index>(l)) = sw(j) * spec.f[l](gl.nodes[j]);
            G(static_cast<Eigen::Index>(l), j) = sw(j) * spec.g[l](gl.nodes[j]);
        }

    sys.problem.A = M2;
    sys.problem.B = -M1;
    sys.problem.U = std::move(F);
    sys.problem.V = std::move(G);
    sys.problem.domain_A = Interval(spec.delta, 1 + sys.K2.norm());
    sys.problem.domain_B = Interval(-1 - sys.K1.norm(), -spec.delta);
    return sys;
}

double fredholm_residual(const IntegralSystem& sys, const Matrix& U) {
    const Matrix C = sys.problem.rhs();
    Matrix R = U * sys.problem.A - sys.problem.B * U - C;
    if (sys.K3 && sys.K4) R += *sys.K3 * U * sys.K4->transpose();
    return R.norm() / C.norm();
}

FredholmSolution solve_fredholm(const FredholmSpec& spec, const SolverConfig& config) {
    FredholmSolution out;
    out.system = build_integral_system(spec);
    LowRankSolution s = solve_inverse_lowrank(out.system.problem, config);
    out.U = std::move(s.X);
    out.report = std::move(s.report);
    return out;
}

GeneralizedSolution solve_generalized(const FredholmSpec& spec, const SolverConfig& config, double gmres_tol,
                                      int gmres_max_iter) {
    if (!spec.generalized()) throw DomainError("the generalized equation needs K3 and K4");
    GeneralizedSolution out;
    out.system = build_integral_system(spec);
    const SylvesterProblem& base = out.system.problem;
    const SeriesData data = inverse_series_for(base, config);
    const Eigen::Index n = spec.n;

    // K3 Y K4^T = W3 (Z3 Y Z4^T) W4^T with the kernels in factored form.
    const LowRankPair k3 = compress(*out.system.K3, Matrix::Identity(n, n), config.eps_rank);
    const LowRankPair k4 = compress(*out.system.K4, Matrix::Identity(n, n), config.eps_rank);

    auto T = [&](const Matrix& U, const Matrix& V) {
        SylvesterProblem p = base;
        p.U = U;
        p.V = V;
        return solve_inverse_lowrank(p, data, config).X.product();
    };

    const Matrix rhs_mat = T(base.U, base.V);
    const Vector rhs = Eigen::Map<const Vector>(rhs_mat.data(), rhs_mat.size());
    auto apply = [&](const Vector& y) -> Vector {
        const Eigen::Map<const Matrix> Y(y.data(), n, n);
        const Matrix inner = k3.Z * Y * k4.Z.transpose();
        const Matrix TY = T(k3.W, inner * k4.W.transpose());
        return y + Eigen::Map<const Vector>(TY.data(), TY.size());
    };

    GmresResult g = gmres(apply, rhs, gmres_tol, gmres_max_iter);
    if (!g.converged)
        throw ConvergenceError("GMRES did not reach " + std::to_string(gmres_tol) + " in " +
                               std::to_string(gmres_max_iter) + " iterations");
    out.U = Eigen::Map<const Matrix>(g.x.data(), n, n);
    out.gmres_iterations = g.iterations;
    out.gmres_residuals = std::move(g.residual_history);
    return out;
}

FredholmSpec fredholm_preset(const std::string& name, int n, double delta) {
    FredholmSpec s;
    s.n = n;
    s.delta = delta;
    if (name == "exp-abs") {
        s.K1 = s.K2 = [](double x, double y) { return std::exp(-2 * std::abs(x - y)); };
        s.f = {[](double x) { return std::cos(4 * x) / (1.04 - x * x); }};
        s.g = {[](double x) { return std::sin(20 * x); }};
    } else if (name == "gauss") {
        s.K1 = s.K2 = [](double x, double y) { return std::exp(-(x - y) * (x - y)); };
        s.K3 = [](double x, double y) {
            const double c = std::cosh(x);
            return y / (c * c);
        };
        s.K4 = [](double x, double y) { return std::exp(x - y); };
        s.f = {[](double x) { return 1 / (x * x * x * x + 2); }};
        s.g = {[](double x) { return -std::sin(10 * x); }};
    } else {
        throw ParseError("unknown kernel preset '" + name + "' (expected exp-abs or gauss)", 0);
    }
    return s;
}

}  // namespace akhsylv
