#include "akhsylv/errors.hpp"
#include "akhsylv/oracles.hpp"
#include "akhsylv/solvers.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace akhsylv;

namespace {

Matrix spd(int n, double lo, double hi, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> e(n);
    for (auto& x : e) x = rng.uniform(lo, hi);
    return known_factorization(e, seed + 5).matrix();
}

SylvesterProblem factored_problem(int n, int m, int r, bool b_right, std::uint64_t seed) {
    SylvesterProblem p;
    p.A = spd(n, 1, 3, seed);
    p.B = b_right ? spd(m, 4, 6, seed + 1) : spd(m, -3, -0.5, seed + 1);
    Rng rng(seed + 2);
    p.U = rng.gaussian(m, r);
    p.V = rng.gaussian(r, n);
    p.domain_A = Interval(1, 3);
    p.domain_B = b_right ? Interval(4, 6) : Interval(-3, -0.5);
    return p;
}

SylvesterProblem dense_problem(int n, int m, bool b_right, std::uint64_t seed) {
    SylvesterProblem p = factored_problem(n, m, 1, b_right, seed);
    Rng rng(seed + 3);
    p.C = rng.gaussian(m, n);
    p.U.resize(0, 0);
    p.V.resize(0, 0);
    return p;
}

}  // namespace

TEST_CASE("numerical rank uses the relative 2-norm rule") {
    Vector s(4);
    s << 1.0, 1e-3, 1e-9, 1e-15;
    CHECK(numerical_rank(s, 1e-14) == 3);
    CHECK(numerical_rank(s, 1e-10) == 3);
    CHECK(numerical_rank(s, 1e-8) == 2);
    CHECK(numerical_rank(s, 0.0) == 4);
    CHECK(numerical_rank(Vector(Vector::Zero(3)), 1e-14) == 0);
    Rng rng(1);
    const Matrix M = rng.gaussian(20, 3) * rng.gaussian(3, 15);
    CHECK(numerical_rank(M, 1e-12) == 3);
}

TEST_CASE("compress keeps the product and the numerical rank") {
    Rng rng(2);
    const Matrix J = rng.gaussian(30, 4) * rng.gaussian(4, 12);
    const Matrix K = rng.gaussian(12, 25);
    const LowRankPair c = compress(J, K, 1e-14);
    CHECK(c.rank() == 4);
    CHECK(c.W.rows() == 30);
    CHECK(c.Z.cols() == 25);
    CHECK((c.product() - J * K).norm() <= 1e-12 * (J * K).norm());
    const LowRankPair z = compress(Matrix::Zero(5, 2), Matrix::Zero(2, 6), 1e-14);
    CHECK(z.rank() == 0);
    CHECK(z.product().isZero());
    CHECK_THROWS_AS(compress(Matrix::Zero(5, 2), Matrix::Zero(3, 6), 1e-14), DimensionError);
}

TEST_CASE("akhiezer_matfun reproduces sign on the spectrum") {
    const SeriesData d = sign_series(Interval(-2, -1), Interval(1, 3), 200);
    const int k = iterations_for_tolerance(Method::Sign, d.rho, 1e-13, 4, 0);
    const Matrix M = known_factorization({-1.9, -1.2, 1.1, 2.8}, 3).matrix();
    const Matrix S = akhiezer_matfun(M, d.coeffs, d.table, k);
    Eigen::SelfAdjointEigenSolver<Matrix> es(M);
    const Matrix exact = es.eigenvectors() * es.eigenvalues().unaryExpr([](double x) { return x > 0 ? 1.0 : -1.0; }).asDiagonal() *
                         es.eigenvectors().transpose();
    CHECK((S - exact).norm() <= 1e-11);
    CHECK_THROWS_AS(akhiezer_matfun(Matrix::Zero(2, 3), d.coeffs, d.table, k), DimensionError);
}

TEST_CASE("iteration count formula") {
    CHECK(envelope_constant(Method::Sign, 10, 7) == 170.0);
    CHECK(envelope_constant(Method::Inverse, 10, 7) == 340.0);
    const double rho = 2.0, eps = 1e-10;
    const int k = iterations_for_tolerance(Method::Sign, rho, eps, 3, 2);
    const double D = 10.0 * 5;
    const double a = -std::log(eps * (1 - 1 / rho) / D) / std::log(rho);
    const double b = -std::log(std::numeric_limits<double>::epsilon() / 5) / std::log(rho);
    CHECK(k == int(std::ceil(std::min(a, b))));
    CHECK(iterations_for_tolerance(Method::Sign, 1.0 + 1e-9, 1e-12, 100, 100, 50) == 50);
    CHECK_THROWS_AS(iterations_for_tolerance(Method::Sign, 0.9, 1e-10, 3, 2), ConvergenceError);
}

TEST_CASE("zero right-hand side gives zero in every solver") {
    SylvesterProblem f = factored_problem(8, 6, 2, false, 4);
    f.U.setZero();
    CHECK(solve_sign_lowrank(f).X.product().isZero());
    CHECK(solve_inverse_lowrank(f).X.product().isZero());
    SylvesterProblem d = dense_problem(8, 6, false, 4);
    d.C->setZero();
    CHECK(solve_sign_dense(d).X.isZero());
    CHECK(solve_inverse_dense(d).X.isZero());
}

TEST_CASE("all four solvers match the Kronecker oracle in both orientations") {
    for (bool right : {false, true}) {
        const SylvesterProblem f = factored_problem(14, 11, 2, right, right ? 10 : 20);
        CHECK(sign_orientation_flipped(f) == right);
        const Matrix Xf = kron_lu_oracle(f.A, f.B, f.rhs());
        const double s = Xf.norm();
        CHECK((solve_sign_lowrank(f).X.product() - Xf).norm() <= 1e-10 * s);
        CHECK((solve_inverse_lowrank(f).X.product() - Xf).norm() <= 1e-10 * s);
        const SylvesterProblem d = dense_problem(14, 11, right, right ? 30 : 40);
        const Matrix Xd = kron_lu_oracle(d.A, d.B, *d.C);
        CHECK((solve_sign_dense(d).X - Xd).norm() <= 1e-10 * Xd.norm());
        CHECK((solve_inverse_dense(d).X - Xd).norm() <= 1e-10 * Xd.norm());
    }
}

TEST_CASE("the solution is linear in the right-hand side") {
    SylvesterProblem p = dense_problem(9, 7, false, 50), q = p, sum = p;
    q.C = Rng(60).gaussian(7, 9);
    sum.C = 2.0 * *p.C - 3.0 * *q.C;
    const Matrix lhs = solve_sign_dense(sum).X;
    const Matrix rhs = 2.0 * solve_sign_dense(p).X - 3.0 * solve_sign_dense(q).X;
    CHECK((lhs - rhs).norm() <= 1e-11 * lhs.norm());
}

TEST_CASE("solver errors") {
    SylvesterProblem p = dense_problem(6, 5, false, 70);
    p.domain_A.reset();
    CHECK_THROWS_AS(solve_sign_dense(p), DomainError);
    CHECK_THROWS_AS(solve_inverse_dense(p), DomainError);
    p.domain_A = Interval(-1, 3);
    CHECK_THROWS_AS(solve_sign_dense(p), GeometryError);
    CHECK_THROWS_AS(solve_inverse_dense(p), SingularDomainError);
    SylvesterProblem bad = dense_problem(6, 5, false, 71);
    bad.C = Matrix::Zero(6, 6);
    CHECK_THROWS_AS(solve_sign_dense(bad), DimensionError);
    CHECK_THROWS_AS(solve_sign_lowrank(dense_problem(6, 5, false, 72)), DimensionError);
    SolverConfig cfg;
    cfg.tol = 2.0;
    CHECK_THROWS_AS(cfg.validate(), DomainError);
}

TEST_CASE("report contents and deterministic CSV") {
    SolverConfig cfg;
    cfg.eigenvalue_hints = {1.5, 2.5, -1.0};
    const SylvesterProblem p = factored_problem(12, 10, 2, false, 80);
    const LowRankSolution a = solve_sign_lowrank(p, cfg), b = solve_sign_lowrank(p, cfg);
    CHECK(a.report.iterations == int(a.report.records.size()));
    CHECK(a.report.rho > 1.0);
    REQUIRE(a.report.nu.has_value());
    CHECK(*a.report.nu < 0);
    CHECK(*a.report.predicted_convergent);
    CHECK(a.report.max_rank_wz() <= 12);
    CHECK(a.report.max_stored_entries() > 0);
    std::ostringstream sa, sb;
    write_csv(sa, a.report, false);
    write_csv(sb, b.report, false);
    CHECK(sa.str() == sb.str());
    CHECK(sa.str().rfind("# akhsylv-csv v1\n# rho=", 0) == 0);
    CHECK(sa.str().find("\niter,bound,rank_jk,rank_wz,stored_entries\n") != std::string::npos);
    std::ostringstream st;
    write_csv(st, a.report, true);
    CHECK(st.str().find("\niter,bound,rank_jk,rank_wz,stored_entries,seconds\n") != std::string::npos);
}

TEST_CASE("Frechet derivative of exp matches the Daleckii-Krein formula") {
    const KnownFactorization A = known_factorization({-1.5, -0.7, 0.8, 1.9, 4.0, 5.5}, 90);
    Rng rng(91);
    const Matrix U = rng.gaussian(6, 1), V = rng.gaussian(1, 6);
    const Matrix L = daleckii_krein_exp(A, U * V).L;
    const SeriesData d = function_series(CutDomain{Interval(-2, -0.5), Interval(0.5, 6)},
                                         [](cplx z) { return std::exp(z); }, 60);
    SolverConfig cfg;
    cfg.max_iterations = 50;
    CHECK((frechet_dense(A.matrix(), U * V, d, cfg).X - L).norm() <= 1e-9 * L.norm());
    CHECK((frechet_lowrank(A.matrix(), U, V, d, cfg).X.product() - L).norm() <= 1e-9 * L.norm());
    CHECK_THROWS_AS(frechet_dense(A.matrix(), Matrix::Zero(5, 5), d, cfg), DimensionError);
}
