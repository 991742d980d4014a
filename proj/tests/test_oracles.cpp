#include "akhsylv/errors.hpp"
#include "akhsylv/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace akhsylv;

namespace {

KnownFactorization spectrum(int n, double lo, double hi, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> e(n);
    for (auto& x : e) x = rng.uniform(lo, hi);
    return known_factorization(e, seed + 17);
}

}  // namespace

TEST_CASE("eigenbasis and Kronecker solutions agree and satisfy the equation") {
    const KnownFactorization A = spectrum(12, 1, 3, 1), B = spectrum(9, -2, -0.5, 2);
    Rng rng(3);
    const Matrix C = rng.gaussian(9, 12);
    const Matrix Xe = sylvester_eigen_oracle(A, B, C), Xk = kron_lu_oracle(A.matrix(), B.matrix(), C);
    CHECK((Xe - Xk).norm() <= 1e-12 * Xk.norm());
    CHECK((Xe * A.matrix() - B.matrix() * Xe - C).norm() <= 1e-13 * C.norm());
}

TEST_CASE("diagonalizable oracle on nonsymmetric matrices") {
    Rng rng(4);
    const Matrix A = 3 * Matrix::Identity(10, 10) + 0.2 * rng.gaussian(10, 10);
    const Matrix B = -2 * Matrix::Identity(7, 7) + 0.2 * rng.gaussian(7, 7);
    const Matrix C = rng.gaussian(7, 10);
    const Matrix X = sylvester_diagonalizable_oracle(A, B, C);
    CHECK((X - kron_lu_oracle(A, B, C)).norm() <= 1e-11 * X.norm());
}

TEST_CASE("oracle error paths") {
    CHECK_THROWS_AS(kron_lu_oracle(Matrix::Identity(50, 50), Matrix::Identity(41, 41), Matrix::Zero(41, 50)),
                    DimensionError);
    CHECK_THROWS_AS(kron_lu_oracle(Matrix::Identity(3, 3), Matrix::Identity(2, 2), Matrix::Zero(2, 3)),
                    SingularDomainError);
    const KnownFactorization A = known_factorization({1, 2}, 1), B = known_factorization({2, 5}, 2);
    CHECK_THROWS_AS(sylvester_eigen_oracle(A, B, Matrix::Ones(2, 2)), SingularDomainError);
    CHECK_THROWS_AS(sylvester_eigen_oracle(A, B, Matrix::Ones(3, 2)), DimensionError);
}

TEST_CASE("known factorization reproduces its spectrum") {
    const KnownFactorization f = known_factorization({-1, 0.5, 4}, 8);
    CHECK(f.size() == 3);
    Eigen::SelfAdjointEigenSolver<Matrix> es(f.matrix());
    CHECK(es.eigenvalues()(0) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(es.eigenvalues()(2) == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("Daleckii-Krein for x^2 is AE + EA") {
    const KnownFactorization A = spectrum(8, -2, 3, 5);
    Rng rng(6);
    const Matrix E = rng.gaussian(8, 8);
    const DaleckiiKreinResult r =
        daleckii_krein_oracle(A, E, [](double x) { return x * x; }, [](double x) { return 2 * x; });
    const Matrix M = A.matrix();
    CHECK((r.L - (M * E + E * M)).norm() <= 1e-12 * r.L.norm());
}

TEST_CASE("Daleckii-Krein exp matches the block exponential") {
    const KnownFactorization A = spectrum(10, -1, 2, 7);
    Rng rng(8);
    const Matrix E = rng.gaussian(10, 10);
    // exp([[A, E], [0, A]]) has L_exp(A, E) in its upper right block
    Matrix H = Matrix::Zero(20, 20);
    H.topLeftCorner(10, 10) = A.matrix();
    H.bottomRightCorner(10, 10) = A.matrix();
    H.topRightCorner(10, 10) = E;
    const Matrix block = expm(H).topRightCorner(10, 10);
    const DaleckiiKreinResult r = daleckii_krein_exp(A, E);
    CHECK((r.L - block).norm() <= 1e-12 * block.norm());
    CHECK_FALSE(r.ill_conditioned);
}

TEST_CASE("close eigenvalues are flagged; the exp variant avoids the cancellation") {
    const double gap = 1e-10;
    const KnownFactorization A = known_factorization({1.0, 1.0 + gap, 2.0}, 9);
    const Matrix E = Matrix::Ones(3, 3);
    const DaleckiiKreinResult r = daleckii_krein_oracle(A, E, [](double x) { return std::exp(x); },
                                                        [](double x) { return std::exp(x); });
    CHECK(r.ill_conditioned);
    Matrix H = Matrix::Zero(6, 6);
    H.topLeftCorner(3, 3) = A.matrix();
    H.bottomRightCorner(3, 3) = A.matrix();
    H.topRightCorner(3, 3) = E;
    const Matrix block = expm(H).topRightCorner(3, 3);
    CHECK((daleckii_krein_exp(A, E).L - block).norm() <= 1e-12 * block.norm());
    // the plain divided difference loses about eps / gap
    CHECK((r.L - block).norm() <= 100 * std::numeric_limits<double>::epsilon() / gap);
}

TEST_CASE("matrix exponential of a diagonal and a nilpotent matrix") {
    Matrix D = Matrix::Zero(2, 2);
    D.diagonal() << 1, -2;
    const Matrix e = expm(D);
    CHECK(e(0, 0) == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
    CHECK(e(1, 1) == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
    Matrix N = Matrix::Zero(2, 2);
    N(0, 1) = 3;
    CHECK(expm(N)(0, 1) == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("dense coefficient projection") {
    const Interval iv(1, 3);
    const WeightSpec w = WeightSpec::chebyshev(iv);
    const RecurrenceTable t = chebyshev_recurrence(iv, 10);
    // x = a_0 p_0 + b_0 p_1
    CHECK(coeff_dense_oracle(w, t, [](double x) { return x; }, 0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(coeff_dense_oracle(w, t, [](double x) { return x; }, 1) == doctest::Approx(double(t.b[0])).epsilon(1e-14));
    CHECK(std::abs(coeff_dense_oracle(w, t, [](double x) { return x; }, 4)) <= 1e-15);
}
