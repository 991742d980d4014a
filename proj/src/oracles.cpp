#include "akhsylv/oracles.hpp"

#include "akhsylv/errors.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <limits>
#include <string>

namespace akhsylv {

Matrix KnownFactorization::matrix() const {
    const Vector lam = Eigen::Map<const Vector>(eigenvalues.data(), size());
    return Q * lam.asDiagonal() * Q.transpose();
}

KnownFactorization known_factorization(const std::vector<double>& eigenvalues, std::uint64_t seed) {
    return {random_orthogonal(static_cast<int>(eigenvalues.size()), seed), eigenvalues};
}

Matrix sylvester_eigen_oracle(const KnownFactorization& A, const KnownFactorization& B, const Matrix& C) {
    const int n = A.size(), m = B.size();
    if (C.rows() != m || C.cols() != n) throw DimensionError("eigen oracle: C must be m x n");
    Matrix Xt = B.Q.transpose() * C * A.Q;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
            const double d = A.eigenvalues[j] - B.eigenvalues[i];
            if (d == 0.0) throw SingularDomainError("eigen oracle: A and B share an eigenvalue");
            Xt(i, j) /= d;
        }
    return B.Q * Xt * A.Q.transpose();
}

Matrix sylvester_diagonalizable_oracle(const Matrix& A, const Matrix& B, const Matrix& C) {
    if (A.rows() != A.cols() || B.rows() != B.cols() || C.rows() != B.rows() || C.cols() != A.rows())
        throw DimensionError("diagonalizable oracle: inconsistent dimensions");
    using CMatrix = Eigen::MatrixXcd;
    Eigen::ComplexEigenSolver<CMatrix> ea(A.cast<std::complex<double>>()), eb(B.cast<std::complex<double>>());
    if (ea.info() != Eigen::Success || eb.info() != Eigen::Success)
        throw ConvergenceError("diagonalizable oracle: eigendecomposition failed");
    const CMatrix& VA = ea.eigenvectors();
    const CMatrix& VB = eb.eigenvectors();
    Eigen::PartialPivLU<CMatrix> lat(VA.transpose()), lb(VB);
    CMatrix Ct = lb.solve(C.cast<std::complex<double>>()) * VA;
    for (Eigen::Index i = 0; i < Ct.rows(); ++i)
        for (Eigen::Index j = 0; j < Ct.cols(); ++j) {
            const std::complex<double> d = ea.eigenvalues()(j) - eb.eigenvalues()(i);
            if (d == 0.0) throw SingularDomainError("diagonalizable oracle: A and B share an eigenvalue");
            Ct(i, j) /= d;
        }
    // X = VB Ct VA^{-1}
    const CMatrix M = VB * Ct;
    const CMatrix X = lat.solve(M.transpose()).transpose();
    return X.real();
}

Matrix kron_lu_oracle(const Matrix& A, const Matrix& B, const Matrix& C) {
    const Eigen::Index n = A.rows(), m = B.rows();
    if (A.cols() != n || B.cols() != m || C.rows() != m || C.cols() != n)
        throw DimensionError("Kronecker oracle: inconsistent dimensions");
    if (n * m > 2000) throw DimensionError("Kronecker oracle is limited to n m <= 2000");
    const Eigen::Index N = n * m;
    Matrix K = Matrix::Zero(N, N);
    // column-major vec: (A^T kron I_m) - (I_n kron B)
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index l = 0; l < n; ++l)
            for (Eigen::Index i = 0; i < m; ++i) K(j * m + i, l * m + i) += A(l, j);
    for (Eigen::Index j = 0; j < n; ++j) K.block(j * m, j * m, m, m) -= B;
    Eigen::FullPivLU<Matrix> lu(K);
    if (!lu.isInvertible()) throw SingularDomainError("Kronecker oracle: Sylvester operator is singular");
    const Vector c = Eigen::Map<const Vector>(C.data(), N);
    const Vector x = lu.solve(c);
    return Eigen::Map<const Matrix>(x.data(), m, n);
}

namespace {

template <class DividedDifference>
DaleckiiKreinResult dk_apply(const KnownFactorization& A, const Matrix& E, const DividedDifference& dd) {
    const int n = A.size();
    if (E.rows() != n || E.cols() != n) throw DimensionError("Daleckii-Krein oracle: E must be n x n");
    DaleckiiKreinResult out;
    Matrix Et = A.Q.transpose() * E * A.Q;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double li = A.eigenvalues[i], lj = A.eigenvalues[j];
            if (i != j && li != lj && std::abs(li - lj) < 1e-8) out.ill_conditioned = true;
            Et(i, j) *= dd(li, lj);
        }
    out.L = A.Q * Et * A.Q.transpose();
    return out;
}

}  // namespace

DaleckiiKreinResult daleckii_krein_oracle(const KnownFactorization& A, const Matrix& E,
                                          const std::function<double(double)>& f,
                                          const std::function<double(double)>& fprime) {
    return dk_apply(A, E, [&](double a, double b) { return a == b ? fprime(a) : (f(a) - f(b)) / (a - b); });
}

DaleckiiKreinResult daleckii_krein_exp(const KnownFactorization& A, const Matrix& E) {
    return dk_apply(A, E, [](double a, double b) {
        if (a == b) return std::exp(a);
        // (e^a - e^b)/(a - b) = e^b expm1(a - b)/(a - b)
        const double h = a - b;
        return std::exp(b) * std::expm1(h) / h;
    });
}

Matrix expm(const Matrix& M) {
    if (M.rows() != M.cols()) throw DimensionError("expm needs a square matrix");
    return M.exp();
}

double coeff_dense_oracle(const WeightSpec& spec, const RecurrenceTable& table,
                          const std::function<double(double)>& f, std::size_t j) {
    if (j >= table.count()) throw std::out_of_range("coeff_dense_oracle: degree exceeds table length");
    auto estimate = [&](int n) {
        const SigmaQuadrature q = sigma_quadrature(spec, n);
        long double s = 0;
        for (std::size_t i = 0; i < q.nodes.size(); ++i) {
            const double x = static_cast<double>(q.nodes[i]);
            s += q.weights[i] * f(x) * poly_eval<long double>(table, j, q.nodes[i]);
        }
        return s;
    };
    int n = std::max<int>(64, static_cast<int>(4 * (j + 1)));
    long double prev = estimate(n);
    for (;;) {
        n *= 2;
        const long double cur = estimate(n);
        if (std::abs(cur - prev) <= 1e-15L) return static_cast<double>(cur);
        if (n >= 1 << 16) throw AccuracyError("coeff_dense_oracle: quadrature did not settle");
        prev = cur;
    }
}

}  // namespace akhsylv
