#pragma once

// Brute-force references for testing. Nothing in the solvers calls into this module.

#include "akhsylv/akhiezer.hpp"
#include "akhsylv/linalg.hpp"

#include <functional>
#include <vector>

namespace akhsylv {

/// M = Q diag(eigenvalues) Q^T with Q orthogonal.
struct KnownFactorization {
    Matrix Q;
    std::vector<double> eigenvalues;

    Matrix matrix() const;
    int size() const { return static_cast<int>(eigenvalues.size()); }
};

/// Random orthogonal Q from the seed, paired with the given eigenvalues.
KnownFactorization known_factorization(const std::vector<double>& eigenvalues, std::uint64_t seed);

/// Solution of X A - B X = C in the eigenbases of A and B.
/// Throws SingularDomainError when an eigenvalue of A equals one of B.
Matrix sylvester_eigen_oracle(const KnownFactorization& A, const KnownFactorization& B, const Matrix& C);

/// Solution through complex eigendecompositions of general diagonalizable A and B. Accurate
/// when the eigenvector bases are well conditioned (e.g. normal matrices).
Matrix sylvester_diagonalizable_oracle(const Matrix& A, const Matrix& B, const Matrix& C);

/// Dense LU solve of (A^T kron I - I kron B) vec(X) = vec(C). Limited to n m <= 2000.
Matrix kron_lu_oracle(const Matrix& A, const Matrix& B, const Matrix& C);

struct DaleckiiKreinResult {
    Matrix L;
    /// Set when two distinct eigenvalues are closer than 1e-8 and a divided difference was used.
    bool ill_conditioned = false;
};

/// L_f(A, E) = Q (Phi o (Q^T E Q)) Q^T with divided differences of f in Phi.
DaleckiiKreinResult daleckii_krein_oracle(const KnownFactorization& A, const Matrix& E,
                                          const std::function<double(double)>& f,
                                          const std::function<double(double)>& fprime);

/// Same for f = exp, with the divided differences formed from expm1 so that close
/// eigenvalues do not cancel.
DaleckiiKreinResult daleckii_krein_exp(const KnownFactorization& A, const Matrix& E);

/// Matrix exponential of a general square matrix.
Matrix expm(const Matrix& M);

/// alpha_j = int f p_j w evaluated on the sigma quadrature, doubling the node count until
/// two estimates agree to 1e-15. f may jump between intervals.
double coeff_dense_oracle(const WeightSpec& spec, const RecurrenceTable& table,
                          const std::function<double(double)>& f, std::size_t j);

}  // namespace akhsylv
