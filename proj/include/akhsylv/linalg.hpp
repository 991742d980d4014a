#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

namespace akhsylv {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct QRResult {
    Matrix Q;  // m x min(m,p), orthonormal columns
    Matrix R;  // min(m,p) x p, upper trapezoidal
};

struct LQResult {
    Matrix L;  // p x min(p,n), lower trapezoidal
    Matrix Q;  // min(p,n) x n, orthonormal rows
};

struct SVDResult {
    Matrix U;
    Vector S;  // nonincreasing
    Matrix V;  // M = U * S.asDiagonal() * V^T
};

/// Thin Householder QR.
QRResult qr(const Matrix& M);

/// Thin LQ, computed as the transpose of the QR of M^T.
LQResult lq(const Matrix& M);

/// Thin singular value decomposition.
SVDResult svd(const Matrix& M);

/// Largest singular value.
double norm2(const Matrix& M);

struct GaussLegendre {
    std::vector<double> nodes;    // ascending on [-1, 1]
    std::vector<double> weights;
};

/// Gauss-Legendre rule with n points, Newton iteration on the Legendre recurrence.
GaussLegendre gauss_legendre(int n);

/// Extended-precision variant used where sums are accumulated in long double.
struct GaussLegendreLD {
    std::vector<long double> nodes;
    std::vector<long double> weights;
};
GaussLegendreLD gauss_legendre_ld(int n);

struct GmresResult {
    Vector x;
    int iterations = 0;
    std::vector<double> residual_history;  // relative residual after each iteration, [0] = 1
    bool converged = false;
};

using LinearOperator = std::function<Vector(const Vector&)>;

/// Unrestarted GMRES with modified Gram-Schmidt Arnoldi, starting from x0 = 0.
GmresResult gmres(const LinearOperator& apply, const Vector& rhs, double tol, int max_iter);

/// Deterministic generator: mt19937_64 for bits, explicit conversion to uniforms and normals
/// so that sequences do not depend on the standard library's distribution classes.
class Rng {
public:
    explicit Rng(std::uint64_t seed);
    double uniform();                     // [0, 1)
    double uniform(double lo, double hi);
    double normal();
    Matrix gaussian(Eigen::Index rows, Eigen::Index cols);

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

struct SpectrumSpec {
    std::vector<double> eigenvalues;
    std::uint64_t orthogonal_factor_seed = 0;
};

struct KnownSpectrumMatrix {
    Matrix M;
    Matrix Q;
};

/// Random orthogonal factor from the QR of a seeded Gaussian matrix, diag(R) made positive.
Matrix random_orthogonal(int n, std::uint64_t seed);

/// M = Q diag(eigenvalues) Q^T.
KnownSpectrumMatrix random_known_spectrum(const SpectrumSpec& spec);

/// Matrix text format: "rows cols" then row-major values.
Matrix read_matrix(std::istream& in);
Matrix read_matrix_file(const std::string& path);
void write_matrix(std::ostream& out, const Matrix& M);
void write_matrix_file(const std::string& path, const Matrix& M);

}  // namespace akhsylv
