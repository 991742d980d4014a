#include "akhsylv/linalg.hpp"

#include "akhsylv/errors.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <istream>
#include <map>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>

namespace akhsylv {

QRResult qr(const Matrix& M) {
    const Eigen::Index m = M.rows(), p = M.cols(), k = std::min(m, p);
    QRResult out;
    if (m == 0 || p == 0) {
        out.Q = Matrix::Zero(m, k);
        out.R = Matrix::Zero(k, p);
        return out;
    }
    Eigen::HouseholderQR<Matrix> f(M);
    out.Q = f.householderQ() * Matrix::Identity(m, k);
    out.R = f.matrixQR().topRows(k).triangularView<Eigen::Upper>();
    return out;
}

LQResult lq(const Matrix& M) {
    QRResult t = qr(M.transpose());
    return {t.R.transpose(), t.Q.transpose()};
}

SVDResult svd(const Matrix& M) {
    SVDResult out;
    if (M.rows() == 0 || M.cols() == 0) {
        const Eigen::Index k = std::min(M.rows(), M.cols());
        out.U = Matrix::Zero(M.rows(), k);
        out.S = Vector::Zero(k);
        out.V = Matrix::Zero(M.cols(), k);
        return out;
    }
    Eigen::JacobiSVD<Matrix> f(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (f.info() != Eigen::Success) throw ConvergenceError("svd: iteration did not converge");
    out.U = f.matrixU();
    out.S = f.singularValues();
    out.V = f.matrixV();
    return out;
}

double norm2(const Matrix& M) {
    if (M.size() == 0) return 0.0;
    return Eigen::JacobiSVD<Matrix>(M).singularValues()(0);
}

namespace {

template <class Real>
void legendre_rule(int n, std::vector<Real>& x, std::vector<Real>& w) {
    x.assign(n, Real(0));
    w.assign(n, Real(0));
    const Real pi = std::numbers::pi_v<Real>;
    const Real tol = std::numeric_limits<Real>::epsilon() * 4;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        Real z = std::cos(pi * (Real(i) + Real(0.75)) / (Real(n) + Real(0.5)));
        Real dp = 1;
        for (int it = 0; it < 100; ++it) {
            Real p0 = 1, p1 = z;
            for (int k = 2; k <= n; ++k) {
                Real p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (z * p1 - p0) / (z * z - 1);
            Real dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) <= tol) break;
        }
        // recompute derivative at the converged node
        Real p0 = 1, p1 = z;
        for (int k = 2; k <= n; ++k) {
            Real p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (z * p1 - p0) / (z * z - 1);
        const Real wi = 2 / ((1 - z * z) * dp * dp);
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    if (n % 2 == 1) x[n / 2] = 0;
}

}  // namespace

GaussLegendre gauss_legendre(int n) {
    if (n < 1) throw DomainError("gauss_legendre: n must be positive");
    static std::mutex mu;
    static std::map<int, GaussLegendre> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    GaussLegendre g;
    if (n == 1) {
        g.nodes = {0.0};
        g.weights = {2.0};
    } else {
        legendre_rule<double>(n, g.nodes, g.weights);
    }
    cache.emplace(n, g);
    return g;
}

GaussLegendreLD gauss_legendre_ld(int n) {
    if (n < 1) throw DomainError("gauss_legendre: n must be positive");
    static std::mutex mu;
    static std::map<int, GaussLegendreLD> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    GaussLegendreLD g;
    if (n == 1) {
        g.nodes = {0.0L};
        g.weights = {2.0L};
    } else {
        legendre_rule<long double>(n, g.nodes, g.weights);
    }
    cache.emplace(n, g);
    return g;
}

GmresResult gmres(const LinearOperator& apply, const Vector& rhs, double tol, int max_iter) {
    const Eigen::Index n = rhs.size();
    GmresResult out;
    out.x = Vector::Zero(n);
    const double beta = rhs.norm();
    out.residual_history.push_back(1.0);
    if (beta == 0.0) {
        out.converged = true;
        return out;
    }
    std::vector<Vector> V;
    V.push_back(rhs / beta);
    Matrix H = Matrix::Zero(max_iter + 1, max_iter);
    std::vector<double> cs(max_iter), sn(max_iter);
    Vector g = Vector::Zero(max_iter + 1);
    g(0) = beta;

    int k = 0;
    for (; k < max_iter; ++k) {
        Vector w = apply(V[k]);
        if (w.size() != n) throw DimensionError("gmres: operator output has wrong size");
        for (int i = 0; i <= k; ++i) {
            H(i, k) = V[i].dot(w);
            w -= H(i, k) * V[i];
        }
        H(k + 1, k) = w.norm();
        const bool breakdown = H(k + 1, k) <= 1e-14 * H.col(k).head(k + 1).norm();
        if (!breakdown) V.push_back(w / H(k + 1, k));

        for (int i = 0; i < k; ++i) {
            const double t = cs[i] * H(i, k) + sn[i] * H(i + 1, k);
            H(i + 1, k) = -sn[i] * H(i, k) + cs[i] * H(i + 1, k);
            H(i, k) = t;
        }
        const double r = std::hypot(H(k, k), H(k + 1, k));
        cs[k] = r == 0.0 ? 1.0 : H(k, k) / r;
        sn[k] = r == 0.0 ? 0.0 : H(k + 1, k) / r;
        H(k, k) = r;
        H(k + 1, k) = 0.0;
        g(k + 1) = -sn[k] * g(k);
        g(k) = cs[k] * g(k);

        const double rel = std::abs(g(k + 1)) / beta;
        out.residual_history.push_back(rel);
        if (rel <= tol || breakdown) {
            ++k;
            out.converged = true;
            break;
        }
    }
    const int used = k;
    out.iterations = used;
    Vector y = H.topLeftCorner(used, used).triangularView<Eigen::Upper>().solve(g.head(used));
    for (int i = 0; i < used; ++i) out.x += y(i) * V[i];
    return out;
}

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
    // Marsaglia polar method
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
}

Matrix Rng::gaussian(Eigen::Index rows, Eigen::Index cols) {
    Matrix G(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) G(i, j) = normal();
    return G;
}

Matrix random_orthogonal(int n, std::uint64_t seed) {
    Rng rng(seed);
    Matrix G = rng.gaussian(n, n);
    Eigen::HouseholderQR<Matrix> f(G);
    Matrix Q = f.householderQ();
    const Matrix& R = f.matrixQR();
    for (int j = 0; j < n; ++j)
        if (R(j, j) < 0) Q.col(j) *= -1.0;
    return Q;
}

KnownSpectrumMatrix random_known_spectrum(const SpectrumSpec& spec) {
    const int n = static_cast<int>(spec.eigenvalues.size());
    KnownSpectrumMatrix out;
    out.Q = random_orthogonal(n, spec.orthogonal_factor_seed);
    Vector lam = Eigen::Map<const Vector>(spec.eigenvalues.data(), n);
    out.M = out.Q * lam.asDiagonal() * out.Q.transpose();
    return out;
}

Matrix read_matrix(std::istream& in) {
    long rows = -1, cols = -1;
    if (!(in >> rows >> cols) || rows < 0 || cols < 0)
        throw IoError("matrix text: missing or invalid 'rows cols' header");
    Matrix M(rows, cols);
    for (long i = 0; i < rows; ++i)
        for (long j = 0; j < cols; ++j) {
            double v;
            if (!(in >> v)) {
                std::ostringstream msg;
                msg << "matrix text: expected " << rows * cols << " values, read " << i * cols + j;
                throw IoError(msg.str());
            }
            M(i, j) = v;
        }
    return M;
}

Matrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open matrix file '" + path + "'");
    try {
        return read_matrix(in);
    } catch (const IoError& e) {
        throw IoError(path + ": " + e.what());
    }
}

void write_matrix(std::ostream& out, const Matrix& M) {
    out << M.rows() << ' ' << M.cols() << '\n';
    out << std::setprecision(17);
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
        for (Eigen::Index j = 0; j < M.cols(); ++j) {
            if (j) out << ' ';
            out << M(i, j);
        }
        out << '\n';
    }
}

void write_matrix_file(const std::string& path, const Matrix& M) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    write_matrix(out, M);
    if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace akhsylv
