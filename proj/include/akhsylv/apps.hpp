#pragma once

#include "akhsylv/solvers.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace akhsylv {

using Kernel = std::function<double(double, double)>;
using Profile = std::function<double(double)>;

/// 2u + int K1(x,x') u(x',y) dx' + int K2(y,y') u(x,y') dy' [+ int int K3 u K4] = sum f_l(x) g_l(y)
/// on [-1,1]^2. K1 and K2 must be symmetric; the integral operators are assumed to have
/// eigenvalues above -1 + delta.
struct FredholmSpec {
    Kernel K1;
    Kernel K2;
    std::optional<Kernel> K3;
    std::optional<Kernel> K4;
    std::vector<Profile> f;
    std::vector<Profile> g;
    int n = 200;
    double delta = 0.5;

    bool generalized() const { return K3.has_value() && K4.has_value(); }
    /// Throws DomainError for n < 2, delta <= 0, empty or mismatched f/g, or missing kernels.
    void validate() const;
};

/// Gauss-Legendre collocation: (K)_{jk} = sqrt(w_j w_k) K(x_j, x_k), (f)_j = sqrt(w_j) f(x_j).
/// The problem is X A - B X = C with A = I + K2, B = -(I + K1), C = F G^T and domain hints
/// [delta, 1 + |K2|_F], [-1 - |K1|_F, -delta].
struct IntegralSystem {
    SylvesterProblem problem;
    std::vector<double> nodes;
    std::vector<double> weights;
    Matrix K1;
    Matrix K2;
    std::optional<Matrix> K3;
    std::optional<Matrix> K4;

    /// Interval containing the spectrum of U -> (I + K1) U + U (I + K2).
    Interval operator_interval() const;
    /// u(x_j, x_k) from U_jk = sqrt(w_j w_k) u(x_j, x_k).
    Matrix grid_values(const Matrix& U) const;
};

/// Assembles the collocation system. Rayleigh quotients of I + K1 and I + K2 on a few sample
/// vectors (refined by power steps toward the bottom of the spectrum) are compared with delta;
/// a sample below delta throws DomainError.
IntegralSystem build_integral_system(const FredholmSpec& spec);

/// |(I + K1) U + U (I + K2) [+ K3 U K4^T] - C|_F / |C|_F.
double fredholm_residual(const IntegralSystem& system, const Matrix& U);

struct FredholmSolution {
    IntegralSystem system;
    LowRankPair U;
    ConvergenceReport report;
};

/// Builds the system and runs the low-rank inverse iteration on it.
FredholmSolution solve_fredholm(const FredholmSpec& spec, const SolverConfig& config = {});

struct GeneralizedSolution {
    IntegralSystem system;
    Matrix U;
    int gmres_iterations = 0;
    std::vector<double> gmres_residuals;
};

/// Y + T(K3 Y K4^T) = T(C) by GMRES on vectorized matrices, T the low-rank inverse iteration
/// with series data fixed once. Throws ConvergenceError when GMRES stalls above gmres_tol.
GeneralizedSolution solve_generalized(const FredholmSpec& spec, const SolverConfig& config = {},
                                      double gmres_tol = 1e-10, int gmres_max_iter = 30);

/// Named kernel sets: "exp-abs" (K = exp(-2|x-y|), f = cos 4x / (1.04 - x^2), g = sin 20x)
/// and "gauss" (K = exp(-(x-y)^2), K3 = y sech^2 x, K4 = exp(x - y), f = 1/(x^4 + 2),
/// g = -sin 10x). Throws ParseError for other names.
FredholmSpec fredholm_preset(const std::string& name, int n, double delta = 0.5);

}  // namespace akhsylv
