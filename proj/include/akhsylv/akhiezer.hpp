#pragma once

#include "akhsylv/cutdomain.hpp"

#include <complex>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <vector>

namespace akhsylv {

enum class WeightKind { Chebyshev, Akhiezer, GeneralExponent };

/// Weight on a cut domain of the form  const * prod_e |x - e|^(p_e / 2)  with p_e = +-1 per
/// endpoint, normalized to unit mass.
class WeightSpec {
public:
    /// 1 / (pi sqrt((x - lo)(hi - x))) on one interval.
    static WeightSpec chebyshev(const Interval& interval);

    /// sqrt(x - gamma1) / (sqrt(gamma2 - x) sqrt(x - beta1) sqrt(x - beta2)) on two intervals,
    /// real square roots on each interval.
    static WeightSpec akhiezer(const CutDomain& domain);

    /// Per-interval endpoint exponents (c_j, d_j), each -1 or +1:
    /// the weight behaves like (x - beta_j)^(c_j/2) (gamma_j - x)^(d_j/2) on interval j.
    static WeightSpec general(const CutDomain& domain, const std::vector<std::pair<int, int>>& exponents);

    const CutDomain& domain() const { return domain_; }
    WeightKind kind() const { return kind_; }
    /// Exponent p_e for each endpoint in ascending order.
    const std::vector<int>& exponents() const { return p_; }
    long double normalization() const { return norm_; }

    /// Normalized weight value at an interior point of the domain.
    double operator()(double x) const;

private:
    WeightSpec(CutDomain domain, WeightKind kind, std::vector<int> p);
    CutDomain domain_;
    WeightKind kind_;
    std::vector<int> p_;
    long double norm_ = 1.0L;
};

double weight_eval(const WeightSpec& spec, double x);

/// Nodes and weights on the domain with the weight absorbed:
/// sum_i weight[i] q(node[i]) ~ int q(x) w(x) dx.
struct SigmaQuadrature {
    std::vector<long double> nodes;
    std::vector<long double> weights;
    std::vector<int> interval;  // interval index of each node
    int nodes_per_interval = 0;
};

/// x = mid + half cos(theta) on each interval, Gauss-Legendre in theta. The Jacobian cancels the
/// inverse square-root endpoint factors, so the remaining integrand is analytic.
SigmaQuadrature sigma_quadrature(const WeightSpec& spec, int nodes_per_interval);

/// Jacobi coefficients of the orthonormal polynomials:
/// x p_k = b_{k-1} p_{k-1} + a_k p_k + b_k p_{k+1},  p_0 = 1.
struct RecurrenceTable {
    std::vector<long double> a;
    std::vector<long double> b;
    std::size_t count() const { return a.size(); }
};

RecurrenceTable chebyshev_recurrence(const Interval& interval, std::size_t count);

/// Closed form for the Akhiezer weight on scale * ([-1,-beta] u [beta,1]) + shift.
RecurrenceTable symmetric_akhiezer_recurrence(double beta, double shift, double scale, std::size_t count);

/// Reads beta, shift and scale off a balanced two-interval domain (equal interval lengths).
/// Throws UnsupportedDomainError for unbalanced domains.
RecurrenceTable symmetric_akhiezer_recurrence(const CutDomain& domain, std::size_t count);

/// Discretized Stieltjes procedure against the given quadrature.
RecurrenceTable stieltjes_recurrence(const WeightSpec& spec, const SigmaQuadrature& quad, std::size_t count);

/// Stieltjes with the default node budget of 8 (count + 1) nodes per interval.
RecurrenceTable stieltjes_recurrence(const WeightSpec& spec, std::size_t count);

/// Closed form where one exists (Chebyshev), otherwise Stieltjes.
RecurrenceTable recurrence_for(const WeightSpec& spec, std::size_t count);

/// p_k(x) by the forward recurrence.
template <class Scalar>
Scalar poly_eval(const RecurrenceTable& table, std::size_t k, Scalar x);

/// All of p_0(x) .. p_{count-1}(x).
std::vector<double> poly_values(const RecurrenceTable& table, double x, std::size_t count);

/// (1 / 2 pi i) int p_k(x) w(x) / (x - z) dx, node count doubled until two estimates agree.
std::complex<double> cauchy_transform(const WeightSpec& spec, const RecurrenceTable& table, std::size_t k,
                                      std::complex<double> z);

/// Series coefficients alpha_j of a scalar function in the orthonormal basis, with the
/// envelope |alpha_j| <= c * rho^-j used by the stopping rules.
class CoefficientStream {
public:
    CoefficientStream() = default;
    CoefficientStream(std::vector<double> alpha, double rho, double c_envelope = 5.0);
    /// Unbounded stream from a generator.
    CoefficientStream(std::function<double(std::size_t)> generator, double rho, double c_envelope = 5.0);

    double operator[](std::size_t j) const;
    /// Number of stored coefficients; unbounded streams report SIZE_MAX.
    std::size_t size() const;
    bool bounded() const { return !generator_; }

    double rho() const { return rho_; }
    double c_envelope() const { return c_; }

    /// Largest imaginary part discarded when the coefficients came from complex sums.
    double max_imag = 0.0;
    /// Contour or quadrature nodes actually used (0 for closed forms).
    int nodes_used = 0;

    /// Indices j < upto with |alpha_j| > c rho^-j.
    std::vector<std::size_t> envelope_violations(std::size_t upto) const;

private:
    std::vector<double> alpha_;
    std::function<double(std::size_t)> generator_;
    double rho_ = 0.0;
    double c_ = 5.0;
};

/// Circles around each interval: centre = midpoint, radius = radius_factor * (half + clearance),
/// clearance = min(gap / 4, half). Throws GeometryError when circles overlap or reach another
/// interval.
struct ContourCircle {
    double center;
    double radius;
};
std::vector<ContourCircle> default_circles(const CutDomain& domain, double radius_factor = 1.0);

/// sign coefficients: +1 on the circle around the rightmost interval, -1 on the others
/// (two-interval domains). Exactly m trapezoid nodes per circle.
CoefficientStream sign_coeffs_circles(const WeightSpec& spec, const RecurrenceTable& table, std::size_t count,
                                      int m, double radius_factor = 1.0);

/// Doubles m from m0 up to m_cap until consecutive streams agree to tol per coefficient.
CoefficientStream sign_coeffs_circles_adaptive(const WeightSpec& spec, const RecurrenceTable& table,
                                               std::size_t count, int m0 = 200, int m_cap = 3200,
                                               double tol = 1e-11);

/// Principal-value quadrature along the imaginary axis after z = tan(pi y / 2); needs 0 in a gap.
CoefficientStream sign_coeffs_pv(const WeightSpec& spec, const RecurrenceTable& table, std::size_t count, int m);

/// Doubles m until consecutive streams agree to tol per coefficient.
CoefficientStream sign_coeffs_pv_adaptive(const WeightSpec& spec, const RecurrenceTable& table,
                                          std::size_t count, int m0 = 128, int m_cap = 8192,
                                          double tol = 1e-11);

/// 1/x on [alpha - c, alpha + c] in the orthonormal Chebyshev basis: alpha_0 = S_0,
/// alpha_k = sqrt(2) S_0 r^k with r the signed ratio from inverse_rate.
CoefficientStream inverse_coeffs_chebyshev(const Interval& interval);

/// alpha_j = 2 pi i C[p_j w](0) = int p_j w / x.
CoefficientStream inverse_coeffs_general(const WeightSpec& spec, const RecurrenceTable& table, std::size_t count);

/// Contour coefficients for a function analytic inside the default circles.
CoefficientStream general_f_coeffs(const std::function<std::complex<double>(std::complex<double>)>& f,
                                   const WeightSpec& spec, const RecurrenceTable& table, std::size_t count,
                                   int m, double radius_factor = 1.0);

/// Projection int f p_j w on a sigma quadrature with f sampled at the nodes (complex samples).
std::vector<std::complex<long double>> project(const SigmaQuadrature& quad, const RecurrenceTable& table,
                                               const std::vector<std::complex<long double>>& f_at_nodes,
                                               std::size_t count);

void write_csv(std::ostream& out, const RecurrenceTable& table);
void write_csv(std::ostream& out, const CoefficientStream& stream, std::size_t count);

// ---------------------------------------------------------------------------

template <class Scalar>
Scalar poly_eval(const RecurrenceTable& table, std::size_t k, Scalar x) {
    if (k >= table.count()) throw std::out_of_range("poly_eval: degree exceeds table length");
    Scalar prev = Scalar(0), cur = Scalar(1);
    for (std::size_t j = 0; j < k; ++j) {
        const Scalar a = static_cast<Scalar>(table.a[j]);
        const Scalar bprev = j == 0 ? Scalar(0) : static_cast<Scalar>(table.b[j - 1]);
        const Scalar next = ((x - a) * cur - bprev * prev) / static_cast<Scalar>(table.b[j]);
        prev = cur;
        cur = next;
    }
    return cur;
}

}  // namespace akhsylv
