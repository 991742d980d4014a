#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace akhsylv {

using cplx = std::complex<double>;

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    Interval() = default;
    Interval(double lo_, double hi_);

    double mid() const { return 0.5 * (lo + hi); }
    double half() const { return 0.5 * (hi - lo); }
    bool contains(double x) const { return lo <= x && x <= hi; }
};

/// A sorted union of disjoint closed real intervals.
class CutDomain {
public:
    explicit CutDomain(std::vector<Interval> intervals);
    CutDomain(std::initializer_list<Interval> intervals);

    /// Parses "lo,hi;lo,hi;...". Throws ParseError carrying the offending offset.
    static CutDomain parse(const std::string& text);

    const std::vector<Interval>& intervals() const { return intervals_; }
    std::size_t size() const { return intervals_.size(); }
    const Interval& operator[](std::size_t i) const { return intervals_[i]; }

    /// All endpoints in ascending order.
    std::vector<double> endpoints() const;
    bool contains(double x) const;
    bool contains(cplx z) const;
    double distance(cplx z) const;

    /// Image under x -> scale * x + shift (scale > 0).
    CutDomain affine(double scale, double shift) const;

    std::string str() const;

private:
    std::vector<Interval> intervals_;
};

/// re g(z) for the Green's function of the complement of a cut domain with pole at infinity.
/// Construction solves for the critical points of g (one per gap); evaluation integrates
/// g'(s) = q(s)/sqrt(R(s)) along a straight path from the nearest endpoint.
class GreenFunction {
public:
    explicit GreenFunction(CutDomain domain);

    const CutDomain& domain() const { return domain_; }

    /// re g(z); zero on the domain. Uses the Joukowski closed form for a single interval.
    double operator()(cplx z) const;

    /// Always evaluates by path quadrature, also for one interval.
    double by_quadrature(cplx z) const;

    /// Coefficients of the monic numerator q in the variable t = (s - center) / scale,
    /// lowest degree first (leading 1 omitted).
    const std::vector<double>& numerator() const { return q_; }

    /// Integral of g' along the real axis between two points of the same gap, i.e. the
    /// increment of re g. Computed directly, so small increments keep full relative accuracy.
    double gap_increment(std::size_t gap, double x0, double x1) const;

private:
    double q_at(double s) const;
    cplx q_at(cplx s) const;

    CutDomain domain_;
    std::vector<double> ends_;
    double center_ = 0.0;
    double scale_ = 1.0;
    std::vector<double> q_;
};

struct RateInfo {
    double z_star = 0.0;
    double rho = 1.0;
    std::optional<double> rho_inv_signed;
};

/// Critical point of re g in the gap of a two-interval domain, from the ratio of the two
/// gap moments of 1/sqrt|R|.
double gap_saddle(const CutDomain& domain);

/// Same point found by golden-section maximization of re g over the gap.
double gap_saddle_golden(const CutDomain& domain, double tol = 1e-12);

/// Relative residual of the gap condition  int (s - z) / sqrt|R(s)| ds = 0  at z.
double gap_condition_residual(const CutDomain& domain, double z);

double green_real(const CutDomain& domain, cplx z);

/// rho = exp(re g(z*)) for a two-interval domain.
RateInfo sign_rate(const CutDomain& domain);

/// Signed Chebyshev ratio -a/c + sqrt(a/c - 1) sqrt(a/c + 1) for 1/x on [a - c, a + c].
double inverse_rate(const Interval& interval);

/// exp(re g(0)): the decay base of the 1/x series on any domain avoiding 0.
double inverse_rho(const CutDomain& domain);

/// max over eigenvalues of re g(lambda) minus re g(z_ref).
double nu(const CutDomain& domain, const std::vector<cplx>& eigenvalues, cplx z_ref);

struct GreenGrid {
    std::vector<double> re;            // nx abscissae
    std::vector<double> im;            // ny ordinates
    std::vector<std::vector<double>> value;  // value[iy][ix] = exp(re g)
};

GreenGrid g_grid(const CutDomain& domain, double re_lo, double re_hi, double im_lo, double im_hi,
                 int nx, int ny);

}  // namespace akhsylv
