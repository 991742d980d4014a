#include "akhsylv/cutdomain.hpp"

#include "akhsylv/errors.hpp"
#include "quadrature.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>

namespace akhsylv {

namespace {

std::string fmt(double x) {
    std::ostringstream s;
    s.precision(17);
    s << x;
    return s.str();
}

void validate(std::vector<Interval>& v) {
    if (v.empty()) throw GeometryError("cut domain needs at least one interval");
    for (const auto& iv : v)
        if (!(iv.lo < iv.hi)) throw GeometryError("interval needs lo < hi");
    std::sort(v.begin(), v.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i - 1].hi < v[i].lo))
            throw GeometryError("intervals [" + fmt(v[i - 1].lo) + "," + fmt(v[i - 1].hi) + "] and [" +
                                fmt(v[i].lo) + "," + fmt(v[i].hi) + "] are not disjoint");
}

}  // namespace

Interval::Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
        throw GeometryError("interval needs finite lo < hi, got [" + fmt(lo_) + "," + fmt(hi_) + "]");
}

CutDomain::CutDomain(std::vector<Interval> intervals) : intervals_(std::move(intervals)) {
    validate(intervals_);
}

CutDomain::CutDomain(std::initializer_list<Interval> intervals) : intervals_(intervals) {
    validate(intervals_);
}

CutDomain CutDomain::parse(const std::string& text) {
    std::vector<Interval> out;
    std::vector<std::size_t> starts;
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto number = [&]() -> double {
        skip_ws();
        const char* begin = text.c_str() + pos;
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin || !std::isfinite(v)) throw ParseError("expected a number", pos);
        pos += static_cast<std::size_t>(end - begin);
        skip_ws();
        return v;
    };
    skip_ws();
    if (pos == text.size()) throw ParseError("empty domain string", 0);
    while (true) {
        const std::size_t start = pos;
        const double lo = number();
        if (pos >= text.size() || text[pos] != ',') throw ParseError("expected ',' between endpoints", pos);
        ++pos;
        const double hi = number();
        if (!(lo < hi)) throw ParseError("interval needs lo < hi", start);
        out.emplace_back(lo, hi);
        starts.push_back(start);
        if (pos == text.size()) break;
        if (text[pos] != ';') throw ParseError("expected ';' between intervals", pos);
        ++pos;
    }
    for (std::size_t i = 0; i < out.size(); ++i)
        for (std::size_t j = i + 1; j < out.size(); ++j)
            if (out[i].lo <= out[j].hi && out[j].lo <= out[i].hi)
                throw ParseError("interval overlaps an earlier interval", starts[j]);
    return CutDomain(std::move(out));
}

std::vector<double> CutDomain::endpoints() const {
    std::vector<double> e;
    for (const auto& iv : intervals_) {
        e.push_back(iv.lo);
        e.push_back(iv.hi);
    }
    return e;
}

bool CutDomain::contains(double x) const {
    return std::any_of(intervals_.begin(), intervals_.end(), [x](const Interval& iv) { return iv.contains(x); });
}

bool CutDomain::contains(cplx z) const { return z.imag() == 0.0 && contains(z.real()); }

double CutDomain::distance(cplx z) const {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& iv : intervals_) {
        const double x = std::clamp(z.real(), iv.lo, iv.hi);
        d = std::min(d, std::abs(z - cplx(x, 0.0)));
    }
    return d;
}

CutDomain CutDomain::affine(double scale, double shift) const {
    if (!(scale > 0)) throw GeometryError("affine map needs a positive scale");
    std::vector<Interval> v;
    for (const auto& iv : intervals_) v.emplace_back(scale * iv.lo + shift, scale * iv.hi + shift);
    return CutDomain(std::move(v));
}

std::string CutDomain::str() const {
    std::ostringstream s;
    s.precision(17);
    for (std::size_t i = 0; i < intervals_.size(); ++i) {
        if (i) s << ';';
        s << intervals_[i].lo << ',' << intervals_[i].hi;
    }
    return s.str();
}

// ---------------------------------------------------------------------------

namespace {

// Substitution s = lo + L sin^2(theta/2) on a gap (lo, hi): ds / sqrt((s-lo)(hi-s)) = dtheta.
struct GapMap {
    double lo, len;
    double s(double theta) const {
        const double h = std::sin(0.5 * theta);
        return lo + len * h * h;
    }
    double theta(double x) const {
        const double r = std::clamp((x - lo) / len, 0.0, 1.0);
        return 2.0 * std::asin(std::sqrt(r));
    }
};

// 1 / prod |s - e_j| ^ (1/2) over endpoints other than the two gap ends.
double outer_factor(const std::vector<double>& ends, std::size_t gap, double s) {
    double p = 1.0;
    for (std::size_t j = 0; j < ends.size(); ++j) {
        if (j == 2 * gap + 1 || j == 2 * gap + 2) continue;
        p *= std::abs(s - ends[j]);
    }
    return 1.0 / std::sqrt(p);
}

}  // namespace

GreenFunction::GreenFunction(CutDomain domain) : domain_(std::move(domain)), ends_(domain_.endpoints()) {
    center_ = 0.5 * (ends_.front() + ends_.back());
    scale_ = 0.5 * (ends_.back() - ends_.front());
    const std::size_t gaps = domain_.size() - 1;
    if (gaps == 0) return;
    // Gap conditions: int_gap q(s) / sqrt|R(s)| ds = 0 for each gap, q monic of degree `gaps`.
    Eigen::MatrixXd M(gaps, gaps);
    Eigen::VectorXd rhs(gaps);
    for (std::size_t g = 0; g < gaps; ++g) {
        const GapMap map{ends_[2 * g + 1], ends_[2 * g + 2] - ends_[2 * g + 1]};
        for (std::size_t k = 0; k <= gaps; ++k) {
            auto f = [&](double th) {
                const double s = map.s(th);
                return cplx(std::pow((s - center_) / scale_, static_cast<double>(k)) * outer_factor(ends_, g, s), 0.0);
            };
            const double v = detail::integrate(f, 0.0, std::numbers::pi, 1e-14).real();
            if (k < gaps)
                M(g, k) = v;
            else
                rhs(g) = -v;
        }
    }
    Eigen::VectorXd c = M.partialPivLu().solve(rhs);
    q_.assign(c.data(), c.data() + gaps);
}

double GreenFunction::q_at(double s) const {
    const double t = (s - center_) / scale_;
    double v = 1.0;
    for (std::size_t k = q_.size(); k-- > 0;) v = v * t + q_[k];
    return v * std::pow(scale_, static_cast<double>(q_.size()));
}

cplx GreenFunction::q_at(cplx s) const {
    const cplx t = (s - center_) / scale_;
    cplx v = 1.0;
    for (std::size_t k = q_.size(); k-- > 0;) v = v * t + q_[k];
    return v * std::pow(scale_, static_cast<double>(q_.size()));
}

double GreenFunction::by_quadrature(cplx z) const {
    if (z.imag() == 0.0) {
        z = cplx(z.real(), 0.0);  // normalize a negative zero to the upper side
        if (domain_.contains(z.real())) return 0.0;
    }
    std::size_t start = 0;
    double best = std::abs(z - ends_[0]);
    for (std::size_t j = 1; j < ends_.size(); ++j)
        if (std::abs(z - ends_[j]) < best) {
            best = std::abs(z - ends_[j]);
            start = j;
        }
    const double e = ends_[start];
    const cplx dz = z - e;
    // s = e + dz tau^2; the endpoint factor sqrt(dz tau^2) = tau sqrt(dz) cancels the Jacobian.
    auto f = [&](double tau) {
        const cplx d = dz * (tau * tau);
        const cplx s = e + d;
        cplx den = 1.0;
        for (std::size_t j = 0; j < ends_.size(); ++j)
            if (j != start) den *= std::sqrt(s - ends_[j]);
        return q_at(s) / den;
    };
    const cplx I = detail::integrate(f, 0.0, 1.0, 1e-13);
    const double g = (2.0 * std::sqrt(dz) * I).real();
    return std::max(g, 0.0);
}

double GreenFunction::operator()(cplx z) const {
    if (domain_.size() != 1) return by_quadrature(z);
    const Interval& iv = domain_[0];
    if (z.imag() == 0.0 && iv.contains(z.real())) return 0.0;
    const cplx t = (z - iv.mid()) / iv.half();
    const cplx w = t + std::sqrt(t - 1.0) * std::sqrt(t + 1.0);
    return std::abs(std::log(std::abs(w)));
}

double GreenFunction::gap_increment(std::size_t gap, double x0, double x1) const {
    if (gap + 1 >= domain_.size()) throw DomainError("gap index out of range");
    const GapMap map{ends_[2 * gap + 1], ends_[2 * gap + 2] - ends_[2 * gap + 1]};
    // sign of the real branch sqrt(R) on this gap: (-1)^(number of negative factor pairs)
    const std::size_t above = ends_.size() - (2 * gap + 2);
    const double sign = (above / 2) % 2 == 0 ? 1.0 : -1.0;
    auto f = [&](double th) {
        const double s = map.s(th);
        return cplx(q_at(s) * outer_factor(ends_, gap, s), 0.0);
    };
    const double th0 = map.theta(x0), th1 = map.theta(x1);
    if (th0 == th1) return 0.0;
    // short spans are resolved by one panel; adaptivity would only chase rounding in s - z
    if (std::abs(th1 - th0) < 0.05) return detail::gl_panel(f, th0, th1, gauss_legendre(16)).value.real() / sign;
    return detail::integrate(f, th0, th1, 1e-14).real() / sign;
}

// ---------------------------------------------------------------------------

namespace {

void require_two(const CutDomain& d, const char* who) {
    if (d.size() != 2)
        throw UnsupportedDomainError(std::string(who) + " needs exactly two intervals, got " + std::to_string(d.size()));
}

}  // namespace

double gap_condition_residual(const CutDomain& domain, double z) {
    require_two(domain, "gap_condition_residual");
    const auto e = domain.endpoints();
    const GapMap map{e[1], e[2] - e[1]};
    auto f = [&](double th) {
        const double s = map.s(th);
        return cplx((s - z) * outer_factor(e, 0, s), 0.0);
    };
    // split at z so that |s - z| has no kink inside a panel
    const double tz = map.theta(z);
    const double below = detail::integrate(f, 0.0, tz, 1e-14).real();
    const double above = detail::integrate(f, tz, std::numbers::pi, 1e-14).real();
    return std::abs(below + above) / (std::abs(below) + std::abs(above));
}

double gap_saddle(const CutDomain& domain) {
    require_two(domain, "gap_saddle");
    GreenFunction g(domain);
    const auto e = domain.endpoints();
    const double center = 0.5 * (e.front() + e.back()), scale = 0.5 * (e.back() - e.front());
    const double z = center - scale * g.numerator()[0];
    if (!(e[1] < z && z < e[2])) throw AccuracyError("gap saddle fell outside the gap");
    const double res = gap_condition_residual(domain, z);
    if (res > 1e-10) throw AccuracyError("gap condition residual " + fmt(res) + " exceeds 1e-10");
    return z;
}

double gap_saddle_golden(const CutDomain& domain, double tol) {
    require_two(domain, "gap_saddle_golden");
    GreenFunction g(domain);
    const auto e = domain.endpoints();
    const GapMap map{e[1], e[2] - e[1]};
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = 0.0, b = std::numbers::pi;
    double c = b - phi * (b - a), d = a + phi * (b - a);
    // compare re g at c and d through the increment between them
    while (std::abs(map.s(b) - map.s(a)) > tol * std::max(1.0, std::abs(map.s(a)))) {
        const double up = g.gap_increment(0, map.s(c), map.s(d));
        if (up > 0) {
            a = c;
            c = d;
            d = a + phi * (b - a);
        } else {
            b = d;
            d = c;
            c = b - phi * (b - a);
        }
        if (b - a < 1e-300) break;
    }
    return map.s(0.5 * (a + b));
}

double green_real(const CutDomain& domain, cplx z) { return GreenFunction(domain)(z); }

RateInfo sign_rate(const CutDomain& domain) {
    require_two(domain, "sign_rate");
    RateInfo r;
    r.z_star = gap_saddle(domain);
    const GreenFunction g(domain);
    // integrate from the nearer gap end: re g(z*) = increment from gamma_1 to z*
    const auto e = domain.endpoints();
    const double from_left = g.gap_increment(0, e[1], r.z_star);
    r.rho = std::exp(from_left);
    if (!(r.rho > 1.0)) throw AccuracyError("sign_rate: computed rho <= 1");
    return r;
}

double inverse_rate(const Interval& iv) {
    if (iv.lo <= 0.0 && 0.0 <= iv.hi)
        throw SingularDomainError("inverse_rate: 0 lies in [" + fmt(iv.lo) + "," + fmt(iv.hi) + "]");
    const double u = iv.mid() / iv.half();
    // -u + sqrt(u-1) sqrt(u+1), written without cancellation
    if (u > 0) return -1.0 / (u + std::sqrt(u - 1.0) * std::sqrt(u + 1.0));
    return 1.0 / (-u + std::sqrt(-u - 1.0) * std::sqrt(-u + 1.0));
}

double inverse_rho(const CutDomain& domain) {
    if (domain.contains(0.0)) throw SingularDomainError("inverse_rho: 0 lies in " + domain.str());
    return std::exp(GreenFunction(domain)(cplx(0.0, 0.0)));
}

double nu(const CutDomain& domain, const std::vector<cplx>& eigenvalues, cplx z_ref) {
    const GreenFunction g(domain);
    double worst = -std::numeric_limits<double>::infinity();
    for (const cplx& lam : eigenvalues) worst = std::max(worst, g(lam));
    return worst - g(z_ref);
}

GreenGrid g_grid(const CutDomain& domain, double re_lo, double re_hi, double im_lo, double im_hi, int nx,
                 int ny) {
    if (nx < 1 || ny < 1) throw DomainError("g_grid: resolution must be positive");
    const GreenFunction g(domain);
    GreenGrid out;
    for (int i = 0; i < nx; ++i) out.re.push_back(nx == 1 ? re_lo : re_lo + (re_hi - re_lo) * i / (nx - 1));
    for (int j = 0; j < ny; ++j) out.im.push_back(ny == 1 ? im_lo : im_lo + (im_hi - im_lo) * j / (ny - 1));
    out.value.assign(ny, std::vector<double>(nx));
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) out.value[j][i] = std::exp(g(cplx(out.re[i], out.im[j])));
    return out;
}

}  // namespace akhsylv
