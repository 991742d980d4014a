#include "akhsylv/akhiezer.hpp"

#include "akhsylv/errors.hpp"
#include "akhsylv/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>

namespace akhsylv {

using ld = long double;
using cld = std::complex<long double>;

namespace {

constexpr ld kPi = std::numbers::pi_v<long double>;

// Unnormalized sigma quadrature: weights integrate prod |x - e|^(p_e/2).
SigmaQuadrature raw_quadrature(const CutDomain& domain, const std::vector<int>& p, int n) {
    if (n < 4) throw DomainError("sigma_quadrature: need at least 4 nodes per interval");
    const GaussLegendreLD gl = gauss_legendre_ld(n);
    const std::vector<double> ends = domain.endpoints();
    SigmaQuadrature q;
    q.nodes_per_interval = n;
    for (std::size_t j = 0; j < domain.size(); ++j) {
        const ld lo = domain[j].lo, hi = domain[j].hi;
        const ld mid = (lo + hi) / 2, half = (hi - lo) / 2;
        const int c = p[2 * j], d = p[2 * j + 1];
        const ld root2h = std::sqrt(2 * half);
        for (int i = 0; i < n; ++i) {
            const ld th = kPi / 2 * (gl.nodes[i] + 1);
            const ld wt = kPi / 2 * gl.weights[i];
            const ld co = std::cos(th / 2), si = std::sin(th / 2);
            const ld x = mid + half * std::cos(th);
            // (x - lo)^(c/2) (hi - x)^(d/2) |dx/dtheta| with x - lo = 2h cos^2, hi - x = 2h sin^2
            ld e = 2 * half * si * co;
            e *= c > 0 ? root2h * co : 1 / (root2h * co);
            e *= d > 0 ? root2h * si : 1 / (root2h * si);
            ld h = 1;
            for (std::size_t k = 0; k < ends.size(); ++k) {
                if (k == 2 * j || k == 2 * j + 1) continue;
                const ld dist = std::abs(x - static_cast<ld>(ends[k]));
                h *= p[k] > 0 ? std::sqrt(dist) : 1 / std::sqrt(dist);
            }
            q.nodes.push_back(x);
            q.weights.push_back(wt * e * h);
            q.interval.push_back(static_cast<int>(j));
        }
    }
    return q;
}

ld mass(const SigmaQuadrature& q) {
    ld s = 0;
    for (ld w : q.weights) s += w;
    return s;
}

}  // namespace

WeightSpec::WeightSpec(CutDomain domain, WeightKind kind, std::vector<int> p)
    : domain_(std::move(domain)), kind_(kind), p_(std::move(p)) {
    if (p_.size() != 2 * domain_.size()) throw DomainError("weight: one exponent per endpoint required");
    for (int e : p_)
        if (e != 1 && e != -1) throw DomainError("weight: endpoint exponents must be +1 or -1");
    // total mass by doubling until it settles
    int n = 64;
    ld prev = mass(raw_quadrature(domain_, p_, n));
    for (;;) {
        n *= 2;
        const ld cur = mass(raw_quadrature(domain_, p_, n));
        if (std::abs(cur - prev) <= 1e-17L * std::abs(cur)) {
            norm_ = 1 / cur;
            break;
        }
        if (n >= 1 << 16) throw AccuracyError("weight: normalization integral did not converge");
        prev = cur;
    }
}

WeightSpec WeightSpec::chebyshev(const Interval& interval) {
    return WeightSpec(CutDomain{interval}, WeightKind::Chebyshev, {-1, -1});
}

WeightSpec WeightSpec::akhiezer(const CutDomain& domain) {
    if (domain.size() != 2) throw UnsupportedDomainError("akhiezer weight needs exactly two intervals");
    return WeightSpec(domain, WeightKind::Akhiezer, {-1, 1, -1, -1});
}

WeightSpec WeightSpec::general(const CutDomain& domain, const std::vector<std::pair<int, int>>& exponents) {
    if (exponents.size() != domain.size()) throw DomainError("weight: one exponent pair per interval required");
    std::vector<int> p;
    for (auto [c, d] : exponents) {
        p.push_back(c);
        p.push_back(d);
    }
    return WeightSpec(domain, WeightKind::GeneralExponent, std::move(p));
}

double WeightSpec::operator()(double x) const {
    bool interior = false;
    for (const auto& iv : domain_.intervals()) interior = interior || (iv.lo < x && x < iv.hi);
    if (!interior) throw DomainError("weight evaluated outside the interior of " + domain_.str());
    const std::vector<double> ends = domain_.endpoints();
    ld v = norm_;
    for (std::size_t k = 0; k < ends.size(); ++k) {
        const ld dist = std::abs(static_cast<ld>(x) - ends[k]);
        v *= p_[k] > 0 ? std::sqrt(dist) : 1 / std::sqrt(dist);
    }
    return static_cast<double>(v);
}

double weight_eval(const WeightSpec& spec, double x) { return spec(x); }

SigmaQuadrature sigma_quadrature(const WeightSpec& spec, int nodes_per_interval) {
    SigmaQuadrature q = raw_quadrature(spec.domain(), spec.exponents(), nodes_per_interval);
    for (ld& w : q.weights) w *= spec.normalization();
    return q;
}

// ---------------------------------------------------------------------------

RecurrenceTable chebyshev_recurrence(const Interval& iv, std::size_t count) {
    RecurrenceTable t;
    const ld alpha = (static_cast<ld>(iv.lo) + iv.hi) / 2, c = (static_cast<ld>(iv.hi) - iv.lo) / 2;
    for (std::size_t k = 0; k < count; ++k) {
        t.a.push_back(alpha);
        t.b.push_back(k == 0 ? c / std::sqrt(2.0L) : c / 2);
    }
    return t;
}

RecurrenceTable symmetric_akhiezer_recurrence(double beta, double shift, double scale, std::size_t count) {
    if (!(beta > 0 && beta < 1)) throw DomainError("symmetric Akhiezer recurrence needs 0 < beta < 1");
    if (!(scale > 0)) throw DomainError("symmetric Akhiezer recurrence needs scale > 0");
    RecurrenceTable t;
    const ld bt = beta, s = scale, m = shift;
    const ld root = std::sqrt(1 - bt * bt);
    for (std::size_t k = 0; k < count; ++k) {
        t.a.push_back(s * (k % 2 == 0 ? bt : -bt) + m);
        t.b.push_back(s * (k == 0 ? std::sqrt((1 - bt * bt) / 2) : root / 2));
    }
    return t;
}

RecurrenceTable symmetric_akhiezer_recurrence(const CutDomain& d, std::size_t count) {
    if (d.size() != 2) throw UnsupportedDomainError("symmetric Akhiezer recurrence needs two intervals");
    const double len1 = d[0].hi - d[0].lo, len2 = d[1].hi - d[1].lo;
    const double span = d[1].hi - d[0].lo;
    if (std::abs(len1 - len2) > 1e-14 * span)
        throw UnsupportedDomainError("domain " + d.str() + " is not balanced; use the Stieltjes procedure");
    const double scale = span / 2, shift = (d[0].lo + d[1].hi) / 2;
    const double beta = (d[1].lo - shift) / scale;
    return symmetric_akhiezer_recurrence(beta, shift, scale, count);
}

RecurrenceTable stieltjes_recurrence(const WeightSpec&, const SigmaQuadrature& quad, std::size_t count) {
    const std::size_t n = quad.nodes.size();
    const auto& x = quad.nodes;
    const auto& w = quad.weights;
    RecurrenceTable t;
    std::vector<ld> prev(n, 0), cur(n), next(n);
    const ld m0 = [&] {
        ld s = 0;
        for (ld v : w) s += v;
        return s;
    }();
    for (std::size_t i = 0; i < n; ++i) cur[i] = 1 / std::sqrt(m0);
    ld bprev = 0;
    for (std::size_t k = 0; k < count; ++k) {
        ld a = 0;
        for (std::size_t i = 0; i < n; ++i) a += w[i] * x[i] * cur[i] * cur[i];
        for (std::size_t i = 0; i < n; ++i) next[i] = (x[i] - a) * cur[i] - bprev * prev[i];
        // one local reorthogonalization pass against the two previous vectors
        ld c0 = 0, c1 = 0;
        for (std::size_t i = 0; i < n; ++i) {
            c0 += w[i] * next[i] * cur[i];
            c1 += w[i] * next[i] * prev[i];
        }
        for (std::size_t i = 0; i < n; ++i) next[i] -= c0 * cur[i] + c1 * prev[i];
        a += c0;
        ld b2 = 0;
        for (std::size_t i = 0; i < n; ++i) b2 += w[i] * next[i] * next[i];
        const ld b = std::sqrt(b2);
        if (!(b > 0) || !std::isfinite(b))
            throw IllConditionedError("Stieltjes procedure lost positivity at k = " + std::to_string(k) +
                                      "; increase the number of quadrature nodes");
        t.a.push_back(a);
        t.b.push_back(b);
        for (std::size_t i = 0; i < n; ++i) {
            prev[i] = cur[i];
            cur[i] = next[i] / b;
        }
        bprev = b;
    }
    return t;
}

RecurrenceTable stieltjes_recurrence(const WeightSpec& spec, std::size_t count) {
    return stieltjes_recurrence(spec, sigma_quadrature(spec, static_cast<int>(8 * (count + 1))), count);
}

RecurrenceTable recurrence_for(const WeightSpec& spec, std::size_t count) {
    if (spec.kind() == WeightKind::Chebyshev) return chebyshev_recurrence(spec.domain()[0], count);
    return stieltjes_recurrence(spec, count);
}

std::vector<double> poly_values(const RecurrenceTable& table, double x, std::size_t count) {
    if (count > table.count() + 1) throw std::out_of_range("poly_values: table too short");
    std::vector<double> v;
    ld prev = 0, cur = 1;
    for (std::size_t k = 0; k < count; ++k) {
        v.push_back(static_cast<double>(cur));
        if (k + 1 == count) break;
        const ld next = ((x - table.a[k]) * cur - (k ? table.b[k - 1] : 0) * prev) / table.b[k];
        prev = cur;
        cur = next;
    }
    return v;
}

// ---------------------------------------------------------------------------

std::vector<cld> project(const SigmaQuadrature& quad, const RecurrenceTable& table, const std::vector<cld>& f,
                         std::size_t count) {
    if (count > table.count() + 1) throw std::out_of_range("project: recurrence table too short");
    const std::size_t n = quad.nodes.size();
    std::vector<cld> out(count);
    std::vector<ld> prev(n, 0), cur(n, 1), next(n);
    std::vector<cld> wf(n);
    for (std::size_t i = 0; i < n; ++i) wf[i] = quad.weights[i] * f[i];
    for (std::size_t k = 0; k < count; ++k) {
        cld s = 0;
        for (std::size_t i = 0; i < n; ++i) s += wf[i] * cur[i];
        out[k] = s;
        if (k + 1 == count) break;
        const ld a = table.a[k], b = table.b[k], bp = k ? table.b[k - 1] : 0;
        for (std::size_t i = 0; i < n; ++i) next[i] = ((quad.nodes[i] - a) * cur[i] - bp * prev[i]) / b;
        std::swap(prev, cur);
        std::swap(cur, next);
    }
    return out;
}

std::complex<double> cauchy_transform(const WeightSpec& spec, const RecurrenceTable& table, std::size_t k,
                                      std::complex<double> z) {
    if (k >= table.count()) throw std::out_of_range("cauchy_transform: degree exceeds table length");
    const int cap = 1 << 15;
    double widest = 0;
    for (const auto& iv : spec.domain().intervals()) widest = std::max(widest, iv.hi - iv.lo);
    if (spec.domain().distance(z) < 4 * widest / cap)
        throw AccuracyError("cauchy_transform: point lies inside the guard band around the domain");
    const cld zz(z.real(), z.imag());
    auto estimate = [&](int n, ld& scale) {
        const SigmaQuadrature q = sigma_quadrature(spec, n);
        std::vector<cld> f(q.nodes.size());
        for (std::size_t i = 0; i < f.size(); ++i) f[i] = 1.0L / (q.nodes[i] - zz);
        const auto all = project(q, table, f, k + 1);
        // error scale: int |p_k w / (x - z)|, from the same nodes
        std::vector<cld> absf(f.size());
        for (std::size_t i = 0; i < f.size(); ++i) absf[i] = std::abs(f[i]);
        scale = 0;
        const std::vector<ld> pk = [&] {
            std::vector<ld> v(q.nodes.size());
            for (std::size_t i = 0; i < v.size(); ++i) v[i] = poly_eval<ld>(table, k, q.nodes[i]);
            return v;
        }();
        for (std::size_t i = 0; i < f.size(); ++i) scale += q.weights[i] * std::abs(pk[i] * f[i]);
        return all[k] / cld(0, 2 * kPi);
    };
    int n = std::max<int>(64, static_cast<int>(8 * (k + 1)));
    ld scale = 0;
    cld prev = estimate(n, scale);
    for (;;) {
        n *= 2;
        const cld cur = estimate(n, scale);
        const ld diff = std::abs(cur - prev);
        if (diff <= 1e-13L * scale / (2 * kPi)) return {static_cast<double>(cur.real()), static_cast<double>(cur.imag())};
        if (n >= cap)
            throw AccuracyError("cauchy_transform: node cap reached with estimate change " +
                                std::to_string(static_cast<double>(diff)));
        prev = cur;
    }
}

// ---------------------------------------------------------------------------

CoefficientStream::CoefficientStream(std::vector<double> alpha, double rho, double c_envelope)
    : alpha_(std::move(alpha)), rho_(rho), c_(c_envelope) {}

CoefficientStream::CoefficientStream(std::function<double(std::size_t)> generator, double rho, double c_envelope)
    : generator_(std::move(generator)), rho_(rho), c_(c_envelope) {}

double CoefficientStream::operator[](std::size_t j) const {
    if (generator_) return generator_(j);
    if (j >= alpha_.size()) throw std::out_of_range("coefficient index beyond stored stream");
    return alpha_[j];
}

std::size_t CoefficientStream::size() const {
    return generator_ ? std::numeric_limits<std::size_t>::max() : alpha_.size();
}

std::vector<std::size_t> CoefficientStream::envelope_violations(std::size_t upto) const {
    std::vector<std::size_t> bad;
    if (!(rho_ > 1)) return bad;
    upto = std::min(upto, size());
    for (std::size_t j = 0; j < upto; ++j)
        if (std::abs((*this)[j]) > c_ * std::pow(rho_, -static_cast<double>(j))) bad.push_back(j);
    return bad;
}

// ---------------------------------------------------------------------------

std::vector<ContourCircle> default_circles(const CutDomain& domain, double radius_factor) {
    const auto& iv = domain.intervals();
    std::vector<ContourCircle> out;
    for (std::size_t j = 0; j < iv.size(); ++j) {
        double gap = std::numeric_limits<double>::infinity();
        if (j > 0) gap = std::min(gap, iv[j].lo - iv[j - 1].hi);
        if (j + 1 < iv.size()) gap = std::min(gap, iv[j + 1].lo - iv[j].hi);
        const double clearance = std::min(gap / 4, iv[j].half());
        const double r = radius_factor * (iv[j].half() + clearance);
        if (!(r > iv[j].half())) throw GeometryError("contour circle does not enclose its interval");
        out.push_back({iv[j].mid(), r});
    }
    for (std::size_t j = 0; j + 1 < out.size(); ++j)
        if (!(out[j].center + out[j].radius < out[j + 1].center - out[j + 1].radius))
            throw GeometryError("contour circles around neighbouring intervals intersect");
    return out;
}

namespace {

std::size_t sigma_nodes_for(std::size_t count) { return std::max<std::size_t>(128, 8 * (count + 1)); }

// f~(x) = (1 / 2 pi i) sum_k f(z_k) w_k / (z_k - x), trapezoid rule on each circle
CoefficientStream contour_coefficients(const std::function<std::complex<double>(std::complex<double>)>& f,
                                       const WeightSpec& spec, const RecurrenceTable& table, std::size_t count,
                                       int m, double radius_factor, double rho) {
    if (m < 4) throw DomainError("contour quadrature needs at least 4 nodes per circle");
    const auto circles = default_circles(spec.domain(), radius_factor);
    const SigmaQuadrature q = sigma_quadrature(spec, static_cast<int>(sigma_nodes_for(count)));
    std::vector<cld> ftilde(q.nodes.size(), 0);
    for (const auto& c : circles) {
        for (int k = 0; k < m; ++k) {
            const ld th = 2 * kPi * k / m;
            const cld dz = std::polar(static_cast<ld>(c.radius), th);  // z_k - centre
            const cld zk = static_cast<ld>(c.center) + dz;
            const std::complex<double> fz = f({static_cast<double>(zk.real()), static_cast<double>(zk.imag())});
            const cld coef = cld(fz.real(), fz.imag()) * dz / static_cast<ld>(m);
            for (std::size_t i = 0; i < q.nodes.size(); ++i) ftilde[i] += coef / (zk - q.nodes[i]);
        }
    }
    const auto alpha = project(q, table, ftilde, count);
    std::vector<double> re(count);
    double imag = 0;
    for (std::size_t j = 0; j < count; ++j) {
        re[j] = static_cast<double>(alpha[j].real());
        imag = std::max(imag, static_cast<double>(std::abs(alpha[j].imag())));
    }
    CoefficientStream s(std::move(re), rho);
    s.max_imag = imag;
    s.nodes_used = m;
    return s;
}

std::function<std::complex<double>(std::complex<double>)> sign_by_circle(const CutDomain& d) {
    // +1 on the circle around the rightmost interval; circles are separated by the gap midpoint
    const double split = 0.5 * (d[d.size() - 2].hi + d[d.size() - 1].lo);
    return [split](std::complex<double> z) { return std::complex<double>(z.real() > split ? 1.0 : -1.0, 0.0); };
}

double max_abs_diff(const CoefficientStream& a, const CoefficientStream& b, std::size_t count) {
    double d = 0;
    for (std::size_t j = 0; j < count; ++j) d = std::max(d, std::abs(a[j] - b[j]));
    return d;
}

}  // namespace

CoefficientStream general_f_coeffs(const std::function<std::complex<double>(std::complex<double>)>& f,
                                   const WeightSpec& spec, const RecurrenceTable& table, std::size_t count, int m,
                                   double radius_factor) {
    return contour_coefficients(f, spec, table, count, m, radius_factor, std::numeric_limits<double>::quiet_NaN());
}

CoefficientStream sign_coeffs_circles(const WeightSpec& spec, const RecurrenceTable& table, std::size_t count, int m,
                                      double radius_factor) {
    if (spec.domain().size() != 2) throw UnsupportedDomainError("sign coefficients need a two-interval domain");
    return contour_coefficients(sign_by_circle(spec.domain()), spec, table, count, m, radius_factor,
                                sign_rate(spec.domain()).rho);
}

CoefficientStream sign_coeffs_circles_adaptive(const WeightSpec& spec, const RecurrenceTable& table,
                                               std::size_t count, int m0, int m_cap, double tol) {
    int m = m0;
    CoefficientStream prev = sign_coeffs_circles(spec, table, count, m);
    while (m < m_cap) {
        m = std::min(2 * m, m_cap);
        CoefficientStream cur = sign_coeffs_circles(spec, table, count, m);
        if (max_abs_diff(prev, cur, count) <= tol) return cur;
        prev = std::move(cur);
    }
    throw AccuracyError("contour sign coefficients did not settle by m = " + std::to_string(m_cap) +
                        " nodes per circle");
}

CoefficientStream sign_coeffs_pv(const WeightSpec& spec, const RecurrenceTable& table, std::size_t count, int m) {
    const CutDomain& d = spec.domain();
    if (d.size() != 2) throw UnsupportedDomainError("sign coefficients need a two-interval domain");
    if (!(d[0].hi < 0 && 0 < d[1].lo))
        throw GeometryError("principal-value quadrature needs 0 strictly inside the gap of " + d.str());
    if (m < 4) throw DomainError("principal-value quadrature needs at least 4 nodes");
    const GaussLegendreLD gl = gauss_legendre_ld(m);
    const SigmaQuadrature q = sigma_quadrature(spec, static_cast<int>(sigma_nodes_for(count)));
    // sign(x) = (1/pi) pv int_R dz / (x + i z), mapped to y in (-1, 1) by z = tan(pi y / 2)
    std::vector<cld> ftilde(q.nodes.size(), 0);
    for (int l = 0; l < m; ++l) {
        const ld y = gl.nodes[l];
        const ld z = std::tan(kPi * y / 2);
        const ld dzdy = kPi / 2 * (1 + z * z);
        const ld coef = gl.weights[l] * dzdy / kPi;
        for (std::size_t i = 0; i < q.nodes.size(); ++i) ftilde[i] += coef / cld(q.nodes[i], z);
    }
    const auto alpha = project(q, table, ftilde, count);
    std::vector<double> re(count);
    double imag = 0;
    for (std::size_t j = 0; j < count; ++j) {
        re[j] = static_cast<double>(alpha[j].real());
        imag = std::max(imag, static_cast<double>(std::abs(alpha[j].imag())));
    }
    CoefficientStream s(std::move(re), sign_rate(d).rho);
    s.max_imag = imag;
    s.nodes_used = m;
    return s;
}

CoefficientStream sign_coeffs_pv_adaptive(const WeightSpec& spec, const RecurrenceTable& table, std::size_t count,
                                          int m0, int m_cap, double tol) {
    int m = m0;
    CoefficientStream prev = sign_coeffs_pv(spec, table, count, m);
    while (m < m_cap) {
        m = std::min(2 * m, m_cap);
        CoefficientStream cur = sign_coeffs_pv(spec, table, count, m);
        if (max_abs_diff(prev, cur, count) <= tol) return cur;
        prev = std::move(cur);
    }
    throw AccuracyError("principal-value sign coefficients did not settle by m = " + std::to_string(m_cap));
}

CoefficientStream inverse_coeffs_chebyshev(const Interval& iv) {
    if (iv.contains(0.0)) throw SingularDomainError("1/x is singular on an interval containing 0");
    const double alpha = iv.mid(), c = iv.half();
    const std::complex<double> root = std::sqrt(std::complex<double>(alpha - c)) * std::sqrt(std::complex<double>(alpha + c));
    const double s0 = 1.0 / root.real();
    const double r = inverse_rate(iv);
    return CoefficientStream(
        [s0, r](std::size_t k) { return k == 0 ? s0 : std::sqrt(2.0) * s0 * std::pow(r, static_cast<double>(k)); },
        1.0 / std::abs(r), std::abs(s0) * std::sqrt(2.0));
}

CoefficientStream inverse_coeffs_general(const WeightSpec& spec, const RecurrenceTable& table, std::size_t count) {
    if (spec.domain().contains(0.0)) throw SingularDomainError("1/x is singular on " + spec.domain().str());
    auto run = [&](int n) {
        const SigmaQuadrature q = sigma_quadrature(spec, n);
        std::vector<cld> f(q.nodes.size());
        for (std::size_t i = 0; i < f.size(); ++i) f[i] = 1 / q.nodes[i];
        return project(q, table, f, count);
    };
    int n = static_cast<int>(sigma_nodes_for(count));
    auto prev = run(n);
    for (;;) {
        n *= 2;
        auto cur = run(n);
        ld diff = 0;
        for (std::size_t j = 0; j < count; ++j) diff = std::max(diff, std::abs(cur[j] - prev[j]));
        if (diff <= 1e-15L * std::abs(cur[0])) {
            std::vector<double> re(count);
            for (std::size_t j = 0; j < count; ++j) re[j] = static_cast<double>(cur[j].real());
            CoefficientStream s(std::move(re), inverse_rho(spec.domain()));
            s.nodes_used = n;
            return s;
        }
        if (n >= 1 << 16) throw AccuracyError("inverse coefficients: quadrature did not settle");
        prev = std::move(cur);
    }
}

void write_csv(std::ostream& out, const RecurrenceTable& table) {
    out << "# akhsylv-csv v1\nk,a,b\n" << std::setprecision(17);
    for (std::size_t k = 0; k < table.count(); ++k)
        out << k << ',' << static_cast<double>(table.a[k]) << ',' << static_cast<double>(table.b[k]) << '\n';
}

void write_csv(std::ostream& out, const CoefficientStream& stream, std::size_t count) {
    out << "# akhsylv-csv v1\nj,alpha,envelope\n" << std::setprecision(17);
    count = std::min(count, stream.size());
    for (std::size_t j = 0; j < count; ++j) {
        const double env = stream.rho() > 1 ? stream.c_envelope() * std::pow(stream.rho(), -static_cast<double>(j))
                                            : std::numeric_limits<double>::quiet_NaN();
        out << j << ',' << stream[j] << ',' << env << '\n';
    }
}

}  // namespace akhsylv
