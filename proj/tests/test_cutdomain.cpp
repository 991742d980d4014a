#include "akhsylv/cutdomain.hpp"
#include "akhsylv/errors.hpp"
#include "akhsylv/linalg.hpp"

#include <doctest.h>

#include <cmath>

using namespace akhsylv;

namespace {

// Joukowski form of re g for [alpha - c, alpha + c].
double joukowski(double lo, double hi, cplx z) {
    const double a = 0.5 * (lo + hi), c = 0.5 * (hi - lo);
    const cplx t = (z - a) / c;
    return std::log(std::abs(t + std::sqrt(t - 1.0) * std::sqrt(t + 1.0)));
}

// Integrates q(t) over [a, b] after t = mid + half cos(theta), which absorbs 1/sqrt((t-a)(b-t)).
template <class F>
double cos_rule(double a, double b, F q, int n = 400) {
    const GaussLegendre g = gauss_legendre(n);
    double s = 0;
    for (int i = 0; i < n; ++i) {
        const double th = M_PI * 0.5 * (g.nodes[i] + 1);
        s += 0.5 * M_PI * g.weights[i] * q(0.5 * (a + b) + 0.5 * (b - a) * std::cos(th));
    }
    return s;
}

// Gap saddle from  int_gap (s - z) / sqrt|R(s)| ds = 0, by bisection.
double saddle_by_bisection(double b1, double g1, double b2, double g2) {
    auto rest = [&](double s) { return 1 / std::sqrt(std::abs((s - b1) * (s - g2))); };
    const double m0 = cos_rule(g1, b2, rest), m1 = cos_rule(g1, b2, [&](double s) { return s * rest(s); });
    return m1 / m0;
}

// Equilibrium measure density |t - z*| / (pi sqrt|R(t)|), integrated against q.
template <class F>
double against_measure(double b1, double g1, double b2, double g2, double zs, F q, int n = 4000) {
    auto on = [&](double a, double b, double c, double d) {
        return cos_rule(a, b, [&](double t) { return std::abs(t - zs) / (M_PI * std::sqrt(std::abs((t - c) * (t - d)))) * q(t); },
                        n);
    };
    return on(b1, g1, b2, g2) + on(b2, g2, b1, g1);
}

}  // namespace

TEST_CASE("domain strings parse and report offending positions") {
    const CutDomain d = CutDomain::parse("-1.8,-0.5; 2,3");
    REQUIRE(d.size() == 2);
    CHECK(d[0].lo == -1.8);
    CHECK(d[1].hi == 3.0);
    CHECK(CutDomain::parse("3,4;-2,-1")[0].lo == -2.0);

    auto position = [](const std::string& s) {
        try {
            CutDomain::parse(s);
        } catch (const ParseError& e) {
            return long(e.position());
        }
        return -1L;
    };
    CHECK(position("0,1;0.5,2") == 4);
    CHECK(position("1,0") == 0);
    CHECK(position("1;2") == 1);
    CHECK(position("") == 0);
    CHECK(position("0,1;x,2") == 4);
    CHECK(position("0,1,2") == 3);
}

TEST_CASE("domain queries") {
    const CutDomain d{Interval(-2, -1), Interval(1, 3)};
    CHECK(d.contains(-1.5));
    CHECK_FALSE(d.contains(0.0));
    CHECK(d.contains(cplx(2, 0)));
    CHECK_FALSE(d.contains(cplx(2, 1e-3)));
    CHECK(d.distance(cplx(0, 0)) == doctest::Approx(1.0));
    CHECK(d.distance(cplx(2, 0.5)) == doctest::Approx(0.5));
    CHECK(d.endpoints() == std::vector<double>{-2, -1, 1, 3});
    const CutDomain e = d.affine(2, 1);
    CHECK(e[0].lo == -3.0);
    CHECK(e[1].hi == 7.0);
    CHECK_THROWS_AS(CutDomain({Interval(0, 2), Interval(1, 3)}), GeometryError);
}

TEST_CASE("single interval: closed form and path quadrature agree") {
    const GreenFunction g(CutDomain{Interval(0.5, 2.5)});
    for (cplx z : {cplx(3, 0), cplx(1.5, 0.2), cplx(-4, 3), cplx(0.4, -1e-3), cplx(2.51, 0)}) {
        CHECK(g(z) == doctest::Approx(joukowski(0.5, 2.5, z)).epsilon(1e-12));
        CHECK(g.by_quadrature(z) == doctest::Approx(joukowski(0.5, 2.5, z)).epsilon(1e-8));
    }
    CHECK(g(cplx(1.0, 0)) == 0.0);
}

TEST_CASE("symmetric two-interval domain maps to one interval under z -> z^2") {
    // g_Sigma(z) = g_[b^2, c^2](z^2) / 2 for Sigma = [-c,-b] u [b,c]
    for (auto [b, c] : {std::pair{0.5, 1.0}, std::pair{0.1, 2.0}, std::pair{0.8, 1.1}}) {
        const CutDomain d{Interval(-c, -b), Interval(b, c)};
        for (cplx z : {cplx(0, 0), cplx(0.3 * b, 0.1), cplx(1.5 * c, -0.7), cplx(-0.5 * (b + c), 0.2), cplx(0, 3)}) {
            const double expect = 0.5 * joukowski(b * b, c * c, z * z);
            CHECK(green_real(d, z) == doctest::Approx(expect).epsilon(1e-9));
        }
        CHECK(green_real(d, 0.0) == doctest::Approx(std::log(std::sqrt((1 + b / c) / (1 - b / c)))).epsilon(1e-12));
    }
}

TEST_CASE("general two-interval domain agrees with the equilibrium potential") {
    const double b1 = -1.8, g1 = -0.5, b2 = 2, g2 = 3;
    const CutDomain d{Interval(b1, g1), Interval(b2, g2)};
    const double zs = saddle_by_bisection(b1, g1, b2, g2);
    CHECK(gap_saddle(d) == doctest::Approx(zs).epsilon(1e-10));
    const double mass = against_measure(b1, g1, b2, g2, zs, [](double) { return 1.0; });
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));
    // g(z) - g(w) = int log(|z - t| / |w - t|) dmu(t)
    const cplx w(5, 2);
    for (cplx z : {cplx(0.7, 0.4), cplx(-1, 1), cplx(2.5, -0.3), cplx(10, 0)}) {
        const double diff = against_measure(b1, g1, b2, g2, zs, [&](double t) {
            return std::log(std::abs(z - t) / std::abs(w - t));
        });
        CHECK(green_real(d, z) - green_real(d, w) == doctest::Approx(diff).epsilon(1e-9));
    }
}

TEST_CASE("gap saddle") {
    CHECK(gap_saddle(CutDomain{Interval(-1, -0.5), Interval(0.5, 1)}) == doctest::Approx(0.0).scale(1));
    // equal lengths: symmetric about the common centre
    CHECK(gap_saddle(CutDomain{Interval(1, 2), Interval(4, 5)}) == doctest::Approx(3.0).epsilon(1e-12));
    const CutDomain d{Interval(-1.8, -0.5), Interval(2, 3)};
    const double z = gap_saddle(d);
    CHECK(z > -0.5);
    CHECK(z < 2.0);
    CHECK(std::abs(gap_condition_residual(d, z)) <= 1e-10);
    CHECK(gap_saddle_golden(d) == doctest::Approx(z).epsilon(1e-6));
}

TEST_CASE("sign rates") {
    CHECK(sign_rate(CutDomain{Interval(-1, -0.5), Interval(0.5, 1)}).rho ==
          doctest::Approx(std::sqrt(3.0)).epsilon(1e-13));
    for (auto [b, c] : {std::pair{0.5, 2.0}, std::pair{1.0, 4.0}}) {
        const double r = std::sqrt((c / b - 1) / (c / b + 1));
        CHECK(1 / sign_rate(CutDomain{Interval(-c, -b), Interval(b, c)}).rho == doctest::Approx(r).epsilon(1e-12));
    }
    // frozen after the potential and saddle cross-checks above
    const RateInfo r = sign_rate(CutDomain{Interval(-1.8, -0.5), Interval(2, 3)});
    CHECK(r.rho == doctest::Approx(1.78524340557584).epsilon(1e-12));
    CHECK(std::log(r.rho) == doctest::Approx(green_real(CutDomain{Interval(-1.8, -0.5), Interval(2, 3)}, r.z_star)));
    CHECK_THROWS_AS(sign_rate(CutDomain{Interval(0, 1)}), UnsupportedDomainError);
}

TEST_CASE("inverse rates") {
    CHECK(inverse_rate(Interval(0.25, 2.25)) == -0.5);
    CHECK(inverse_rate(Interval(3.65 - 1.15, 3.65 + 1.15)) == doctest::Approx(-0.161650769445431).epsilon(1e-13));
    for (auto [lo, hi] : {std::pair{0.2, 2.0}, std::pair{1.0, 11.8}, std::pair{2.5, 4.8}}) {
        const double r = inverse_rate(Interval(lo, hi));
        CHECK(r < 0);
        CHECK(std::abs(r) == doctest::Approx(std::exp(-joukowski(lo, hi, 0.0))).epsilon(1e-12));
        CHECK(inverse_rho(CutDomain{Interval(lo, hi)}) == doctest::Approx(1 / std::abs(r)).epsilon(1e-8));
    }
    for (double beta : {0.1, 0.3, 0.5})
        CHECK(std::abs(inverse_rate(Interval(2 * beta, 2))) ==
              doctest::Approx((1 - std::sqrt(beta)) / (1 + std::sqrt(beta))).epsilon(1e-12));
    // negative interval: same magnitude
    CHECK(std::abs(inverse_rate(Interval(-4.8, -2.5))) == doctest::Approx(std::abs(inverse_rate(Interval(2.5, 4.8)))));
    CHECK_THROWS_AS(inverse_rate(Interval(-1, 1)), SingularDomainError);
}

TEST_CASE("green function is nonnegative and vanishes on the domain") {
    const CutDomain d{Interval(-1.8, -0.5), Interval(2, 3)};
    const GreenFunction g(d);
    Rng rng(11);
    for (int i = 0; i < 100; ++i) {
        const cplx z(rng.uniform(-4, 5), rng.uniform(-3, 3));
        CHECK(g(z) >= -1e-8);
        const double on = i % 2 ? rng.uniform(-1.8, -0.5) : rng.uniform(2, 3);
        CHECK(std::abs(g(cplx(on, 0))) <= 1e-8);
    }
}

TEST_CASE("gap increments match differences of the green function") {
    const CutDomain d{Interval(-2, -0.1), Interval(0.1, 1.5)};
    const GreenFunction g(d);
    CHECK(g.gap_increment(0, -0.05, 0.05) == doctest::Approx(g(0.05) - g(-0.05)).epsilon(1e-9).scale(1e-3));
    CHECK(g.gap_increment(0, -0.1, 0.0) == doctest::Approx(g(0.0)).epsilon(1e-9));
}

TEST_CASE("nu diagnostic") {
    const CutDomain d{Interval(-2, -0.5), Interval(0.5, 6)};
    const double zs = sign_rate(d).z_star;
    const std::vector<cplx> inside = {cplx(-1, 0), cplx(3, 0), cplx(0.5, 0)};
    CHECK(nu(d, inside, zs) == doctest::Approx(-green_real(d, zs)));
    std::vector<cplx> at_ref = inside;
    at_ref.push_back(zs);
    CHECK(nu(d, at_ref, zs) >= -1e-12);
    CHECK(nu(d, {cplx(3.25, 0.3)}, zs) < 0);
    CHECK(nu(d, {cplx(3.25, 1.5)}, zs) > 0);
}

TEST_CASE("green grid") {
    const CutDomain d{Interval(-1, -0.5), Interval(0.5, 1)};
    const GreenGrid g = g_grid(d, -1, 1, 0, 2, 9, 5);
    REQUIRE(g.re.size() == 9);
    REQUIRE(g.im.size() == 5);
    CHECK(g.value[0][0] == doctest::Approx(1.0));   // z = -1 lies on the domain
    CHECK(g.value[0][8] == doctest::Approx(1.0));   // z = 1
    CHECK(g.value[0][4] == doctest::Approx(std::sqrt(3.0)).epsilon(1e-10));
    for (int iy = 1; iy < 5; ++iy) CHECK(g.value[iy][4] > g.value[iy - 1][4]);
}

TEST_CASE("gap maximum of the grid equals the sign rate") {
    // the level where the curves around the two intervals first meet
    const CutDomain d{Interval(-2, -0.1), Interval(0.1, 1.5)};
    const GreenGrid g = g_grid(d, -0.1, 0.1, 0, 0, 2001, 1);
    double top = 0;
    for (double v : g.value[0]) top = std::max(top, v);
    CHECK(top == doctest::Approx(sign_rate(d).rho).epsilon(1e-6));
}
