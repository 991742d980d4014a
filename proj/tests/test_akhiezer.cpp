#include "akhsylv/akhiezer.hpp"
#include "akhsylv/errors.hpp"
#include "akhsylv/linalg.hpp"
#include "akhsylv/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace akhsylv;

namespace {

// Akhiezer weight on [b1,g1] u [b2,g2] integrated against q with t = mid + half cos(theta) per
// interval; the bracket below is w(t) sqrt((t-a)(b-t)) without normalization.
template <class Q>
auto akhiezer_integral(double b1, double g1, double b2, double g2, Q q, int n = 600) {
    const GaussLegendre gl = gauss_legendre(n);
    decltype(q(0.0)) s{};
    for (int iv = 0; iv < 2; ++iv) {
        const double a = iv ? b2 : b1, b = iv ? g2 : g1;
        for (int i = 0; i < n; ++i) {
            const double th = M_PI * 0.5 * (gl.nodes[i] + 1);
            const double t = 0.5 * (a + b) + 0.5 * (b - a) * std::cos(th);
            const double smooth = iv == 0 ? (g1 - t) / std::sqrt((g2 - t) * (b2 - t))
                                          : std::sqrt((t - g1) / (t - b1));
            s += 0.5 * M_PI * gl.weights[i] * smooth * q(t);
        }
    }
    return s;
}

double series_at(const CoefficientStream& c, const RecurrenceTable& t, double x, std::size_t K) {
    const std::vector<double> p = poly_values(t, x, K);
    double s = 0;
    for (std::size_t j = 0; j < K; ++j) s += c[j] * p[j];
    return s;
}

}  // namespace

TEST_CASE("weights integrate to one") {
    for (const WeightSpec& w :
         {WeightSpec::chebyshev(Interval(1, 3)), WeightSpec::akhiezer(CutDomain{Interval(-1.8, -0.5), Interval(2, 3)}),
          WeightSpec::general(CutDomain{Interval(-2, -1), Interval(0, 1), Interval(3, 4)}, {{-1, -1}, {1, -1}, {-1, 1}})}) {
        const SigmaQuadrature q = sigma_quadrature(w, 64);
        long double s = 0;
        for (long double x : q.weights) s += x;
        CHECK(double(s) == doctest::Approx(1.0).epsilon(1e-14));
    }
    const WeightSpec c = WeightSpec::chebyshev(Interval(-1, 1));
    CHECK(c(0.0) == doctest::Approx(1 / M_PI).epsilon(1e-14));
    CHECK_THROWS_AS(c(1.5), DomainError);
    CHECK_THROWS_AS(WeightSpec::akhiezer(CutDomain{Interval(0, 1)}), UnsupportedDomainError);
    CHECK_THROWS_AS(WeightSpec::general(CutDomain{Interval(0, 1)}, {{2, 1}}), DomainError);
}

TEST_CASE("Akhiezer weight normalization matches direct quadrature") {
    const double mass = akhiezer_integral(-1.8, -0.5, 2, 3, [](double) { return 1.0; });
    const WeightSpec w = WeightSpec::akhiezer(CutDomain{Interval(-1.8, -0.5), Interval(2, 3)});
    for (double x : {-1.2, 2.4, 2.9}) {
        const double a = x < 0 ? -1.8 : 2, b = x < 0 ? -0.5 : 3;
        const double smooth = x < 0 ? (-0.5 - x) / std::sqrt((3 - x) * (2 - x)) : std::sqrt((x + 0.5) / (x + 1.8));
        CHECK(w(x) == doctest::Approx(smooth / std::sqrt((x - a) * (b - x)) / mass).epsilon(1e-12));
    }
}

TEST_CASE("Stieltjes reproduces closed-form recurrences") {
    const RecurrenceTable cs = stieltjes_recurrence(WeightSpec::chebyshev(Interval(1, 3)), 60);
    const RecurrenceTable cc = chebyshev_recurrence(Interval(1, 3), 60);
    for (std::size_t k = 0; k < 60; ++k) {
        CHECK(double(std::abs(cs.a[k] - cc.a[k])) <= 1e-13);
        CHECK(double(std::abs(cs.b[k] - cc.b[k])) <= 1e-13);
    }
    CHECK(double(cc.b[0]) == doctest::Approx(1 / std::sqrt(2.0)));
    CHECK(double(cc.b[5]) == doctest::Approx(0.5));
    for (double beta : {0.3, 0.5, 0.7}) {
        const CutDomain d{Interval(-2, -2 * beta), Interval(2 * beta, 2)};
        const RecurrenceTable st = stieltjes_recurrence(WeightSpec::akhiezer(d), 50);
        const RecurrenceTable cf = symmetric_akhiezer_recurrence(d, 50);
        for (std::size_t k = 0; k < 50; ++k) {
            CHECK(double(std::abs(st.a[k] - cf.a[k])) <= 1e-12);
            CHECK(double(std::abs(st.b[k] - cf.b[k])) <= 1e-12);
        }
    }
    CHECK_THROWS_AS(symmetric_akhiezer_recurrence(CutDomain{Interval(-1.8, -0.5), Interval(2, 3)}, 5),
                    UnsupportedDomainError);
}

TEST_CASE("computed polynomials are orthonormal") {
    const WeightSpec w = WeightSpec::akhiezer(CutDomain{Interval(-1.8, -0.5), Interval(2, 3)});
    const RecurrenceTable t = stieltjes_recurrence(w, 31);
    for (int i : {0, 3, 17, 30})
        for (int j : {0, 3, 17, 30}) {
            const double g = akhiezer_integral(-1.8, -0.5, 2, 3, [&](double x) {
                return poly_eval(t, std::size_t(i), x) * poly_eval(t, std::size_t(j), x);
            }) / akhiezer_integral(-1.8, -0.5, 2, 3, [](double) { return 1.0; });
            CHECK(g == doctest::Approx(i == j ? 1.0 : 0.0).scale(1).epsilon(1e-11));
        }
}

TEST_CASE("poly_eval agrees with poly_values") {
    const RecurrenceTable t = chebyshev_recurrence(Interval(-1, 1), 20);
    const std::vector<double> v = poly_values(t, 0.3, 20);
    for (std::size_t k = 0; k < 20; ++k) CHECK(poly_eval(t, k, 0.3) == doctest::Approx(v[k]).epsilon(1e-13));
    // orthonormal Chebyshev: p_k = sqrt(2) T_k
    CHECK(v[7] == doctest::Approx(std::sqrt(2.0) * std::cos(7 * std::acos(0.3))).epsilon(1e-13));
    CHECK_THROWS_AS(poly_eval(t, 20, 0.0), std::out_of_range);
}

TEST_CASE("Cauchy transform values and conjugate symmetry") {
    const CutDomain d{Interval(-1, -0.5), Interval(0.5, 1)};
    const WeightSpec w = WeightSpec::akhiezer(d);
    const RecurrenceTable t = symmetric_akhiezer_recurrence(d, 8);
    const cplx z(0.2, 0.3);
    const cplx c = cauchy_transform(w, t, 3, z);
    const double mass = akhiezer_integral(-1, -0.5, 0.5, 1, [](double) { return 1.0; });
    const cplx direct = akhiezer_integral(-1, -0.5, 0.5, 1, [&](double x) {
                            return cplx(poly_eval(t, 3, x)) / (x - z);
                        }) / (mass * cplx(0, 2 * M_PI));
    CHECK(std::abs(c - direct) <= 1e-12);
    CHECK(c.real() == doctest::Approx(-0.0127148).epsilon(1e-5));
    CHECK(c.imag() == doctest::Approx(0.0327861).epsilon(1e-5));
    const cplx cc = cauchy_transform(w, t, 3, std::conj(z));
    CHECK(std::abs(cc + std::conj(c)) <= 1e-14);
}

TEST_CASE("sign coefficients match direct projection and reproduce sign") {
    const double b1 = -1.8, g1 = -0.5, b2 = 2, g2 = 3;
    const CutDomain d{Interval(b1, g1), Interval(b2, g2)};
    const WeightSpec w = WeightSpec::akhiezer(d);
    const std::size_t K = 80;
    const RecurrenceTable t = stieltjes_recurrence(w, K + 1);
    const CoefficientStream c = sign_coeffs_circles_adaptive(w, t, K);
    const double mass = akhiezer_integral(b1, g1, b2, g2, [](double) { return 1.0; });
    for (std::size_t j : {0, 1, 5, 20}) {
        const double direct =
            akhiezer_integral(b1, g1, b2, g2, [&](double x) { return (x > 0 ? 1.0 : -1.0) * poly_eval(t, j, x); }) /
            mass;
        CHECK(c[j] == doctest::Approx(direct).epsilon(1e-12).scale(1));
        CHECK(c[j] ==
              doctest::Approx(coeff_dense_oracle(w, t, [](double x) { return x > 0 ? 1.0 : -1.0; }, j)).scale(1).epsilon(1e-12));
    }
    for (double x : {-1.7, -1.0, -0.5, 2.0, 2.5, 3.0}) CHECK(series_at(c, t, x, K) == doctest::Approx(x > 0 ? 1 : -1).epsilon(1e-13));
    CHECK(c.max_imag <= 1e-13);
}

TEST_CASE("contour and principal-value coefficients agree") {
    const CutDomain d{Interval(-1.8, -0.5), Interval(2, 3)};
    const WeightSpec w = WeightSpec::akhiezer(d);
    const RecurrenceTable t = stieltjes_recurrence(w, 61);
    const CoefficientStream a = sign_coeffs_circles_adaptive(w, t, 60);
    const CoefficientStream b = sign_coeffs_pv_adaptive(w, t, 60);
    for (std::size_t j = 0; j < 60; ++j) CHECK(std::abs(a[j] - b[j]) <= 1e-11);
    CHECK_THROWS_AS(sign_coeffs_pv(WeightSpec::akhiezer(CutDomain{Interval(1, 2), Interval(3, 4)}), t, 5, 64),
                    GeometryError);
}

TEST_CASE("coefficient envelope on two domains") {
    for (const CutDomain& d : {CutDomain{Interval(-1.8, -0.5), Interval(2, 3)}, CutDomain{Interval(-1.8, -0.1), Interval(0.1, 3)}}) {
        const double rho = sign_rate(d).rho;
        const std::size_t K = std::size_t(std::log(5e16) / std::log(rho));
        const WeightSpec w = WeightSpec::akhiezer(d);
        const RecurrenceTable t = stieltjes_recurrence(w, K + 1);
        const CoefficientStream c = sign_coeffs_circles_adaptive(w, t, K, 200, 6400);
        CHECK(c.rho() == doctest::Approx(rho));
        CHECK(c.envelope_violations(K).empty());
    }
}

TEST_CASE("decay of sign coefficients follows the rate when the saddle sits at 0") {
    const CutDomain base{Interval(-1.8, -0.5), Interval(2, 3)};
    const CutDomain d = base.affine(1.0, -gap_saddle(base));
    CHECK(std::abs(gap_saddle(d)) <= 1e-10);
    const WeightSpec w = WeightSpec::akhiezer(d);
    const RecurrenceTable t = stieltjes_recurrence(w, 61);
    const CoefficientStream c = sign_coeffs_circles_adaptive(w, t, 60);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t j = 10; j < 56; ++j) {
        if (std::abs(c[j]) < 1e-15) continue;
        const double y = std::log(std::abs(c[j]));
        sx += double(j);
        sy += y;
        sxx += double(j) * double(j);
        sxy += double(j) * y;
        ++n;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(std::exp(-slope) == doctest::Approx(sign_rate(d).rho).epsilon(0.02));
}

TEST_CASE("inverse coefficients") {
    const Interval iv(0.25, 2.25);
    const CoefficientStream c = inverse_coeffs_chebyshev(iv);
    const double s0 = 1 / std::sqrt(1.25 * 1.25 - 1.0);
    CHECK(c[0] == doctest::Approx(s0).epsilon(1e-15));
    CHECK(c[3] == doctest::Approx(std::sqrt(2.0) * s0 * std::pow(-0.5, 3)).epsilon(1e-14));
    CHECK(c.rho() == doctest::Approx(2.0));
    CHECK_FALSE(c.bounded());
    const RecurrenceTable t = chebyshev_recurrence(iv, 70);
    for (double x : {0.25, 1.0, 2.0}) CHECK(series_at(c, t, x, 70) == doctest::Approx(1 / x).epsilon(1e-14));

    const CutDomain d{Interval(1, 2.8), Interval(10.5, 11.8)};
    const WeightSpec w = WeightSpec::akhiezer(d);
    const RecurrenceTable tt = stieltjes_recurrence(w, 61);
    const CoefficientStream g = inverse_coeffs_general(w, tt, 60);
    CHECK(g.rho() == doctest::Approx(inverse_rho(d)));
    for (double x : {1.0, 2.0, 11.0}) CHECK(series_at(g, tt, x, 60) == doctest::Approx(1 / x).epsilon(1e-13));
    CHECK_THROWS_AS(inverse_coeffs_chebyshev(Interval(-1, 1)), SingularDomainError);
}

TEST_CASE("analytic function coefficients") {
    const CutDomain d{Interval(-2, -0.5), Interval(0.5, 6)};
    const WeightSpec w = WeightSpec::akhiezer(d);
    const RecurrenceTable t = stieltjes_recurrence(w, 41);
    const CoefficientStream c = general_f_coeffs([](cplx z) { return std::exp(z); }, w, t, 40, 400);
    for (double x : {-1.0, 0.5, 4.0}) CHECK(series_at(c, t, x, 40) == doctest::Approx(std::exp(x)).epsilon(1e-12));
    for (std::size_t j : {0, 4, 12})
        CHECK(c[j] == doctest::Approx(coeff_dense_oracle(w, t, [](double x) { return std::exp(x); }, j)).epsilon(1e-10).scale(1e-3));
    // exp is entire: above the rounding floor the decrements of log|alpha_j| grow with j
    std::vector<double> dec;
    for (std::size_t j = 2; std::abs(c[j + 1]) > 1e-13 * std::abs(c[0]); ++j)
        dec.push_back(std::log(std::abs(c[j]) / std::abs(c[j + 1])));
    REQUIRE(dec.size() >= 10);
    double mj = 0, md = 0;
    for (std::size_t i = 0; i < dec.size(); ++i) mj += double(i) / dec.size(), md += dec[i] / dec.size();
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < dec.size(); ++i) sxy += (i - mj) * (dec[i] - md), sxx += (i - mj) * (i - mj);
    for (double x : dec) CHECK(x > 0);
    CHECK(sxy / sxx > 0);
}

TEST_CASE("contour circles") {
    const CutDomain d{Interval(-1.8, -0.5), Interval(2, 3)};
    const std::vector<ContourCircle> c = default_circles(d);
    REQUIRE(c.size() == 2);
    CHECK(c[0].center == doctest::Approx(-1.15));
    CHECK(c[1].center == doctest::Approx(2.5));
    CHECK(c[0].center + c[0].radius < c[1].center - c[1].radius);
    CHECK_THROWS_AS(default_circles(d, 3.0), GeometryError);
}

TEST_CASE("CSV output") {
    std::ostringstream a, b;
    write_csv(a, chebyshev_recurrence(Interval(-1, 1), 3));
    CHECK(a.str().rfind("# akhsylv-csv v1\nk,a,b\n", 0) == 0);
    write_csv(b, CoefficientStream(std::vector<double>{1.0, 0.5}, 2.0), 2);
    CHECK(b.str() == "# akhsylv-csv v1\nj,alpha,envelope\n0,1,5\n1,0.5,2.5\n");
}

TEST_CASE("stored streams bound their index") {
    const CoefficientStream s(std::vector<double>{1, 2, 3}, 2.0);
    CHECK(s.size() == 3);
    CHECK(s[2] == 3.0);
    CHECK_THROWS_AS(s[3], std::out_of_range);
    CHECK(s.envelope_violations(3) == std::vector<std::size_t>{2});
}
