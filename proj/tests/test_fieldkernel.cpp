#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bellfield/fieldkernel.hpp"
#include "bellfield/quadrature.hpp"

using namespace bellfield;

namespace {

constexpr double kFourPiSq = 4.0 * std::numbers::pi * std::numbers::pi;

// independent oracle: K1(x) = \int_0^inf e^{-x cosh t} cosh t dt
double k1_integral_oracle(double x) {
    // integrand decays like e^{-x cosh t}; cosh t ~ e^t/2 so t_max is ample
    const double t_max = std::acosh(745.0 / x) + 2.0;
    auto f = [x](double t) { return std::exp(-x * std::cosh(t)) * std::cosh(t); };
    return integrate_gl_panels(f, 0.0, t_max, 64, 32);
}

// truncated large-argument series, valid well inside the asymptotic regime
double k1_asymptotic_series(double x) {
    const double mu = 4.0;  // 4 nu^2 for nu = 1
    double term = 1.0, sum = 1.0;
    for (int k = 1; k <= 8; ++k) {
        term *= (mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (k * 8.0 * x);
        sum += term;
    }
    return std::sqrt(std::numbers::pi / (2.0 * x)) * std::exp(-x) * sum;
}

}  // namespace

TEST_CASE("bessel_k1 reference value at x = 1") {
    CHECK(bessel_k1(1.0) == doctest::Approx(0.6019072302).epsilon(1e-10));
}

TEST_CASE("bessel_k1 against the integral representation") {
    for (double x : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 25.0}) {
        const double oracle = k1_integral_oracle(x);
        CHECK(std::abs(bessel_k1(x) - oracle) <= 1e-10 * oracle);
    }
}

TEST_CASE("bessel_k1 leading 1/x divergence") {
    for (double x : {1e-4, 1e-6, 1e-8})
        CHECK(x * bessel_k1(x) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("bessel_k1 matches the asymptotic series at x = 10") {
    CHECK(bessel_k1(10.0) ==
          doctest::Approx(k1_asymptotic_series(10.0)).epsilon(1e-6));
}

TEST_CASE("bessel_k1 domain") {
    CHECK_THROWS_AS(bessel_k1(0.0), std::domain_error);
    CHECK_THROWS_AS(bessel_k1(-1.0), std::domain_error);
}

TEST_CASE("wightman_closed reference points") {
    const double w11 = wightman_closed(SpacelikeInterval(1.0), Mass(1.0)).value;
    CHECK(w11 == doctest::Approx(bessel_k1(1.0) / kFourPiSq).epsilon(1e-14));
    CHECK(w11 == doctest::Approx(1.5246e-2).epsilon(1e-4));

    const double w20 = wightman_closed(SpacelikeInterval(2.0), Mass(0.0)).value;
    CHECK(w20 == doctest::Approx(1.0 / (16.0 * std::numbers::pi * std::numbers::pi))
                     .epsilon(1e-14));
}

TEST_CASE("wightman_closed positivity and monotone decay") {
    for (double m : {0.0, 0.5, 1.0, 2.0}) {
        double prev = 1e300;
        for (double r = 0.1; r <= 40.0; r *= 1.3) {
            const double w = wightman_closed(SpacelikeInterval(r), Mass(m)).value;
            CHECK(w > 0.0);
            CHECK(w < prev);
            prev = w;
        }
    }
}

TEST_CASE("wightman scaling W(r, m) = m^2 W(m r, 1)") {
    for (double m : {0.5, 1.0, 2.0, 3.7})
        for (double r : {0.3, 1.0, 2.5}) {
            const double lhs =
                wightman_closed(SpacelikeInterval(r), Mass(m)).value;
            const double rhs =
                m * m *
                wightman_closed(SpacelikeInterval(m * r), Mass(1.0)).value;
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
        }
}

TEST_CASE("quadrature agrees with closed form") {
    for (double m : {0.0, 0.5, 1.0, 2.0})
        for (double r : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
            const SpacelikeInterval ri(r);
            const Mass mi(m);
            const double closed = wightman_closed(ri, mi).value;
            const double quad = wightman_quadrature(ri, mi).value;
            CHECK(std::abs(quad - closed) <= 1e-6 * closed);
        }
}

TEST_CASE("quadrature massless limit") {
    const double q = wightman_quadrature(SpacelikeInterval(1.0), Mass(0.0)).value;
    CHECK(q == doctest::Approx(1.0 / kFourPiSq).epsilon(1e-10));
}

TEST_CASE("quadrature dimensional scaling") {
    const double a = wightman_quadrature(SpacelikeInterval(0.5), Mass(2.0)).value;
    const double b = wightman_quadrature(SpacelikeInterval(1.0), Mass(1.0)).value;
    CHECK(a == doctest::Approx(4.0 * b).epsilon(1e-9));
}

TEST_CASE("quadrature convergence failure surfaces as an error") {
    // few half-periods and an impossible tolerance
    CHECK_THROWS_AS(
        wightman_quadrature(SpacelikeInterval(1.0), Mass(0.5), 55.0, 1e-14),
        std::runtime_error);
}

TEST_CASE("asymptotic ratio settles to a constant") {
    const Mass m(1.0);
    const double r10 = asymptotic_ratio(SpacelikeInterval(10.0), m);
    const double r20 = asymptotic_ratio(SpacelikeInterval(20.0), m);
    const double r40 = asymptotic_ratio(SpacelikeInterval(40.0), m);
    CHECK(std::abs(r40 - r20) < std::abs(r20 - r10));
    CHECK(std::abs(r40 - r20) <= 0.01 * r40);
}

TEST_CASE("asymptotic regime not reached at lambda = 1") {
    const double closed = wightman_closed(SpacelikeInterval(1.0), Mass(1.0)).value;
    const double asym =
        wightman_asymptotic(SpacelikeInterval(1.0), Mass(1.0)).value;
    CHECK(std::abs(closed - asym) > 0.1 * closed);
}

TEST_CASE("asymptotic requires positive mass") {
    CHECK_THROWS_AS(wightman_asymptotic(SpacelikeInterval(1.0), Mass(0.0)),
                    std::domain_error);
}

TEST_CASE("exponential clustering: log W + r slowly varying") {
    const Mass m(1.0);
    double lo = 1e300, hi = -1e300;
    for (double r = 10.0; r <= 40.0; r += 1.0) {
        const double w = wightman_closed(SpacelikeInterval(r), m).value;
        const double v = std::log(w) + r + 1.5 * std::log(r);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    CHECK(hi - lo <= 0.1);
}

TEST_CASE("domain guards") {
    CHECK_THROWS_AS(SpacelikeInterval(0.0), std::domain_error);
    CHECK_THROWS_AS(SpacelikeInterval(-1.0), std::domain_error);
    CHECK_THROWS_AS(SpacelikeInterval(1e-9), std::domain_error);
    CHECK_THROWS_AS(Mass(-0.1), std::domain_error);
}

TEST_CASE("general spacelike separation reduces to the equal-time chart") {
    const auto s = SpacelikeInterval::from_separation(3.0, {5.0, 0.0, 0.0});
    CHECK(s.r == doctest::Approx(4.0).epsilon(1e-15));
    CHECK_THROWS_AS(SpacelikeInterval::from_separation(5.0, {3.0, 0.0, 0.0}),
                    std::domain_error);
    CHECK_THROWS_AS(SpacelikeInterval::from_separation(1.0, {1.0, 0.0, 0.0}),
                    std::domain_error);
}
