#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "bellfield/fieldkernel.hpp"
#include "bellfield/randomfield.hpp"
#include "bellfield/rng.hpp"

#ifdef HAVE_EIGEN
#include <Eigen/Dense>
#endif

using namespace bellfield;

namespace {

// naive n! sum over permutations, for small matrices only
cplx permanent_naive(const std::vector<std::vector<cplx>>& m) {
    const std::size_t n = m.size();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    cplx total = 0.0;
    do {
        cplx prod = 1.0;
        for (std::size_t i = 0; i < n; ++i) prod *= m[i][perm[i]];
        total += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

const LatticeSpec kSmall(8, 0.5, 1.0);

}  // namespace

TEST_CASE("permanent: reference values") {
    CHECK(permanent({}) == cplx(1.0));
    CHECK(permanent({{1.0}}) == cplx(1.0));

    const std::vector<std::vector<cplx>> eye = {
        {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    CHECK(std::abs(permanent(eye) - cplx(1.0)) < 1e-14);

    const std::vector<std::vector<cplx>> ones = {
        {1, 1, 1}, {1, 1, 1}, {1, 1, 1}};
    CHECK(std::abs(permanent(ones) - cplx(6.0)) < 1e-12);
}

TEST_CASE("permanent matches the permutation sum on random matrices") {
    CounterRng rng(33);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::vector<cplx>> m(4, std::vector<cplx>(4));
        for (auto& row : m)
            for (auto& e : row) e = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
        const cplx fast = permanent(m);
        const cplx slow = permanent_naive(m);
        CHECK(std::abs(fast - slow) < 1e-12 * (1.0 + std::abs(slow)));
    }
}

TEST_CASE("permanent guards") {
    CHECK_THROWS_AS(permanent({{1.0, 2.0}, {3.0}}), std::invalid_argument);
    CHECK_THROWS_AS(
        permanent(std::vector<std::vector<cplx>>(9, std::vector<cplx>(9, 1.0))),
        std::length_error);
}

TEST_CASE("lattice spec guards") {
    CHECK_THROWS_AS(LatticeSpec(12, 0.5, 1.0), std::domain_error);
    CHECK_THROWS_AS(LatticeSpec(4, 0.5, 1.0), std::domain_error);
    CHECK_THROWS_AS(LatticeSpec(8, 0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(LatticeSpec(8, 0.5, -1.0), std::domain_error);
    CHECK(kSmall.cutoff() == doctest::Approx(2.0 * std::numbers::pi));
    CHECK(kSmall.box_length() == doctest::Approx(4.0));
    CHECK(kSmall.points() == 512);
}

TEST_CASE("exact lattice covariance: symmetry and decay") {
    const double k0 = lattice_covariance(kSmall, {0, 0, 0});
    CHECK(k0 > 0.0);
    CHECK(lattice_covariance(kSmall, {1, 0, 0}) ==
          doctest::Approx(lattice_covariance(kSmall, {-1, 0, 0})).epsilon(1e-13));
    CHECK(lattice_covariance(kSmall, {1, 0, 0}) ==
          doctest::Approx(lattice_covariance(kSmall, {0, 1, 0})).epsilon(1e-13));
    CHECK(std::abs(lattice_covariance(kSmall, {2, 0, 0})) <
          std::abs(lattice_covariance(kSmall, {1, 0, 0})));
    CHECK(std::abs(lattice_covariance(kSmall, {1, 0, 0})) < k0);
    // periodic wrap: lag n is lag 0
    CHECK(lattice_covariance(kSmall, {8, 0, 0}) == doctest::Approx(k0));
}

TEST_CASE("cutoff kernel at zero separation has a closed form") {
    const double m = 1.0;
    for (double cutoff : {1.0, 5.0, 20.0}) {
        // \int_0^C k^2/omega dk = (C/2) sqrt(C^2+m^2) - (m^2/2) asinh(C/m)
        const double exact =
            (0.5 * cutoff * std::sqrt(cutoff * cutoff + m * m) -
             0.5 * m * m * std::asinh(cutoff / m)) /
            (4.0 * std::numbers::pi * std::numbers::pi);
        CHECK(covariance_cutoff(cutoff, m, 0.0) ==
              doctest::Approx(exact).epsilon(1e-10));
    }
    CHECK_THROWS_AS(covariance_cutoff(0.0, m, 1.0), std::domain_error);
    CHECK_THROWS_AS(covariance_cutoff(1.0, m, -1.0), std::domain_error);
}

TEST_CASE("cutoff kernel approaches the closed form on oscillation average") {
    // a sharp cutoff leaves an oscillatory remainder; averaging the kernel
    // over one period of the cutoff cancels it
    const double r = 2.0, m = 1.0;
    const double target = wightman_closed(SpacelikeInterval(r), Mass(m)).value;
    auto period_mean = [&](double base) {
        const int n = 64;
        double acc = 0.0;
        for (int i = 0; i < n; ++i)
            acc += covariance_cutoff(
                base + 2.0 * std::numbers::pi / r * i / n, m, r);
        return acc / n;
    };
    const double lo = period_mean(10.0);
    const double hi = period_mean(40.0);
    CHECK(std::abs(hi - target) < std::abs(lo - target));
    CHECK(hi == doctest::Approx(target).epsilon(1e-2));
    // the unaveraged kernel stays within the oscillation envelope ~1/r^2
    const double envelope = 1.0 / (2.0 * std::numbers::pi * std::numbers::pi * r * r);
    for (double c : {20.0, 30.0, 40.0})
        CHECK(std::abs(covariance_cutoff(c, m, r) - target) < envelope);
}

TEST_CASE("field sampling is reproducible and seed sensitive") {
    FieldSampler sampler(kSmall);
    const LatticeField a = sampler.sample(42, 0);
    const LatticeField b = sampler.sample(42, 0);
    const LatticeField c = sampler.sample(43, 0);
    const LatticeField d = sampler.sample(42, 1);
    CHECK(a.values == b.values);
    CHECK(a.values != c.values);
    CHECK(a.values != d.values);

    const LatticeField e = sample_field(kSmall, 42, 0);
    CHECK(a.values == e.values);
}

TEST_CASE("field variance at a point matches the exact mode sum") {
    const double k0 = lattice_covariance(kSmall, {0, 0, 0});
    FieldSampler sampler(kSmall);
    MeanAccumulator var, re, im;
    const int ensemble = 3000;
    for (int s = 0; s < ensemble; ++s) {
        const LatticeField f = sampler.sample(7, s);
        const cplx v = f.at({3, 1, 5});
        var.add(std::norm(v));
        re.add(v.real());
        im.add(v.imag());
    }
    CHECK(std::abs(var.mean() - k0) <= 4.0 * var.stderror());
    CHECK(std::abs(re.mean()) <= 4.0 * re.stderror());
    CHECK(std::abs(im.mean()) <= 4.0 * im.stderror());
}

TEST_CASE("two-point moments match the exact covariance, stationarily") {
    const std::array<int, 3> lag = {1, 0, 0};
    const double exact = lattice_covariance(kSmall, lag);
    const std::vector<MomentSpec> wanted = {
        // same lag anchored at two different base points
        {{{1, 2, 3}}, {{2, 2, 3}}},
        {{{5, 6, 0}}, {{6, 6, 0}}},
        // non-conjugated pair vanishes in the mean
        {{{1, 2, 3}, {2, 2, 3}}, {}},
    };
    const auto est = empirical_moments(kSmall, 11, 20000, wanted);
    REQUIRE(est.size() == 3);
    for (int m : {0, 1}) {
        CHECK(est[m].stderror < 0.5 * std::abs(exact));
        CHECK(std::abs(est[m].mean - exact) <= 4.0 * est[m].stderror);
        CHECK(std::abs(est[m].mean.imag()) <= 4.0 * est[m].stderror);
    }
    CHECK(std::abs(est[2].mean) <= 4.0 * est[2].stderror);
    CHECK(est[0].ensemble == 20000);
}

TEST_CASE("fourth moment matches the permanent of pair covariances") {
    const std::vector<LatticePoint> x = {{0, 0, 0}, {1, 0, 0}};
    const std::vector<LatticePoint> y = {{0, 0, 0}, {0, 1, 0}};
    std::vector<std::vector<cplx>> pair(2, std::vector<cplx>(2));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            pair[i][j] = lattice_covariance(
                kSmall, {x[i].i - y[j].i, x[i].j - y[j].j, x[i].k - y[j].k});
    const cplx expected = permanent(pair);

    const auto est = empirical_moments(kSmall, 23, 20000, {{x, y}});
    REQUIRE(est.size() == 1);
    CHECK(est[0].stderror < 0.5 * std::abs(expected));
    CHECK(std::abs(est[0].mean - expected) <= 4.0 * est[0].stderror);
}

TEST_CASE("moment spec validation") {
    CHECK_THROWS_AS(empirical_moments(kSmall, 1, 10, {{{}, {}}}),
                    std::invalid_argument);
    const std::vector<LatticePoint> nine(9, LatticePoint{0, 0, 0});
    CHECK_THROWS_AS(empirical_moments(kSmall, 1, 10, {{nine, {}}}),
                    std::invalid_argument);
}

#ifdef HAVE_EIGEN
TEST_CASE("covariance matrix of scattered points is positive semidefinite") {
    std::vector<LatticePoint> pts;
    CounterRng rng(5);
    for (int i = 0; i < 16; ++i)
        pts.push_back({static_cast<int>(rng.next_word() % 8),
                       static_cast<int>(rng.next_word() % 8),
                       static_cast<int>(rng.next_word() % 8)});
    Eigen::MatrixXd cov(16, 16);
    for (int a = 0; a < 16; ++a)
        for (int b = 0; b < 16; ++b)
            cov(a, b) = lattice_covariance(
                kSmall, {pts[a].i - pts[b].i, pts[a].j - pts[b].j,
                         pts[a].k - pts[b].k});
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
    const double scale = es.eigenvalues().maxCoeff();
    CHECK(scale > 0.0);
    CHECK(es.eigenvalues().minCoeff() >= -1e-10 * scale);
}
#endif
