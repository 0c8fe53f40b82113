#include "bellfield/fieldkernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "bellfield/quadrature.hpp"

namespace bellfield {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kFourPiSq = 4.0 * kPi * kPi;
constexpr double kLightconeGuard = 1e-6;
}  // namespace

Mass::Mass(double m) : value(m) {
    if (!(m >= 0.0)) throw std::domain_error("Mass: m must be >= 0");
}

SpacelikeInterval::SpacelikeInterval(double r_) : r(r_) {
    if (!(r_ > 0.0)) throw std::domain_error("SpacelikeInterval: r must be > 0");
    if (r_ < kLightconeGuard)
        throw std::domain_error(
            "SpacelikeInterval: separation too close to the lightcone "
            "singularity");
}

SpacelikeInterval SpacelikeInterval::from_separation(double t, const Vec3& dx) {
    const double s2 = norm2(dx) - t * t;
    if (!(s2 > 0.0))
        throw std::domain_error(
            "SpacelikeInterval: separation is not spacelike");
    return SpacelikeInterval(std::sqrt(s2));
}

double bessel_k1(double x) {
    if (!(x > 0.0)) throw std::domain_error("bessel_k1: x must be > 0");
    return std::cyl_bessel_k(1.0, x);
}

WightmanValue wightman_closed(const SpacelikeInterval& ri, const Mass& mi) {
    const double r = ri.r, m = mi.value;
    double value;
    if (m == 0.0) {
        value = 1.0 / (kFourPiSq * r * r);
    } else {
        value = m * bessel_k1(m * r) / (kFourPiSq * r);
    }
    return {value, WightmanMethod::closed_form};
}

WightmanValue wightman_quadrature(const SpacelikeInterval& ri, const Mass& mi,
                                  double cutoff, double tol) {
    const double r = ri.r, m = mi.value;
    if (cutoff < 0.0)
        throw std::domain_error("wightman_quadrature: cutoff must be > 0");
    if (!(tol > 0.0))
        throw std::domain_error("wightman_quadrature: tol must be > 0");

    // Integrate k sin(kr)/omega over half periods of the sine; the
    // partial sums alternate around the limit and Wynn's epsilon
    // algorithm recovers it to near machine precision.
    const double half = kPi / r;
    int nterms = 60;
    if (cutoff > 0.0)
        nterms = std::clamp(static_cast<int>(cutoff * r / kPi), 16, 60);

    const auto& rule = gauss_legendre(32);
    std::vector<double> partial(nterms);
    double sum = 0.0, comp = 0.0;  // Kahan
    for (int i = 0; i < nterms; ++i) {
        const double a = i * half, b = (i + 1) * half;
        // the integrand's sqrt scale sits at k ~ m; resolve the first
        // half-period (which may span it) with extra panels
        const int panels = i == 0 ? 8 : 2;
        double seg = 0.0;
        for (int p = 0; p < panels; ++p) {
            const double pa = a + (b - a) * p / panels;
            const double pb = a + (b - a) * (p + 1) / panels;
            const double mid = 0.5 * (pa + pb), h = 0.5 * (pb - pa);
            double part = 0.0;
            for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
                const double k = mid + h * rule.nodes[q];
                part += rule.weights[q] * k * std::sin(k * r) /
                        std::sqrt(k * k + m * m);
            }
            seg += part * h;
        }
        const double y = seg - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        partial[i] = sum;
    }

    double spread = 0.0;
    const double radial = wynn_epsilon(partial, &spread);
    // internal column spread underestimates plateau bias; cross-check the
    // extrapolation against one built from a truncated prefix
    const std::vector<double> prefix(partial.begin(),
                                     partial.begin() + 2 * nterms / 3);
    const double radial_prefix = wynn_epsilon(prefix);
    const double err = std::abs(radial - radial_prefix) + spread;
    const double value = radial / (kFourPiSq * r);

    // accept when the residual is at rounding level for the partial-sum
    // scale, or within the requested relative tolerance
    double scale = 0.0;
    for (double p : partial) scale = std::max(scale, std::abs(p));
    const double noise_floor = 64.0 * 2.220446049250313e-16 * scale;
    if (err > noise_floor && err > tol * std::abs(radial))
        throw std::runtime_error(
            "wightman_quadrature: extrapolation residual exceeds tolerance");
    return {value, WightmanMethod::quadrature};
}

WightmanValue wightman_asymptotic(const SpacelikeInterval& ri, const Mass& mi) {
    const double m = mi.value;
    if (m == 0.0)
        throw std::domain_error("wightman_asymptotic: requires m > 0");
    const double lambda = m * ri.r;
    const double value = m * m / (4.0 * kPi * lambda) *
                         std::sqrt(kPi / (2.0 * lambda)) * std::exp(-lambda);
    return {value, WightmanMethod::asymptotic};
}

double asymptotic_ratio(const SpacelikeInterval& r, const Mass& m) {
    return wightman_closed(r, m).value / wightman_asymptotic(r, m).value;
}

}  // namespace bellfield
