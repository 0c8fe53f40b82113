#include "bellfield/spatial.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bellfield/quadrature.hpp"
#include "bellfield/rng.hpp"

namespace bellfield {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

// P(a < X < b) for X ~ N(mu, s^2), cancellation-free in the tails
double gaussian_interval(double mu, double s, double a, double b) {
    const double za = (a - mu) / (s * kSqrt2);
    const double zb = (b - mu) / (s * kSqrt2);
    if (za >= 0.0) return 0.5 * (std::erfc(za) - std::erfc(zb));
    if (zb <= 0.0) return 0.5 * (std::erfc(-zb) - std::erfc(-za));
    return 0.5 * (std::erf(zb) - std::erf(za));
}

double box_probability(const GaussianPacket3& psi, const Region& box) {
    return gaussian_interval(psi.mean.x, psi.s, box.lower.x, box.upper.x) *
           gaussian_interval(psi.mean.y, psi.s, box.lower.y, box.upper.y) *
           gaussian_interval(psi.mean.z, psi.s, box.lower.z, box.upper.z);
}

Vec3 sample_gaussian(const GaussianPacket3& psi, CounterRng& rng) {
    return psi.mean + Vec3{rng.normal(), rng.normal(), rng.normal()} * psi.s;
}

}  // namespace

Region::Region(const Vec3& lo, const Vec3& hi) : lower(lo), upper(hi) {
    if (!(lo.x < hi.x && lo.y < hi.y && lo.z < hi.z))
        throw std::domain_error("Region: lower must be below upper");
    if (!std::isfinite(volume()))
        throw std::domain_error("Region: volume must be finite");
}

Region Region::translated(const Vec3& l) const {
    return {lower + l, upper + l};
}

bool Region::contains(const Vec3& r) const {
    return r.x >= lower.x && r.x <= upper.x && r.y >= lower.y &&
           r.y <= upper.y && r.z >= lower.z && r.z <= upper.z;
}

double Region::volume() const {
    return (upper.x - lower.x) * (upper.y - lower.y) * (upper.z - lower.z);
}

double Region::min_distance_to_origin() const {
    auto axis = [](double lo, double hi) {
        if (lo > 0.0) return lo;
        if (hi < 0.0) return -hi;
        return 0.0;
    };
    const double dx = axis(lower.x, upper.x);
    const double dy = axis(lower.y, upper.y);
    const double dz = axis(lower.z, upper.z);
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

GaussianPacket3::GaussianPacket3(const Vec3& mean_, double s_)
    : mean(mean_), s(s_) {
    if (!(s_ > 0.0))
        throw std::domain_error("GaussianPacket3: spread must be > 0");
}

double GaussianPacket3::density(const Vec3& r) const {
    const double z2 = norm2(r - mean) / (s * s);
    const double c = std::pow(2.0 * std::numbers::pi * s * s, -1.5);
    return c * std::exp(-0.5 * z2);
}

double gaussian_mass_outside_ball(const GaussianPacket3& psi, double radius) {
    if (!(radius > 0.0))
        throw std::domain_error("gaussian_mass_outside_ball: radius must be > 0");
    const double mu = norm(psi.mean), s = psi.s;
    if (mu < 1e-12 * s) {
        // central case: chi_3 tail
        const double z = radius / s;
        return std::sqrt(2.0 / std::numbers::pi) * z * std::exp(-0.5 * z * z) +
               std::erfc(z / kSqrt2);
    }
    // radial density of |X| for an offset isotropic normal
    auto fr = [&](double r) {
        const double c = r / (mu * s * std::sqrt(2.0 * std::numbers::pi));
        const double em = std::exp(-0.5 * (r - mu) * (r - mu) / (s * s));
        const double ep = std::exp(-0.5 * (r + mu) * (r + mu) / (s * s));
        return c * (em - ep);
    };
    const double upper = std::max(radius, mu) + 12.0 * s;
    return integrate_gl_panels(fr, radius, upper, 32, 24);
}

GFactor g_factor(const TwoParticleDensity& rho, const Region& a,
                 const Region& b, const McParams& mc) {
    if (const auto* prod = std::get_if<ProductDensity>(&rho)) {
        return GFactor(box_probability(prod->psi1, a) *
                       box_probability(prod->psi2, b));
    }
    const auto& gen = std::get<GeneralDensity>(rho);
    CounterRng rng(mc.seed);
    MeanAccumulator acc;
    auto uniform_in = [&](const Region& box) {
        return Vec3{rng.uniform(box.lower.x, box.upper.x),
                    rng.uniform(box.lower.y, box.upper.y),
                    rng.uniform(box.lower.z, box.upper.z)};
    };
    for (std::uint64_t i = 0; i < mc.samples; ++i)
        acc.add(gen.density(uniform_in(a), uniform_in(b)));
    const double vol = a.volume() * b.volume();
    const double estimate = vol * acc.mean();
    const double se = vol * acc.stderror();
    if (se > mc.rel_tol * std::abs(estimate) && se > mc.abs_tol)
        throw std::runtime_error("g_factor: Monte Carlo variance too high");
    // clamp rounding spill just outside [0, 1]
    return GFactor(std::min(std::max(estimate, 0.0), 1.0));
}

GMcEstimate g_factor_sample_mc(const GaussianPacket3& psi1,
                               const GaussianPacket3& psi2, const Region& a,
                               const Region& b, std::uint64_t n,
                               std::uint64_t seed) {
    CounterRng rng(seed);
    MeanAccumulator acc;
    for (std::uint64_t i = 0; i < n; ++i) {
        const bool hit = a.contains(sample_gaussian(psi1, rng)) &&
                         b.contains(sample_gaussian(psi2, rng));
        acc.add(hit ? 1.0 : 0.0);
    }
    return {acc.mean(), acc.stderror()};
}

std::vector<GFactor> g_decay_scan(const TwoParticleDensity& rho,
                                  const Region& a, const Region& b,
                                  const UnitVector3& direction,
                                  const std::vector<double>& distances) {
    for (std::size_t i = 1; i < distances.size(); ++i)
        if (!(distances[i] > distances[i - 1]))
            throw std::domain_error("g_decay_scan: distances must be increasing");
    std::vector<GFactor> out;
    out.reserve(distances.size());
    for (double d : distances)
        out.push_back(g_factor(rho, a.translated(direction.v * d), b));
    return out;
}

double local_correlation(const TwoParticleDensity& rho, const Region& a,
                         const Region& b, const UnitVector3& sa,
                         const UnitVector3& sb) {
    return g_factor(rho, a, b).g * singlet_correlation(sa, sb);
}

FactorizedModelResult factorized_lhv_model(const GaussianPacket3& psi1,
                                           const GaussianPacket3& psi2,
                                           const Region& a, const Region& b,
                                           double L, double alpha, double beta,
                                           std::uint64_t n,
                                           std::uint64_t seed) {
    const double epsilon = gaussian_mass_outside_ball(psi1, L);
    if (!(epsilon < 0.5))
        throw std::domain_error(
            "factorized_lhv_model: packet mass outside the ball must be < 1/2 "
            "(increase L)");
    if (epsilon < 1e-4)
        throw std::domain_error(
            "factorized_lhv_model: rejection acceptance rate too small; "
            "increase the packet spread or reduce L");
    if (a.min_distance_to_origin() < L)
        throw std::domain_error(
            "factorized_lhv_model: region A must lie outside the ball of "
            "radius L");

    const double amp = std::sqrt(2.0 * epsilon);
    bool bounds_ok = true;
    auto check_bound = [&](double v) {
        if (std::abs(v) > 1.0 + 1e-12) {
            bounds_ok = false;
            throw std::logic_error(
                "factorized_lhv_model: sampled variable left the unit bound");
        }
        return v;
    };

    // particle 1 restricted outside the ball, by rejection
    CounterRng rng1(seed, 1);
    MeanAccumulator space_a;
    for (std::uint64_t i = 0; i < n; ++i) {
        Vec3 r1;
        do {
            r1 = sample_gaussian(psi1, rng1);
        } while (norm(r1) < L);
        space_a.add(check_bound(a.contains(r1) ? 1.0 : 0.0));
    }

    CounterRng rng2(seed, 2);
    MeanAccumulator space_b;
    for (std::uint64_t i = 0; i < n; ++i)
        space_b.add(check_bound(b.contains(sample_gaussian(psi2, rng2)) ? 1.0 : 0.0));

    CounterRng rng3(seed, 3);
    MeanAccumulator spin;
    for (std::uint64_t i = 0; i < n; ++i) {
        const double phi = rng3.uniform(0.0, 2.0 * std::numbers::pi);
        const double xi = check_bound(amp * std::cos(alpha - phi));
        const double eta = check_bound(amp * std::cos(beta - phi));
        spin.add(xi * eta);
    }

    const double m1 = space_a.mean(), m2 = space_b.mean(), m3 = spin.mean();
    const double s1 = space_a.stderror(), s2 = space_b.stderror(),
                 s3 = spin.stderror();
    const double estimate = m1 * m2 * m3;
    const double stderror = std::sqrt(std::pow(s1 * m2 * m3, 2) +
                                      std::pow(m1 * s2 * m3, 2) +
                                      std::pow(m1 * m2 * s3, 2));
    const double g_closed =
        g_factor(ProductDensity{psi1, psi2}, a, b).g;
    return {estimate, stderror, g_closed * std::cos(alpha - beta), epsilon,
            bounds_ok};
}

}  // namespace bellfield
