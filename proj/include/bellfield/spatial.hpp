#pragma once

#include <cstdint>
#include <functional>
#include <variant>

#include "bellfield/geometry.hpp"
#include "bellfield/spinbell.hpp"

namespace bellfield {

/// Axis-aligned box detector region.
struct Region {
    Vec3 lower, upper;
    Region(const Vec3& lo, const Vec3& hi);

    Region translated(const Vec3& l) const;
    bool contains(const Vec3& r) const;
    double volume() const;
    double min_distance_to_origin() const;
};

/// Isotropic single-particle position density |psi|^2 = N(mean, s^2 I).
struct GaussianPacket3 {
    Vec3 mean;
    double s = 1.0;
    GaussianPacket3(const Vec3& mean_, double s_);

    double density(const Vec3& r) const;
    GaussianPacket3 translated(const Vec3& l) const {
        return {mean + l, s};
    }
};

// probability mass of the packet outside the ball |r| < L
double gaussian_mass_outside_ball(const GaussianPacket3& psi, double radius);

struct ProductDensity {
    GaussianPacket3 psi1;
    GaussianPacket3 psi2;
};

struct GeneralDensity {
    std::function<double(const Vec3&, const Vec3&)> density;
};

/// |phi(r1, r2)|^2, either a product of packets (closed-form g) or an
/// arbitrary density handle (Monte Carlo g).
using TwoParticleDensity = std::variant<ProductDensity, GeneralDensity>;

struct McParams {
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 0;
    double rel_tol = 0.02;   // convergence error if stderr exceeds this
    double abs_tol = 1e-6;   // ... unless stderr is below this absolutely
};

// probability to find particle 1 in region A and particle 2 in region B;
// product densities use the closed form (per-axis Gaussian interval
// probabilities via erf), general densities use uniform-box Monte Carlo
GFactor g_factor(const TwoParticleDensity& rho, const Region& a,
                 const Region& b, const McParams& mc = {});

// sampling oracle: draw (r1, r2) from the product density and average the
// region indicators
struct GMcEstimate {
    double estimate;
    double stderror;
};
GMcEstimate g_factor_sample_mc(const GaussianPacket3& psi1,
                               const GaussianPacket3& psi2, const Region& a,
                               const Region& b, std::uint64_t n,
                               std::uint64_t seed);

// g along a scan of translations of A; distances must be increasing
std::vector<GFactor> g_decay_scan(const TwoParticleDensity& rho,
                                  const Region& a, const Region& b,
                                  const UnitVector3& direction,
                                  const std::vector<double>& distances);

// g(A, B) * singlet_correlation(a, b), the localized-measurement
// correlation for a product spin x space wave function
double local_correlation(const TwoParticleDensity& rho, const Region& a,
                         const Region& b, const UnitVector3& sa,
                         const UnitVector3& sb);

/// Factorized classical model for g cos(alpha - beta): indicator variables
/// on the two-particle position space (particle 1 conditioned outside the
/// ball of radius L) times a cosine process on the circle, all bounded by 1.
struct FactorizedModelResult {
    double estimate;     // product of the three factor means
    double stderror;     // propagated
    double expected;     // closed-form g(A, B) cos(alpha - beta)
    double epsilon;      // packet-1 mass outside the ball, computed
    bool bounds_ok;      // every sampled variable stayed within [-1, 1]
};

FactorizedModelResult factorized_lhv_model(const GaussianPacket3& psi1,
                                           const GaussianPacket3& psi2,
                                           const Region& a, const Region& b,
                                           double L, double alpha, double beta,
                                           std::uint64_t n, std::uint64_t seed);

}  // namespace bellfield
