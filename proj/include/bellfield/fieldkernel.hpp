#pragma once

#include "bellfield/geometry.hpp"

namespace bellfield {

/// Particle mass in natural units (hbar = c = 1).
struct Mass {
    double value;
    explicit Mass(double m);
};

/// Invariant spatial distance sqrt(-x^2) of a spacelike separation,
/// reduced to the equal-time chart.  Evaluations closer than 1e-6 to the
/// lightcone/coincidence singularity are rejected.
struct SpacelikeInterval {
    double r;
    explicit SpacelikeInterval(double r);

    // general (t, dx) separation, mapped to r_eff = sqrt(|dx|^2 - t^2);
    // throws if the separation is not spacelike
    static SpacelikeInterval from_separation(double t, const Vec3& dx);
};

enum class WightmanMethod { closed_form, quadrature, asymptotic };

struct WightmanValue {
    double value;
    WightmanMethod method;
};

/// Modified Bessel function of the second kind, order one.
/// Relative error <= 1e-10 for x > 0; domain error otherwise.
double bessel_k1(double x);

// Equal-time vacuum two-point function of the free scalar field:
//   m > 0:  m K1(m r) / (4 pi^2 r)
//   m = 0:  1 / (4 pi^2 r^2)
WightmanValue wightman_closed(const SpacelikeInterval& r, const Mass& m);

// Direct evaluation of the defining momentum integral
//   (1/(4 pi^2 r)) \int_0^cutoff k sin(k r) / sqrt(k^2 + m^2) dk
// with the conditionally convergent tail resummed by half-period
// decomposition and Wynn epsilon acceleration.  Serves as the oracle for
// wightman_closed.  Throws on convergence failure against tol.
WightmanValue wightman_quadrature(const SpacelikeInterval& r, const Mass& m,
                                  double cutoff = 0.0, double tol = 1e-6);

// Large-separation form (m^2 / (4 pi lambda)) sqrt(pi / (2 lambda))
// e^{-lambda} with lambda = m r.  The prefactor normalization differs
// from the Bessel asymptotic of the closed form by a constant; see
// asymptotic_ratio for the measured value.
WightmanValue wightman_asymptotic(const SpacelikeInterval& r, const Mass& m);

// closed / asymptotic; tends to a constant for large lambda
double asymptotic_ratio(const SpacelikeInterval& r, const Mass& m);

}  // namespace bellfield
