#pragma once

#include <array>
#include <cstdint>

#include "bellfield/geometry.hpp"

namespace bellfield {

struct UnitVector3 {
    Vec3 v;
    explicit UnitVector3(const Vec3& raw);  // normalizes; throws on ~zero input

    // coplanar convention: angle alpha in the x-y plane
    static UnitVector3 in_plane(double alpha);
};

/// Two-qubit state in the C^2 (x) C^2 product basis |00>,|01>,|10>,|11>.
struct SpinState {
    std::array<cplx, 4> amplitudes;
    static SpinState singlet();  // (|01> - |10>)/sqrt(2)
};

/// 2x2 table P_ij of correlations at two settings per side.
struct CorrelationMatrix {
    std::array<std::array<double, 2>, 2> p;
    CorrelationMatrix(double p11, double p12, double p21, double p22);
};

struct GFactor {
    double g;
    explicit GFactor(double g_);
};

// <singlet| sigma.a (x) sigma.b |singlet>, by explicit 4x4 matrix algebra;
// equals -a.b (the shortcut formula is the test oracle, not the path here)
double singlet_correlation(const UnitVector3& a, const UnitVector3& b);

// S = |P11 - P12| + |P21 + P22|
double chsh(const CorrelationMatrix& p);

// max of S over coplanar angle quadruples for the correlation
// g cos(alpha - beta); equals 2 sqrt(2) g
double chsh_max_quantum(const GFactor& g);

// g for which the maximal S crosses 2, found by bisection on
// chsh_max_quantum; equals 1/sqrt(2)
double chsh_threshold(double tol = 1e-9);

// whether sqrt(2g) <= 1, i.e. the explicit hidden-variable amplitudes stay
// within the unit bound
bool lhv_bounded(const GFactor& g);

// quadrature over the hidden phase of
//   (1/2pi) \int_0^{2pi} sqrt(2g) cos(alpha-l) sqrt(2g) cos(beta-l) dl,
// which equals g cos(alpha - beta)
double lhv_correlation_exact(const GFactor& g, double alpha, double beta);

struct McEstimate {
    double estimate;
    double stderror;
    std::uint64_t samples;
};

// Monte Carlo over the uniform hidden phase; requires g <= 1/2 and
// n >= 1000; aborts if a sampled amplitude ever leaves [-1, 1]
McEstimate lhv_monte_carlo(const GFactor& g, double alpha, double beta,
                           std::uint64_t n, std::uint64_t seed);

/// Classification of g cos(alpha-beta) by representability as a classical
/// expectation of bounded hidden variables.
enum class LhvRegime { representable, undetermined, no_representation };

LhvRegime lhv_regime(const GFactor& g);
const char* to_string(LhvRegime regime);

enum class RealismVerdict { pass, fail };

// CHSH <= 2 is necessary for a joint classical representation to exist;
// this only refutes, never certifies
RealismVerdict local_realism_necessary_test(const CorrelationMatrix& p);

}  // namespace bellfield
