#include "bellfield/spinbell.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bellfield/rng.hpp"

namespace bellfield {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

using Mat2 = std::array<std::array<cplx, 2>, 2>;
using Mat4 = std::array<std::array<cplx, 4>, 4>;

Mat2 sigma_dot(const Vec3& a) {
    const cplx i{0.0, 1.0};
    // a1 sigma_x + a2 sigma_y + a3 sigma_z
    return {{{cplx(a.z, 0.0), cplx(a.x, 0.0) - i * a.y},
             {cplx(a.x, 0.0) + i * a.y, cplx(-a.z, 0.0)}}};
}

Mat4 kron(const Mat2& a, const Mat2& b) {
    Mat4 out{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    out[2 * i + k][2 * j + l] = a[i][j] * b[k][l];
    return out;
}

double chsh_objective(double g, double alpha, double alpha2, double beta,
                      double beta2) {
    return std::abs(g * std::cos(alpha - beta) - g * std::cos(alpha - beta2)) +
           std::abs(g * std::cos(alpha2 - beta) + g * std::cos(alpha2 - beta2));
}

}  // namespace

UnitVector3::UnitVector3(const Vec3& raw) : v(raw) {
    const double n = norm(raw);
    if (!(n > 1e-12))
        throw std::domain_error("UnitVector3: zero-length direction");
    v = raw * (1.0 / n);
}

UnitVector3 UnitVector3::in_plane(double alpha) {
    return UnitVector3({std::cos(alpha), std::sin(alpha), 0.0});
}

SpinState SpinState::singlet() {
    const double s = 1.0 / std::sqrt(2.0);
    return {{cplx(0.0), cplx(s), cplx(-s), cplx(0.0)}};
}

CorrelationMatrix::CorrelationMatrix(double p11, double p12, double p21,
                                     double p22)
    : p{{{p11, p12}, {p21, p22}}} {
    for (const auto& row : p)
        for (double e : row)
            if (!(std::abs(e) <= 1.0 + 1e-12))
                throw std::domain_error(
                    "CorrelationMatrix: entries must lie in [-1, 1]");
}

GFactor::GFactor(double g_) : g(g_) {
    if (!(g_ >= 0.0 && g_ <= 1.0))
        throw std::domain_error("GFactor: g must lie in [0, 1]");
}

double singlet_correlation(const UnitVector3& a, const UnitVector3& b) {
    const Mat4 op = kron(sigma_dot(a.v), sigma_dot(b.v));
    const SpinState psi = SpinState::singlet();
    cplx acc = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            acc += std::conj(psi.amplitudes[i]) * op[i][j] * psi.amplitudes[j];
    return acc.real();
}

double chsh(const CorrelationMatrix& p) {
    return std::abs(p.p[0][0] - p.p[0][1]) + std::abs(p.p[1][0] + p.p[1][1]);
}

double chsh_max_quantum(const GFactor& gf) {
    const double g = gf.g;
    if (g == 0.0) return 0.0;

    // overall angle shift is a symmetry: fix alpha = 0 for the coarse scan
    const int n = 64;
    double best = 0.0;
    double ba2 = 0.0, bb = 0.0, bb2 = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const double a2 = kTwoPi * i / n, b = kTwoPi * j / n,
                             b2 = kTwoPi * k / n;
                const double s = chsh_objective(g, 0.0, a2, b, b2);
                if (s > best) {
                    best = s;
                    ba2 = a2;
                    bb = b;
                    bb2 = b2;
                }
            }

    // pattern-search refinement over all four angles
    double x[4] = {0.0, ba2, bb, bb2};
    double h = kTwoPi / n;
    while (h > 1e-9) {
        bool improved = false;
        for (int c = 0; c < 4; ++c) {
            for (double sgn : {+1.0, -1.0}) {
                double trial[4] = {x[0], x[1], x[2], x[3]};
                trial[c] += sgn * h;
                const double s =
                    chsh_objective(g, trial[0], trial[1], trial[2], trial[3]);
                if (s > best) {
                    best = s;
                    x[c] = trial[c];
                    improved = true;
                }
            }
        }
        if (!improved) h *= 0.5;
    }
    return best;
}

double chsh_threshold(double tol) {
    double lo = 0.0, hi = 1.0;  // S(0) = 0 < 2, S(1) = 2 sqrt(2) > 2
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (chsh_max_quantum(GFactor(mid)) > 2.0 ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

bool lhv_bounded(const GFactor& g) { return std::sqrt(2.0 * g.g) <= 1.0; }

double lhv_correlation_exact(const GFactor& gf, double alpha, double beta) {
    const double amp = std::sqrt(2.0 * gf.g);
    const int n = 256;  // trapezoid is exact for trigonometric polynomials
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double lam = kTwoPi * i / n;
        sum += amp * std::cos(alpha - lam) * amp * std::cos(beta - lam);
    }
    return sum / n;
}

McEstimate lhv_monte_carlo(const GFactor& gf, double alpha, double beta,
                           std::uint64_t n, std::uint64_t seed) {
    if (!(gf.g <= 0.5 + 1e-12))
        throw std::domain_error("lhv_monte_carlo: requires g <= 1/2");
    if (n < 1000)
        throw std::domain_error("lhv_monte_carlo: requires n >= 1000");
    const double amp = std::sqrt(2.0 * gf.g);
    CounterRng rng(seed);
    MeanAccumulator acc;
    for (std::uint64_t i = 0; i < n; ++i) {
        const double lam = rng.uniform(0.0, kTwoPi);
        const double xi = amp * std::cos(alpha - lam);
        const double eta = amp * std::cos(beta - lam);
        if (std::abs(xi) > 1.0 + 1e-12 || std::abs(eta) > 1.0 + 1e-12)
            throw std::logic_error(
                "lhv_monte_carlo: sampled amplitude left the unit bound");
        acc.add(xi * eta);
    }
    return {acc.mean(), acc.stderror(), n};
}

LhvRegime lhv_regime(const GFactor& gf) {
    if (gf.g <= 0.5) return LhvRegime::representable;
    if (gf.g > 1.0 / std::sqrt(2.0)) return LhvRegime::no_representation;
    return LhvRegime::undetermined;
}

const char* to_string(LhvRegime regime) {
    switch (regime) {
        case LhvRegime::representable: return "representable";
        case LhvRegime::undetermined: return "undetermined";
        case LhvRegime::no_representation: return "no_representation";
    }
    return "?";
}

RealismVerdict local_realism_necessary_test(const CorrelationMatrix& p) {
    return chsh(p) > 2.0 + 1e-9 ? RealismVerdict::fail : RealismVerdict::pass;
}

}  // namespace bellfield
