#pragma once

#include <cstdint>
#include <vector>

#include "bellfield/fieldkernel.hpp"
#include "bellfield/geometry.hpp"

namespace bellfield {

/// Gaussian momentum-space wave packet on the mass shell,
///   u(k) = N exp(-|k - k0|^2 / (4 sigma^2)) exp(-i k . x0),
/// parameterizing one smeared hermitian field factor.
struct OnShellAmplitude {
    Vec3 position;       // x0
    Vec3 momentum;       // k0
    double width = 1.0;  // sigma, momentum-space; position spread is 1/(2 sigma)
    double norm = 1.0;   // N

    OnShellAmplitude translated(const Vec3& l) const {
        OnShellAmplitude out = *this;
        out.position = position + l;
        return out;
    }
};

// N fixed so that contraction(u, u, m) = 1
OnShellAmplitude normalized(OnShellAmplitude u, const Mass& m);

// Elementary pairing C(u, v) = \int d^3k/(2 omega) conj(u(k)) v(k),
// antilinear in u.  Evaluated by spherical-coordinate cubature with
// node counts adapted to the oscillation scale |x0_u - x0_v|.
cplx contraction(const OnShellAmplitude& u, const OnShellAmplitude& v,
                 const Mass& m);

/// Ordered product of smeared field factors.
class FieldMonomial {
  public:
    FieldMonomial() = default;
    explicit FieldMonomial(std::vector<OnShellAmplitude> factors)
        : factors_(std::move(factors)) {}

    const std::vector<OnShellAmplitude>& factors() const { return factors_; }
    std::size_t size() const { return factors_.size(); }

    FieldMonomial reversed() const;
    FieldMonomial concat(const FieldMonomial& other) const;

  private:
    std::vector<OnShellAmplitude> factors_;
};

FieldMonomial translate(const FieldMonomial& mono, const Vec3& l);

// Desk-scale cap on monomial length; (2n-1)!! pairing growth.
std::size_t wick_max_factors();
void set_wick_max_factors(std::size_t n);

// Wick sum over all perfect matchings; pairings_visited (optional)
// receives the number of matchings enumerated.  Odd length gives 0.
cplx vacuum_expectation(const FieldMonomial& mono, const Mass& m,
                        std::uint64_t* pairings_visited = nullptr);

/// |psi> = C|0> for a monomial creator C; omega(A) = <psi|A|psi>/||psi||^2.
struct PolynomialState {
    FieldMonomial creator;  // empty creator = vacuum state
};

double state_norm2(const PolynomialState& state, const Mass& m);

cplx state_expectation(const PolynomialState& state, const FieldMonomial& a,
                       const Mass& m);

// |omega(A(l) B) - omega(A(l)) omega(B)|
double correlation_gap(const PolynomialState& state, const FieldMonomial& a,
                       const FieldMonomial& b, const Vec3& l, const Mass& m);

}  // namespace bellfield
