#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "bellfield/geometry.hpp"

namespace bellfield {

/// Periodic cubic lattice with momentum cutoff pi / spacing.
struct LatticeSpec {
    int n = 16;            // points per axis, power of two, >= 8
    double spacing = 0.5;  // lattice constant
    double mass = 1.0;

    LatticeSpec(int n_, double spacing_, double mass_);
    int points() const { return n * n * n; }
    double cutoff() const;
    double box_length() const { return n * spacing; }
};

struct LatticePoint {
    int i = 0, j = 0, k = 0;
};

/// One realization of the complex Gaussian field on the lattice.
struct LatticeField {
    std::vector<cplx> values;  // row-major over (i, j, k)
    LatticeSpec spec;
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;

    const cplx& at(const LatticePoint& p) const {
        return values[(static_cast<std::size_t>(p.i) * spec.n + p.j) * spec.n +
                      p.k];
    }
};

// Reusable sampler: one complex Gaussian weight per lattice momentum mode,
// scaled by sqrt(dk^3 / ((2 pi)^3 2 omega)), inverse DFT to position space.
// Holds the FFT plan across ensemble members.
class FieldSampler {
  public:
    explicit FieldSampler(const LatticeSpec& spec);
    ~FieldSampler();
    FieldSampler(const FieldSampler&) = delete;
    FieldSampler& operator=(const FieldSampler&) = delete;

    LatticeField sample(std::uint64_t seed, std::uint64_t stream = 0);

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

LatticeField sample_field(const LatticeSpec& spec, std::uint64_t seed,
                          std::uint64_t stream = 0);

// exact lattice covariance E xi(x) conj(xi(y)) at the given lag, by direct
// sum over momentum modes; real by +-q symmetry of the weights
double lattice_covariance(const LatticeSpec& spec,
                          const std::array<int, 3>& lag);

// continuum cutoff kernel (1/(4 pi^2)) \int_0^cutoff k^2/omega sinc(k r) dk;
// tends to the equal-time two-point function as the cutoff grows, for r > 0
double covariance_cutoff(double cutoff, double mass, double r);

// E prod xi(x_i) prod conj(xi(y_j)); plain and conjugated point lists
struct MomentSpec {
    std::vector<LatticePoint> plain;
    std::vector<LatticePoint> conjugated;
};

struct MomentEstimate {
    cplx mean;
    double stderror;  // scalar standard error of the complex mean
    std::uint64_t ensemble;
};

// single streaming pass over the ensemble for all requested moments
std::vector<MomentEstimate> empirical_moments(
    const LatticeSpec& spec, std::uint64_t master_seed, std::uint64_t ensemble,
    const std::vector<MomentSpec>& moments);

// exact permanent by Ryser inclusion-exclusion with Gray-code row sums,
// O(2^n n); n <= 8
cplx permanent(const std::vector<std::vector<cplx>>& matrix);

}  // namespace bellfield
