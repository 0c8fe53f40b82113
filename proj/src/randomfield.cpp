#include "bellfield/randomfield.hpp"

#include <fftw3.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bellfield/quadrature.hpp"
#include "bellfield/rng.hpp"

namespace bellfield {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// signed mode index: 0..n/2, then negative frequencies
int fold(int i, int n) { return i <= n / 2 ? i : i - n; }

double mode_weight(const LatticeSpec& spec, int i, int j, int k) {
    const double dk = kTwoPi / spec.box_length();
    const double qx = dk * fold(i, spec.n);
    const double qy = dk * fold(j, spec.n);
    const double qz = dk * fold(k, spec.n);
    const double omega =
        std::sqrt(qx * qx + qy * qy + qz * qz + spec.mass * spec.mass);
    if (omega == 0.0) return 0.0;  // massless zero mode dropped
    // sqrt(dk^3 / ((2 pi)^3 2 omega)) with dk = 2 pi / (n a)
    return std::sqrt(1.0 / (std::pow(spec.box_length(), 3) * 2.0 * omega));
}

}  // namespace

LatticeSpec::LatticeSpec(int n_, double spacing_, double mass_)
    : n(n_), spacing(spacing_), mass(mass_) {
    if (!is_power_of_two(n) || n < 8)
        throw std::domain_error("LatticeSpec: n must be a power of two >= 8");
    if (!(spacing > 0.0))
        throw std::domain_error("LatticeSpec: spacing must be > 0");
    if (!(mass >= 0.0)) throw std::domain_error("LatticeSpec: mass must be >= 0");
}

double LatticeSpec::cutoff() const { return std::numbers::pi / spacing; }

struct FieldSampler::Impl {
    LatticeSpec spec;
    std::vector<double> weights;
    fftw_complex* buf = nullptr;
    fftw_plan plan{};

    explicit Impl(const LatticeSpec& s) : spec(s) {
        const int n = spec.n;
        weights.resize(spec.points());
        std::size_t idx = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    weights[idx++] = mode_weight(spec, i, j, k);
        buf = fftw_alloc_complex(spec.points());
        plan = fftw_plan_dft_3d(n, n, n, buf, buf, FFTW_BACKWARD,
                                FFTW_ESTIMATE);
        if (!plan) throw std::runtime_error("FieldSampler: FFT plan failed");
    }

    ~Impl() {
        fftw_destroy_plan(plan);
        fftw_free(buf);
    }
};

FieldSampler::FieldSampler(const LatticeSpec& spec)
    : impl_(std::make_unique<Impl>(spec)) {}

FieldSampler::~FieldSampler() = default;

LatticeField FieldSampler::sample(std::uint64_t seed, std::uint64_t stream) {
    CounterRng rng(seed, stream);
    const std::size_t count = impl_->weights.size();
    for (std::size_t idx = 0; idx < count; ++idx) {
        const cplx z = rng.complex_normal() * impl_->weights[idx];
        impl_->buf[idx][0] = z.real();
        impl_->buf[idx][1] = z.imag();
    }
    fftw_execute(impl_->plan);
    LatticeField field{std::vector<cplx>(count), impl_->spec, seed, stream};
    for (std::size_t idx = 0; idx < count; ++idx)
        field.values[idx] = {impl_->buf[idx][0], impl_->buf[idx][1]};
    return field;
}

LatticeField sample_field(const LatticeSpec& spec, std::uint64_t seed,
                          std::uint64_t stream) {
    FieldSampler sampler(spec);
    return sampler.sample(seed, stream);
}

double lattice_covariance(const LatticeSpec& spec,
                          const std::array<int, 3>& lag) {
    const int n = spec.n;
    double sum = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const double w = mode_weight(spec, i, j, k);
                const double phase =
                    kTwoPi *
                    (static_cast<double>(fold(i, n)) * lag[0] +
                     static_cast<double>(fold(j, n)) * lag[1] +
                     static_cast<double>(fold(k, n)) * lag[2]) /
                    n;
                sum += w * w * std::cos(phase);
            }
    return sum;
}

double covariance_cutoff(double cutoff, double mass, double r) {
    if (!(cutoff > 0.0))
        throw std::domain_error("covariance_cutoff: cutoff must be > 0");
    if (!(r >= 0.0)) throw std::domain_error("covariance_cutoff: r must be >= 0");
    auto integrand = [&](double k) {
        const double omega = std::sqrt(k * k + mass * mass);
        if (omega == 0.0) return 0.0;
        const double kr = k * r;
        const double sinc = kr < 1e-8 ? 1.0 - kr * kr / 6.0 : std::sin(kr) / kr;
        return k * k / omega * sinc;
    };
    const int panels =
        std::max(16, static_cast<int>(cutoff * r / std::numbers::pi) + 8);
    const double integral = integrate_gl_panels(integrand, 0.0, cutoff, panels, 24);
    return integral / (4.0 * std::numbers::pi * std::numbers::pi);
}

namespace {

struct ComplexAccumulator {
    std::uint64_t n = 0;
    cplx sum = 0.0;
    double sum_sq = 0.0;  // sum of |z|^2

    void add(const cplx& z) {
        ++n;
        sum += z;
        sum_sq += std::norm(z);
    }

    MomentEstimate finish() const {
        const cplx mean = sum / static_cast<double>(n);
        double var = 0.0;
        if (n > 1)
            var = (sum_sq - static_cast<double>(n) * std::norm(mean)) /
                  static_cast<double>(n - 1);
        return {mean, std::sqrt(std::max(var, 0.0) / static_cast<double>(n)), n};
    }
};

}  // namespace

std::vector<MomentEstimate> empirical_moments(
    const LatticeSpec& spec, std::uint64_t master_seed, std::uint64_t ensemble,
    const std::vector<MomentSpec>& moments) {
    for (const auto& m : moments)
        if (m.plain.size() + m.conjugated.size() == 0 ||
            m.plain.size() > 8 || m.conjugated.size() > 8)
            throw std::invalid_argument("empirical_moments: bad moment spec");
    FieldSampler sampler(spec);
    std::vector<ComplexAccumulator> acc(moments.size());
    for (std::uint64_t e = 0; e < ensemble; ++e) {
        const LatticeField field = sampler.sample(master_seed, e);
        for (std::size_t m = 0; m < moments.size(); ++m) {
            cplx prod = 1.0;
            for (const auto& p : moments[m].plain) prod *= field.at(p);
            for (const auto& p : moments[m].conjugated)
                prod *= std::conj(field.at(p));
            acc[m].add(prod);
        }
    }
    std::vector<MomentEstimate> out;
    out.reserve(acc.size());
    for (const auto& a : acc) out.push_back(a.finish());
    return out;
}

cplx permanent(const std::vector<std::vector<cplx>>& matrix) {
    const std::size_t n = matrix.size();
    if (n == 0) return 1.0;
    if (n > 8) throw std::length_error("permanent: matrix larger than 8x8");
    for (const auto& row : matrix)
        if (row.size() != n)
            throw std::invalid_argument("permanent: matrix must be square");

    // Ryser: perm = (-1)^n sum_{S != empty} (-1)^|S| prod_i sum_{j in S} M_ij
    std::vector<cplx> row_sums(n, 0.0);
    cplx total = 0.0;
    std::uint32_t prev_gray = 0;
    const std::uint32_t limit = 1u << n;
    int popcount = 0;
    for (std::uint32_t s = 1; s < limit; ++s) {
        const std::uint32_t gray = s ^ (s >> 1);
        const std::uint32_t changed = gray ^ prev_gray;
        int bit = 0;
        while (!((changed >> bit) & 1u)) ++bit;
        const double sign_bit = (gray & changed) ? +1.0 : -1.0;
        popcount += (gray & changed) ? 1 : -1;
        for (std::size_t i = 0; i < n; ++i)
            row_sums[i] += sign_bit * matrix[i][bit];
        cplx prod = 1.0;
        for (std::size_t i = 0; i < n; ++i) prod *= row_sums[i];
        total += (popcount % 2 == 0 ? 1.0 : -1.0) * prod;
        prev_gray = gray;
    }
    const double outer = (n % 2 == 0) ? 1.0 : -1.0;
    return outer * total;
}

}  // namespace bellfield
