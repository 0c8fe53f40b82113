#pragma once

#include <complex>
#include <cstdint>
#include <numbers>

namespace bellfield {

// Counter-based generator: every draw is a pure function of
// (seed, stream, counter), so runs are bit-reproducible and sample
// ranges can be partitioned across tasks by stream index.
class CounterRng {
  public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
        : seed_(seed), stream_(stream) {}

    std::uint64_t next_word() {
        std::uint64_t x = seed_ + 0x9e3779b97f4a7c15ull * stream_;
        x = mix(x) ^ mix(counter_++ * 0xda942042e4dd58b5ull + stream_);
        return mix(x);
    }

    // uniform in [0, 1)
    double uniform() {
        return static_cast<double>(next_word() >> 11) * 0x1.0p-53;
    }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    // standard normal via Box-Muller; two words per draw, no cached spare
    double normal() {
        const double u1 =
            (static_cast<double>(next_word() >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    }

    // circularly symmetric, E z conj(z) = 1, E z z = 0
    std::complex<double> complex_normal() {
        const double u1 =
            (static_cast<double>(next_word() >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = uniform();
        const double r = std::sqrt(-std::log(u1));
        const double phi = 2.0 * std::numbers::pi * u2;
        return {r * std::cos(phi), r * std::sin(phi)};
    }

    std::uint64_t counter() const { return counter_; }

  private:
    static std::uint64_t mix(std::uint64_t x) {
        x ^= x >> 33;
        x *= 0xff51afd7ed558ccdull;
        x ^= x >> 33;
        x *= 0xc4ceb9fe1a85ec53ull;
        x ^= x >> 33;
        return x;
    }

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
};

// Running mean / standard error accumulator for Monte Carlo estimates.
class MeanAccumulator {
  public:
    void add(double x) {
        ++n_;
        const double d = x - mean_;
        mean_ += d / static_cast<double>(n_);
        m2_ += d * (x - mean_);
    }

    std::uint64_t count() const { return n_; }
    double mean() const { return mean_; }

    double variance() const {
        return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0;
    }

    double stderror() const {
        return n_ > 1 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0;
    }

  private:
    std::uint64_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

}  // namespace bellfield
