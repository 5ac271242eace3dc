#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace mubtomo {

/// Seedable random stream. A stream is addressed by (seed, stream_id); the
/// same pair always reproduces the same sequence, and distinct stream ids
/// derived from one master seed give independent streams. All distributions
/// are implemented on top of the raw engine output so sequences are identical
/// across platforms and standard-library versions.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0)
        : seed_(seed), stream_id_(stream_id), engine_(mix(seed, stream_id)) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller; the paired deviate is cached.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        if (u1 < 0x1.0p-60) {
            u1 = 0x1.0p-60;
        }
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    std::complex<double> complex_gaussian() {
        const double re = gaussian();
        const double im = gaussian();
        return {re, im};
    }

    bool bernoulli(double p) { return uniform() < p; }

    /// Exact binomial draw by counting Bernoulli successes. O(n), which is
    /// fine for the count ranges this simulator uses (n <= ~10^6).
    std::int64_t binomial(std::int64_t n, double p) {
        if (n <= 0) {
            return 0;
        }
        if (p <= 0.0) {
            return 0;
        }
        if (p >= 1.0) {
            return n;
        }
        std::int64_t k = 0;
        for (std::int64_t i = 0; i < n; ++i) {
            k += uniform() < p ? 1 : 0;
        }
        return k;
    }

    /// Exact Poisson draw by summing exponential inter-arrival times; stable
    /// for large means (no underflow), O(mean).
    std::int64_t poisson(double mean) {
        if (mean <= 0.0) {
            return 0;
        }
        double t = 0.0;
        std::int64_t k = -1;
        while (t < mean) {
            double u = uniform();
            if (u < 0x1.0p-60) {
                u = 0x1.0p-60;
            }
            t += -std::log(u);
            ++k;
        }
        return k < 0 ? 0 : k;
    }

private:
    static std::uint64_t splitmix64(std::uint64_t& state) {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream_id) {
        std::uint64_t s = seed ^ (0xD1B54A32D192ED03ULL * (stream_id + 1));
        std::uint64_t z = splitmix64(s);
        z ^= splitmix64(s);
        return z;
    }

    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace mubtomo
