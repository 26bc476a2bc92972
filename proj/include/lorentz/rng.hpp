#pragma once

#include <cmath>
#include <cstdint>

namespace lorentz {

/// SplitMix64 mixer. Used for seeding and for counter-based substream
/// derivation; the constant is the 64-bit golden ratio.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Stable substream derivation: stream(i) = mix(master, i). Documented
/// contract: adding samples never perturbs earlier samples, and the same
/// (master, index, tag) always yields the same stream on every platform.
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index,
                                    std::uint64_t tag = 0) {
    std::uint64_t s = master ^ (0xD1B54A32D192ED03ULL * (tag + 1));
    std::uint64_t a = splitmix64(s);
    s = a ^ (0x9E3779B97F4A7C15ULL * (index + 1));
    return splitmix64(s);
}

/// xoshiro256++ with self-contained distributions. std:: distributions are
/// not bit-stable across standard libraries; everything here is, so records
/// are reproducible from (seed, index) alone.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64(sm);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform on [0,1) with 53-bit resolution.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    bool bernoulli(double p) { return uniform01() < p; }

    /// Fair +1/-1.
    int sign() { return (next_u64() & 1ULL) ? 1 : -1; }

    /// Standard normal via Marsaglia polar; the spare is cached.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform01() - 1.0;
            v = 2.0 * uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        have_spare_ = true;
        return u * f;
    }

    /// Poisson by inversion; intended for the small means that arise from
    /// per-cell local-time increments (mean below ~30).
    int poisson(double mean) {
        if (mean <= 0.0) return 0;
        const double u = uniform01();
        double p = std::exp(-mean), cdf = p;
        int k = 0;
        while (u > cdf && k < 1024) {
            ++k;
            p *= mean / k;
            cdf += p;
        }
        return k;
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t s_[4];
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace lorentz
