#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace satshare {

// Deterministic, platform-independent random toolkit. Every Monte Carlo
// trial derives its own generator from (seed, stream, trial), so estimates
// do not depend on thread count or evaluation order.

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

struct SplitMix64 {
    std::uint64_t state;
    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ull;
        return mix64(state);
    }
};

class Xoshiro256pp {
public:
    explicit Xoshiro256pp(std::uint64_t seed) {
        SplitMix64 sm{seed};
        for (auto& w : s_) w = sm.next();
    }

    std::uint64_t next() {
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

    // Uniform in [0,1).
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    double exponential() { return -std::log1p(-uniform01()); }

    // Unit-mean Gamma(m, 1/m): sum of m exponentials, exact for integer m.
    double gamma_unit_mean(int m) {
        double acc = 0.0;
        for (int i = 0; i < m; ++i) acc += exponential();
        return acc / static_cast<double>(m);
    }

    long poisson(double mean) {
        if (mean < 0.0) throw std::invalid_argument("poisson: mean must be >= 0");
        if (mean == 0.0) return 0;
        return mean < 10.0 ? poisson_inversion(mean) : poisson_ptrd(mean);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    long poisson_inversion(double mean) {
        double p = std::exp(-mean);
        double cdf = p;
        const double u = uniform01();
        long k = 0;
        while (u > cdf) {
            ++k;
            p *= mean / static_cast<double>(k);
            cdf += p;
            if (k > 10.0 * mean + 100.0) break; // cdf saturated in fp
        }
        return k;
    }

    // Hoermann's PTRD transformed-rejection sampler; exact for mean >= 10.
    long poisson_ptrd(double mean) {
        static constexpr double log_fact[10] = {
            0.0, 0.0, 0.6931471805599453, 1.791759469228055, 3.1780538303479458,
            4.787491742782046, 6.579251212010101, 8.525161361065415,
            10.60460290274525, 12.801827480081469};
        constexpr double log_sqrt_2pi = 0.9189385332046727;

        const double smu = std::sqrt(mean);
        const double b = 0.931 + 2.53 * smu;
        const double a = -0.059 + 0.02483 * b;
        const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
        const double vr = 0.9277 - 3.6224 / (b - 2.0);

        for (;;) {
            double v = uniform01();
            double u;
            if (v <= 0.86 * vr) {
                u = v / vr - 0.43;
                return static_cast<long>(
                    std::floor((2.0 * a / (0.5 - std::fabs(u)) + b) * u + mean + 0.445));
            }
            if (v >= vr) {
                u = uniform01() - 0.5;
            } else {
                u = v / vr - 0.93;
                u = (u < 0.0 ? -0.5 : 0.5) - u;
                v = uniform01() * vr;
            }
            const double us = 0.5 - std::fabs(u);
            if (us < 0.013 && v > us) continue;
            const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.445);
            v = v * inv_alpha / (a / (us * us) + b);
            if (kf >= 10.0) {
                const double k = kf;
                const double lhs = std::log(v * smu);
                const double rhs = (k + 0.5) * std::log(mean / k) - mean - log_sqrt_2pi +
                                   k - (1.0 / 12.0 - 1.0 / (360.0 * k * k)) / k;
                if (lhs <= rhs) return static_cast<long>(kf);
            } else if (kf >= 0.0) {
                const int k = static_cast<int>(kf);
                if (std::log(v) <= k * std::log(mean) - mean - log_fact[k])
                    return static_cast<long>(kf);
            }
        }
    }

    std::uint64_t s_[4];
};

// Per-trial generator keyed on (seed, stream, trial).
inline Xoshiro256pp make_trial_rng(std::uint64_t seed, std::uint64_t stream,
                                   std::uint64_t trial) {
    std::uint64_t key = mix64(seed + 0x9E3779B97F4A7C15ull * (stream + 1));
    key = mix64(key + 0x9E3779B97F4A7C15ull * (trial + 1));
    return Xoshiro256pp(key);
}

} // namespace satshare
