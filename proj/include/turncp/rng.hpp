#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

#include "turncp/errors.hpp"

// Self-contained random number generation. Standard-library distributions are
// implementation-defined, which would break the bit-for-bit reproducibility
// contract of seeded simulations, so the samplers are spelled out here.
// Generator core is xoshiro256++ (Blackman & Vigna, public domain), seeded
// through SplitMix64.

namespace turncp::rng {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Counter-based stream derivation: replication r of an experiment with master
// seed s draws from derive_seed(s, r). Streams are independent for distinct
// indices, so parallel replications can run in any order.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t state = master ^ (0xD1B54A32D192ED03ULL * (index + 1));
    return splitmix64(state);
}

class Engine {
public:
    explicit Engine(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : state_) word = splitmix64(sm);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform on [0, 1), 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform on (0, 1]; safe as a log() argument.
    double uniform_pos() { return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53; }

    // Standard normal via Marsaglia's polar method; pairs are cached.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double factor = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * factor;
        has_spare_ = true;
        return u * factor;
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    double exponential() { return -std::log(uniform_pos()); }

    // Marsaglia–Tsang for alpha >= 1, boosted for alpha < 1.
    double gamma(double alpha) {
        if (!(alpha > 0.0)) throw ConfigError("gamma sampler requires alpha > 0");
        if (alpha < 1.0) {
            const double u = uniform_pos();
            return gamma(alpha + 1.0) * std::pow(u, 1.0 / alpha);
        }
        const double d = alpha - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = uniform_pos();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

    double chi_squared(double nu) { return 2.0 * gamma(0.5 * nu); }

    double student_t(double nu) {
        if (!(nu > 0.0)) throw ConfigError("student_t requires nu > 0");
        return normal() / std::sqrt(chi_squared(nu) / nu);
    }

    // Difference of exponentials keeps the density exactly symmetric.
    double laplace(double location, double scale) {
        return location + scale * (exponential() - exponential());
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t state_[4]{};
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace turncp::rng
