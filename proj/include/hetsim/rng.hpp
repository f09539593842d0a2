#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string_view>

namespace hetsim {

// Deterministic random stream derived from a master seed and a label.
// Every subsystem draws from its own labeled stream, so adding a consumer
// never perturbs the draws seen by existing ones. Sampling is implemented
// on top of raw 64-bit outputs only (no std::*_distribution), which keeps
// the sequence identical across standard library implementations.
class RngStream {
public:
    RngStream() : engine_(0) {}

    RngStream(std::uint64_t master_seed, std::string_view label)
        : engine_(mix(master_seed, fnv1a64(label)))
    {
    }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1) with 53-bit resolution.
    double u01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * u01(); }

    // Uniform integer in [0, n).
    std::int64_t uniform_int(std::int64_t n)
    {
        if (n <= 0)
            throw std::invalid_argument("uniform_int: n must be positive");
        // Rejection to avoid modulo bias.
        const std::uint64_t un = static_cast<std::uint64_t>(n);
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % un;
        std::uint64_t v;
        do {
            v = engine_();
        } while (v >= limit);
        return static_cast<std::int64_t>(v % un);
    }

    // Standard normal via Box-Muller.
    double normal()
    {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do {
            u1 = u01();
        } while (u1 <= 0.0);
        const double u2 = u01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * M_PI * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    double lognormal(double mu, double sigma) { return std::exp(mu + sigma * normal()); }

    double exponential(double mean)
    {
        double u = 0.0;
        do {
            u = u01();
        } while (u <= 0.0);
        return -mean * std::log(u);
    }

    // Index sampled proportionally to non-negative weights (need not sum to 1).
    std::size_t categorical(std::span<const double> weights)
    {
        if (weights.empty())
            throw std::invalid_argument("categorical: empty weight vector");
        double total = 0.0;
        for (double w : weights)
            total += w;
        if (!(total > 0.0))
            throw std::invalid_argument("categorical: non-positive total weight");
        double u = u01() * total;
        for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
            u -= weights[i];
            if (u < 0.0)
                return i;
        }
        return weights.size() - 1;
    }

    static std::uint64_t fnv1a64(std::string_view s)
    {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
        return h;
    }

private:
    static std::uint64_t mix(std::uint64_t seed, std::uint64_t label_hash)
    {
        // splitmix64 finalizer over the combined value
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL + label_hash;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace hetsim
