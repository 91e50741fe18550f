#pragma once

#include <cmath>
#include <cstdint>

namespace opmac {

/// SplitMix64 finalizer. Used both as a sequential generator step and as a
/// counter-based hash so that channel gains and per-node decision draws are
/// random-access: any (seed, slot, node, ...) tuple maps to one variate
/// independently of evaluation order, which keeps parallel replications
/// bit-reproducible.
inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
    return splitmix64(a ^ (0x9e3779b97f4a7c15ULL + (b << 6) + (b >> 2)));
}

inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    return mix64(mix64(a, b), c);
}

inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b, std::uint64_t c,
                           std::uint64_t d) {
    return mix64(mix64(a, b, c), d);
}

/// Uniform double in (0,1]; never returns 0 so -log(u) is finite.
inline double u64_to_unit(std::uint64_t bits) {
    return (static_cast<double>(bits >> 11) + 1.0) * 0x1.0p-53;
}

inline double uniform01(std::uint64_t key) { return u64_to_unit(splitmix64(key)); }

/// Unit-mean exponential variate keyed by `key` (Rayleigh fading power gain).
inline double exponential1(std::uint64_t key) { return -std::log(uniform01(key)); }

/// Small sequential PRNG for sampling loops (deployment generation).
class SplitMix {
public:
    explicit SplitMix(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    double uniform() { return u64_to_unit(next()); }

    /// Poisson count by inversion in the log domain; stable for large means.
    long poisson(double mean) {
        if (mean <= 0.0) return 0;
        // Normal approximation cutoff: exact inversion needs exp(-mean) > 0.
        if (mean < 500.0) {
            const double lo = std::exp(-mean);
            long k = 0;
            double prod = uniform();
            while (prod > lo) {
                prod *= uniform();
                ++k;
            }
            return k;
        }
        // Split recursively: Poisson(a+b) = Poisson(a) + Poisson(b).
        long total = 0;
        double remaining = mean;
        while (remaining >= 500.0) {
            total += poisson(400.0);
            remaining -= 400.0;
        }
        return total + poisson(remaining);
    }

private:
    std::uint64_t state_;
};

} // namespace opmac
