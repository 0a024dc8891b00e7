#ifndef PUPIL_RNG_HPP
#define PUPIL_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace pupil {

// Reproducibility contract: every random draw in the library goes through
// this wrapper. The engine is std::mt19937 (bit-exact by the standard) and
// all distribution mappings are spelled out here instead of relying on
// std::*_distribution, whose algorithms are implementation-defined.
class Rng {
public:
    explicit Rng(std::uint32_t seed) : gen_(seed) {}

    /// Uniform in [0, 1): one 32-bit draw scaled by 2^-32.
    double unit() {
        return gen_() * (1.0 / 4294967296.0);
    }

    double uniform(double a, double b) {
        return a + (b - a) * unit();
    }

    /// Uniform integer in [a, b] inclusive. Floor-scaling; the modulo-style
    /// bias is below 2^-32 per value for the small ranges used here.
    int uniform_int(int a, int b) {
        auto span = static_cast<std::uint64_t>(b - a) + 1;
        auto draw = static_cast<std::uint64_t>(gen_()) * span >> 32;
        return a + static_cast<int>(draw);
    }

    /// Standard normal via Box-Muller (cosine branch only).
    double gaussian() {
        double u1 = 1.0 - unit();  // (0, 1], keeps the log finite
        double u2 = unit();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
    }

private:
    std::mt19937 gen_;
};

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Stable per-item seed derived from a global seed and an item id, so work
/// can be distributed across threads without losing reproducibility.
inline std::uint32_t derive_seed(std::uint64_t base, std::string_view id) {
    std::uint64_t mixed = splitmix64(base) ^ fnv1a64(id);
    return static_cast<std::uint32_t>(mixed ^ (mixed >> 32));
}

}  // namespace pupil

#endif
