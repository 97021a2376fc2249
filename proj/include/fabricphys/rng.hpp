#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace fabricphys {

// Draw helpers on top of mt19937_64 that avoid std::*_distribution, whose
// output is implementation-defined. Everything downstream that promises
// byte-identical reruns goes through these.

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Deterministic sub-seed derivation, e.g. per tree, per fold, per stratum.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(seed ^ splitmix64(stream));
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    return derive_seed(derive_seed(seed, a), b);
}

/// Uniform in [0, 1) with 53-bit resolution.
inline double rng_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, n). n must be > 0.
inline std::size_t rng_index(std::mt19937_64& rng, std::size_t n) {
    // multiply-shift; bias is negligible for the n used here and the result
    // is identical on every platform
    return static_cast<std::size_t>((static_cast<unsigned __int128>(rng()) * n) >> 64);
}

inline double rng_uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * rng_unit(rng);
}

template <typename T>
void rng_shuffle(std::mt19937_64& rng, std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = rng_index(rng, i);
        std::swap(v[i - 1], v[j]);
    }
}

/// FNV-1a, used for stable vocabulary/model fingerprints.
struct Fnv1a {
    std::uint64_t state = 0xCBF29CE484222325ULL;

    void feed(const void* data, std::size_t len) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < len; ++i) {
            state ^= p[i];
            state *= 0x100000001B3ULL;
        }
    }
    void feed(const std::string& s) {
        feed(s.data(), s.size());
        feed("\x1f", 1); // separator so concatenations do not collide
    }
    std::uint64_t value() const { return state; }
};

std::string to_hex(std::uint64_t value);

} // namespace fabricphys
