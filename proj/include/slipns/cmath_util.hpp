#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <cstring>
#include <vector>

namespace slipns {

using Complex = std::complex<double>;

// exp(w) - 1 for complex w, accurate near w = 0.
inline Complex cexpm1(Complex w) {
    if (std::abs(w) > 0.5) return std::exp(w) - 1.0;
    Complex term = w, sum = w;
    for (int k = 2; k <= 18; ++k) {
        term *= w / static_cast<double>(k);
        sum += term;
    }
    return sum;
}

// (1 - exp(-w)) / w, the removable-singularity quotient; equals 1 at w = 0.
inline Complex em1_ratio(Complex w) {
    if (std::abs(w) < 1e-14) return Complex(1.0, 0.0);
    return -cexpm1(-w) / w;
}

// FNV-1a over raw bytes; used for config/grid/contour provenance keys.
inline std::uint64_t fnv1a(const void* data, std::size_t n, std::uint64_t seed = 1469598103934665603ull) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = seed;
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    return h;
}

inline std::uint64_t fnv1a(const std::vector<double>& v, std::uint64_t seed = 1469598103934665603ull) {
    return v.empty() ? seed : fnv1a(v.data(), v.size() * sizeof(double), seed);
}

inline std::uint64_t fnv1a(double x, std::uint64_t seed) { return fnv1a(&x, sizeof(double), seed); }

// Deterministic RNG built on xoshiro-style splitmix64 so streams are
// identical across platforms (std distributions are not portable).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    double uniform() {  // in [0, 1)
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    double normal() {  // Box-Muller, deterministic
        double u1 = uniform(), u2 = uniform();
        while (u1 <= 1e-300) u1 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

  private:
    std::uint64_t state_;
};

}  // namespace slipns
