#pragma once

// SplitMix64 (Steele, Lea & Flood), the generator behind every seeded dataset.
// Constants are the published ones, so datasets are reproducible bit-exactly
// by any implementation:
//   state += 0x9E3779B97F4A7C15
//   z = state
//   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   return z ^ (z >> 31)

#include <cmath>
#include <cstdint>
#include <limits>

namespace bsort {

class SplitMix64 {
public:
    using result_type = std::uint64_t;

    constexpr explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    constexpr result_type operator()() noexcept {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform integer in [0, bound) by multiply-shift; bound 0 yields 0.
    constexpr std::uint64_t below(std::uint64_t bound) noexcept {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>((*this)()) * bound) >> 64);
    }

    /// Uniform double in [0, 1) from the top 53 bits.
    double unit() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Standard normal deviate, Box-Muller (cosine branch only).
    double gaussian() noexcept {
        const double u1 = 1.0 - unit();  // (0, 1]
        const double u2 = unit();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

private:
    std::uint64_t state_;
};

/// Fisher-Yates driven by `below`, so the permutation depends only on the seed
/// (std::shuffle's draws are library-specific).
template <class RandomIt>
void shuffle(RandomIt first, RandomIt last, SplitMix64& rng) {
    for (auto n = last - first; n > 1; --n) {
        using std::swap;
        swap(first[n - 1], first[static_cast<decltype(n)>(rng.below(static_cast<std::uint64_t>(n)))]);
    }
}

}  // namespace bsort
