#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

// Deterministic draw helpers over std::mt19937_64. std::shuffle and the
// standard distributions are not bit-stable across standard libraries, so
// anything that feeds file output is hand-rolled here.
namespace qgc::detail {

inline std::uint64_t bounded_u64(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit =
        (std::numeric_limits<std::uint64_t>::max() / bound) * bound;
    std::uint64_t r;
    do {
        r = rng();
    } while (r >= limit);
    return r % bound;
}

// Uniform double in [0, 1) with 53 random bits.
inline double unit_double(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

template <typename T>
void fisher_yates(std::vector<T>& v, std::mt19937_64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::swap(v[i - 1], v[bounded_u64(rng, i)]);
    }
}

}  // namespace qgc::detail
