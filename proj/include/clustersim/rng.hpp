#pragma once

#include <cstdint>
#include <limits>
#include <string_view>

namespace clustersim::rng {

// splitmix64 finalizer (Steele, Lea, Flood 2014). Used both as the
// generator step and as the mixing function for substream derivation.
inline constexpr std::uint64_t splitmix64_next(std::uint64_t& state) noexcept {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Counter-based stream: cheap to construct, so every (drop, purpose, index)
// tuple owns an independent generator and results do not depend on worker
// scheduling. Satisfies UniformRandomBitGenerator for <random> distributions.
class Stream {
public:
    using result_type = std::uint64_t;

    explicit constexpr Stream(std::uint64_t seed) noexcept : state_(seed) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept {
        return std::numeric_limits<std::uint64_t>::max();
    }

    constexpr result_type operator()() noexcept { return splitmix64_next(state_); }

    // uniform double in [0, 1) from the top 53 bits
    constexpr double uniform01() noexcept {
        return static_cast<double>(operator()() >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

inline constexpr std::uint64_t mix(std::uint64_t a, std::uint64_t b) noexcept {
    std::uint64_t s = a ^ (b + 0x9e3779b97f4a7c15ull + (a << 6) + (a >> 2));
    return splitmix64_next(s);
}

// Fold path components into a child seed: derive(seed, drop, purpose, index).
template <typename... Parts>
constexpr std::uint64_t derive(std::uint64_t seed, Parts... parts) noexcept {
    std::uint64_t k = seed;
    ((k = mix(k, static_cast<std::uint64_t>(parts))), ...);
    return k;
}

template <typename... Parts>
constexpr Stream substream(std::uint64_t seed, Parts... parts) noexcept {
    return Stream(derive(seed, parts...));
}

// FNV-1a, for hashing axis names and cell values into seed material.
inline constexpr std::uint64_t fnv1a(std::string_view s) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace clustersim::rng
