#ifndef NWGAME_RANDOM_HPP
#define NWGAME_RANDOM_HPP

// Seeded randomness with a fixed, platform-independent output sequence.
// std::mt19937_64 is fully specified by the standard; the distributions in
// <random> are not, so bounded draws and shuffles are done here.

#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

namespace nwg {

/// SplitMix64 finalizer. Used as a stateless 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Derives a per-stage seed from a master seed and a label (FNV-1a then mix).
constexpr std::uint64_t derive_seed(std::uint64_t master, std::string_view label) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char ch : label) {
        h ^= static_cast<unsigned char>(ch);
        h *= 0x100000001b3ULL;
    }
    return mix64(master ^ mix64(h));
}

using Engine = std::mt19937_64;

/// Uniform draw from [0, bound) by rejection; bound > 0.
inline std::uint64_t uniform_below(Engine& rng, std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
    std::uint64_t x = rng();
    while (x >= limit) x = rng();
    return x % bound;
}

template <typename T>
void shuffle(std::vector<T>& items, Engine& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(uniform_below(rng, i));
        std::swap(items[i - 1], items[j]);
    }
}

}  // namespace nwg

#endif  // NWGAME_RANDOM_HPP
