#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace tvtest {

/// splitmix64 finalizer. Bijective on 64-bit words, good avalanche.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Counter-mode stream derivation: fold an ordered key sequence into one
/// stream seed. Work items keyed by (replication index, draw index, ...)
/// get statistically independent streams without any shared RNG state,
/// so results do not depend on scheduling or thread count.
inline std::uint64_t derive_seed(std::uint64_t root,
                                 std::initializer_list<std::uint64_t> keys) noexcept {
    std::uint64_t s = mix64(root);
    for (std::uint64_t k : keys) {
        s = mix64(s ^ mix64(k));
    }
    return s;
}

/// Key constants separating the purposes a seed is derived for. Keeps the
/// simulation stream and each test's bootstrap stream disjoint within a
/// replication.
namespace seedtag {
constexpr std::uint64_t simulation = 0x73696dULL;
constexpr std::uint64_t bootstrap = 0x626f6fULL;
}  // namespace seedtag

/// An owned random stream. Cheap to construct; one per work item.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}

    double normal() { return normal_(engine_); }

    double uniform01() { return uniform_(engine_); }

    /// Uniform index in [0, n).
    std::size_t uniform_index(std::size_t n) {
        return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
    }

    /// +1 or -1 with equal probability.
    double rademacher() { return (engine_() & 1u) ? 1.0 : -1.0; }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace tvtest
