#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "qkdpost/bitstring.hpp"

namespace qkdpost {

/// Deterministic randomness source with a recordable seed. Sub-streams are
/// derived from (seed, label) so independent protocol roles never share a
/// stream.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    static std::uint64_t derive_seed(std::uint64_t seed, std::string_view label) {
        // splitmix64 over seed mixed with a label hash
        std::uint64_t h = 1469598103934665603ull;
        for (char c : label) h = (h ^ static_cast<std::uint8_t>(c)) * 1099511628211ull;
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ull + h;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    static Rng child(std::uint64_t seed, std::string_view label) {
        return Rng(derive_seed(seed, label));
    }

    bool bit() { return engine_() & 1u; }

    std::uint64_t u64() { return engine_(); }

    /// Uniform in [0, n)
    std::uint64_t below(std::uint64_t n) {
        return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
    }

    bool bernoulli(double p) { return std::bernoulli_distribution(p)(engine_); }

    std::uint64_t binomial(std::uint64_t n, double p) {
        return std::binomial_distribution<std::uint64_t>(n, p)(engine_);
    }

    BitString bits(std::size_t n) {
        BitString b(n);
        for (std::size_t i = 0; i < n; i += 64) {
            const std::size_t m = std::min<std::size_t>(64, n - i);
            std::uint64_t w = engine_();
            for (std::size_t j = 0; j < m; ++j)
                if ((w >> j) & 1u) b.set(i + j, true);
        }
        return b;
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

}  // namespace qkdpost
