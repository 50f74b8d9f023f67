#pragma once

#include <cstdint>
#include <vector>

namespace wwaudit::util {

/// splitmix64 mixer. Used to derive independent per-match seeds from a plan
/// seed without correlation between consecutive indices.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    return mix64(mix64(base) ^ mix64(index * 0x9e3779b97f4a7c15ULL + 1));
}

/// Deterministic RNG with a fully specified algorithm so that transcripts
/// are byte-identical across platforms and standard-library versions.
/// (std::shuffle and std::uniform_int_distribution are implementation
/// defined; this class is the only randomness source in the project.)
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x2545f4914f6cdd1dULL) {}

    std::uint64_t next() {
        state_ = mix64(state_);
        return state_;
    }

    /// Uniform value in [0, n). n must be > 0. Modulo bias is irrelevant for
    /// the tiny ranges used here (<= 7) but the result is deterministic.
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        // Fisher-Yates, fixed traversal order.
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::uint64_t state_;
};

} // namespace wwaudit::util
