#pragma once

#include <cstdint>

namespace lsys {

/// SplitMix64 (Steele, Lea, Flood 2014). Chosen over the standard engines
/// because its output and our double/int mappings are fully specified here,
/// so every seeded stream is bit-reproducible across compilers and platforms.
///
/// Stream layout used throughout the library:
///   - derive(): one SplitMix64 stream seeded with the caller's seed. Each
///     rewriting pass scans the word left to right and draws exactly one
///     value per symbol occurrence that has productions.
///   - per-key substreams (e.g. the angle of dataset entry `id` in epoch
///     `seed`) are seeded with substream_seed(seed, key).
class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    constexpr std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) from the top 53 bits.
    constexpr double uniform() noexcept {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    constexpr double uniform(double lo, double hi) noexcept {
        return lo + (hi - lo) * uniform();
    }

    /// Uniform integer in the closed range [lo, hi]. Uses floor(u * n) so the
    /// mapping depends only on uniform(); bias is below 2^-53 * n.
    constexpr std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) noexcept {
        const auto n = static_cast<double>(hi - lo + 1);
        auto k = static_cast<std::int64_t>(uniform() * n);
        if (k > hi - lo) k = hi - lo;
        return lo + k;
    }

    constexpr std::uint64_t state() const noexcept { return state_; }

private:
    std::uint64_t state_;
};

/// Seed for an independent substream identified by `key` under `seed`.
constexpr std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t key) noexcept {
    SplitMix64 outer(seed);
    const std::uint64_t base = outer.next();
    SplitMix64 inner(base ^ (key * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL));
    return inner.next();
}

}  // namespace lsys
