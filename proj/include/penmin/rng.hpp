#pragma once

#include <cmath>
#include <cstdint>

namespace penmin {

/// 64-bit finalizer with full avalanche; also used to derive independent
/// per-replicate substreams from (master_seed XOR replicate_index).
inline std::uint64_t avalanche64(std::uint64_t z) noexcept {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

/// The master seed is avalanched before the XOR: otherwise masters differing
/// only in low bits would produce overlapping substream sets (XOR with a
/// small index permutes a contiguous block), making order-independent
/// aggregates nearly identical across such seeds.
inline std::uint64_t substream_seed(std::uint64_t master_seed, std::uint64_t index) noexcept {
    return avalanche64(avalanche64(master_seed) ^ index);
}

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ULL;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform on the open interval (0, 1); never 0 or 1, safe for log().
    double next_unit_open() noexcept {
        return (static_cast<double>(next() >> 12) + 0.5) * 0x1.0p-52;
    }

private:
    std::uint64_t state_;
};

/// Standard normal deviates by the Box-Muller transform over a SplitMix64
/// stream. Deterministic and portable at the statistical level.
class GaussianSampler {
public:
    explicit GaussianSampler(std::uint64_t seed) noexcept : rng_(seed) {}

    double next() noexcept {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        const double u1 = rng_.next_unit_open();
        const double u2 = rng_.next_unit_open();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * 3.14159265358979323846 * u2;
        cached_ = radius * std::sin(angle);
        have_cached_ = true;
        return radius * std::cos(angle);
    }

private:
    SplitMix64 rng_;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

} // namespace penmin
