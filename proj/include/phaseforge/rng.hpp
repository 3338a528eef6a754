#pragma once

#include <cstdint>

namespace phaseforge {

/// xoshiro256** generator, state seeded through splitmix64.
///
/// Stream-split rule: substream(seed, i) mixes the user seed with
/// (i + 1) * 0x9E3779B97F4A7C15 before state expansion, giving one
/// independent stream per sample index. Sampling code draws sample i
/// exclusively from substream i, so results do not depend on scheduling
/// order and are reproducible for a fixed seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    static Rng substream(std::uint64_t seed, std::uint64_t index) {
        return Rng(seed ^ (0x9E3779B97F4A7C15ull * (index + 1)));
    }

    std::uint64_t next_u64();

    /// Uniform double in [0, 1).
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_[4];
};

}  // namespace phaseforge
