#pragma once

#include <cmath>
#include <cstdint>

namespace gigmix {

struct RngSeed {
    std::uint64_t value = 0;
};

// SplitMix64 with hashed substreams. A substream state is a pure function of
// (seed, stream, index), so index-addressed parallel loops produce output
// that is bit-identical to the serial order regardless of scheduling.
class Rng {
public:
    explicit Rng(std::uint64_t state) : state_(state) {}

    static Rng substream(RngSeed seed, std::uint64_t stream, std::uint64_t index = 0) {
        std::uint64_t z = seed.value;
        z = mix(z + 0x9E3779B97F4A7C15ULL * (stream + 1));
        z = mix(z ^ (0xD1B54A32D192ED03ULL * (index + 1)));
        return Rng(z);
    }

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    // [0, 1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // (0, 1]
    double uniform_pos() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double normal() {
        const double u1 = uniform_pos();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

// Stream ids used across the library so independent consumers never collide.
namespace streams {
inline constexpr std::uint64_t kSampling = 1;
inline constexpr std::uint64_t kMixtureComponent = 2;
inline constexpr std::uint64_t kChain = 3;
inline constexpr std::uint64_t kChainInit = 4;
inline constexpr std::uint64_t kRung = 5;
inline constexpr std::uint64_t kModelSelect = 6;
}  // namespace streams

}  // namespace gigmix
