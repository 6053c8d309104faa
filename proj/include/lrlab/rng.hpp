#pragma once

#include <cstdint>
#include <random>

namespace lrlab {

// Stateless splitmix64 round; used only to derive engine seeds.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Deterministic, platform-independent random stream.
//
// The engine is std::mt19937_64 (bit-exact by the standard); bounded draws
// use rejection sampling on raw 64-bit words, never std::uniform_int_distribution
// (whose mapping is implementation-defined).
//
// Stream splitting: substream t of master seed s seeds the engine with
// mix64(mix64(s) + t). Every trial of a multi-trial experiment draws from its
// own substream, indexed by trial number, so results are independent of
// execution order and parallelism degree. Rng(s) is shorthand for substream 0.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(mix64(mix64(seed))) {}

    static Rng substream(std::uint64_t seed, std::uint64_t stream) {
        return Rng(raw_tag{}, mix64(mix64(seed) + stream));
    }

    std::uint64_t next() { return engine_(); }

    // Uniform draw from [0, bound); bound >= 1.
    std::uint64_t below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        const std::uint64_t limit = (UINT64_MAX / bound) * bound;
        std::uint64_t r;
        do {
            r = engine_();
        } while (r >= limit);
        return r % bound;
    }

private:
    struct raw_tag {};
    Rng(raw_tag, std::uint64_t engine_seed) : engine_(engine_seed) {}

    std::mt19937_64 engine_;
};

} // namespace lrlab
