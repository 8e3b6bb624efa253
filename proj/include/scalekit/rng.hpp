#pragma once

// Seeded, splittable random number generation. The generator is a splitmix64
// stream; independent child streams are derived by hashing (seed, a, b), so a
// Monte Carlo cell can hand each replicate its own stream and the results do
// not depend on evaluation order or thread count.

#include <cstdint>

namespace scalekit {

// splitmix64 finalizer: a bijective 64-bit mix with good avalanche behavior.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Derive a child-stream seed from (seed, a, b), e.g. (study seed, cell id,
// replicate index). Deterministic and order-free.
inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    constexpr std::uint64_t golden = 0x9e3779b97f4a7c15ULL;
    std::uint64_t h = mix64(seed + golden);
    h = mix64(h ^ (a + golden));
    h = mix64(h ^ (b + golden));
    return h;
}

class SeededGenerator {
public:
    explicit SeededGenerator(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        return mix64(z);
    }

    // Uniform on [0, 1): 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform on (0, 1]: safe as a log() argument.
    double uniform_pos() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    SeededGenerator child(std::uint64_t a, std::uint64_t b) const {
        return SeededGenerator(derive_stream(state_, a, b));
    }

private:
    std::uint64_t state_;
};

} // namespace scalekit
