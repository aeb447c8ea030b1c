#pragma once

#include <cstdint>

namespace fo {

// splitmix64: tiny, portable, bit-stable across platforms. Used for the
// i.i.d. baseline and for x-draws, where reproducibility matters more
// than statistical ambition.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0,1), 53 mantissa bits.
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Top `bits` bits of one output, bits in [1,64].
    std::uint64_t next_bits(unsigned bits) { return next() >> (64u - bits); }

private:
    std::uint64_t state_;
};

// Per-draw substream so Monte Carlo results are independent of scheduling:
// each (master, index) pair opens its own generator.
inline SplitMix64 substream(std::uint64_t master, std::uint64_t index) {
    SplitMix64 mix(master ^ (0x510e527fade682d1ULL + index * 0x9e3779b97f4a7c15ULL));
    mix.next();
    return mix;
}

} // namespace fo
