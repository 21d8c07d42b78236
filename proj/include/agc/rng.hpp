#pragma once

#include <cstdint>

namespace agc {

// splitmix64: tiny, seedable, and splittable into independent streams.
struct Rng {
    std::uint64_t state = 0;

    explicit Rng(std::uint64_t seed = 0) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }

    // Independent child stream; deterministic in (parent seed, stream id).
    Rng split(std::uint64_t stream) const {
        Rng probe(state ^ (0x6a09e667f3bcc909ULL + stream * 0x9e3779b97f4a7c15ULL));
        return Rng(probe.next());
    }
};

} // namespace agc
