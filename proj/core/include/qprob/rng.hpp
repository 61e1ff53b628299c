#pragma once

#include <cstdint>

#include "qprob/numeric.hpp"

namespace qprob {

// splitmix64. Used for randomized verification runs; chosen over
// std::mt19937 so that streams are identical across standard libraries.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // [0, 1)
    double uniform() { return double(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // [0, n)
    std::size_t index(std::size_t n) {
        return n == 0 ? 0 : std::size_t(uniform() * double(n)) % n;
    }

    bool coin() { return (next() & 1u) != 0; }

    cplx amplitude() { return {uniform(-1.0, 1.0), uniform(-1.0, 1.0)}; }

private:
    std::uint64_t state_;
};

}
