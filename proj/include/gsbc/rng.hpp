/* rng.hpp -- seeded pseudo-random stream with implementation-independent
 * draws, so fixtures and reports are reproducible byte for byte. */

#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace gsbc {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform-ish draw in [0, n); the modulo bias is irrelevant at the tiny
    // ranges used here and keeps results identical across standard libraries.
    std::int64_t below(std::int64_t n) {
        return n <= 1 ? 0 : static_cast<std::int64_t>(next() % static_cast<std::uint64_t>(n));
    }

    std::int64_t between(std::int64_t lo, std::int64_t hi) { // inclusive
        return lo + below(hi - lo + 1);
    }

    bool chance(double p) { return static_cast<double>(next() % 1000000) < p * 1000000; }

    template <typename T>
    const T& pick(const std::vector<T>& xs) {
        return xs[static_cast<std::size_t>(below(static_cast<std::int64_t>(xs.size())))];
    }

private:
    std::mt19937_64 engine_;
};

} // namespace gsbc
