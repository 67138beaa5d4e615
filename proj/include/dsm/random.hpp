#pragma once

// Seeded generator with platform-independent output.  std::mt19937_64 is
// bit-specified by the standard; the standard distributions are not, so
// bounded draws and shuffles are done here.

#include "dsm/matrix.hpp"

#include <cstdint>
#include <random>
#include <utility>

namespace dsm {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, bound).  bound must be positive.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t r = engine_();
            if (r >= threshold) return r % bound;
        }
    }

    /// Uniform in [lo, hi].
    std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }

    /// Uniform in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    Permutation permutation(std::size_t n) {
        std::vector<std::size_t> m(n);
        for (std::size_t i = 0; i < n; ++i) m[i] = i;
        for (std::size_t i = n; i > 1; --i) std::swap(m[i - 1], m[below(i)]);
        return Permutation(std::move(m));
    }

private:
    std::mt19937_64 engine_;
};

} // namespace dsm
