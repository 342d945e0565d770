#pragma once

#include <cstdint>
#include <random>

namespace cubesense {

// Seeded generator used everywhere randomness is allowed. mt19937_64 is fully
// specified by the standard; the uniform draws below avoid std distributions,
// whose output is implementation-defined, so identical seeds give identical
// streams on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    // Uniform in [0, bound), bound >= 1, by rejection from the top 2^64 range.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = bound * (~std::uint64_t{0} / bound);
        for (;;) {
            std::uint64_t v = eng_();
            if (v < limit) return v % bound;
        }
    }

    bool bit() { return eng_() & 1; }

private:
    std::mt19937_64 eng_;
};

}  // namespace cubesense
