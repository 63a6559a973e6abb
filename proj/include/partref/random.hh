#pragma once

#include <cstdint>
#include <random>

namespace partref {

// Seeded generator used by the instance generator and the property suites.
// Bounded draws use rejection sampling on the raw 64-bit stream so results
// do not depend on the standard library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform in [lo, hi]; requires lo <= hi.
    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        if (span == 0) return static_cast<std::int64_t>(next());
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % span);
        std::uint64_t draw;
        do {
            draw = next();
        } while (draw >= limit);
        return lo + static_cast<std::int64_t>(draw % span);
    }

    std::size_t index(std::size_t size) { return static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(size) - 1)); }

    bool coin(std::uint32_t numerator = 1, std::uint32_t denominator = 2) {
        return uniform(0, denominator - 1) < numerator;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace partref
