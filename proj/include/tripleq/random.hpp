#pragma once

#include <cstdint>
#include <random>

namespace tripleq {

// Portable generator: std::uniform_int_distribution differs between standard
// libraries, so ranges are reduced by hand to keep seeded runs reproducible.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    // uniform in [0, n)
    std::uint64_t below(std::uint64_t n) { return n ? engine_() % n : 0; }
    // uniform in [lo, hi]
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }
    bool coin() { return engine_() & 1; }

private:
    std::mt19937_64 engine_;
};

}  // namespace tripleq
