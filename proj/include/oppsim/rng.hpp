#pragma once

#include <cstdint>
#include <random>

namespace oppsim {

// Deterministic random source. All draws go through the helpers below so a
// run consumes the underlying stream in a reproducible, documented order.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1) with 53 bits of precision.
    double next_double() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

    // Uniform in [0, n). n must be positive.
    std::uint64_t uniform_index(std::uint64_t n) {
        // Multiply-shift bound; bias is negligible for simulation-sized n.
        const unsigned __int128 wide =
            static_cast<unsigned __int128>(engine_()) * n;
        return static_cast<std::uint64_t>(wide >> 64);
    }

    int uniform_int(int n) { return static_cast<int>(uniform_index(static_cast<std::uint64_t>(n))); }

private:
    std::mt19937_64 engine_;
};

}  // namespace oppsim
