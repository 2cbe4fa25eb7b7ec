#pragma once

#include <cstdint>

namespace cnet {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Counter-based stream: value i of stream (seed, key) is a pure function of
// (seed, key, i), so draws are reproducible regardless of scheduling.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t key)
        : base_(splitmix64(seed ^ splitmix64(key ^ 0xa076'1d64'78bd'642fULL))) {}

    std::uint64_t next_u64() { return splitmix64(base_ + counter_++); }

    // uniform in [0, 1)
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // uniform integer in [0, bound)
    std::uint64_t next_below(std::uint64_t bound) {
        // bounds here are tiny relative to 2^64; modulo bias is negligible
        return next_u64() % bound;
    }

private:
    std::uint64_t base_;
    std::uint64_t counter_ = 0;
};

} // namespace cnet
