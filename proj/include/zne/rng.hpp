#pragma once

#include <cstdint>
#include <initializer_list>

namespace zne {

// Deterministic 64-bit generator (splitmix64). All randomness in the library
// flows through this type so that seeded results are identical across
// platforms, compilers, and thread counts.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next_u64();

    // Uniform in [0, 1) with 53 bits of resolution.
    double next_double();

    // Uniform in [0, n); n must be positive. Unbiased (rejection sampling).
    uint64_t next_below(uint64_t n);

private:
    uint64_t state_;
};

// Derives an independent child seed from a root seed and a path of integers.
// Used to hand out per-repetition, per-scale-factor, and per-shot substreams
// whose values do not depend on evaluation order or worker count.
uint64_t derive_seed(uint64_t root, std::initializer_list<uint64_t> path);

} // namespace zne
