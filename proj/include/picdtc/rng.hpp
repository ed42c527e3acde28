#pragma once

#include <cstdint>
#include <vector>

namespace picdtc {

// xoshiro256** seeded through splitmix64. Self-contained so seeded runs are
// bit-identical across platforms and standard libraries.
class Rng {
public:
    explicit Rng(uint64_t seed);

    uint64_t next();
    double uniform();  // [0, 1)
    bool bernoulli(double p) { return uniform() < p; }
    uint32_t below(uint32_t n);  // uniform on [0, n), rejection sampled
    uint8_t bit() { return uint8_t(next() >> 63); }

    std::vector<uint8_t> bits(size_t n);
    std::vector<uint32_t> permutation(uint32_t n);  // Fisher-Yates

    // Derived substream addressed by (purpose, index) under one master seed,
    // so concurrent trials reproduce regardless of scheduling.
    static Rng stream(uint64_t master_seed, uint64_t purpose, uint64_t index);

private:
    uint64_t s_[4];
};

namespace stream_purpose {
inline constexpr uint64_t payload = 1;
inline constexpr uint64_t interleaver = 2;
inline constexpr uint64_t channel = 3;
inline constexpr uint64_t transfer_mc = 4;
}  // namespace stream_purpose

}  // namespace picdtc
