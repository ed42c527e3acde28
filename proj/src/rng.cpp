#include "picdtc/rng.hpp"

namespace picdtc {

namespace {

uint64_t splitmix64(uint64_t& x) {
    x += 0x9E3779B97F4A7C15ULL;
    uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

uint64_t rotl(uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

}  // namespace

Rng::Rng(uint64_t seed) {
    uint64_t x = seed;
    for (auto& s : s_) s = splitmix64(x);
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
}

uint64_t Rng::next() {
    const uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Rng::uniform() { return double(next() >> 11) * 0x1.0p-53; }

uint32_t Rng::below(uint32_t n) {
    if (n < 2) return 0;
    const uint64_t bound = uint64_t(0x100000000ULL / n) * n;
    for (;;) {
        const uint64_t r = next() >> 32;
        if (r < bound) return uint32_t(r % n);
    }
}

std::vector<uint8_t> Rng::bits(size_t n) {
    std::vector<uint8_t> out(n);
    for (auto& b : out) b = bit();
    return out;
}

std::vector<uint32_t> Rng::permutation(uint32_t n) {
    std::vector<uint32_t> p(n);
    for (uint32_t i = 0; i < n; ++i) p[i] = i;
    for (uint32_t i = 0; i + 1 < n; ++i) {
        const uint32_t j = i + below(n - i);
        std::swap(p[i], p[j]);
    }
    return p;
}

// Counter scheme v1: fold purpose and index into one splitmix step each.
Rng Rng::stream(uint64_t master_seed, uint64_t purpose, uint64_t index) {
    uint64_t x = master_seed;
    uint64_t a = splitmix64(x);
    x = a ^ (purpose * 0xA24BAED4963EE407ULL);
    a = splitmix64(x);
    x = a ^ (index * 0x9FB21C651E98DF25ULL);
    return Rng(splitmix64(x));
}

}  // namespace picdtc
