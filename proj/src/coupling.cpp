#include "picdtc/coupling.hpp"

#include <numeric>
#include <string>

namespace picdtc {

Rational::Rational(int64_t n, int64_t d) : num(n), den(d) {
    if (den == 0) throw ConfigError("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

void CouplingConfig::validate() const {
    if (K < 1) throw ConfigError("K must be positive");
    if (L < 1) throw ConfigError("L must be positive");
    if (m < 1) throw ConfigError("coupling memory m must be at least 1");
    if (Kc < 0 || Kc > K) throw ConfigError("K_c must lie in [0, K]");
    if (Kc % m != 0)
        throw ConfigError("K_c=" + std::to_string(Kc) + " not divisible by m=" +
                          std::to_string(m));
    // the shortened-bit count sum_i i*Kc/m assumes the chain outlives the memory
    if (Kc > 0 && L < m) throw ConfigError("chain length L must be at least the coupling memory m");
}

static int64_t shortened_bits(const CouplingConfig& c) {
    // sum_{i=1..m} i*Kc/m = (Kc/m) * m(m+1)/2
    return (c.Kc / c.m) * (c.m * (c.m + 1) / 2);
}

int64_t payload_bits(const CouplingConfig& c) { return c.K * c.L - shortened_bits(c); }

int64_t transmitted_bits(const CouplingConfig& c) { return 3 * c.K * c.L - shortened_bits(c); }

Rational code_rate(const CouplingConfig& c) {
    c.validate();
    return Rational(payload_bits(c), transmitted_bits(c));
}

bool BlockLayout::u1_structural_zero(int64_t pos) const {
    for (const auto& seg : u1)
        if (pos >= seg.begin && pos < seg.begin + seg.len) return seg.structural_zero;
    return false;
}

std::vector<BlockLayout> make_layout(const CouplingConfig& c) {
    c.validate();
    const int64_t seg = c.segment_len();
    std::vector<BlockLayout> layout(size_t(c.L));
    for (int64_t t = 1; t <= c.L; ++t) {
        BlockLayout& b = layout[size_t(t - 1)];
        b.t = t;
        b.u1.push_back({0, c.K - c.Kc, t, false});
        for (int64_t j = 1; j <= c.m; ++j) {
            const int64_t begin = (c.K - c.Kc) + (j - 1) * seg;
            b.u1.push_back({begin, seg, t + j, t + j > c.L});
        }
        for (int64_t j = 1; j <= c.m; ++j) {
            U2Slot slot;
            slot.begin = (j - 1) * seg;
            slot.len = seg;
            slot.source = t - j;
            slot.source_begin = (c.K - c.Kc) + (j - 1) * seg;
            slot.live = t - j >= 1;
            b.u2.push_back(slot);
        }
        b.u2_zeros_begin = c.Kc;
    }
    return layout;
}

}  // namespace picdtc
