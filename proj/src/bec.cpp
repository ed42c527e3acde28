#include "picdtc/bec.hpp"

namespace picdtc {

TernaryWord bec_transmit(std::span<const uint8_t> bits, double eps, Rng& rng) {
    TernaryWord out(bits.size());
    for (size_t i = 0; i < bits.size(); ++i)
        out[i] = rng.bernoulli(eps) ? Sym::Erased : sym_from_bit(bits[i]);
    return out;
}

ChainChannelOutput transmit_chain(const ChainCodeword& cw, const CouplingConfig& c,
                                  const std::vector<BlockLayout>& layout, double eps,
                                  Rng& rng) {
    ChainChannelOutput rx;
    rx.blocks.resize(cw.blocks.size());
    for (int64_t t = 1; t <= c.L; ++t) {
        const BlockCodeword& b = cw.blocks[size_t(t - 1)];
        BlockChannelOutput& o = rx.blocks[size_t(t - 1)];
        o.u.assign(b.u.size(), Sym::Zero);
        for (const auto& seg : layout[size_t(t - 1)].u1) {
            if (seg.structural_zero) continue;  // never transmitted, known zero
            for (int64_t i = seg.begin; i < seg.begin + seg.len; ++i)
                o.u[size_t(i)] =
                    rng.bernoulli(eps) ? Sym::Erased : sym_from_bit(b.u[size_t(i)]);
        }
        o.v_upper = bec_transmit(b.v_upper, eps, rng);
        o.v_lower = bec_transmit(b.v_lower, eps, rng);
    }
    return rx;
}

}  // namespace picdtc
