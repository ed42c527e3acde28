#include "picdtc/chain.hpp"

#include <string>

namespace picdtc {

Interleavers make_interleavers(const CouplingConfig& c, Rng& rng) {
    auto draw = [&rng](int64_t n) {
        BlockPerm p;
        p.map = rng.permutation(uint32_t(n));
        p.inv.resize(p.map.size());
        for (uint32_t i = 0; i < p.map.size(); ++i) p.inv[p.map[i]] = i;
        return p;
    };
    Interleavers il;
    il.upper1.reserve(size_t(c.L));
    il.lower1.reserve(size_t(c.L));
    il.upper2.reserve(size_t(c.L));
    il.lower2.reserve(size_t(c.L));
    for (int64_t t = 0; t < c.L; ++t) {
        il.upper1.push_back(draw(c.K));
        il.lower1.push_back(draw(c.K));
        il.upper2.push_back(draw(c.K));
        il.lower2.push_back(draw(c.K));
    }
    return il;
}

std::vector<uint8_t> assemble_u2(const std::vector<BlockCodeword>& blocks,
                                 const BlockLayout& layout, int64_t K) {
    std::vector<uint8_t> u2(size_t(K), 0);
    for (const auto& slot : layout.u2) {
        if (!slot.live) continue;
        const auto& src = blocks[size_t(slot.source - 1)].u;
        for (int64_t i = 0; i < slot.len; ++i)
            u2[size_t(slot.begin + i)] = src[size_t(slot.source_begin + i)];
    }
    return u2;
}

std::vector<PayloadPosition> payload_positions(const CouplingConfig& c,
                                               const std::vector<BlockLayout>& layout) {
    std::vector<PayloadPosition> out;
    out.reserve(size_t(payload_bits(c)));
    for (const auto& b : layout) {
        for (const auto& seg : b.u1) {
            if (seg.structural_zero) continue;
            for (int64_t i = 0; i < seg.len; ++i) out.push_back({b.t, seg.begin + i});
        }
    }
    return out;
}

ChainCodeword encode_chain(std::span<const uint8_t> payload, const CouplingConfig& c,
                           const std::vector<BlockLayout>& layout, const Interleavers& il,
                           const Trellis& trellis2) {
    c.validate();
    if (trellis2.num_inputs() != 2) throw ConfigError("encode_chain: two-input trellis required");
    const auto positions = payload_positions(c, layout);
    if (payload.size() != positions.size())
        throw ConfigError("encode_chain: payload length " + std::to_string(payload.size()) +
                          " != " + std::to_string(positions.size()));

    ChainCodeword cw;
    cw.blocks.resize(size_t(c.L));
    for (auto& b : cw.blocks) b.u.assign(size_t(c.K), 0);
    for (size_t i = 0; i < positions.size(); ++i)
        cw.blocks[size_t(positions[i].t - 1)].u[size_t(positions[i].pos)] = payload[i] & 1u;

    std::vector<uint8_t> in1(size_t(c.K)), in2(size_t(c.K));
    for (int64_t t = 1; t <= c.L; ++t) {
        BlockCodeword& b = cw.blocks[size_t(t - 1)];
        const auto u2 = assemble_u2(cw.blocks, layout[size_t(t - 1)], c.K);
        const auto& pu1 = il.upper1[size_t(t - 1)].map;
        const auto& pu2 = il.upper2[size_t(t - 1)].map;
        for (int64_t i = 0; i < c.K; ++i) {
            in1[size_t(i)] = b.u[pu1[size_t(i)]];
            in2[size_t(i)] = u2[pu2[size_t(i)]];
        }
        b.v_upper = rsc_encode(trellis2, in1, in2).parity;
        const auto& pl1 = il.lower1[size_t(t - 1)].map;
        const auto& pl2 = il.lower2[size_t(t - 1)].map;
        for (int64_t i = 0; i < c.K; ++i) {
            in1[size_t(i)] = b.u[pl1[size_t(i)]];
            in2[size_t(i)] = u2[pl2[size_t(i)]];
        }
        b.v_lower = rsc_encode(trellis2, in1, in2).parity;
    }
    return cw;
}

std::vector<uint8_t> serialize_chain(const ChainCodeword& cw, const CouplingConfig& c,
                                     const std::vector<BlockLayout>& layout) {
    std::vector<uint8_t> out;
    out.reserve(size_t(transmitted_bits(c)));
    for (int64_t t = 1; t <= c.L; ++t) {
        const BlockCodeword& b = cw.blocks[size_t(t - 1)];
        for (const auto& seg : layout[size_t(t - 1)].u1) {
            if (seg.structural_zero) continue;
            for (int64_t i = 0; i < seg.len; ++i) out.push_back(b.u[size_t(seg.begin + i)]);
        }
        out.insert(out.end(), b.v_upper.begin(), b.v_upper.end());
        out.insert(out.end(), b.v_lower.begin(), b.v_lower.end());
    }
    return out;
}

}  // namespace picdtc
