#pragma once

#include <span>
#include <vector>

#include "picdtc/chain.hpp"
#include "picdtc/rng.hpp"
#include "picdtc/ternary.hpp"

namespace picdtc {

// Binary erasure channel: each bit is independently replaced by Erased with
// probability eps, never flipped.
TernaryWord bec_transmit(std::span<const uint8_t> bits, double eps, Rng& rng);

struct BlockChannelOutput {
    TernaryWord u;  // structural-zero positions arrive as known zeros
    TernaryWord v_upper;
    TernaryWord v_lower;
};

struct ChainChannelOutput {
    std::vector<BlockChannelOutput> blocks;
};

ChainChannelOutput transmit_chain(const ChainCodeword& cw, const CouplingConfig& c,
                                  const std::vector<BlockLayout>& layout, double eps,
                                  Rng& rng);

}  // namespace picdtc
