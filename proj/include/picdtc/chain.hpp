#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "picdtc/coupling.hpp"
#include "picdtc/rng.hpp"
#include "picdtc/trellis.hpp"

namespace picdtc {

struct BlockCodeword {
    std::vector<uint8_t> u;        // K systematic bits, structural zeros included
    std::vector<uint8_t> v_upper;  // K parity bits from the upper encoder
    std::vector<uint8_t> v_lower;  // K parity bits from the lower encoder
};

struct ChainCodeword {
    std::vector<BlockCodeword> blocks;  // block t at index t-1
};

struct BlockPerm {
    std::vector<uint32_t> map;  // encoder_input[i] = word[map[i]]
    std::vector<uint32_t> inv;
};

// Per-block edge permutations: every encoder input reads its word through an
// independent uniform permutation (the transmitted systematic word itself
// stays in natural order). Scrambling all four edges is what the ensemble
// analysis needs: coupled and uncoupled positions must arrive interspersed
// at each trellis, and a coupled segment re-encoded by a later block must
// not land on trellis-adjacent steps there, or extrinsic erasure bursts
// correlate and the decoder falls short of the density-evolution fixed
// point.
struct Interleavers {
    std::vector<BlockPerm> upper1, lower1, upper2, lower2;
};

Interleavers make_interleavers(const CouplingConfig& c, Rng& rng);

// Second input word of block t assembled from the stored forward segments of
// blocks t-m..t-1; the decoder-side reassembly uses the same routine.
std::vector<uint8_t> assemble_u2(const std::vector<BlockCodeword>& blocks,
                                 const BlockLayout& layout, int64_t K);

// Payload positions in emission order: information bits fill u_{t,t} and the
// forward-coupled segments left to right across t; structural zeros are
// never payload.
struct PayloadPosition {
    int64_t t = 0;    // block, 1-indexed
    int64_t pos = 0;  // position inside u_t
};
std::vector<PayloadPosition> payload_positions(const CouplingConfig& c,
                                               const std::vector<BlockLayout>& layout);

ChainCodeword encode_chain(std::span<const uint8_t> payload, const CouplingConfig& c,
                           const std::vector<BlockLayout>& layout, const Interleavers& il,
                           const Trellis& trellis2);

// Flat emitted bit stream, block order u_1, v_1^U, v_1^L, u_2, ... with
// structural-zero systematic positions skipped; its length equals
// transmitted_bits(c).
std::vector<uint8_t> serialize_chain(const ChainCodeword& cw, const CouplingConfig& c,
                                     const std::vector<BlockLayout>& layout);

}  // namespace picdtc
