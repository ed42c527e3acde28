#pragma once

#include <cstdint>
#include <vector>

#include "picdtc/bec.hpp"
#include "picdtc/chain.hpp"
#include "picdtc/set_bcjr.hpp"

namespace picdtc {

struct DecodeBudgets {
    int max_inner_iters = 30;  // upper/lower rounds per block visit
    int max_sweeps = 20;       // forward+backward chain passes
};

enum class Schedule { FfFb, Flooding };

struct DecodeResult {
    std::vector<uint8_t> payload;         // recovered payload bits, erased positions 0
    std::vector<uint8_t> payload_erased;  // 1 where the bit is still unknown
    int64_t residual_erasures = 0;
    int sweeps = 0;
    bool reached_fixed_point = false;
    std::vector<int64_t> residual_history;  // payload erasures after each sweep
};

// Iterative erasure decoder for the coupled chain: exact set-BCJR component
// decoders, extrinsic exchange through the block interleavers, and knowledge
// of each coupled segment shared between the two blocks that encode it. The
// default schedule sweeps t = 1..L and then back (FF-FB); flooding gives
// every block one upper/lower round per pass. Both reach the same fixed
// point on the BEC, differing only in visit counts.
class ChainDecoder {
public:
    ChainDecoder(const Trellis& trellis2, const CouplingConfig& c,
                 const std::vector<BlockLayout>& layout, const Interleavers& il);

    // Resets all message state and installs the channel words.
    void load(const ChainChannelOutput& rx);

    // One block visit: alternate upper/lower component decoders until the
    // block's extrinsic words stop changing or the inner budget is spent.
    // Returns true when any message changed.
    bool turbo_decode_block(int64_t t, int max_inner_iters);

    DecodeResult decode(const ChainChannelOutput& rx, const DecodeBudgets& budgets = {},
                        Schedule schedule = Schedule::FfFb);

    // Combined knowledge (channel plus every incident factor message).
    TernaryWord aposteriori_u(int64_t t) const;

    // Raw factor-to-variable extrinsic words, factor indexing; diagnostics.
    const TernaryWord& ext1U(int64_t t) const { return ext1U_[size_t(t - 1)]; }
    const TernaryWord& ext2U(int64_t t) const { return ext2U_[size_t(t - 1)]; }
    const TernaryWord& ext1L(int64_t t) const { return ext1L_[size_t(t - 1)]; }
    const TernaryWord& ext2L(int64_t t) const { return ext2L_[size_t(t - 1)]; }

    const CouplingConfig& config() const { return cfg_; }

private:
    struct BlockStatus {
        bool changed = false;
        bool at_fixed_point = false;
    };
    BlockStatus turbo_decode_block_status(int64_t t, int max_inner_iters);
    Sym msg_to_upper_u1(int64_t t, int64_t p) const;
    Sym msg_to_upper_u2(int64_t t, int64_t q) const;
    Sym app_u1(int64_t t, int64_t p) const;
    int64_t count_payload_erasures() const;
    bool update_word(TernaryWord& dst, const TernaryWord& src);

    CouplingConfig cfg_;
    std::vector<BlockLayout> layout_;
    const Interleavers* il_;
    SetBcjr bcjr_;

    std::vector<TernaryWord> ch_u_, ch_vu_, ch_vl_;
    std::vector<TernaryWord> ext1U_, ext2U_, ext1L_, ext2L_;
    TernaryWord prior1_, prior2_, new_e1_, new_e2_;
    std::vector<PayloadPosition> payload_pos_;
};

}  // namespace picdtc
