#include "picdtc/decoder.hpp"

#include <cassert>

#include "picdtc/errors.hpp"

namespace picdtc {

ChainDecoder::ChainDecoder(const Trellis& trellis2, const CouplingConfig& c,
                           const std::vector<BlockLayout>& layout, const Interleavers& il)
    : cfg_(c), layout_(layout), il_(&il), bcjr_(trellis2) {
    if (trellis2.num_inputs() != 2) throw ConfigError("chain decoder needs a two-input trellis");
    cfg_.validate();
    payload_pos_ = payload_positions(cfg_, layout_);
    const size_t L = size_t(cfg_.L);
    ch_u_.resize(L);
    ch_vu_.resize(L);
    ch_vl_.resize(L);
    ext1U_.resize(L);
    ext2U_.resize(L);
    ext1L_.resize(L);
    ext2L_.resize(L);
}

void ChainDecoder::load(const ChainChannelOutput& rx) {
    if (int64_t(rx.blocks.size()) != cfg_.L) throw ConfigError("channel output block count mismatch");
    for (int64_t t = 0; t < cfg_.L; ++t) {
        ch_u_[size_t(t)] = rx.blocks[size_t(t)].u;
        ch_vu_[size_t(t)] = rx.blocks[size_t(t)].v_upper;
        ch_vl_[size_t(t)] = rx.blocks[size_t(t)].v_lower;
        ext1U_[size_t(t)].assign(size_t(cfg_.K), Sym::Erased);
        ext2U_[size_t(t)].assign(size_t(cfg_.K), Sym::Erased);
        ext1L_[size_t(t)].assign(size_t(cfg_.K), Sym::Erased);
        ext2L_[size_t(t)].assign(size_t(cfg_.K), Sym::Erased);
    }
}

// Variable-to-factor message for position p of u_t toward the upper decoder:
// channel plus every other incident factor message. A coupled position also
// hears the two decoders of the block that re-encodes it.
Sym ChainDecoder::msg_to_upper_u1(int64_t t, int64_t p) const {
    const int64_t unc = cfg_.K - cfg_.Kc;
    const size_t ti = size_t(t - 1);
    Sym v = combine(ch_u_[ti][size_t(p)], ext1L_[ti][(*il_).lower1[ti].inv[size_t(p)]]);
    if (p >= unc && cfg_.Kc > 0) {
        const int64_t tau = t + (p - unc) / cfg_.segment_len() + 1;
        if (tau <= cfg_.L) {
            const size_t q = size_t(p - unc);
            const size_t taui = size_t(tau - 1);
            v = combine(v, ext2U_[taui][(*il_).upper2[taui].inv[q]]);
            v = combine(v, ext2L_[taui][(*il_).lower2[taui].inv[q]]);
        }
    }
    return v;
}

// Same for slot q of u'_t; dead slots and padding are known zeros.
Sym ChainDecoder::msg_to_upper_u2(int64_t t, int64_t q) const {
    if (q >= cfg_.Kc) return Sym::Zero;
    const int64_t s = t - (q / cfg_.segment_len() + 1);
    if (s < 1) return Sym::Zero;
    const size_t si = size_t(s - 1);
    const size_t srcpos = size_t((cfg_.K - cfg_.Kc) + q);
    Sym v = combine(ch_u_[si][srcpos], ext1U_[si][(*il_).upper1[si].inv[srcpos]]);
    v = combine(v, ext1L_[si][(*il_).lower1[si].inv[srcpos]]);
    v = combine(v, ext2L_[size_t(t - 1)][(*il_).lower2[size_t(t - 1)].inv[size_t(q)]]);
    return v;
}

bool ChainDecoder::update_word(TernaryWord& dst, const TernaryWord& src) {
    bool changed = false;
    for (size_t i = 0; i < dst.size(); ++i) {
        if (dst[i] != src[i]) {
            // knowledge is monotone: known symbols never revert or flip
            assert(dst[i] == Sym::Erased);
            dst[i] = src[i];
            changed = true;
        }
    }
    return changed;
}

bool ChainDecoder::turbo_decode_block(int64_t t, int max_inner_iters) {
    return turbo_decode_block_status(t, max_inner_iters).changed;
}

ChainDecoder::BlockStatus ChainDecoder::turbo_decode_block_status(int64_t t, int max_inner_iters) {
    const size_t ti = size_t(t - 1);
    const int64_t K = cfg_.K;
    const int64_t unc = K - cfg_.Kc;
    prior1_.resize(size_t(K));
    prior2_.resize(size_t(K));
    bool any = false;
    bool at_fixed_point = false;
    for (int iter = 0; iter < max_inner_iters; ++iter) {
        // upper decoder reads both words through its own permutations
        const auto& up1 = (*il_).upper1[ti].map;
        const auto& up2 = (*il_).upper2[ti].map;
        for (int64_t i = 0; i < K; ++i)
            prior1_[size_t(i)] = msg_to_upper_u1(t, up1[size_t(i)]);
        for (int64_t i = 0; i < K; ++i)
            prior2_[size_t(i)] = msg_to_upper_u2(t, up2[size_t(i)]);
        bcjr_.run(prior1_, prior2_, ch_vu_[ti], new_e1_, new_e2_);
        bool changed = update_word(ext1U_[ti], new_e1_);
        changed |= update_word(ext2U_[ti], new_e2_);

        // lower decoder, through the lower interleavers
        const auto& lo1 = (*il_).lower1[ti].map;
        const auto& lo2 = (*il_).lower2[ti].map;
        for (int64_t i = 0; i < K; ++i) {
            const int64_t p = lo1[size_t(i)];
            Sym v = combine(ch_u_[ti][size_t(p)], ext1U_[ti][(*il_).upper1[ti].inv[size_t(p)]]);
            if (p >= unc && cfg_.Kc > 0) {
                const int64_t tau = t + (p - unc) / cfg_.segment_len() + 1;
                if (tau <= cfg_.L) {
                    const size_t q = size_t(p - unc);
                    const size_t taui = size_t(tau - 1);
                    v = combine(v, ext2U_[taui][(*il_).upper2[taui].inv[q]]);
                    v = combine(v, ext2L_[taui][(*il_).lower2[taui].inv[q]]);
                }
            }
            prior1_[size_t(i)] = v;
        }
        for (int64_t i = 0; i < K; ++i) {
            const int64_t q = lo2[size_t(i)];
            if (q >= cfg_.Kc) {
                prior2_[size_t(i)] = Sym::Zero;
                continue;
            }
            const int64_t s = t - (q / cfg_.segment_len() + 1);
            if (s < 1) {
                prior2_[size_t(i)] = Sym::Zero;
                continue;
            }
            const size_t si = size_t(s - 1);
            const size_t srcpos = size_t(unc + q);
            Sym v = combine(ch_u_[si][srcpos], ext1U_[si][(*il_).upper1[si].inv[srcpos]]);
            v = combine(v, ext1L_[si][(*il_).lower1[si].inv[srcpos]]);
            v = combine(v, ext2U_[ti][(*il_).upper2[ti].inv[size_t(q)]]);
            prior2_[size_t(i)] = v;
        }
        bcjr_.run(prior1_, prior2_, ch_vl_[ti], new_e1_, new_e2_);
        changed |= update_word(ext1L_[ti], new_e1_);
        changed |= update_word(ext2L_[ti], new_e2_);

        any |= changed;
        if (!changed) {
            at_fixed_point = true;
            break;
        }
    }
    return {any, at_fixed_point};
}

Sym ChainDecoder::app_u1(int64_t t, int64_t p) const {
    const size_t ti = size_t(t - 1);
    return combine(msg_to_upper_u1(t, p), ext1U_[ti][(*il_).upper1[ti].inv[size_t(p)]]);
}

int64_t ChainDecoder::count_payload_erasures() const {
    int64_t n = 0;
    for (const auto& pp : payload_pos_) n += !is_known(app_u1(pp.t, pp.pos));
    return n;
}

DecodeResult ChainDecoder::decode(const ChainChannelOutput& rx, const DecodeBudgets& budgets,
                                  Schedule schedule) {
    load(rx);
    DecodeResult res;
    const int64_t L = cfg_.L;
    std::vector<uint8_t> dirty(size_t(L), 1);

    auto visit = [&](int64_t t, int inner) -> bool {
        if (!dirty[size_t(t - 1)]) return false;
        dirty[size_t(t - 1)] = 0;
        const BlockStatus st = turbo_decode_block_status(t, inner);
        // a block stopped by the inner budget rather than its fixed point
        // still has work pending
        if (!st.at_fixed_point) dirty[size_t(t - 1)] = 1;
        if (!st.changed) return false;
        for (int64_t d = 1; d <= cfg_.m; ++d) {
            if (t - d >= 1) dirty[size_t(t - d - 1)] = 1;
            if (t + d <= L) dirty[size_t(t + d - 1)] = 1;
        }
        return true;
    };

    if (schedule == Schedule::FfFb) {
        for (int sweep = 0; sweep < budgets.max_sweeps; ++sweep) {
            bool changed = false;
            for (int64_t t = 1; t <= L; ++t) changed |= visit(t, budgets.max_inner_iters);
            for (int64_t t = L; t >= 1; --t) changed |= visit(t, budgets.max_inner_iters);
            ++res.sweeps;
            res.residual_history.push_back(count_payload_erasures());
            if (!changed) {
                res.reached_fixed_point = true;
                break;
            }
        }
    } else {
        const int max_rounds = budgets.max_sweeps * budgets.max_inner_iters;
        for (int round = 0; round < max_rounds; ++round) {
            bool changed = false;
            for (int64_t t = 1; t <= L; ++t) changed |= turbo_decode_block(t, 1);
            ++res.sweeps;
            res.residual_history.push_back(count_payload_erasures());
            if (!changed) {
                res.reached_fixed_point = true;
                break;
            }
        }
    }

    res.payload.resize(payload_pos_.size());
    res.payload_erased.resize(payload_pos_.size());
    for (size_t i = 0; i < payload_pos_.size(); ++i) {
        const Sym s = app_u1(payload_pos_[i].t, payload_pos_[i].pos);
        res.payload[i] = is_known(s) ? sym_bit(s) : 0;
        res.payload_erased[i] = !is_known(s);
        res.residual_erasures += !is_known(s);
    }
    return res;
}

TernaryWord ChainDecoder::aposteriori_u(int64_t t) const {
    TernaryWord w(size_t(cfg_.K));
    for (int64_t p = 0; p < cfg_.K; ++p) w[size_t(p)] = app_u1(t, p);
    return w;
}

}  // namespace picdtc
