#include "picdtc/set_bcjr.hpp"

#include <string>

#include "picdtc/errors.hpp"

namespace picdtc {

namespace {

inline bool sym_allows(int t, int bit) { return t == 2 || t == bit; }

}  // namespace

SetBcjr::SetBcjr(const Trellis& t) : nin_(t.num_inputs()), num_states_(t.num_states()) {
    if (num_states_ > 8) throw ConfigError("set decoder supports at most 8 states");
    full_ = Mask((1u << num_states_) - 1u);
    const size_t nsets = size_t(1) << num_states_;
    const unsigned arity = 1u << nin_;

    // single-state next masks per observation combo
    std::vector<Mask> fwd_single(27 * size_t(num_states_), 0);
    for (int c = 0; c < 27; ++c) {
        const int t1 = c % 3, t2 = (c / 3) % 3, tp = c / 9;
        for (int s = 0; s < num_states_; ++s) {
            Mask m = 0;
            for (unsigned x = 0; x < arity; ++x) {
                const int u = int(x & 1u);
                const int u2 = nin_ == 2 ? int((x >> 1) & 1u) : 0;
                if (!sym_allows(t1, u)) continue;
                if (nin_ == 2 && !sym_allows(t2, u2)) continue;
                if (!sym_allows(tp, t.parity(s, x))) continue;
                m |= Mask(1u << t.next_state(s, x));
            }
            fwd_single[size_t(c) * num_states_ + s] = m;
        }
    }

    fwd_set_.assign(27 * nsets, 0);
    bwd_set_.assign(27 * nsets, 0);
    for (int c = 0; c < 27; ++c) {
        for (size_t a = 0; a < nsets; ++a) {
            Mask fwd = 0, bwd = 0;
            for (int s = 0; s < num_states_; ++s) {
                if (!(a >> s & 1u)) continue;
                fwd |= fwd_single[size_t(c) * num_states_ + s];
            }
            for (int s = 0; s < num_states_; ++s)
                if (fwd_single[size_t(c) * num_states_ + s] & Mask(a)) bwd |= Mask(1u << s);
            fwd_set_[size_t(c) * nsets + a] = fwd;
            bwd_set_[size_t(c) * nsets + a] = bwd;
        }
    }

    // reachable next-state masks with input j pinned to a bit value
    for (int j = 0; j < nin_; ++j) {
        ext_set_[j].assign(9 * nsets * 2, 0);
        for (int c9 = 0; c9 < 9; ++c9) {
            const int to = c9 % 3, tp = c9 / 3;
            for (int s = 0; s < num_states_; ++s) {
                Mask mb[2] = {0, 0};
                for (unsigned x = 0; x < arity; ++x) {
                    const int bits[2] = {int(x & 1u), nin_ == 2 ? int((x >> 1) & 1u) : 0};
                    if (nin_ == 2 && !sym_allows(to, bits[1 - j])) continue;
                    if (!sym_allows(tp, t.parity(s, x))) continue;
                    mb[bits[j]] |= Mask(1u << t.next_state(s, x));
                }
                for (size_t a = 0; a < nsets; ++a) {
                    if (!(a >> s & 1u)) continue;
                    ext_set_[j][(size_t(c9) * nsets + a) * 2 + 0] |= mb[0];
                    ext_set_[j][(size_t(c9) * nsets + a) * 2 + 1] |= mb[1];
                }
            }
        }
    }
}

void SetBcjr::decode(const Sym* p1, const Sym* p2, const Sym* pv, size_t n, Sym* e1,
                     Sym* e2) const {
    const size_t nsets = size_t(1) << num_states_;
    std::vector<Mask> fwd(n + 1), bwd(n + 1);
    std::vector<uint8_t> combo(n);
    for (size_t k = 0; k < n; ++k) {
        const int t2 = p2 ? int(p2[k]) : 0;
        combo[k] = uint8_t(int(p1[k]) + 3 * t2 + 9 * int(pv[k]));
    }

    fwd[0] = 1;  // encoder starts in the zero state
    for (size_t k = 0; k < n; ++k) {
        fwd[k + 1] = fwd_set_[size_t(combo[k]) * nsets + fwd[k]];
        if (!fwd[k + 1])
            throw DecodeError("set_bcjr: contradiction in forward pass at step " +
                              std::to_string(k));
    }
    bwd[n] = full_;  // unterminated: full state uncertainty at the end
    for (size_t k = n; k-- > 0;) {
        bwd[k] = bwd_set_[size_t(combo[k]) * nsets + bwd[k + 1]];
        if (!bwd[k])
            throw DecodeError("set_bcjr: contradiction in backward pass at step " +
                              std::to_string(k));
    }

    for (size_t k = 0; k < n; ++k) {
        const int tp = int(pv[k]);
        const Mask beam = bwd[k + 1];
        {
            const int c9 = (p2 ? int(p2[k]) : 0) + 3 * tp;
            const Mask* e = &ext_set_[0][(size_t(c9) * nsets + fwd[k]) * 2];
            const bool c0 = (e[0] & beam) != 0, c1 = (e[1] & beam) != 0;
            if (!c0 && !c1)
                throw DecodeError("set_bcjr: no consistent value for input 1 at step " +
                                  std::to_string(k));
            e1[k] = c0 && c1 ? Sym::Erased : (c1 ? Sym::One : Sym::Zero);
        }
        if (e2) {
            const int c9 = int(p1[k]) + 3 * tp;
            const Mask* e = &ext_set_[1][(size_t(c9) * nsets + fwd[k]) * 2];
            const bool c0 = (e[0] & beam) != 0, c1 = (e[1] & beam) != 0;
            if (!c0 && !c1)
                throw DecodeError("set_bcjr: no consistent value for input 2 at step " +
                                  std::to_string(k));
            e2[k] = c0 && c1 ? Sym::Erased : (c1 ? Sym::One : Sym::Zero);
        }
    }
}

void SetBcjr::run(const TernaryWord& prior_u, const TernaryWord& prior_u2,
                  const TernaryWord& parity_obs, TernaryWord& ext_u,
                  TernaryWord& ext_u2) const {
    if (nin_ != 2) throw ConfigError("set_bcjr: trellis has one input");
    if (prior_u.size() != prior_u2.size() || prior_u.size() != parity_obs.size())
        throw ConfigError("set_bcjr: word length mismatch");
    ext_u.resize(prior_u.size());
    ext_u2.resize(prior_u.size());
    decode(prior_u.data(), prior_u2.data(), parity_obs.data(), prior_u.size(), ext_u.data(),
           ext_u2.data());
}

void SetBcjr::run(const TernaryWord& prior_u, const TernaryWord& parity_obs,
                  TernaryWord& ext_u) const {
    if (nin_ != 1) throw ConfigError("set_bcjr: trellis has two inputs");
    if (prior_u.size() != parity_obs.size()) throw ConfigError("set_bcjr: word length mismatch");
    ext_u.resize(prior_u.size());
    decode(prior_u.data(), nullptr, parity_obs.data(), prior_u.size(), ext_u.data(), nullptr);
}

std::pair<TernaryWord, TernaryWord> set_bcjr(const Trellis& t, const TernaryWord& prior_u,
                                             const TernaryWord& prior_u2,
                                             const TernaryWord& parity_obs) {
    SetBcjr dec(t);
    TernaryWord e1, e2;
    dec.run(prior_u, prior_u2, parity_obs, e1, e2);
    return {std::move(e1), std::move(e2)};
}

TernaryWord set_bcjr(const Trellis& t, const TernaryWord& prior_u,
                     const TernaryWord& parity_obs) {
    SetBcjr dec(t);
    TernaryWord e1;
    dec.run(prior_u, parity_obs, e1);
    return e1;
}

}  // namespace picdtc
