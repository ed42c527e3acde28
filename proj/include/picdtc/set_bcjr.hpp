#pragma once

#include <cstdint>
#include <vector>

#include "picdtc/ternary.hpp"
#include "picdtc/trellis.hpp"

namespace picdtc {

// Exact a-posteriori decoding of one RSC block on the erasure channel. The
// sum-product recursion on the trellis degenerates to propagating the set of
// states consistent with every known symbol: the forward pass starts from
// {zero state}, the backward pass from the full state set (no termination).
// A bit is extrinsically known once a single value survives, so recovered
// bits are always correct.
//
// All per-step updates are table lookups keyed by the ternary observation
// combo, with state sets as bit masks (up to 8 states).
class SetBcjr {
public:
    explicit SetBcjr(const Trellis& t);

    int num_inputs() const { return nin_; }

    // Extrinsic words for both inputs of a two-input trellis. extrinsic_j[k]
    // is computed without prior_j[k] itself but may use every other prior
    // and the parity observation at step k; it is Erased only when both
    // values of input j at step k extend to a consistent completion.
    // Throws DecodeError when no value is consistent.
    void run(const TernaryWord& prior_u, const TernaryWord& prior_u2,
             const TernaryWord& parity_obs, TernaryWord& ext_u, TernaryWord& ext_u2) const;

    // One-input convenience.
    void run(const TernaryWord& prior_u, const TernaryWord& parity_obs,
             TernaryWord& ext_u) const;

private:
    using Mask = uint16_t;

    void decode(const Sym* p1, const Sym* p2, const Sym* pv, size_t n, Sym* e1, Sym* e2) const;

    int nin_ = 1;
    int num_states_ = 1;
    Mask full_ = 1;
    // indexed [combo27][set]; combo = t1 + 3 t2 + 9 tp over {0,1,erased}
    std::vector<Mask> fwd_set_, bwd_set_;
    // indexed [input j][combo9][set][bit]; combo9 = t_other + 3 tp
    std::vector<Mask> ext_set_[2];
};

// Convenience wrappers building the tables per call; tests use these.
std::pair<TernaryWord, TernaryWord> set_bcjr(const Trellis& t, const TernaryWord& prior_u,
                                             const TernaryWord& prior_u2,
                                             const TernaryWord& parity_obs);
TernaryWord set_bcjr(const Trellis& t, const TernaryWord& prior_u,
                     const TernaryWord& parity_obs);

}  // namespace picdtc
