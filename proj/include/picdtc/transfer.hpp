#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "picdtc/ternary.hpp"
#include "picdtc/trellis.hpp"

namespace picdtc {

// Erasure probabilities seen by one component decoder: q1/q2 for the two
// input messages (already combined with the channel) and eps_parity for the
// parity observation.
struct TransferQuery {
    double q1 = 0;
    double q2 = 0;
    double eps_parity = 0;
};

struct TransferPoint {
    double e1 = 0;  // extrinsic erasure probability of input 1
    double e2 = 0;
};

// Exact decoder transfer function under i.i.d. erasures.
//
// Conditioned on the all-zero codeword, the forward state-set process of the
// set-BCJR decoder is a Markov chain on the subsets of trellis states that
// contain the true state 0 (the consistent set always contains the truth).
// The chain is driven by the i.i.d. per-step erasure pattern, so its
// transition matrix is a pattern-probability mixture of 0/1 maps that are
// precomputed once per trellis. The backward process is handled the same
// way. Extrinsic erasure of input j is the probability, under independent
// stationary forward/backward sets and a fresh current-step pattern that
// excludes input j's own message, that the value 1 also remains consistent.
//
// Stationary distributions come from repeated squaring of the half-lazy
// chain (a power method, tolerance 1e-12), started from {0} for the forward
// process and from the full state set for the backward one.
class ExactTransfer {
public:
    explicit ExactTransfer(const Trellis& t);

    // Memoized on a 1e-6 query grid.
    TransferPoint eval(const TransferQuery& q) const;
    // Same computation without the memo.
    TransferPoint eval_exact(const TransferQuery& q) const;

    size_t memo_size() const { return memo_.size(); }
    void clear_memo() const { memo_.clear(); }

private:
    std::vector<double> stationary(const std::vector<double>& m, size_t init) const;

    int num_states_ = 0;
    size_t nsub_ = 0;                 // subsets containing state 0
    std::vector<uint16_t> sub_index_;  // mask -> subset index (odd masks only)
    std::vector<uint16_t> sub_mask_;   // subset index -> mask
    // pattern bit 0: input-1 message erased, bit 1: input-2, bit 2: parity
    std::vector<uint16_t> fwd_next_;  // [pattern8 * nsub + subset] -> subset
    std::vector<uint16_t> bwd_prev_;
    // [pattern4 * nsub + subset] -> reachable next-state mask with x_j = 1;
    // pattern4 bit 0: other input erased, bit 1: parity erased
    std::vector<uint16_t> reach_[2];

    mutable std::unordered_map<uint64_t, TransferPoint> memo_;
};

// Monte-Carlo estimate of the same transfer function through the real
// set-BCJR decoder; the validation oracle for ExactTransfer.
struct McTransferResult {
    double e1 = 0, e2 = 0;
    double se1 = 0, se2 = 0;  // batch-means standard errors
    size_t counted = 0;
};

McTransferResult transfer_mc(const Trellis& t, const TransferQuery& q, size_t num_steps,
                             uint64_t seed);

}  // namespace picdtc
