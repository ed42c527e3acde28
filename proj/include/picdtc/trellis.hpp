#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "picdtc/octal.hpp"

namespace picdtc {

// Recursive systematic convolutional trellis with one or two information
// inputs per step sharing a common feedback polynomial g_b.
//
// The realization is the minimal feedback register with nu = deg(g_b) cells
// (state bit i-1 = cell i, cell 1 in the LSB) computing
//
//   v          = f_0 u + f'_0 u' + sigma_1
//   sigma_i^+  = sigma_{i+1} + f_i u + f'_i u' + b_i v      i = 1..nu
//
// which realizes v = (u g_f + u' g_f') / g_b exactly. Pinning u' = 0 drops
// the f' taps, so the two-input transition table restricted to u' = 0 is
// bit-identical to the one-input table built from (g_f, g_b).
class Trellis {
public:
    Trellis(const OctalPoly& g_f, const OctalPoly& g_b);
    Trellis(const OctalPoly& g_f, const OctalPoly& g_f2, const OctalPoly& g_b);

    int num_states() const { return num_states_; }
    int num_inputs() const { return num_inputs_; }
    int memory() const { return memory_; }

    // input_tuple bit 0 = u, bit 1 = u'
    int next_state(int state, unsigned input_tuple) const {
        return next_[index(state, input_tuple)];
    }
    int parity(int state, unsigned input_tuple) const {
        return parity_[index(state, input_tuple)];
    }

    const OctalPoly& g_f() const { return g_f_; }
    const OctalPoly& g_f2() const { return g_f2_; }
    const OctalPoly& g_b() const { return g_b_; }

private:
    void build();
    size_t index(int state, unsigned input) const {
        return size_t(state) * (1u << num_inputs_) + input;
    }

    OctalPoly g_f_, g_f2_, g_b_;
    int num_inputs_ = 1;
    int memory_ = 0;
    int num_states_ = 1;
    std::vector<uint8_t> next_;
    std::vector<uint8_t> parity_;
};

struct EncodeResult {
    std::vector<uint8_t> parity;
    int final_state = 0;
};

// Parity stream of the systematic encoder, starting from the all-zero state.
// No termination bits are appended; callers decide on termination.
EncodeResult rsc_encode(const Trellis& trellis, std::span<const uint8_t> u);
EncodeResult rsc_encode(const Trellis& trellis, std::span<const uint8_t> u,
                        std::span<const uint8_t> u2);

}  // namespace picdtc
