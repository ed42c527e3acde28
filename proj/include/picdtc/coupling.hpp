#pragma once

#include <cstdint>
#include <vector>

#include "picdtc/errors.hpp"

namespace picdtc {

// Reduced fraction with 64-bit terms.
struct Rational {
    int64_t num = 0;
    int64_t den = 1;

    Rational() = default;
    Rational(int64_t n, int64_t d);  // reduces; den kept positive

    double value() const { return double(num) / double(den); }
    friend bool operator==(const Rational&, const Rational&) = default;
};

// PIC chain geometry: L blocks of K information bits each; K_c bits of every
// block are shared forward, K_c/m of them with each of the next m blocks.
struct CouplingConfig {
    int64_t K = 0;
    int64_t Kc = 0;
    int64_t m = 1;
    int64_t L = 1;

    double lambda() const { return K > 0 ? double(Kc) / double(K) : 0.0; }
    int64_t segment_len() const { return m > 0 ? Kc / m : 0; }
    void validate() const;  // throws ConfigError
};

// R = (KL - sum_{i=1..m} i K_c/m) / (3KL - sum_{i=1..m} i K_c/m), reduced.
Rational code_rate(const CouplingConfig& c);

int64_t payload_bits(const CouplingConfig& c);      // numerator of code_rate
int64_t transmitted_bits(const CouplingConfig& c);  // denominator of code_rate

// One segment of the first input word u_t.
struct U1Segment {
    int64_t begin = 0;
    int64_t len = 0;
    int64_t target = 0;            // block the segment couples to; == t when uncoupled
    bool structural_zero = false;  // couples past the chain end, pinned to zero
};

// One slot of the second input word u'_t.
struct U2Slot {
    int64_t begin = 0;
    int64_t len = 0;
    int64_t source = 0;        // block whose forward segment fills the slot
    int64_t source_begin = 0;  // position of that segment inside u_source
    bool live = false;         // false before the chain start: content is zero
};

// Segment map of one code block, 1-indexed like the chain:
//   u_t  = [u_{t,t} | u_{t,t+1} | ... | u_{t,t+m}]
//   u'_t = [u_{t-1,t} | ... | u_{t-m,t} | 0]
// Slots whose source precedes the chain keep their position and hold zeros.
struct BlockLayout {
    int64_t t = 0;
    std::vector<U1Segment> u1;  // m+1 segments, the uncoupled part first
    std::vector<U2Slot> u2;     // m slots; explicit zero padding from u2_zeros_begin
    int64_t u2_zeros_begin = 0;

    bool u1_structural_zero(int64_t pos) const;
};

std::vector<BlockLayout> make_layout(const CouplingConfig& c);

}  // namespace picdtc
