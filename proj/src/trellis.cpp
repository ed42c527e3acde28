#include "picdtc/trellis.hpp"

#include "picdtc/errors.hpp"

namespace picdtc {

Trellis::Trellis(const OctalPoly& g_f, const OctalPoly& g_b)
    : g_f_(g_f), g_b_(g_b), num_inputs_(1) {
    build();
}

Trellis::Trellis(const OctalPoly& g_f, const OctalPoly& g_f2, const OctalPoly& g_b)
    : g_f_(g_f), g_f2_(g_f2), g_b_(g_b), num_inputs_(2) {
    build();
}

void Trellis::build() {
    if (!g_b_.coeff(0))
        throw ConfigError("feedback polynomial must have constant term 1 (octal " +
                          g_b_.octal() + ")");
    if (g_f_.degree() > g_b_.degree())
        throw ConfigError("deg(g_f) exceeds deg(g_b): " + g_f_.octal() + " over " + g_b_.octal());
    if (num_inputs_ == 2 && g_f2_.degree() > g_b_.degree())
        throw ConfigError("deg(g_f') exceeds deg(g_b): " + g_f2_.octal() + " over " +
                          g_b_.octal());
    memory_ = g_b_.degree();
    if (memory_ > 16) throw ConfigError("feedback memory above 16 is not supported");
    num_states_ = 1 << memory_;

    const unsigned arity = 1u << num_inputs_;
    next_.resize(size_t(num_states_) * arity);
    parity_.resize(size_t(num_states_) * arity);
    for (int s = 0; s < num_states_; ++s) {
        for (unsigned x = 0; x < arity; ++x) {
            const int u = x & 1u;
            const int u2 = num_inputs_ == 2 ? int((x >> 1) & 1u) : 0;
            const int v = (g_f_.coeff(0) & u) ^ (g_f2_.coeff(0) & u2) ^ (s & 1);
            int ns = 0;
            for (int i = 1; i <= memory_; ++i) {
                int cell = (i < memory_) ? ((s >> i) & 1) : 0;  // sigma_{i+1}
                cell ^= (g_f_.coeff(i) & u) ^ (g_f2_.coeff(i) & u2) ^ (g_b_.coeff(i) & v);
                ns |= cell << (i - 1);
            }
            next_[index(s, x)] = uint8_t(ns);
            parity_[index(s, x)] = uint8_t(v);
        }
    }
}

static EncodeResult encode_impl(const Trellis& t, std::span<const uint8_t> u,
                                std::span<const uint8_t> u2) {
    EncodeResult out;
    out.parity.resize(u.size());
    int state = 0;
    if (t.num_inputs() == 1) {
        for (size_t k = 0; k < u.size(); ++k) {
            const unsigned x = u[k] & 1u;
            out.parity[k] = uint8_t(t.parity(state, x));
            state = t.next_state(state, x);
        }
    } else {
        for (size_t k = 0; k < u.size(); ++k) {
            const unsigned x = (u[k] & 1u) | ((u2[k] & 1u) << 1);
            out.parity[k] = uint8_t(t.parity(state, x));
            state = t.next_state(state, x);
        }
    }
    out.final_state = state;
    return out;
}

EncodeResult rsc_encode(const Trellis& trellis, std::span<const uint8_t> u) {
    if (trellis.num_inputs() != 1)
        throw ConfigError("rsc_encode: trellis expects two input sequences");
    return encode_impl(trellis, u, {});
}

EncodeResult rsc_encode(const Trellis& trellis, std::span<const uint8_t> u,
                        std::span<const uint8_t> u2) {
    if (trellis.num_inputs() != 2)
        throw ConfigError("rsc_encode: trellis expects one input sequence");
    if (u.size() != u2.size()) throw ConfigError("rsc_encode: input length mismatch");
    return encode_impl(trellis, u, u2);
}

}  // namespace picdtc
