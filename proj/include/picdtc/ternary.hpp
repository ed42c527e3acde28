#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "picdtc/errors.hpp"

namespace picdtc {

// Channel/message symbol on the binary erasure channel. A non-erased symbol
// always equals the transmitted bit, so knowledge is monotone: a symbol once
// known never reverts and never changes value.
enum class Sym : uint8_t { Zero = 0, One = 1, Erased = 2 };

using TernaryWord = std::vector<Sym>;

inline Sym sym_from_bit(uint8_t b) { return b ? Sym::One : Sym::Zero; }
inline bool is_known(Sym s) { return s != Sym::Erased; }
inline uint8_t sym_bit(Sym s) { return uint8_t(s); }  // valid only when known

// Merge two knowledge symbols about the same bit.
inline Sym combine(Sym a, Sym b) {
    if (a == Sym::Erased) return b;
    if (b == Sym::Erased) return a;
    if (a != b) throw DecodeError("contradictory knowledge symbols");
    return a;
}

inline size_t count_erased(const TernaryWord& w) {
    size_t n = 0;
    for (Sym s : w) n += (s == Sym::Erased);
    return n;
}

}  // namespace picdtc
