#include "picdtc/octal.hpp"

#include <bit>

namespace picdtc {

OctalPoly OctalPoly::parse(std::string_view text) {
    if (text.empty()) throw ParseError("octal polynomial: empty string");
    uint64_t v = 0;
    for (char c : text) {
        if (c < '0' || c > '7')
            throw ParseError(std::string("octal polynomial: invalid character '") + c + "'");
        if (v >> 61) throw ParseError("octal polynomial: too many digits");
        v = (v << 3) | uint64_t(c - '0');
    }
    return OctalPoly(v);
}

int OctalPoly::degree() const {
    return bits_ == 0 ? 0 : 63 - std::countl_zero(bits_);
}

std::string OctalPoly::octal() const {
    if (bits_ == 0) return "0";
    std::string out;
    for (int d = degree() / 3; d >= 0; --d) out += char('0' + ((bits_ >> (3 * d)) & 7u));
    return out;
}

}  // namespace picdtc
