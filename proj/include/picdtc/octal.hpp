#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "picdtc/errors.hpp"

namespace picdtc {

// Binary polynomial over GF(2), stored as a bit mask with bit i holding the
// coefficient of D^i. Octal text follows the usual channel-coding convention:
// "5" -> 101 -> 1 + D^2, the most significant octal digit carrying the
// highest-degree terms.
class OctalPoly {
public:
    OctalPoly() = default;
    explicit OctalPoly(uint64_t coeff_bits) : bits_(coeff_bits) {}

    static OctalPoly parse(std::string_view text);

    uint64_t bits() const { return bits_; }
    bool coeff(int i) const { return i >= 0 && i < 64 && ((bits_ >> i) & 1u); }
    int degree() const;  // the zero polynomial reports degree 0
    bool is_zero() const { return bits_ == 0; }

    std::string octal() const;

    friend bool operator==(const OctalPoly&, const OctalPoly&) = default;

private:
    uint64_t bits_ = 0;
};

}  // namespace picdtc
