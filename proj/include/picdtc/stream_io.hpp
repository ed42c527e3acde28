#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "picdtc/bec.hpp"
#include "picdtc/coupling.hpp"
#include "picdtc/ternary.hpp"

namespace picdtc {

// Bit stream file (magic "PDT1"): u64 little-endian bit count, then packed
// bits MSB-first within each byte, trailing pad bits zero.
void write_bit_file(const std::string& path, std::span<const uint8_t> bits);
std::vector<uint8_t> read_bit_file(const std::string& path);

// Ternary stream file (magic "PDT2"): u64 little-endian symbol count, then
// 2-bit symbols MSB-first within each byte: 00 zero, 01 one, 10 erased.
// The reserved code 11 and any truncation raise FormatError naming the
// byte offset.
void write_ternary_file(const std::string& path, const TernaryWord& word);
TernaryWord read_ternary_file(const std::string& path);

// Chain channel words from a flat received stream in emission order
// (u_1, v_1^U, v_1^L, u_2, ...); structural zeros are re-inserted as known
// zeros. The stream length must equal transmitted_bits(c).
ChainChannelOutput unflatten_chain(const TernaryWord& flat, const CouplingConfig& c,
                                   const std::vector<BlockLayout>& layout);

}  // namespace picdtc
