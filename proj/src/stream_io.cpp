#include "picdtc/stream_io.hpp"

#include <cstdio>
#include <cstring>
#include <memory>

namespace picdtc {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using File = std::unique_ptr<std::FILE, FileCloser>;

File open_or_throw(const std::string& path, const char* mode) {
    File f(std::fopen(path.c_str(), mode));
    if (!f) throw FormatError("cannot open '" + path + "'");
    return f;
}

void write_u64le(std::FILE* f, uint64_t v) {
    uint8_t b[8];
    for (int i = 0; i < 8; ++i) b[i] = uint8_t(v >> (8 * i));
    std::fwrite(b, 1, 8, f);
}

uint64_t read_u64le(std::FILE* f, const std::string& path, size_t offset) {
    uint8_t b[8];
    if (std::fread(b, 1, 8, f) != 8)
        throw FormatError(path + ": truncated header at byte offset " + std::to_string(offset));
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= uint64_t(b[i]) << (8 * i);
    return v;
}

void check_magic(std::FILE* f, const std::string& path, const char* magic) {
    char got[4];
    if (std::fread(got, 1, 4, f) != 4 || std::memcmp(got, magic, 4) != 0)
        throw FormatError(path + ": bad magic at byte offset 0, expected " + magic);
}

}  // namespace

void write_bit_file(const std::string& path, std::span<const uint8_t> bits) {
    auto f = open_or_throw(path, "wb");
    std::fwrite("PDT1", 1, 4, f.get());
    write_u64le(f.get(), bits.size());
    uint8_t byte = 0;
    int fill = 0;
    for (uint8_t b : bits) {
        byte = uint8_t(byte << 1 | (b & 1u));
        if (++fill == 8) {
            std::fputc(byte, f.get());
            byte = 0;
            fill = 0;
        }
    }
    if (fill) std::fputc(uint8_t(byte << (8 - fill)), f.get());
}

std::vector<uint8_t> read_bit_file(const std::string& path) {
    auto f = open_or_throw(path, "rb");
    check_magic(f.get(), path, "PDT1");
    const uint64_t n = read_u64le(f.get(), path, 4);
    std::vector<uint8_t> bits(n);
    uint64_t i = 0;
    while (i < n) {
        const int c = std::fgetc(f.get());
        if (c == EOF)
            throw FormatError(path + ": truncated stream at byte offset " +
                              std::to_string(12 + i / 8));
        for (int k = 7; k >= 0 && i < n; --k) bits[i++] = uint8_t(c >> k & 1);
    }
    return bits;
}

void write_ternary_file(const std::string& path, const TernaryWord& word) {
    auto f = open_or_throw(path, "wb");
    std::fwrite("PDT2", 1, 4, f.get());
    write_u64le(f.get(), word.size());
    uint8_t byte = 0;
    int fill = 0;
    for (Sym s : word) {
        byte = uint8_t(byte << 2 | uint8_t(s));
        if (++fill == 4) {
            std::fputc(byte, f.get());
            byte = 0;
            fill = 0;
        }
    }
    if (fill) std::fputc(uint8_t(byte << (8 - 2 * fill)), f.get());
}

TernaryWord read_ternary_file(const std::string& path) {
    auto f = open_or_throw(path, "rb");
    check_magic(f.get(), path, "PDT2");
    const uint64_t n = read_u64le(f.get(), path, 4);
    TernaryWord word(n);
    uint64_t i = 0;
    while (i < n) {
        const size_t offset = 12 + i / 4;
        const int c = std::fgetc(f.get());
        if (c == EOF)
            throw FormatError(path + ": truncated stream at byte offset " + std::to_string(offset));
        for (int k = 3; k >= 0 && i < n; --k) {
            const uint8_t code = uint8_t(c >> (2 * k) & 3);
            if (code == 3)
                throw FormatError(path + ": invalid symbol code at byte offset " +
                                  std::to_string(offset));
            word[i++] = Sym(code);
        }
    }
    return word;
}

ChainChannelOutput unflatten_chain(const TernaryWord& flat, const CouplingConfig& c,
                                   const std::vector<BlockLayout>& layout) {
    if (int64_t(flat.size()) != transmitted_bits(c))
        throw FormatError("stream holds " + std::to_string(flat.size()) + " symbols, config needs " +
                          std::to_string(transmitted_bits(c)));
    ChainChannelOutput rx;
    rx.blocks.resize(size_t(c.L));
    size_t i = 0;
    for (int64_t t = 1; t <= c.L; ++t) {
        BlockChannelOutput& o = rx.blocks[size_t(t - 1)];
        o.u.assign(size_t(c.K), Sym::Zero);
        for (const auto& seg : layout[size_t(t - 1)].u1) {
            if (seg.structural_zero) continue;
            for (int64_t p = seg.begin; p < seg.begin + seg.len; ++p) o.u[size_t(p)] = flat[i++];
        }
        o.v_upper.assign(flat.begin() + long(i), flat.begin() + long(i + size_t(c.K)));
        i += size_t(c.K);
        o.v_lower.assign(flat.begin() + long(i), flat.begin() + long(i + size_t(c.K)));
        i += size_t(c.K);
    }
    return rx;
}

}  // namespace picdtc
