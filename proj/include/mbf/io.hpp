#pragma once

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mbf {

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void write_u8(std::ostream& os, std::uint8_t v) {
    os.put(static_cast<char>(v));
}

inline void write_u32(std::ostream& os, std::uint32_t v) {
    char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
    os.write(b, 4);
}

inline void write_u64(std::ostream& os, std::uint64_t v) {
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
    os.write(b, 8);
}

inline std::uint8_t read_u8(std::istream& is) {
    int c = is.get();
    if (c < 0) throw io_error("unexpected end of file");
    return static_cast<std::uint8_t>(c);
}

inline std::uint32_t read_u32(std::istream& is) {
    char b[4];
    if (!is.read(b, 4)) throw io_error("unexpected end of file");
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t(static_cast<unsigned char>(b[i])) << (8 * i);
    return v;
}

inline std::uint64_t read_u64(std::istream& is) {
    char b[8];
    if (!is.read(b, 8)) throw io_error("unexpected end of file");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t(static_cast<unsigned char>(b[i])) << (8 * i);
    return v;
}

inline void expect_magic(std::istream& is, const char (&magic)[5]) {
    char b[4];
    if (!is.read(b, 4) || std::memcmp(b, magic, 4) != 0)
        throw io_error(std::string("bad magic, expected ") + magic);
}

// XOR of the byte stream folded into little-endian 64-bit words,
// the trailing partial word zero-padded.
struct XorFold {
    std::uint64_t acc = 0;
    std::uint64_t word = 0;
    int byte_pos = 0;

    void add_byte(std::uint8_t b) {
        word |= std::uint64_t(b) << (8 * byte_pos);
        if (++byte_pos == 8) { acc ^= word; word = 0; byte_pos = 0; }
    }
    void add_u32(std::uint32_t v) {
        for (int i = 0; i < 4; ++i) add_byte(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFF));
    }
    void add_u64(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) add_byte(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFF));
    }
    std::uint64_t value() const { return byte_pos == 0 ? acc : acc ^ word; }
};

} // namespace detail

// XOR-fold checksum of an entire file, used to pin sweep inputs in checkpoints.
inline std::uint64_t file_checksum(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw io_error("cannot open " + path);
    detail::XorFold x;
    char buf[65536];
    while (is.read(buf, sizeof buf) || is.gcount() > 0) {
        for (std::streamsize i = 0; i < is.gcount(); ++i)
            x.add_byte(static_cast<std::uint8_t>(static_cast<unsigned char>(buf[i])));
        if (!is) break;
    }
    return x.value();
}

} // namespace mbf
