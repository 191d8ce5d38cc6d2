#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <tuple>

namespace mbf {

// A Boolean function of n <= 7 variables, stored as its packed truth table.
// Position i holds f applied to the input of lexicographic rank i, where
// (x_1,...,x_n) has rank sum x_k * 2^(n-k), i.e. x_1 is the most significant
// coordinate. Positions 0..63 live in `lo`; for n = 7 positions 64..127 live
// in `hi`. Bits above position 2^n - 1 are always zero.
struct TruthTable {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    int n = 0;

    constexpr TruthTable() = default;
    constexpr TruthTable(int arity, std::uint64_t low, std::uint64_t high = 0)
        : lo(low), hi(high), n(arity) {}

    static constexpr TruthTable zeros(int n) { return TruthTable(n, 0, 0); }

    static constexpr TruthTable ones(int n) {
        if (n == 7) return TruthTable(7, ~0ull, ~0ull);
        if (n == 6) return TruthTable(6, ~0ull, 0);
        return TruthTable(n, (1ull << (1u << n)) - 1, 0);
    }

    constexpr std::size_t size() const { return std::size_t{1} << n; }

    constexpr bool bit(unsigned pos) const {
        return pos < 64 ? (lo >> pos) & 1 : (hi >> (pos - 64)) & 1;
    }

    constexpr void set_bit(unsigned pos) {
        if (pos < 64) lo |= 1ull << pos;
        else hi |= 1ull << (pos - 64);
    }

    friend constexpr bool operator==(const TruthTable& a, const TruthTable& b) {
        return a.n == b.n && a.lo == b.lo && a.hi == b.hi;
    }

    // Numeric order on the packed words, high word most significant.
    friend constexpr bool operator<(const TruthTable& a, const TruthTable& b) {
        return a.hi != b.hi ? a.hi < b.hi : a.lo < b.lo;
    }
};

namespace detail {

inline void require_same_arity(const TruthTable& f, const TruthTable& g) {
    if (f.n != g.n)
        throw std::invalid_argument("truth table arity mismatch: " +
                                    std::to_string(f.n) + " vs " + std::to_string(g.n));
}

// Mask of positions whose coordinate bit b is clear, for b = 0..5.
inline constexpr std::uint64_t kLowHalfMask[6] = {
    0x5555555555555555ull, 0x3333333333333333ull, 0x0F0F0F0F0F0F0F0Full,
    0x00FF00FF00FF00FFull, 0x0000FFFF0000FFFFull, 0x00000000FFFFFFFFull,
};

inline constexpr bool word_monotone_along(std::uint64_t w, int b) {
    const std::uint64_t m = kLowHalfMask[b];
    const std::uint64_t low = w & m;
    const std::uint64_t high = (w >> (1u << b)) & m;
    return (low & ~high) == 0;
}

} // namespace detail

// f <= g pointwise, i.e. the bit set of f is a subset of the bit set of g.
inline bool leq(const TruthTable& f, const TruthTable& g) {
    detail::require_same_arity(f, g);
    return (f.lo & ~g.lo) == 0 && (f.hi & ~g.hi) == 0;
}

inline TruthTable table_union(const TruthTable& f, const TruthTable& g) {
    detail::require_same_arity(f, g);
    return TruthTable(f.n, f.lo | g.lo, f.hi | g.hi);
}

inline TruthTable table_intersection(const TruthTable& f, const TruthTable& g) {
    detail::require_same_arity(f, g);
    return TruthTable(f.n, f.lo & g.lo, f.hi & g.hi);
}

// Per-coordinate half comparison: for each input bit b, the subword of
// positions with that bit clear must be <= the subword with it set.
inline bool is_monotone(const TruthTable& f) {
    const int word_bits = f.n < 6 ? f.n : 6;
    for (int b = 0; b < word_bits; ++b) {
        if (!detail::word_monotone_along(f.lo, b)) return false;
        if (f.n == 7 && !detail::word_monotone_along(f.hi, b)) return false;
    }
    if (f.n == 7 && (f.lo & ~f.hi) != 0) return false;
    return true;
}

// Splits f into the two halves (x_1 = 0, x_1 = 1) of the truth table.
inline std::pair<TruthTable, TruthTable> decompose2(const TruthTable& f) {
    if (f.n == 0) throw std::invalid_argument("decompose2: arity 0");
    const int m = f.n - 1;
    if (m == 6) return {TruthTable(6, f.lo), TruthTable(6, f.hi)};
    const unsigned half = 1u << m;
    const std::uint64_t mask = (1ull << half) - 1;
    return {TruthTable(m, f.lo & mask), TruthTable(m, (f.lo >> half) & mask)};
}

inline TruthTable compose2_unchecked(const TruthTable& f0, const TruthTable& f1) {
    detail::require_same_arity(f0, f1);
    if (f0.n == 6) return TruthTable(7, f0.lo, f1.lo);
    if (f0.n == 7) throw std::invalid_argument("compose2: result arity exceeds 7");
    return TruthTable(f0.n + 1, f0.lo | (f1.lo << (1u << f0.n)));
}

inline TruthTable compose2(const TruthTable& f0, const TruthTable& f1) {
    if (!leq(f0, f1))
        throw std::invalid_argument("compose2: halves violate f0 <= f1");
    return compose2_unchecked(f0, f1);
}

struct Quarters {
    TruthTable x0, x1, x2, x3;
};

// Quarter split by (x_1, x_2): x0 = f(00.), x1 = f(01.), x2 = f(10.), x3 = f(11.).
inline Quarters decompose4(const TruthTable& f) {
    if (f.n < 2) throw std::invalid_argument("decompose4: arity below 2");
    auto [h0, h1] = decompose2(f);
    auto [x0, x1] = decompose2(h0);
    auto [x2, x3] = decompose2(h1);
    return {x0, x1, x2, x3};
}

// As decompose4, but rejects quarters that break the monotone square order.
inline Quarters decompose4_checked(const TruthTable& f) {
    Quarters q = decompose4(f);
    if (!leq(q.x0, q.x1) || !leq(q.x0, q.x2) || !leq(q.x1, q.x3) || !leq(q.x2, q.x3))
        throw std::invalid_argument("decompose4: quarters violate the monotone square order");
    return q;
}

inline TruthTable compose4_unchecked(const Quarters& q) {
    return compose2_unchecked(compose2_unchecked(q.x0, q.x1),
                              compose2_unchecked(q.x2, q.x3));
}

inline TruthTable compose4(const Quarters& q) {
    if (!leq(q.x0, q.x1) || !leq(q.x0, q.x2) || !leq(q.x1, q.x3) || !leq(q.x2, q.x3))
        throw std::invalid_argument("compose4: quarters violate the monotone square order");
    return compose4_unchecked(q);
}

// Binary string, left-to-right characters are positions 0..2^n - 1.
inline TruthTable parse_tt(const std::string& text) {
    const std::size_t len = text.size();
    int n = -1;
    for (int k = 0; k <= 7; ++k)
        if (len == (std::size_t{1} << k)) { n = k; break; }
    if (n < 0)
        throw std::invalid_argument("parse_tt: length " + std::to_string(len) +
                                    " is not 2^n for n <= 7");
    TruthTable f(n, 0, 0);
    for (std::size_t i = 0; i < len; ++i) {
        if (text[i] == '1') f.set_bit(static_cast<unsigned>(i));
        else if (text[i] != '0')
            throw std::invalid_argument("parse_tt: invalid character '" +
                                        std::string(1, text[i]) + "'");
    }
    return f;
}

// "0x"-prefixed hex of the packed value; arity must be given explicitly.
inline TruthTable parse_tt_hex(const std::string& text, int n) {
    if (n < 0 || n > 7) throw std::invalid_argument("parse_tt_hex: arity out of range");
    if (text.size() < 3 || text[0] != '0' || (text[1] != 'x' && text[1] != 'X'))
        throw std::invalid_argument("parse_tt_hex: missing 0x prefix");
    std::uint64_t lo = 0, hi = 0;
    for (std::size_t i = 2; i < text.size(); ++i) {
        const char c = text[i];
        int d;
        if (c >= '0' && c <= '9') d = c - '0';
        else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
        else throw std::invalid_argument("parse_tt_hex: invalid hex digit");
        hi = (hi << 4) | (lo >> 60);
        lo = (lo << 4) | static_cast<std::uint64_t>(d);
    }
    TruthTable f(n, lo, hi);
    const TruthTable top = TruthTable::ones(n);
    if ((f.lo & ~top.lo) != 0 || (f.hi & ~top.hi) != 0)
        throw std::invalid_argument("parse_tt_hex: value has bits beyond position 2^n - 1");
    return f;
}

inline std::string format_tt(const TruthTable& f) {
    std::string s(f.size(), '0');
    for (unsigned i = 0; i < f.size(); ++i)
        if (f.bit(i)) s[i] = '1';
    return s;
}

} // namespace mbf
