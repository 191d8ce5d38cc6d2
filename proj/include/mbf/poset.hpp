#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <vector>

#include "mbf/io.hpp"
#include "mbf/truth_table.hpp"

namespace mbf {

// Known d_n and r_n for the arities this library covers.
inline constexpr std::uint64_t kDedekind[8] = {
    2, 3, 6, 20, 168, 7581, 7828354, 2414682040998ull};
inline constexpr std::uint64_t kClassCount[7] = {2, 3, 5, 10, 30, 210, 16353};

// The complete enumeration of D_n, sorted by packed-word value. Doubles as
// the coordinate system for incidence/interval matrices. Only n <= 6 fits in
// memory; D_7 elements exist only transiently as TruthTable pairs.
class PosetLevel {
public:
    PosetLevel(int n, std::vector<std::uint64_t> words)
        : n_(n), words_(std::move(words)) {}

    int arity() const { return n_; }
    std::size_t size() const { return words_.size(); }
    const std::vector<std::uint64_t>& words() const { return words_; }

    TruthTable element(std::size_t i) const { return TruthTable(n_, words_[i]); }

    std::size_t index_of(const TruthTable& f) const {
        if (f.n != n_)
            throw std::invalid_argument("index_of: arity mismatch");
        auto it = std::lower_bound(words_.begin(), words_.end(), f.lo);
        if (it == words_.end() || *it != f.lo)
            throw std::invalid_argument("index_of: not an element (non-monotone query?)");
        return static_cast<std::size_t>(it - words_.begin());
    }

    bool contains(const TruthTable& f) const {
        return f.n == n_ &&
               std::binary_search(words_.begin(), words_.end(), f.lo);
    }

    // Indices i with x <= element_i, ascending. Full scan with the leq bit test.
    std::vector<std::uint32_t> upset_indices(const TruthTable& x) const {
        if (x.n != n_) throw std::invalid_argument("upset_indices: arity mismatch");
        std::vector<std::uint32_t> out;
        for (std::size_t i = 0; i < words_.size(); ++i)
            if ((x.lo & ~words_[i]) == 0) out.push_back(static_cast<std::uint32_t>(i));
        return out;
    }

    std::vector<std::uint32_t> downset_indices(const TruthTable& y) const {
        if (y.n != n_) throw std::invalid_argument("downset_indices: arity mismatch");
        std::vector<std::uint32_t> out;
        for (std::size_t i = 0; i < words_.size(); ++i)
            if ((words_[i] & ~y.lo) == 0) out.push_back(static_cast<std::uint32_t>(i));
        return out;
    }

    std::vector<std::uint32_t> interval_indices(const TruthTable& x,
                                                const TruthTable& y) const {
        if (x.n != n_ || y.n != n_)
            throw std::invalid_argument("interval_indices: arity mismatch");
        std::vector<std::uint32_t> out;
        for (std::size_t i = 0; i < words_.size(); ++i)
            if ((x.lo & ~words_[i]) == 0 && (words_[i] & ~y.lo) == 0)
                out.push_back(static_cast<std::uint32_t>(i));
        return out;
    }

private:
    int n_;
    std::vector<std::uint64_t> words_; // strictly increasing packed values
};

// Builds D_n bottom-up: D_{k+1} is the set of concatenations f0|f1 over all
// pairs f0 <= f1 in D_k. Iterating f1 outer and f0 inner keeps the output
// sorted, since f1 occupies the high half of the packed word.
inline PosetLevel generate(int n) {
    if (n < 0 || n > 6)
        throw std::invalid_argument("generate: only n <= 6 fits in memory (D_7 is streaming-only)");
    std::vector<std::uint64_t> cur = {0, 1};
    for (int k = 1; k <= n; ++k) {
        const unsigned half = 1u << (k - 1);
        std::vector<std::uint64_t> next;
        next.reserve(k < 7 ? kDedekind[k] : 0);
        for (std::uint64_t f1 : cur)
            for (std::uint64_t f0 : cur) {
                if (f0 > f1) break; // sorted: f0 <= f1 numerically follows from subset order scan
                if ((f0 & ~f1) == 0) next.push_back(f0 | (f1 << half));
            }
        cur = std::move(next);
    }
    return PosetLevel(n, std::move(cur));
}

// .dn file: "MBFD", version 1, arity byte, 8-byte count, payload of packed
// elements (8 bytes each for n <= 6), 8-byte XOR-fold checksum of the payload.
inline void save_level(const PosetLevel& level, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw io_error("cannot open " + path + " for writing");
    os.write("MBFD", 4);
    detail::write_u8(os, 1);
    detail::write_u8(os, static_cast<std::uint8_t>(level.arity()));
    detail::write_u64(os, level.size());
    detail::XorFold x;
    for (std::uint64_t w : level.words()) {
        detail::write_u64(os, w);
        x.add_u64(w);
    }
    detail::write_u64(os, x.value());
    if (!os) throw io_error("write failure on " + path);
}

inline PosetLevel load_level(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw io_error("cannot open " + path);
    detail::expect_magic(is, "MBFD");
    if (detail::read_u8(is) != 1) throw io_error("unsupported .dn version");
    const int n = detail::read_u8(is);
    if (n > 6) throw io_error(".dn arity above 6 unsupported");
    const std::uint64_t count = detail::read_u64(is);
    std::vector<std::uint64_t> words(count);
    detail::XorFold x;
    for (auto& w : words) {
        w = detail::read_u64(is);
        x.add_u64(w);
    }
    if (detail::read_u64(is) != x.value()) throw io_error("checksum mismatch in " + path);
    return PosetLevel(n, std::move(words));
}

} // namespace mbf
