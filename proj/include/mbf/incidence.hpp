#pragma once

#include <bit>
#include <cstdint>
#include <fstream>
#include <thread>
#include <vector>

#include "mbf/io.hpp"
#include "mbf/poset.hpp"
#include "mbf/wide.hpp"

namespace mbf {

// Incidence matrix of D_n as packed bit rows: row i, bit j = 1 iff
// element_i <= element_j under the level's sorted indexing.
class IncidenceMatrix {
public:
    IncidenceMatrix(int n, std::uint32_t dim)
        : n_(n), dim_(dim), wpr_((dim + 63) / 64), bits_(std::size_t{wpr_} * dim, 0) {}

    int arity() const { return n_; }
    std::uint32_t dim() const { return dim_; }
    std::size_t words_per_row() const { return wpr_; }
    const std::uint64_t* row(std::size_t i) const { return bits_.data() + i * wpr_; }
    std::uint64_t* row(std::size_t i) { return bits_.data() + i * wpr_; }

    bool get(std::size_t i, std::size_t j) const {
        return (row(i)[j >> 6] >> (j & 63)) & 1;
    }
    void set(std::size_t i, std::size_t j) {
        row(i)[j >> 6] |= 1ull << (j & 63);
    }

    std::uint64_t popcount() const {
        std::uint64_t c = 0;
        for (std::uint64_t w : bits_) c += std::popcount(w);
        return c;
    }

    IncidenceMatrix transposed() const {
        IncidenceMatrix t(n_, dim_);
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j)
                if (get(i, j)) t.set(j, i);
        return t;
    }

private:
    int n_;
    std::uint32_t dim_;
    std::size_t wpr_;
    std::vector<std::uint64_t> bits_;
};

// Dense matrix of exact interval sizes, entry (i,j) = #[element_i, element_j].
// 32-bit entries suffice through n = 5 (max entry d_5 = 7581).
class IntervalMatrix {
public:
    IntervalMatrix(int n, std::uint32_t dim)
        : n_(n), dim_(dim), entries_(std::size_t{dim} * dim, 0) {}

    int arity() const { return n_; }
    std::uint32_t dim() const { return dim_; }
    std::uint32_t at(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }
    std::uint32_t& at(std::size_t i, std::size_t j) { return entries_[i * dim_ + j]; }
    const std::uint32_t* row(std::size_t i) const { return entries_.data() + i * dim_; }
    const std::vector<std::uint32_t>& entries() const { return entries_; }

    friend bool operator==(const IntervalMatrix& a, const IntervalMatrix& b) {
        return a.n_ == b.n_ && a.dim_ == b.dim_ && a.entries_ == b.entries_;
    }

private:
    int n_;
    std::uint32_t dim_;
    std::vector<std::uint32_t> entries_;
};

inline IncidenceMatrix build_incidence(const PosetLevel& level) {
    if (level.arity() > 5)
        throw std::invalid_argument("build_incidence: n > 5 is out of reach "
                                    "(the D_6 matrix needs terabytes)");
    const std::uint32_t dim = static_cast<std::uint32_t>(level.size());
    IncidenceMatrix m(level.arity(), dim);
    const auto& w = level.words();
    for (std::size_t i = 0; i < dim; ++i) {
        std::uint64_t* r = m.row(i);
        const std::uint64_t x = w[i];
        for (std::size_t j = 0; j < dim; ++j)
            if ((x & ~w[j]) == 0) r[j >> 6] |= 1ull << (j & 63);
    }
    return m;
}

// (M)^2 via popcount of row-AND-column; the transpose is materialized once.
// Rows are squared in parallel blocks, each worker owning disjoint output.
inline IntervalMatrix square(const IncidenceMatrix& m, unsigned threads = 0) {
    const std::uint32_t dim = m.dim();
    const std::size_t wpr = m.words_per_row();
    const IncidenceMatrix t = m.transposed();
    IntervalMatrix sq(m.arity(), dim);

    if (threads == 0) threads = std::thread::hardware_concurrency();
    if (threads == 0) threads = 1;

    auto work = [&](std::uint32_t lo, std::uint32_t hi) {
        for (std::uint32_t i = lo; i < hi; ++i) {
            const std::uint64_t* ri = m.row(i);
            for (std::uint32_t j = 0; j < dim; ++j) {
                const std::uint64_t* cj = t.row(j);
                std::uint64_t c = 0;
                for (std::size_t k = 0; k < wpr; ++k)
                    c += std::popcount(ri[k] & cj[k]);
                sq.at(i, j) = static_cast<std::uint32_t>(c);
            }
        }
    };

    if (threads == 1 || dim < 64) {
        work(0, dim);
    } else {
        std::vector<std::thread> pool;
        const std::uint32_t block = (dim + threads - 1) / threads;
        for (unsigned k = 0; k < threads; ++k) {
            const std::uint32_t lo = k * block;
            const std::uint32_t hi = std::min(dim, lo + block);
            if (lo < hi) pool.emplace_back(work, lo, hi);
        }
        for (auto& th : pool) th.join();
    }
    return sq;
}

inline u128 sum(const IntervalMatrix& m) {
    u128 s = 0;
    for (std::uint32_t v : m.entries()) s += v;
    return s;
}

inline u128 sumsq(const IntervalMatrix& m) {
    u128 s = 0;
    for (std::uint32_t v : m.entries()) s += u128(v) * v;
    return s;
}

// .mxm file: "MBFM", version 1, arity byte, 4-byte dim, 1-byte entry width
// (2 or 4), row-major little-endian payload, 8-byte XOR-fold checksum.
inline void save_matrix(const IntervalMatrix& m, const std::string& path,
                        int entry_width = 4) {
    if (entry_width != 2 && entry_width != 4)
        throw std::invalid_argument("save_matrix: entry width must be 2 or 4");
    std::ofstream os(path, std::ios::binary);
    if (!os) throw io_error("cannot open " + path + " for writing");
    os.write("MBFM", 4);
    detail::write_u8(os, 1);
    detail::write_u8(os, static_cast<std::uint8_t>(m.arity()));
    detail::write_u32(os, m.dim());
    detail::write_u8(os, static_cast<std::uint8_t>(entry_width));
    detail::XorFold x;
    std::vector<char> buf;
    buf.reserve(std::size_t{m.dim()} * entry_width);
    for (std::uint32_t i = 0; i < m.dim(); ++i) {
        buf.clear();
        for (std::uint32_t j = 0; j < m.dim(); ++j) {
            const std::uint32_t v = m.at(i, j);
            if (entry_width == 2 && v > 0xFFFF)
                throw std::invalid_argument("save_matrix: entry exceeds 16-bit width");
            for (int b = 0; b < entry_width; ++b) {
                const std::uint8_t byte = static_cast<std::uint8_t>((v >> (8 * b)) & 0xFF);
                buf.push_back(static_cast<char>(byte));
                x.add_byte(byte);
            }
        }
        os.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    }
    detail::write_u64(os, x.value());
    if (!os) throw io_error("write failure on " + path);
}

inline IntervalMatrix load_matrix(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw io_error("cannot open " + path);
    detail::expect_magic(is, "MBFM");
    if (detail::read_u8(is) != 1) throw io_error("unsupported .mxm version");
    const int n = detail::read_u8(is);
    const std::uint32_t dim = detail::read_u32(is);
    const int width = detail::read_u8(is);
    if (width != 2 && width != 4) throw io_error("bad .mxm entry width");
    if (n <= 5 && dim != kDedekind[n]) throw io_error(".mxm dim does not match arity");
    IntervalMatrix m(n, dim);
    detail::XorFold x;
    std::vector<char> buf(std::size_t{dim} * width);
    for (std::uint32_t i = 0; i < dim; ++i) {
        if (!is.read(buf.data(), static_cast<std::streamsize>(buf.size())))
            throw io_error("truncated .mxm payload");
        for (std::uint32_t j = 0; j < dim; ++j) {
            std::uint32_t v = 0;
            for (int b = 0; b < width; ++b) {
                const std::uint8_t byte =
                    static_cast<std::uint8_t>(static_cast<unsigned char>(buf[j * width + b]));
                v |= std::uint32_t(byte) << (8 * b);
                x.add_byte(byte);
            }
            m.at(i, j) = v;
        }
    }
    if (detail::read_u64(is) != x.value()) throw io_error("checksum mismatch in " + path);
    return m;
}

// Human-readable dump; guarded because anything big is useless as CSV.
inline void export_csv(const IntervalMatrix& m, std::ostream& os) {
    if (m.dim() > 200)
        throw std::invalid_argument("export_csv: dim > 200");
    for (std::uint32_t i = 0; i < m.dim(); ++i) {
        for (std::uint32_t j = 0; j < m.dim(); ++j) {
            if (j) os << ',';
            os << m.at(i, j);
        }
        os << '\n';
    }
}

} // namespace mbf
