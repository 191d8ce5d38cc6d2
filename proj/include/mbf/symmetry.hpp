#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <thread>
#include <vector>

#include "mbf/io.hpp"
#include "mbf/poset.hpp"
#include "mbf/truth_table.hpp"

namespace mbf {

inline constexpr int kFactorial[8] = {1, 1, 2, 6, 24, 120, 720, 5040};

// Position remaps for the full S_n action on truth tables: entry p of a
// remap row gives the position whose function value lands at position p
// after permuting the input variables.
class PermTable {
public:
    explicit PermTable(int n) : n_(n), size_(1u << n) {
        if (n < 0 || n > 7) throw std::invalid_argument("PermTable: arity out of range");
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 1);
        do {
            append_remap(perm);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }

    int arity() const { return n_; }
    int count() const { return kFactorial[n_]; }
    unsigned positions() const { return size_; }
    const std::uint8_t* remap(int p) const { return remaps_.data() + std::size_t(p) * size_; }

    // g(x_1..x_n) = f(x_{perm(1)},..,x_{perm(n)}); coordinate k of position p
    // is bit n-k, so the source position gathers p's coordinate perm(k) into slot k.
    static std::vector<std::uint8_t> remap_of(const std::vector<int>& perm) {
        const int n = static_cast<int>(perm.size());
        std::vector<bool> seen(n, false);
        for (int v : perm) {
            if (v < 1 || v > n || seen[v - 1])
                throw std::invalid_argument("invalid permutation of {1..n}");
            seen[v - 1] = true;
        }
        const unsigned size = 1u << n;
        std::vector<std::uint8_t> out(size);
        for (unsigned p = 0; p < size; ++p) {
            unsigned q = 0;
            for (int k = 1; k <= n; ++k) {
                const unsigned coord = (p >> (n - perm[k - 1])) & 1;
                q |= coord << (n - k);
            }
            out[p] = static_cast<std::uint8_t>(q);
        }
        return out;
    }

private:
    void append_remap(const std::vector<int>& perm) {
        auto r = remap_of(perm);
        remaps_.insert(remaps_.end(), r.begin(), r.end());
    }

    int n_;
    unsigned size_;
    std::vector<std::uint8_t> remaps_;
};

inline TruthTable apply_remap(const TruthTable& f, const std::uint8_t* remap) {
    TruthTable g(f.n, 0, 0);
    const unsigned size = static_cast<unsigned>(f.size());
    for (unsigned p = 0; p < size; ++p)
        if (f.bit(remap[p])) g.set_bit(p);
    return g;
}

inline TruthTable apply_perm(const TruthTable& f, const std::vector<int>& perm) {
    if (static_cast<int>(perm.size()) != f.n)
        throw std::invalid_argument("apply_perm: permutation length != arity");
    return apply_remap(f, PermTable::remap_of(perm).data());
}

// Numerically smallest truth table in the orbit of f under S_n.
inline TruthTable canonical(const TruthTable& f, const PermTable& pt) {
    TruthTable best = f;
    for (int p = 1; p < pt.count(); ++p) {
        TruthTable g = apply_remap(f, pt.remap(p));
        if (g < best) best = g;
    }
    return best;
}

// Orbit size: the number of distinct images of f under all n! permutations.
inline std::uint32_t gamma(const TruthTable& f, const PermTable& pt) {
    std::vector<TruthTable> images;
    images.reserve(pt.count());
    for (int p = 0; p < pt.count(); ++p)
        images.push_back(apply_remap(f, pt.remap(p)));
    std::sort(images.begin(), images.end());
    auto end = std::unique(images.begin(), images.end(),
                           [](const TruthTable& a, const TruthTable& b) { return a == b; });
    return static_cast<std::uint32_t>(end - images.begin());
}

// One equivalence class of D_n: canonical representative and orbit size.
struct OrbitRecord {
    TruthTable rep;
    std::uint32_t gamma;
};

// Scans the full D_n array keeping each f that equals its own canonical
// form. The scan is chunked across workers; any image below f aborts the
// candidate early, so most elements touch only a few permutations.
inline std::vector<OrbitRecord> enumerate_classes(int n, unsigned threads = 0) {
    if (n < 0 || n > 6)
        throw std::invalid_argument("enumerate_classes: n = 7 unsupported "
                                    "(supply an external .rn file for R_7)");
    const PosetLevel level = generate(n);
    const PermTable pt(n);
    if (threads == 0) threads = std::thread::hardware_concurrency();
    if (threads == 0) threads = 1;

    const std::size_t total = level.size();
    std::vector<std::vector<OrbitRecord>> hits(threads);

    auto work = [&](unsigned t) {
        const std::size_t lo = total * t / threads;
        const std::size_t hi = total * (t + 1) / threads;
        for (std::size_t i = lo; i < hi; ++i) {
            const TruthTable f = level.element(i);
            bool canon = true;
            for (int p = 1; p < pt.count() && canon; ++p)
                if (apply_remap(f, pt.remap(p)) < f) canon = false;
            if (canon) hits[t].push_back({f, gamma(f, pt)});
        }
    };

    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }

    std::vector<OrbitRecord> out;
    for (auto& h : hits) out.insert(out.end(), h.begin(), h.end());
    // chunks were scanned in sorted order, so the concatenation is sorted
    return out;
}

// .rn file: "MBFR", version 1, arity byte, 8-byte record count, records of
// packed rep (8 bytes for n <= 6, 16 low-then-high for n = 7) + 4-byte gamma,
// then an 8-byte XOR-fold checksum of the record payload.
inline void save_classes(const std::vector<OrbitRecord>& classes, int n,
                         const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw io_error("cannot open " + path + " for writing");
    os.write("MBFR", 4);
    detail::write_u8(os, 1);
    detail::write_u8(os, static_cast<std::uint8_t>(n));
    detail::write_u64(os, classes.size());
    detail::XorFold x;
    for (const auto& c : classes) {
        detail::write_u64(os, c.rep.lo);
        x.add_u64(c.rep.lo);
        if (n == 7) {
            detail::write_u64(os, c.rep.hi);
            x.add_u64(c.rep.hi);
        }
        detail::write_u32(os, c.gamma);
        x.add_u32(c.gamma);
    }
    detail::write_u64(os, x.value());
    if (!os) throw io_error("write failure on " + path);
}

struct ClassFile {
    int n;
    std::vector<OrbitRecord> classes;
};

inline ClassFile load_classes(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw io_error("cannot open " + path);
    detail::expect_magic(is, "MBFR");
    if (detail::read_u8(is) != 1) throw io_error("unsupported .rn version");
    const int n = detail::read_u8(is);
    if (n > 7) throw io_error(".rn arity above 7 unsupported");
    const std::uint64_t count = detail::read_u64(is);
    std::vector<OrbitRecord> classes;
    classes.reserve(count);
    detail::XorFold x;
    for (std::uint64_t i = 0; i < count; ++i) {
        const std::uint64_t lo = detail::read_u64(is);
        x.add_u64(lo);
        std::uint64_t hi = 0;
        if (n == 7) {
            hi = detail::read_u64(is);
            x.add_u64(hi);
        }
        const std::uint32_t g = detail::read_u32(is);
        x.add_u32(g);
        classes.push_back({TruthTable(n, lo, hi), g});
    }
    if (detail::read_u64(is) != x.value()) throw io_error("checksum mismatch in " + path);
    return {n, std::move(classes)};
}

} // namespace mbf
