#pragma once

#include <atomic>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "mbf/intervals.hpp"
#include "mbf/io.hpp"
#include "mbf/symmetry.hpp"
#include "mbf/wide.hpp"

namespace mbf {

// A class sweep: Alg1 on every representative in a .rn file, weighted by
// orbit size. Totalling over R_{k} with a base-(k-2) matrix yields d_{k+1}.
struct SweepConfig {
    int base_n = 4;                 // matrix arity; classes have arity base_n + 2
    std::string matrix_path;
    std::string classes_path;
    unsigned threads = 0;           // 0 = hardware concurrency
    std::size_t chunk_size = 64;    // classes per work unit
    std::string checkpoint_path;    // empty = no checkpointing
    std::size_t checkpoint_every = 16; // committed chunks between checkpoint writes
    std::string out_path;           // optional per-class (rep, count) stream
    std::size_t stop_after_chunks = 0; // test hook: abort after N committed chunks
};

struct SweepResult {
    u128 total = 0;
    std::uint64_t classes_done = 0;
    bool completed = false;
};

namespace detail {

struct Checkpoint {
    int base_n = -1;
    std::size_t chunk_size = 0;
    std::uint64_t matrix_checksum = 0;
    std::uint64_t classes_checksum = 0;
    std::size_t next_chunk = 0;
    u128 total = 0;
};

inline void write_checkpoint(const std::string& path, const Checkpoint& c) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp);
        if (!os) throw io_error("cannot write checkpoint " + tmp);
        os << "MBFSWEEP 1\n"
           << c.base_n << ' ' << c.chunk_size << '\n'
           << c.matrix_checksum << ' ' << c.classes_checksum << '\n'
           << c.next_chunk << ' ' << to_string(c.total) << '\n';
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw io_error("cannot replace checkpoint " + path);
}

inline bool read_checkpoint(const std::string& path, Checkpoint& c) {
    std::ifstream is(path);
    if (!is) return false;
    std::string magic;
    int version = 0;
    std::string total_text;
    is >> magic >> version >> c.base_n >> c.chunk_size >> c.matrix_checksum >>
        c.classes_checksum >> c.next_chunk >> total_text;
    if (!is || magic != "MBFSWEEP" || version != 1)
        throw io_error("malformed checkpoint " + path);
    c.total = parse_u128(total_text);
    return true;
}

} // namespace detail

// Workers pull fixed-size chunks of the class array from a shared cursor
// (class costs vary by orders of magnitude, so static splits balance badly).
// A single collector commits chunk sums in index order, which keeps the
// running total, the per-class output stream, and checkpoints exact and
// schedule-independent.
inline SweepResult run_sweep(const SweepConfig& cfg) {
    if (cfg.base_n < 2 || cfg.base_n > 5)
        throw std::invalid_argument("run_sweep: base arity must be in 2..5");
    const IntervalMatrix sq = load_matrix(cfg.matrix_path);
    if (sq.arity() != cfg.base_n)
        throw std::invalid_argument("run_sweep: matrix arity does not match base");
    const ClassFile cf = load_classes(cfg.classes_path);
    if (cf.n != cfg.base_n + 2)
        throw std::invalid_argument("run_sweep: class arity must be base + 2");
    const PosetLevel level = generate(cfg.base_n);

    const std::size_t chunk = cfg.chunk_size ? cfg.chunk_size : 64;
    const std::size_t n_chunks = (cf.classes.size() + chunk - 1) / chunk;

    detail::Checkpoint ckpt;
    ckpt.base_n = cfg.base_n;
    ckpt.chunk_size = chunk;
    if (!cfg.checkpoint_path.empty()) {
        ckpt.matrix_checksum = file_checksum(cfg.matrix_path);
        ckpt.classes_checksum = file_checksum(cfg.classes_path);
        detail::Checkpoint prev;
        if (detail::read_checkpoint(cfg.checkpoint_path, prev)) {
            if (prev.base_n != ckpt.base_n || prev.chunk_size != chunk ||
                prev.matrix_checksum != ckpt.matrix_checksum ||
                prev.classes_checksum != ckpt.classes_checksum)
                throw io_error("checkpoint does not match this sweep's inputs");
            ckpt.next_chunk = prev.next_chunk;
            ckpt.total = prev.total;
        }
    }

    std::ofstream out;
    if (!cfg.out_path.empty()) {
        // on resume, records for committed chunks are already on disk
        out.open(cfg.out_path, ckpt.next_chunk == 0
                                   ? std::ios::binary | std::ios::trunc
                                   : std::ios::binary | std::ios::app);
        if (!out) throw io_error("cannot open " + cfg.out_path + " for writing");
    }

    unsigned threads = cfg.threads ? cfg.threads : std::thread::hardware_concurrency();
    if (threads == 0) threads = 1;

    struct ChunkResult {
        u128 sum = 0;
        std::vector<std::pair<TruthTable, std::uint64_t>> counts;
    };

    std::atomic<std::size_t> cursor{ckpt.next_chunk};
    std::atomic<bool> stop{false};
    std::mutex mu;
    std::map<std::size_t, ChunkResult> pending;
    std::size_t frontier = ckpt.next_chunk;
    u128 total = ckpt.total;
    std::size_t committed_since_start = 0;
    std::size_t last_checkpointed = frontier;

    auto commit_ready = [&] {
        // caller holds mu
        bool advanced = false;
        for (auto it = pending.find(frontier); it != pending.end();
             it = pending.find(frontier)) {
            total += it->second.sum;
            if (out.is_open()) {
                for (const auto& [rep, count] : it->second.counts) {
                    detail::write_u64(out, rep.lo);
                    if (cf.n == 7) detail::write_u64(out, rep.hi);
                    detail::write_u64(out, count);
                }
            }
            pending.erase(it);
            ++frontier;
            ++committed_since_start;
            advanced = true;
        }
        if (advanced && !cfg.checkpoint_path.empty() &&
            (frontier - last_checkpointed >= cfg.checkpoint_every || frontier == n_chunks)) {
            if (out.is_open()) out.flush();
            detail::Checkpoint c = ckpt;
            c.next_chunk = frontier;
            c.total = total;
            detail::write_checkpoint(cfg.checkpoint_path, c);
            last_checkpointed = frontier;
        }
        if (cfg.stop_after_chunks && committed_since_start >= cfg.stop_after_chunks)
            stop.store(true, std::memory_order_relaxed);
    };

    auto work = [&] {
        while (!stop.load(std::memory_order_relaxed)) {
            const std::size_t c = cursor.fetch_add(1, std::memory_order_relaxed);
            if (c >= n_chunks) break;
            ChunkResult res;
            const std::size_t lo = c * chunk;
            const std::size_t hi = std::min(cf.classes.size(), lo + chunk);
            res.counts.reserve(hi - lo);
            for (std::size_t i = lo; i < hi; ++i) {
                const auto& rec = cf.classes[i];
                const std::uint64_t count = upset_size_alg1(rec.rep, sq, level);
                res.sum += u128(count) * rec.gamma;
                res.counts.emplace_back(rec.rep, count);
            }
            std::lock_guard lock(mu);
            pending[c] = std::move(res);
            commit_ready();
        }
    };

    if (threads == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    SweepResult r;
    r.total = total;
    r.classes_done = std::min(frontier * chunk, cf.classes.size());
    r.completed = frontier == n_chunks;
    if (r.completed && !cfg.checkpoint_path.empty() && frontier != last_checkpointed) {
        detail::Checkpoint c = ckpt;
        c.next_chunk = frontier;
        c.total = total;
        detail::write_checkpoint(cfg.checkpoint_path, c);
    }
    return r;
}

} // namespace mbf
