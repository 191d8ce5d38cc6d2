#pragma once

#include <cstdint>

#include "mbf/incidence.hpp"
#include "mbf/poset.hpp"
#include "mbf/truth_table.hpp"

namespace mbf {

namespace detail {

inline void require_query(const TruthTable& x, const IntervalMatrix& sq,
                          const PosetLevel& level, const char* who) {
    if (sq.arity() != level.arity() || x.n != level.arity() + 2)
        throw std::invalid_argument(std::string(who) + ": arity mismatch (need x of arity base+2)");
    if (!is_monotone(x))
        throw std::invalid_argument(std::string(who) + ": input is not monotone");
}

} // namespace detail

// #[x, top] in D_{n+2} from the precomputed (M_{D_n})^2.
//
// x splits into quarters (x0, x1, x2, x3); a tuple y = (y0, y1, y2, y3) lies
// above x iff y0 >= x0, y3 >= x3, y1 in [y0|x1, y3] and y2 in [y0|x2, y3],
// so each (y0, y3) pair contributes sq(y0|x1, y3) * sq(y0|x2, y3). The two
// index lookups do not depend on y3 and are hoisted out of the inner loop.
// Fits 64 bits through base 5: total <= d_7 ~ 2.4e12, addends <= 7581^2.
inline std::uint64_t upset_size_alg1(const TruthTable& x, const IntervalMatrix& sq,
                                     const PosetLevel& level) {
    detail::require_query(x, sq, level, "upset_size_alg1");
    const Quarters q = decompose4(x);
    const auto y0s = level.upset_indices(q.x0);
    const auto y3s = level.upset_indices(q.x3);
    std::uint64_t s = 0;
    for (std::uint32_t i0 : y0s) {
        const TruthTable y0 = level.element(i0);
        const std::size_t a = level.index_of(table_union(y0, q.x1));
        const std::size_t b = level.index_of(table_union(y0, q.x2));
        const std::uint32_t* ra = sq.row(a);
        const std::uint32_t* rb = sq.row(b);
        for (std::uint32_t i3 : y3s)
            s += std::uint64_t(ra[i3]) * rb[i3];
    }
    return s;
}

// #[x, y] in D_{n+2}; 0 when x is not below y (the empty interval).
inline std::uint64_t interval_size_alg2(const TruthTable& x, const TruthTable& y,
                                        const IntervalMatrix& sq, const PosetLevel& level) {
    detail::require_query(x, sq, level, "interval_size_alg2");
    if (y.n != x.n)
        throw std::invalid_argument("interval_size_alg2: arity mismatch between x and y");
    if (!is_monotone(y))
        throw std::invalid_argument("interval_size_alg2: y is not monotone");
    if (!leq(x, y)) return 0;
    const Quarters qx = decompose4(x);
    const Quarters qy = decompose4(y);
    const auto f0s = level.interval_indices(qx.x0, qy.x0);
    const auto f3s = level.interval_indices(qx.x3, qy.x3);
    std::uint64_t s = 0;
    for (std::uint32_t i0 : f0s) {
        const TruthTable f0 = level.element(i0);
        const std::size_t a = level.index_of(table_union(f0, qx.x1));
        const std::size_t b = level.index_of(table_union(f0, qx.x2));
        const std::uint32_t* ra = sq.row(a);
        const std::uint32_t* rb = sq.row(b);
        for (std::uint32_t i3 : f3s) {
            const TruthTable f3 = level.element(i3);
            const std::size_t c = level.index_of(table_intersection(f3, qy.x1));
            const std::size_t d = level.index_of(table_intersection(f3, qy.x2));
            s += std::uint64_t(ra[c]) * rb[d];
        }
    }
    return s;
}

// Brute-force scan oracle: counts h in the level with x <= h <= y.
inline std::uint64_t oracle_interval_size(const TruthTable& x, const TruthTable& y,
                                          const PosetLevel& level) {
    if (x.n != level.arity() || y.n != level.arity())
        throw std::invalid_argument("oracle_interval_size: arity mismatch");
    std::uint64_t c = 0;
    for (std::uint64_t w : level.words())
        c += (x.lo & ~w) == 0 && (w & ~y.lo) == 0;
    return c;
}

inline std::uint64_t oracle_upset_size(const TruthTable& x, const PosetLevel& level) {
    if (x.n != level.arity())
        throw std::invalid_argument("oracle_upset_size: arity mismatch");
    std::uint64_t c = 0;
    for (std::uint64_t w : level.words())
        c += (x.lo & ~w) == 0;
    return c;
}

} // namespace mbf
