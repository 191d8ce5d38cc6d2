// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// nonzero if any fail. Heavier artifacts (D_6, R_6, the base-4/5 matrices)
// are built once and shared across criteria.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <random>
#include <string>

#include "mbf/mbf.hpp"

using namespace mbf;

namespace {

int failures = 0;
std::chrono::steady_clock::time_point t0;

void begin(int) { t0 = std::chrono::steady_clock::now(); }

void report(int id, const std::string& name, bool ok) {
    const auto dt = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    std::printf("%s  criterion %2d  %-55s (%.1fs)\n", ok ? "PASS" : "FAIL", id,
                name.c_str(), dt / 1000.0);
    std::fflush(stdout);
    if (!ok) ++failures;
}

} // namespace

int main() {
    // ---- 1: d_n by direct generation, n = 0..6
    begin(1);
    bool ok = true;
    for (int n = 0; n <= 6; ++n)
        ok = ok && generate(n).size() == kDedekind[n];
    report(1, "d_0..d_6 by direct generation", ok);

    // ---- 2: r_n and the gamma partition, n = 0..6
    begin(2);
    ok = true;
    std::vector<OrbitRecord> r6;
    for (int n = 0; n <= 6; ++n) {
        auto classes = enumerate_classes(n);
        u128 tg = 0;
        for (const auto& c : classes) tg += c.gamma;
        ok = ok && classes.size() == kClassCount[n] && tg == kDedekind[n];
        if (n == 6) r6 = std::move(classes);
    }
    report(2, "r_0..r_6 with sum of gamma == d_n", ok);

    // ---- 3: the two printed 6x6 matrices for D_2
    begin(3);
    {
        static const char* kD2[] = {"0000", "0001", "0011", "0101", "0111", "1111"};
        static const int kInc[6][6] = {
            {1, 1, 1, 1, 1, 1}, {0, 1, 1, 1, 1, 1}, {0, 0, 1, 0, 1, 1},
            {0, 0, 0, 1, 1, 1}, {0, 0, 0, 0, 1, 1}, {0, 0, 0, 0, 0, 1}};
        static const int kSq[6][6] = {
            {1, 2, 3, 3, 5, 6}, {0, 1, 2, 2, 4, 5}, {0, 0, 1, 0, 2, 3},
            {0, 0, 0, 1, 2, 3}, {0, 0, 0, 0, 1, 2}, {0, 0, 0, 0, 0, 1}};
        const PosetLevel d2 = generate(2);
        const IncidenceMatrix m = build_incidence(d2);
        const IntervalMatrix sq = square(m);
        std::size_t idx[6];
        for (int i = 0; i < 6; ++i) idx[i] = d2.index_of(parse_tt(kD2[i]));
        ok = true;
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j)
                ok = ok && int(m.get(idx[i], idx[j])) == kInc[i][j] &&
                     sq.at(idx[i], idx[j]) == std::uint32_t(kSq[i][j]);
    }
    report(3, "D_2 incidence matrix and its square, entry for entry", ok);

    // ---- 4: SumSq identity for n = 0..5 (n = 5 yields d_7)
    begin(4);
    ok = true;
    for (int n = 0; n <= 5; ++n) {
        const IntervalMatrix sq = square(build_incidence(generate(n)));
        ok = ok && sumsq(sq) == kDedekind[n + 2];
    }
    report(4, "SumSq of the squared matrix == d_{n+2}, n = 0..5", ok);

    const PosetLevel d2 = generate(2);
    const IntervalMatrix sq2 = square(build_incidence(d2));
    const PosetLevel d4 = generate(4);
    const IntervalMatrix sq4 = square(build_incidence(d4));

    // ---- 5: Alg1 against brute force (all of D_4, all R_6 representatives)
    begin(5);
    ok = true;
    for (std::size_t i = 0; i < d4.size() && ok; ++i) {
        const TruthTable x = d4.element(i);
        ok = upset_size_alg1(x, sq2, d2) == oracle_upset_size(x, d4);
    }
    const PosetLevel d6 = generate(6);
    for (std::size_t i = 0; i < r6.size() && ok; ++i)
        ok = upset_size_alg1(r6[i].rep, sq4, d4) == oracle_upset_size(r6[i].rep, d6);
    report(5, "Alg1 == brute-force up-set count (D_4 and R_6)", ok);

    // ---- 6: Alg2 against the squared D_4 matrix
    begin(6);
    ok = true;
    const IntervalMatrix sq4_full = square(build_incidence(d4));
    for (std::size_t i = 0; i < d4.size() && ok; ++i)
        for (std::size_t j = 0; j < d4.size() && ok; ++j)
            ok = interval_size_alg2(d4.element(i), d4.element(j), sq2, d2) ==
                 sq4_full.at(i, j);
    report(6, "Alg2 == squared D_4 matrix on every pair", ok);

    // ---- 7: d_7 from the class identity over R_6
    begin(7);
    {
        u128 d7 = 0;
        for (const auto& c : r6)
            d7 += u128(upset_size_alg1(c.rep, sq4, d4)) * c.gamma;
        ok = d7 == kDedekind[7];
    }
    report(7, "sum over R_6 of Alg1 * gamma == d_7", ok);

    // ---- 8: d_7 as a single Alg1 call at base 5
    begin(8);
    {
        const PosetLevel d5 = generate(5);
        const IntervalMatrix sq5 = square(build_incidence(d5));
        ok = upset_size_alg1(TruthTable::zeros(7), sq5, d5) == kDedekind[7];
    }
    report(8, "Alg1(bottom of D_7, base 5) == d_7", ok);

    // ---- 9: permutation invariance of Alg1 over S_6
    begin(9);
    {
        const PermTable pt(6);
        std::mt19937_64 rng(20240817);
        ok = true;
        for (int t = 0; t < 100 && ok; ++t) {
            const TruthTable x = d6.element(rng() % d6.size());
            const std::uint64_t expected = upset_size_alg1(x, sq4, d4);
            for (int p = 0; p < pt.count() && ok; ++p)
                ok = upset_size_alg1(apply_remap(x, pt.remap(p)), sq4, d4) == expected;
        }
    }
    report(9, "Alg1 invariant under all of S_6 on 100 random x", ok);

    // ---- 10: sweep determinism across worker counts and a resume cycle
    begin(10);
    {
        const std::string mx3 = "acc_base3.mxm", mx4 = "acc_base4.mxm";
        const std::string r5f = "acc_r5.rn", r6f = "acc_r6.rn";
        const std::string ckpt = "acc_sweep.ckpt";
        save_matrix(square(build_incidence(generate(3))), mx3);
        save_matrix(sq4, mx4);
        save_classes(enumerate_classes(5), 5, r5f);
        save_classes(r6, 6, r6f);

        ok = true;
        const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
        struct Case { int base; const std::string* mx; const std::string* cls; u128 want; };
        const Case cases[] = {{3, &mx3, &r5f, kDedekind[6]}, {4, &mx4, &r6f, kDedekind[7]}};
        for (const auto& c : cases) {
            for (unsigned t : {1u, 4u, hw}) {
                SweepConfig cfg;
                cfg.base_n = c.base;
                cfg.matrix_path = *c.mx;
                cfg.classes_path = *c.cls;
                cfg.threads = t;
                const SweepResult r = run_sweep(cfg);
                ok = ok && r.completed && r.total == c.want;
            }
            // interrupt partway, then resume from the checkpoint
            std::remove(ckpt.c_str());
            SweepConfig cfg;
            cfg.base_n = c.base;
            cfg.matrix_path = *c.mx;
            cfg.classes_path = *c.cls;
            cfg.threads = 4;
            cfg.chunk_size = 16;
            cfg.checkpoint_path = ckpt;
            cfg.checkpoint_every = 2;
            cfg.stop_after_chunks = 5;
            ok = ok && !run_sweep(cfg).completed;
            cfg.stop_after_chunks = 0;
            const SweepResult resumed = run_sweep(cfg);
            ok = ok && resumed.completed && resumed.total == c.want;
        }
        std::remove(mx3.c_str());
        std::remove(mx4.c_str());
        std::remove(r5f.c_str());
        std::remove(r6f.c_str());
        std::remove(ckpt.c_str());
    }
    report(10, "R_5/R_6 sweep totals: worker counts {1,4,max} + resume", ok);

    // ---- 11 (optional, needs an external R_7 file): d_8 by the full sweep.
    // Exercised through `mbf_cli verify --level full`; skipped here.
    std::printf("SKIP  criterion 11  d_8 over R_7 (needs an externally supplied R_7 file)\n");

    if (failures) std::printf("%d criterion(s) FAILED\n", failures);
    else std::printf("all criteria passed\n");
    return failures ? 1 : 0;
}
