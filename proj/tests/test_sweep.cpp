#include <catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>

#include "mbf/sweep.hpp"

using namespace mbf;

namespace {

struct SweepFixture {
    std::string matrix_path = "sweep_base2.mxm";
    std::string classes_path = "sweep_r4.rn";

    SweepFixture() {
        save_matrix(square(build_incidence(generate(2))), matrix_path);
        save_classes(enumerate_classes(4), 4, classes_path);
    }
    ~SweepFixture() {
        std::remove(matrix_path.c_str());
        std::remove(classes_path.c_str());
    }

    SweepConfig config() const {
        SweepConfig cfg;
        cfg.base_n = 2;
        cfg.matrix_path = matrix_path;
        cfg.classes_path = classes_path;
        cfg.chunk_size = 4;
        return cfg;
    }
};

} // namespace

TEST_CASE_METHOD(SweepFixture, "R_4 sweep with base 2 totals d_5") {
    SweepConfig cfg = config();
    cfg.threads = 1;
    const SweepResult r = run_sweep(cfg);
    CHECK(r.completed);
    CHECK(r.total == 7581);
    CHECK(r.classes_done == 30);
}

TEST_CASE_METHOD(SweepFixture, "sweep total is worker-count independent") {
    u128 totals[3];
    int i = 0;
    for (unsigned t : {1u, 3u, 8u}) {
        SweepConfig cfg = config();
        cfg.threads = t;
        totals[i++] = run_sweep(cfg).total;
    }
    CHECK(totals[0] == totals[1]);
    CHECK(totals[1] == totals[2]);
}

TEST_CASE_METHOD(SweepFixture, "interrupted sweep resumes from checkpoint exactly") {
    const std::string ckpt = "sweep_test.ckpt";
    std::remove(ckpt.c_str());

    SweepConfig cfg = config();
    cfg.threads = 2;
    cfg.checkpoint_path = ckpt;
    cfg.checkpoint_every = 1;
    cfg.stop_after_chunks = 3;
    const SweepResult partial = run_sweep(cfg);
    CHECK_FALSE(partial.completed);

    cfg.stop_after_chunks = 0;
    const SweepResult resumed = run_sweep(cfg);
    CHECK(resumed.completed);
    CHECK(resumed.total == 7581);
    std::remove(ckpt.c_str());
}

TEST_CASE_METHOD(SweepFixture, "checkpoint rejects mismatched inputs") {
    const std::string ckpt = "sweep_mismatch.ckpt";
    std::remove(ckpt.c_str());

    SweepConfig cfg = config();
    cfg.checkpoint_path = ckpt;
    cfg.checkpoint_every = 1;
    cfg.stop_after_chunks = 2;
    run_sweep(cfg);

    // perturb the class file so its checksum no longer matches the checkpoint
    std::ofstream(classes_path, std::ios::binary | std::ios::app).put('\x5A');
    CHECK_THROWS_AS(run_sweep(cfg), io_error);
    std::remove(ckpt.c_str());
}

TEST_CASE_METHOD(SweepFixture, "per-class output stream lists every representative") {
    const std::string out = "sweep_counts.bin";
    SweepConfig cfg = config();
    cfg.threads = 2;
    cfg.out_path = out;
    const SweepResult r = run_sweep(cfg);
    REQUIRE(r.completed);

    const ClassFile cf = load_classes(classes_path);
    const PosetLevel d2 = generate(2);
    const IntervalMatrix sq = load_matrix(matrix_path);
    std::ifstream is(out, std::ios::binary);
    REQUIRE(is.good());
    for (const auto& c : cf.classes) {
        const std::uint64_t rep = detail::read_u64(is);
        const std::uint64_t count = detail::read_u64(is);
        CHECK(rep == c.rep.lo);
        CHECK(count == upset_size_alg1(c.rep, sq, d2));
    }
    CHECK(is.peek() == EOF);
    std::remove(out.c_str());
}

TEST_CASE("sweep rejects bad configurations") {
    SweepConfig cfg;
    cfg.base_n = 1;
    cfg.matrix_path = "x";
    cfg.classes_path = "y";
    CHECK_THROWS_AS(run_sweep(cfg), std::invalid_argument);
    cfg.base_n = 2;
    CHECK_THROWS_AS(run_sweep(cfg), io_error);
}
