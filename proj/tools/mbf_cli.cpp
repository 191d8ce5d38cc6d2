// Command-line driver: builds level/matrix/class artifacts, answers single
// interval queries, runs class sweeps, and checks the library against the
// known Dedekind numbers.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mbf/mbf.hpp"

namespace {

unsigned default_threads(unsigned cli_value) {
    if (cli_value != 0) return cli_value;
    if (const char* env = std::getenv("MBF_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return 0; // hardware concurrency
}

mbf::TruthTable parse_table_arg(const std::string& text, int arity) {
    if (text.rfind("0x", 0) == 0 || text.rfind("0X", 0) == 0)
        return mbf::parse_tt_hex(text, arity);
    mbf::TruthTable f = mbf::parse_tt(text);
    if (f.n != arity)
        throw std::invalid_argument("truth table has arity " + std::to_string(f.n) +
                                    ", expected " + std::to_string(arity));
    return f;
}

int run_gen(int n, const std::string& out) {
    const mbf::PosetLevel level = mbf::generate(n);
    if (!out.empty()) mbf::save_level(level, out);
    std::cout << level.size() << "\n";
    return 0;
}

int run_matrix(int n, const std::string& out, int entry_width, const std::string& csv,
               unsigned threads) {
    const mbf::PosetLevel level = mbf::generate(n);
    const mbf::IntervalMatrix sq = mbf::square(mbf::build_incidence(level),
                                               default_threads(threads));
    if (!out.empty()) mbf::save_matrix(sq, out, entry_width);
    if (!csv.empty()) {
        std::ofstream os(csv);
        if (!os) throw mbf::io_error("cannot open " + csv + " for writing");
        mbf::export_csv(sq, os);
    }
    std::cout << sq.dim() << "\n";
    return 0;
}

int run_classes(int n, const std::string& out, unsigned threads) {
    const auto classes = mbf::enumerate_classes(n, default_threads(threads));
    if (!out.empty()) mbf::save_classes(classes, n, out);
    std::cout << classes.size() << "\n";
    return 0;
}

int run_interval(int base, const std::string& from, const std::string& to,
                 const std::string& matrix_path) {
    const mbf::IntervalMatrix sq = mbf::load_matrix(matrix_path);
    if (sq.arity() != base)
        throw std::invalid_argument("matrix arity " + std::to_string(sq.arity()) +
                                    " does not match --base " + std::to_string(base));
    const mbf::PosetLevel level = mbf::generate(base);
    const mbf::TruthTable x = parse_table_arg(from, base + 2);
    std::uint64_t count;
    if (to == "top") {
        count = mbf::upset_size_alg1(x, sq, level);
    } else {
        const mbf::TruthTable y = parse_table_arg(to, base + 2);
        count = mbf::interval_size_alg2(x, y, sq, level);
    }
    std::cout << count << "\n";
    return 0;
}

mbf::IntervalMatrix matrix_for_base(int base, const std::string& path, unsigned threads) {
    if (!path.empty()) {
        mbf::IntervalMatrix sq = mbf::load_matrix(path);
        if (sq.arity() != base)
            throw std::invalid_argument("matrix arity does not match requested base");
        return sq;
    }
    return mbf::square(mbf::build_incidence(mbf::generate(base)), default_threads(threads));
}

int run_dedekind(const std::string& method, int n, const std::string& matrix_path,
                 const std::string& classes_path, unsigned threads) {
    if (method == "direct") {
        std::cout << mbf::generate(n).size() << "\n";
        return 0;
    }
    if (method == "sumsq") {
        if (n < 2 || n > 7)
            throw std::invalid_argument("sumsq method covers n = 2..7");
        const auto sq = matrix_for_base(n - 2, matrix_path, threads);
        std::cout << mbf::to_string(mbf::sumsq(sq)) << "\n";
        return 0;
    }
    if (method == "classes") {
        if (n < 5 || n > 8)
            throw std::invalid_argument("classes method covers n = 5..8");
        const int base = n - 3;
        if (classes_path.empty())
            throw std::invalid_argument("classes method needs --classes");
        const mbf::ClassFile cf = mbf::load_classes(classes_path);
        if (cf.n != n - 1)
            throw std::invalid_argument("class file arity must be n - 1");
        mbf::u128 total_gamma = 0;
        for (const auto& c : cf.classes) total_gamma += c.gamma;
        if (cf.n <= 7 && total_gamma != mbf::kDedekind[cf.n])
            throw std::invalid_argument("class file fails the sum-of-gamma validation");
        const auto sq = matrix_for_base(base, matrix_path, threads);
        const mbf::PosetLevel level = mbf::generate(base);
        mbf::u128 total = 0;
        for (const auto& c : cf.classes)
            total += mbf::u128(mbf::upset_size_alg1(c.rep, sq, level)) * c.gamma;
        std::cout << mbf::to_string(total) << "\n";
        return 0;
    }
    throw std::invalid_argument("unknown method " + method);
}

int run_sweep_cmd(const mbf::SweepConfig& cfg) {
    const mbf::SweepResult r = mbf::run_sweep(cfg);
    std::cout << mbf::to_string(r.total) << "\n";
    std::cerr << "classes: " << r.classes_done << (r.completed ? "" : " (interrupted)") << "\n";
    return r.completed ? 0 : 1;
}

struct VerifyReport {
    bool all_pass = true;

    void check(const std::string& name, bool ok) {
        std::cout << (ok ? "PASS" : "FAIL") << "  " << name << "\n";
        if (!ok) all_pass = false;
    }
};

int run_verify(const std::string& level_name, const std::string& matrix_path,
               const std::string& classes_path, unsigned threads) {
    const unsigned t = default_threads(threads);
    VerifyReport rep;

    // quick: small-arity ground truth plus oracle equivalences
    for (int n = 0; n <= 5; ++n)
        rep.check("d_" + std::to_string(n) + " by direct generation",
                  mbf::generate(n).size() == mbf::kDedekind[n]);
    for (int n = 0; n <= 5; ++n) {
        const auto classes = mbf::enumerate_classes(n, t);
        mbf::u128 tg = 0;
        for (const auto& c : classes) tg += c.gamma;
        rep.check("r_" + std::to_string(n) + " and sum of gamma",
                  classes.size() == mbf::kClassCount[n] && tg == mbf::kDedekind[n]);
    }
    {
        const mbf::PosetLevel d4 = mbf::generate(4);
        const mbf::PosetLevel d2 = mbf::generate(2);
        const auto sq2 = mbf::square(mbf::build_incidence(d2), t);
        rep.check("d_4 by SumSq of the base-2 matrix",
                  mbf::sumsq(sq2) == mbf::kDedekind[4]);
        bool alg1_ok = true;
        for (std::size_t i = 0; i < d4.size() && alg1_ok; ++i) {
            const mbf::TruthTable x = d4.element(i);
            alg1_ok = mbf::upset_size_alg1(x, sq2, d2) == mbf::oracle_upset_size(x, d4);
        }
        rep.check("Alg1 equals brute force over all of D_4", alg1_ok);
        const auto sq4 = mbf::square(mbf::build_incidence(d4), t);
        bool alg2_ok = true;
        for (std::size_t i = 0; i < d4.size() && alg2_ok; ++i)
            for (std::size_t j = 0; j < d4.size() && alg2_ok; ++j)
                alg2_ok = mbf::interval_size_alg2(d4.element(i), d4.element(j), sq2, d2) ==
                          sq4.at(i, j);
        rep.check("Alg2 equals the squared base-4 matrix entrywise", alg2_ok);
    }

    if (level_name == "standard" || level_name == "full") {
        rep.check("d_6 by direct generation",
                  mbf::generate(6).size() == mbf::kDedekind[6]);
        const auto r6 = mbf::enumerate_classes(6, t);
        mbf::u128 tg = 0;
        for (const auto& c : r6) tg += c.gamma;
        rep.check("r_6 and sum of gamma",
                  r6.size() == mbf::kClassCount[6] && tg == mbf::kDedekind[6]);
        const auto sq5 = mbf::square(mbf::build_incidence(mbf::generate(5)), t);
        rep.check("d_7 by SumSq of the base-5 matrix",
                  mbf::sumsq(sq5) == mbf::kDedekind[7]);
        const auto sq4 = mbf::square(mbf::build_incidence(mbf::generate(4)), t);
        const mbf::PosetLevel d4 = mbf::generate(4);
        mbf::u128 d7 = 0;
        for (const auto& c : r6)
            d7 += mbf::u128(mbf::upset_size_alg1(c.rep, sq4, d4)) * c.gamma;
        rep.check("d_7 by the class identity over R_6", d7 == mbf::kDedekind[7]);
    }

    if (level_name == "full") {
        if (matrix_path.empty() || classes_path.empty()) {
            std::cout << "SKIP  d_8 sweep (needs --matrix base-5 .mxm and --classes R_7 .rn)\n";
        } else {
            const mbf::ClassFile cf = mbf::load_classes(classes_path);
            mbf::u128 tg = 0;
            for (const auto& c : cf.classes) tg += c.gamma;
            rep.check("R_7 file passes sum of gamma == d_7",
                      cf.n == 7 && tg == mbf::kDedekind[7]);
            mbf::SweepConfig cfg;
            cfg.base_n = 5;
            cfg.matrix_path = matrix_path;
            cfg.classes_path = classes_path;
            cfg.threads = t;
            const mbf::SweepResult r = mbf::run_sweep(cfg);
            rep.check("d_8 by the full R_7 sweep",
                      r.completed &&
                      r.total == mbf::parse_u128("56130437228687557907788"));
        }
    }

    return rep.all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Interval sizes in the poset of monotone Boolean functions"};
    app.require_subcommand(1);

    int n = 0;
    int base = 2;
    int entry_width = 4;
    unsigned threads = 0;
    std::string out, csv, from, to = "top", matrix_path, classes_path;
    std::string method = "direct", level_name = "quick", checkpoint_path;
    std::size_t chunk = 64;

    auto* gen = app.add_subcommand("gen", "Generate D_n and print d_n");
    gen->add_option("-n", n, "arity (0..6)")->required();
    gen->add_option("-o,--out", out, ".dn output path");

    auto* matrix = app.add_subcommand("matrix", "Build the squared incidence matrix of D_n");
    matrix->add_option("-n", n, "arity (0..5)")->required();
    matrix->add_option("-o,--out", out, ".mxm output path");
    matrix->add_option("--entry-width", entry_width, "entry width in bytes (2 or 4)")
        ->check(CLI::IsMember({2, 4}));
    matrix->add_option("--csv", csv, "CSV export path (dim <= 200)");
    matrix->add_option("--threads", threads, "worker threads");

    auto* classes = app.add_subcommand("classes", "Enumerate equivalence classes R_n");
    classes->add_option("-n", n, "arity (0..6)")->required();
    classes->add_option("-o,--out", out, ".rn output path");
    classes->add_option("--threads", threads, "worker threads");

    auto* interval = app.add_subcommand("interval", "Exact interval size in D_{base+2}");
    interval->add_option("--base", base, "matrix arity (2..5)")->required();
    interval->add_option("--from", from, "truth table x (binary or 0x hex)")->required();
    interval->add_option("--to", to, "truth table y, or 'top'");
    interval->add_option("--matrix", matrix_path, "precomputed .mxm for the base")->required();

    auto* dedekind = app.add_subcommand("dedekind", "Compute d_n by a chosen method");
    dedekind->add_option("--method", method, "direct|sumsq|classes")
        ->check(CLI::IsMember({"direct", "sumsq", "classes"}));
    dedekind->add_option("-n", n, "target arity")->required();
    dedekind->add_option("--matrix", matrix_path, ".mxm path (sumsq/classes)");
    dedekind->add_option("--classes", classes_path, ".rn path (classes method)");
    dedekind->add_option("--threads", threads, "worker threads");

    auto* sweep = app.add_subcommand("sweep", "Weighted Alg1 sweep over a class file");
    sweep->add_option("--base", base, "matrix arity (2..5)")->required();
    sweep->add_option("--matrix", matrix_path, ".mxm path")->required();
    sweep->add_option("--classes", classes_path, ".rn path")->required();
    sweep->add_option("--threads", threads, "worker threads");
    sweep->add_option("--chunk", chunk, "classes per work unit");
    sweep->add_option("--checkpoint", checkpoint_path, "checkpoint path (resumable)");
    sweep->add_option("--out", out, "per-class (rep, count) output stream");

    auto* verify = app.add_subcommand("verify", "Check known d_n / r_n identities");
    verify->add_option("--level", level_name, "quick|standard|full")
        ->check(CLI::IsMember({"quick", "standard", "full"}));
    verify->add_option("--matrix", matrix_path, "base-5 .mxm (full level)");
    verify->add_option("--classes", classes_path, "R_7 .rn (full level)");
    verify->add_option("--threads", threads, "worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*gen) return run_gen(n, out);
        if (*matrix) return run_matrix(n, out, entry_width, csv, threads);
        if (*classes) return run_classes(n, out, threads);
        if (*interval) return run_interval(base, from, to, matrix_path);
        if (*dedekind) return run_dedekind(method, n, matrix_path, classes_path, threads);
        if (*sweep) {
            mbf::SweepConfig cfg;
            cfg.base_n = base;
            cfg.matrix_path = matrix_path;
            cfg.classes_path = classes_path;
            cfg.threads = default_threads(threads);
            cfg.chunk_size = chunk;
            cfg.checkpoint_path = checkpoint_path;
            cfg.out_path = out;
            return run_sweep_cmd(cfg);
        }
        if (*verify) return run_verify(level_name, matrix_path, classes_path, threads);
    } catch (const mbf::io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
