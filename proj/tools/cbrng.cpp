// cbrng: generate streams, run the quick battery, emit interleaved streams
// and run the benchmarks.
//
// Exit codes: 0 success/pass, 1 statistical fail, 2 usage error.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cbrng/brownian.hpp"
#include "cbrng/distributions.hpp"
#include "cbrng/generator.hpp"
#include "cbrng/micro_benchmark.hpp"
#include "cbrng/report_io.hpp"
#include "cbrng/stat_suite.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

cbrng::Algorithm algorithm_or_throw(const std::string& name) {
    if (auto a = cbrng::parse_algorithm(name)) return *a;
    throw UsageError("unknown generator '" + name + "' (expected philox, threefry, squares or tyche)");
}

std::vector<cbrng::Algorithm> algorithm_list(const std::vector<std::string>& names) {
    std::vector<cbrng::Algorithm> out;
    for (const auto& n : names) {
        if (n == "all") {
            out.assign(cbrng::kAllAlgorithms.begin(), cbrng::kAllAlgorithms.end());
            return out;
        }
        out.push_back(algorithm_or_throw(n));
    }
    return out;
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty() && path != "-") {
            file_ = std::fopen(path.c_str(), "wb");
            if (file_ == nullptr) throw UsageError("cannot open output file '" + path + "'");
        }
    }
    ~Output() {
        if (file_ != nullptr) std::fclose(file_);
    }
    Output(const Output&) = delete;
    Output& operator=(const Output&) = delete;

    std::FILE* get() const { return file_ != nullptr ? file_ : stdout; }

    void write(std::span<const std::uint8_t> bytes) const {
        if (std::fwrite(bytes.data(), 1, bytes.size(), get()) != bytes.size()) {
            throw std::runtime_error("write failed");
        }
    }

private:
    std::FILE* file_ = nullptr;
};

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw UsageError("cannot open '" + path + "' for writing");
    out << text << '\n';
}

// --- generate ---------------------------------------------------------------

struct GenerateOptions {
    std::string gen = "philox";
    std::uint64_t seed = 0;
    std::uint32_t counter = 0;
    std::uint64_t n = 0;
    std::string format = "raw";
    bool infinite = false;
    std::string out;
};

int cmd_generate(const GenerateOptions& o) {
    auto rng = cbrng::make_generator(algorithm_or_throw(o.gen), o.seed, o.counter);
    Output out(o.out);

    if (o.format == "raw") {
        constexpr std::size_t kChunkWords = 1u << 14;
        std::vector<std::uint8_t> buf(4 * kChunkWords);
        std::uint64_t left = o.n;
        while (o.infinite || left > 0) {
            const std::size_t words = o.infinite ? kChunkWords : static_cast<std::size_t>(std::min<std::uint64_t>(left, kChunkWords));
            std::span<std::uint8_t> chunk(buf.data(), 4 * words);
            cbrng::fill_bytes(rng, chunk);
            out.write(chunk);
            left -= o.infinite ? 0 : words;
        }
    } else if (o.format == "hex") {
        for (std::uint64_t i = 0; i < o.n; ++i) std::fprintf(out.get(), "%08x\n", rng.next_u32());
    } else if (o.format == "f64-text") {
        for (std::uint64_t i = 0; i < o.n; ++i) std::fprintf(out.get(), "%.17g\n", cbrng::uniform_f64(rng));
    } else {
        throw UsageError("unknown format '" + o.format + "' (expected raw, hex or f64-text)");
    }
    std::fflush(out.get());
    return kExitOk;
}

// --- test -------------------------------------------------------------------

struct TestOptions {
    std::vector<std::string> gens{"all"};
    std::uint64_t budget_mb = 64;
    std::uint64_t seed = 1;
    std::string report;
    std::string sabotage;
};

int cmd_test(const TestOptions& o) {
    namespace stat = cbrng::stat;
    std::vector<stat::StreamFamily> families;
    if (!o.sabotage.empty()) {
        if (o.sabotage == "constant") families.push_back(stat::fixtures::constant());
        else if (o.sabotage == "counter-echo") families.push_back(stat::fixtures::counter_echo());
        else if (o.sabotage == "low-bit-stuck") families.push_back(stat::fixtures::low_bit_stuck());
        else throw UsageError("unknown sabotage fixture '" + o.sabotage + "'");
    } else {
        for (auto a : algorithm_list(o.gens)) families.push_back(stat::family_for(a));
    }
    const std::size_t budget = static_cast<std::size_t>(o.budget_mb) << 20;
    if (budget < stat::kBatteryMinBytes) throw UsageError("--budget-mb must be at least 16");

    bool all_passed = true;
    nlohmann::json report = nlohmann::json::object();
    for (const auto& family : families) {
        const auto reports = stat::run_battery(family, budget, o.seed);
        const bool passed = stat::battery_passed(reports);
        all_passed = all_passed && passed;
        std::cout << "== " << family.name << " (" << o.budget_mb << " MiB, seed " << o.seed << ")\n";
        for (const auto& r : reports) std::cout << stat::format_report_line(r) << '\n';
        std::cout << "overall: " << (passed ? "PASS" : "FAIL") << "\n\n";
        report[family.name] = nlohmann::json::parse(stat::reports_to_json(reports));
    }
    if (!o.report.empty()) write_text_file(o.report, report.dump(2));
    return all_passed ? kExitOk : kExitFail;
}

// --- interleave -------------------------------------------------------------

struct InterleaveOptions {
    std::string gen = "philox";
    std::uint64_t seed = 0;
    cbrng::stat::InterleaveSpec spec;
    std::string out;
};

int cmd_interleave(const InterleaveOptions& o) {
    try {
        o.spec.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const auto family = cbrng::stat::family_for(algorithm_or_throw(o.gen));
    Output out(o.out);
    cbrng::stat::interleave_stream(o.spec, family, o.seed, [&out](std::span<const std::uint8_t> chunk) { out.write(chunk); });
    std::fflush(out.get());
    return kExitOk;
}

// --- bench-micro ------------------------------------------------------------

struct MicroOptions {
    std::vector<std::string> gens{"all"};
    std::vector<std::uint64_t> lengths;
    unsigned reps = 5;
};

int cmd_bench_micro(const MicroOptions& o) {
    const auto lengths = o.lengths.empty() ? cbrng::bench::default_lengths() : o.lengths;
    if (o.reps == 0) throw UsageError("--reps must be >= 1");
    for (auto l : lengths) {
        if (l == 0) throw UsageError("--lengths entries must be >= 1");
    }
    std::cout << "generator,length,median_ns,ns_per_word,words_per_sec\n";
    for (auto a : algorithm_list(o.gens)) {
        for (const auto& row : cbrng::bench::micro_benchmark(a, lengths, o.reps)) {
            std::printf("%s,%llu,%.1f,%.4f,%.4g\n", std::string(cbrng::to_string(a)).c_str(),
                        static_cast<unsigned long long>(row.length), row.median_ns, row.ns_per_word,
                        row.words_per_second);
        }
    }
    return kExitOk;
}

// --- bench-brownian ---------------------------------------------------------

struct BrownianOptions {
    std::string gen = "philox";
    cbrng::brownian::SimConfig cfg{.n_particles = 100'000, .steps = 1000};
    std::string results;
    std::string snapshot_out;
    std::string resume_from;
};

int cmd_bench_brownian(BrownianOptions o) {
    namespace bd = cbrng::brownian;
    o.cfg.algorithm = algorithm_or_throw(o.gen);
    try {
        o.cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }

    bd::SimResult result;
    if (!o.resume_from.empty()) {
        std::ifstream in(o.resume_from, std::ios::binary);
        if (!in) throw UsageError("cannot open snapshot '" + o.resume_from + "'");
        auto snap = bd::read_snapshot(in);
        if (snap.completed_steps > o.cfg.steps) throw UsageError("snapshot is past --steps");
        result = bd::resume_sim(std::move(snap), o.cfg);
    } else {
        result = bd::run_sim(o.cfg);
    }

    if (!o.snapshot_out.empty()) {
        std::ofstream out(o.snapshot_out, std::ios::binary);
        if (!out) throw UsageError("cannot open '" + o.snapshot_out + "' for writing");
        bd::write_snapshot(out, {o.cfg.steps, result.particles});
    }

    std::cout << "generator: " << o.gen << '\n'
              << "particles: " << result.particles.size() << '\n'
              << "steps: " << o.cfg.steps << '\n'
              << "threads: " << o.cfg.threads << '\n'
              << "checksum: " << result.checksum.hex() << '\n'
              << "wall_time_s: " << result.wall_time.count() << '\n'
              << "particle_steps_per_s: " << result.particle_steps_per_second << '\n';

    if (!o.results.empty()) {
        const nlohmann::json j{
            {"config",
             {{"generator", o.gen},
              {"n_particles", o.cfg.n_particles},
              {"steps", o.cfg.steps},
              {"dt", o.cfg.dt},
              {"gamma", o.cfg.gamma},
              {"mass", o.cfg.mass},
              {"threads", o.cfg.threads},
              {"init_counter", o.cfg.init_counter},
              {"resumed_from", o.resume_from}}},
            {"checksum", result.checksum.hex()},
            {"wall_time_s", result.wall_time.count()},
            {"particle_steps_per_s", result.particle_steps_per_second},
        };
        write_text_file(o.results, j.dump(2));
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Counter-based random streams: generation, testing and benchmarks"};
    app.require_subcommand(1);

    GenerateOptions gen;
    auto* generate = app.add_subcommand("generate", "Write draws from one stream to stdout");
    generate->add_option("--gen,-g", gen.gen, "philox | threefry | squares | tyche")->capture_default_str();
    generate->add_option("--seed", gen.seed)->capture_default_str();
    generate->add_option("--counter", gen.counter)->capture_default_str();
    generate->add_option("--n", gen.n, "number of draws (32-bit words, or doubles for f64-text)")->capture_default_str();
    generate->add_option("--format", gen.format, "raw | hex | f64-text")->capture_default_str();
    generate->add_flag("--infinite", gen.infinite, "raw words until the reader closes the pipe");
    generate->add_option("--out,-o", gen.out, "output file (default stdout)");

    TestOptions test;
    auto* test_cmd = app.add_subcommand("test", "Run the statistical battery");
    test_cmd->add_option("--gen,-g", test.gens, "generators, comma separated, or all")->delimiter(',')->capture_default_str();
    test_cmd->add_option("--budget-mb", test.budget_mb, "bytes per generator, in MiB (>= 16)")->capture_default_str();
    test_cmd->add_option("--seed", test.seed)->capture_default_str();
    test_cmd->add_option("--report", test.report, "write JSON reports to this path");
    test_cmd->add_option("--sabotage", test.sabotage)->group("");

    InterleaveOptions il;
    auto* interleave = app.add_subcommand("interleave", "Emit the interleaved many-stream construction");
    interleave->add_option("--gen,-g", il.gen)->capture_default_str();
    interleave->add_option("--seed", il.seed, "base seed; stream p uses seed + p")->capture_default_str();
    interleave->add_option("--streams", il.spec.n_streams)->capture_default_str();
    interleave->add_option("--draws", il.spec.draws_per_stream_per_iteration)->capture_default_str();
    interleave->add_option("--iterations", il.spec.iterations)->capture_default_str();
    interleave->add_option("--out,-o", il.out, "output file (default stdout)");

    MicroOptions micro;
    auto* bench_micro = app.add_subcommand("bench-micro", "Time construct + draw L words (CSV)");
    bench_micro->add_option("--gen,-g", micro.gens)->delimiter(',')->capture_default_str();
    bench_micro->add_option("--lengths", micro.lengths, "stream lengths (default 1..10^7)")->delimiter(',');
    bench_micro->add_option("--reps", micro.reps)->capture_default_str();

    BrownianOptions bd;
    auto* bench_bd = app.add_subcommand("bench-brownian", "2D Brownian dynamics benchmark");
    bench_bd->add_option("--gen,-g", bd.gen)->capture_default_str();
    bench_bd->add_option("--particles", bd.cfg.n_particles)->capture_default_str();
    bench_bd->add_option("--steps", bd.cfg.steps)->capture_default_str();
    bench_bd->add_option("--dt", bd.cfg.dt)->capture_default_str();
    bench_bd->add_option("--gamma", bd.cfg.gamma)->capture_default_str();
    bench_bd->add_option("--mass", bd.cfg.mass)->capture_default_str();
    bench_bd->add_option("--threads", bd.cfg.threads)->capture_default_str();
    bench_bd->add_option("--init-counter", bd.cfg.init_counter)->capture_default_str();
    bench_bd->add_option("--results", bd.results, "write a JSON results file");
    bench_bd->add_option("--snapshot-out", bd.snapshot_out, "write final particles as a snapshot");
    bench_bd->add_option("--resume-from", bd.resume_from, "continue from a snapshot up to --steps");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    try {
        if (generate->parsed()) return cmd_generate(gen);
        if (test_cmd->parsed()) return cmd_test(test);
        if (interleave->parsed()) return cmd_interleave(il);
        if (bench_micro->parsed()) return cmd_bench_micro(micro);
        if (bench_bd->parsed()) return cmd_bench_brownian(bd);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
