#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <regex>
#include <string>

#include <gtest/gtest.h>

#include "cbrng/generator.hpp"

namespace {

struct CliRun {
    int status = -1;
    std::string out;
};

CliRun run(const std::string& args) {
    const std::string cmd = std::string(CBRNG_CLI_PATH) + " " + args + " 2>/dev/null";
    CliRun r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

std::string checksum_line(const std::string& out) {
    std::smatch m;
    if (std::regex_search(out, m, std::regex("checksum: ([0-9a-f]{16})"))) return m[1];
    return {};
}

TEST(Cli, HexOutputMatchesLibrary) {
    const CliRun r = run("generate --gen threefry --seed 11 --counter 2 --n 3 --format hex");
    ASSERT_EQ(r.status, 0);
    cbrng::Threefry g(11, 2);
    char expected[32];
    std::string want;
    for (int i = 0; i < 3; ++i) {
        std::snprintf(expected, sizeof expected, "%08x\n", g.next_u32());
        want += expected;
    }
    EXPECT_EQ(r.out, want);
    EXPECT_EQ(run("generate --gen threefry --seed 11 --counter 2 --n 3 --format hex").out, r.out);
}

TEST(Cli, RawOutputIsLittleEndianWords) {
    const CliRun r = run("generate --gen squares --seed 4 --n 5 --format raw");
    ASSERT_EQ(r.status, 0);
    ASSERT_EQ(r.out.size(), 20u);
    cbrng::Squares g(4, 0);
    const std::uint32_t w = g.next_u32();
    EXPECT_EQ(static_cast<unsigned char>(r.out[0]), w & 0xFF);
    EXPECT_EQ(static_cast<unsigned char>(r.out[3]), w >> 24);
}

TEST(Cli, ZeroDrawsIsEmpty) {
    const CliRun r = run("generate --gen philox --n 0 --format hex");
    EXPECT_EQ(r.status, 0);
    EXPECT_TRUE(r.out.empty());
}

TEST(Cli, UsageErrorsExitTwo) {
    EXPECT_EQ(run("generate --gen mersenne --n 4").status, 2);
    EXPECT_EQ(run("generate --format base64 --n 4").status, 2);
    EXPECT_EQ(run("test --budget-mb 8").status, 2);
    EXPECT_EQ(run("interleave --streams 0").status, 2);
    EXPECT_EQ(run("no-such-command").status, 2);
    EXPECT_EQ(run("").status, 2);
}

TEST(Cli, SabotagedBatteryExitsOne) {
    const CliRun r = run("test --sabotage constant --budget-mb 16");
    EXPECT_EQ(r.status, 1);
    EXPECT_NE(r.out.find("FAIL"), std::string::npos);
}

TEST(Cli, InterleaveByteCount) {
    const CliRun r = run("interleave --gen tyche --iterations 1");
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.out.size(), 192'000u);
}

TEST(Cli, BrownianChecksumIndependentOfThreads) {
    const std::string base = "bench-brownian --particles 500 --steps 20";
    const std::string one = checksum_line(run(base + " --threads 1").out);
    ASSERT_FALSE(one.empty());
    EXPECT_EQ(checksum_line(run(base + " --threads 4").out), one);
}

TEST(Cli, MicroBenchmarkRows) {
    const CliRun r = run("bench-micro --gen philox --lengths 1,10,100 --reps 3");
    ASSERT_EQ(r.status, 0);
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 4);
    EXPECT_EQ(r.out.rfind("generator,length", 0), 0u);
}

}  // namespace
