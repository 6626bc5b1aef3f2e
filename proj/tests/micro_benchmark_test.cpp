#include "cbrng/micro_benchmark.hpp"

#include <gtest/gtest.h>

namespace cbrng::bench {
namespace {

TEST(MicroBenchmark, DefaultLengthsArePowersOfTen) {
    const auto l = default_lengths();
    ASSERT_EQ(l.size(), 8u);
    EXPECT_EQ(l.front(), 1u);
    EXPECT_EQ(l.back(), 10'000'000u);
}

TEST(MicroBenchmark, OneRowPerLength) {
    const std::vector<std::uint64_t> lengths{1, 10, 100};
    for (auto a : kAllAlgorithms) {
        const auto rows = micro_benchmark(a, lengths, 5);
        ASSERT_EQ(rows.size(), 3u);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            EXPECT_EQ(rows[i].length, lengths[i]);
            EXPECT_GT(rows[i].median_ns, 0.0);
            EXPECT_DOUBLE_EQ(rows[i].ns_per_word, rows[i].median_ns / rows[i].length);
        }
    }
}

TEST(MicroBenchmark, TotalTimeGrowsWithLength) {
    const std::vector<std::uint64_t> lengths{1, 10, 100};
    const auto rows = micro_benchmark(Algorithm::philox, lengths, 9);
    for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_GT(rows[i].median_ns * 1.2, rows[i - 1].median_ns);
}

TEST(MicroBenchmark, RejectsZeroArguments) {
    const std::vector<std::uint64_t> zero{0};
    const std::vector<std::uint64_t> one{1};
    EXPECT_THROW(micro_benchmark(Algorithm::philox, zero, 3), std::invalid_argument);
    EXPECT_THROW(micro_benchmark(Algorithm::philox, one, 0), std::invalid_argument);
}

}  // namespace
}  // namespace cbrng::bench
