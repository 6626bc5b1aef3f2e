#pragma once

// Throughput versus stream length: each sample constructs a fresh generator
// and draws L words, so short streams expose construction cost.

#include <cstdint>
#include <span>
#include <vector>

#include "cbrng/engines.hpp"

namespace cbrng::bench {

struct TimingRow {
    std::uint64_t length = 0;
    double median_ns = 0.0;  // construct + draw `length` words
    double ns_per_word = 0.0;
    double words_per_second = 0.0;
};

/// Powers of ten from 1 through 10^7.
std::vector<std::uint64_t> default_lengths();

/// Throws std::invalid_argument on a zero length or zero repetitions.
std::vector<TimingRow> micro_benchmark(Algorithm a, std::span<const std::uint64_t> lengths, unsigned repetitions);

}  // namespace cbrng::bench
