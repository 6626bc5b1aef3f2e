#pragma once

// Quick statistical battery plus the interleaved parallel-stream
// construction. Heavy external suites (PractRand, TestU01) are fed through
// raw stream emission instead; see the CLI.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cbrng/engines.hpp"

namespace cbrng::stat {

enum class Verdict { pass, suspicious, fail };

std::string_view to_string(Verdict v) noexcept;

struct TestReport {
    std::string test_name;
    double statistic = 0.0;
    double p_value_or_z = 0.0;
    std::uint64_t n_samples = 0;
    Verdict verdict = Verdict::fail;
};

/// Banding for p-values. With upper_tail_counts the band is symmetric:
///   pass        p in (1e-4, 1 - 1e-4)
///   suspicious  p in (1e-6, 1e-4] or [1 - 1e-4, 1 - 1e-6)
///   fail        otherwise
/// Tests that already report a two-sided tail probability (monobit) pass
/// upper_tail_counts = false, so p near 1 is a perfect fit, not an anomaly.
Verdict classify_p(double p, bool upper_tail_counts = true) noexcept;

/// A family of streams indexed by (seed, counter). fill() writes the first
/// out.size() words of the stream; seed_bits says how many low seed bits the
/// family actually reads.
struct StreamFamily {
    std::string name;
    unsigned seed_bits = 64;
    std::function<void(std::uint64_t seed, std::uint32_t counter, std::span<std::uint32_t> out)> fill;
};

StreamFamily family_for(Algorithm a);

/// Deliberately broken families for sensitivity checks.
namespace fixtures {
StreamFamily constant();       // every word is 0xDEADBEEF
StreamFamily counter_echo();   // word i of any stream is i
StreamFamily low_bit_stuck();  // Philox words with bit 0 forced to 1
}  // namespace fixtures

inline constexpr std::size_t kMonobitMinBytes = 1000;
inline constexpr std::size_t kChiSquareMinBytes = 256 * 50;
inline constexpr std::size_t kKsMinSamples = 100;
inline constexpr std::size_t kAvalancheMinTrials = 10'000;
inline constexpr std::size_t kCorrelationMinDraws = 10'000;
inline constexpr std::size_t kBatteryMinBytes = 16u << 20;

/// statistic = z, p_value_or_z = two-sided p.
TestReport monobit(std::span<const std::uint8_t> bytes);

/// 256-bin byte histogram, 255 degrees of freedom; p is the upper tail.
TestReport chi_square_bytes(std::span<const std::uint8_t> bytes);

/// Kolmogorov-Smirnov D against U[0,1); asymptotic p. Throws
/// std::domain_error if any sample is outside [0, 1).
TestReport ks_uniform(std::span<const double> samples);

/// Same, against the standard normal CDF.
TestReport ks_normal(std::span<const double> samples);

struct AvalancheStats {
    double mean_hamming = 0.0;
    double min_bit_rate = 0.0;
    double max_bit_rate = 0.0;
    std::uint64_t trials = 0;
};

/// Flips one random seed bit (within seed_bits) of a random (seed, counter)
/// and compares the first output words.
AvalancheStats measure_avalanche(const StreamFamily& family, std::size_t trials, std::uint64_t rng_seed = 1);

/// Pass iff mean Hamming distance is in 16 +- 0.5 and every per-bit flip
/// rate is in [0.45, 0.55]. statistic = mean, p_value_or_z = z of the mean.
TestReport avalanche(const StreamFamily& family, std::size_t trials, std::uint64_t rng_seed = 1);
TestReport avalanche(Algorithm a, std::size_t trials, std::uint64_t rng_seed = 1);

/// Pearson r. Degenerate input (zero variance on either side) returns 1.
double pearson(std::span<const double> a, std::span<const double> b);

/// Threshold on max |r|: 0.01 at 1e5 draws, scaled by 1/sqrt(draws).
double correlation_threshold(std::size_t draws) noexcept;

/// For i in [0, seed_pairs): streams (s, 0) vs (s + 1, 0) and (s, i) vs
/// (s, i + 1) with s = base_seed + i, compared over uniform_f64 draws.
/// statistic = max |r|, p_value_or_z = Bonferroni-adjusted p of that r.
TestReport interstream_correlation(const StreamFamily& family, std::size_t seed_pairs, std::size_t draws,
                                   std::uint64_t base_seed = 1);
TestReport interstream_correlation(Algorithm a, std::size_t seed_pairs, std::size_t draws,
                                   std::uint64_t base_seed = 1);

struct InterleaveSpec {
    std::size_t n_streams = 16'000;
    std::size_t draws_per_stream_per_iteration = 3;
    std::size_t iterations = 1;

    /// Throws std::invalid_argument if any field is zero.
    void validate() const;
    std::size_t total_bytes() const noexcept { return 4 * n_streams * draws_per_stream_per_iteration * iterations; }
};

/// Canonical order: iteration-major, then stream, then draw. Stream p at
/// iteration t is (base_seed + p, t). Words are written little-endian.
/// The sink is called once per iteration.
void interleave_stream(const InterleaveSpec& spec, const StreamFamily& family, std::uint64_t base_seed,
                       const std::function<void(std::span<const std::uint8_t>)>& sink);
std::vector<std::uint8_t> interleave_stream(const InterleaveSpec& spec, const StreamFamily& family,
                                            std::uint64_t base_seed);
std::vector<std::uint8_t> interleave_stream(const InterleaveSpec& spec, Algorithm a, std::uint64_t base_seed);

/// Consecutive 8-byte little-endian groups mapped through to_unit_f64.
std::vector<double> bytes_to_unit_f64(std::span<const std::uint8_t> bytes);

/// No fail and at most one suspicious.
bool battery_passed(std::span<const TestReport> reports) noexcept;

/// Runs monobit, chi-square and KS on the family's own stream, avalanche,
/// inter-stream correlation, and monobit/chi-square on the interleaved
/// construction sized to the same budget. Throws std::invalid_argument if
/// bytes_budget < 16 MiB.
std::vector<TestReport> run_battery(const StreamFamily& family, std::size_t bytes_budget, std::uint64_t seed = 1);
std::vector<TestReport> run_battery(Algorithm a, std::size_t bytes_budget, std::uint64_t seed = 1);

}  // namespace cbrng::stat
