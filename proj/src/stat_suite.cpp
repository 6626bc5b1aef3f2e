#include "cbrng/stat_suite.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

#include "cbrng/distributions.hpp"
#include "cbrng/generator.hpp"

namespace cbrng::stat {

std::string_view to_string(Verdict v) noexcept {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::suspicious: return "suspicious";
        case Verdict::fail: return "fail";
    }
    return "fail";
}

Verdict classify_p(double p, bool upper_tail_counts) noexcept {
    if (!(p >= 0.0 && p <= 1.0)) return Verdict::fail;
    if (p <= 1e-6) return Verdict::fail;
    if (p <= 1e-4) return Verdict::suspicious;
    if (!upper_tail_counts) return Verdict::pass;
    if (p >= 1.0 - 1e-6) return Verdict::fail;
    if (p >= 1.0 - 1e-4) return Verdict::suspicious;
    return Verdict::pass;
}

StreamFamily family_for(Algorithm a) {
    return with_engine(a, [a]<typename E>(std::type_identity<E>) {
        StreamFamily f;
        f.name = std::string(to_string(a));
        f.seed_bits = a == Algorithm::squares ? 32 : 64;
        f.fill = [](std::uint64_t seed, std::uint32_t counter, std::span<std::uint32_t> out) {
            E engine(seed, counter);
            engine.fill(out);
        };
        return f;
    });
}

namespace fixtures {

StreamFamily constant() {
    return {"constant", 64, [](std::uint64_t, std::uint32_t, std::span<std::uint32_t> out) {
                std::ranges::fill(out, 0xDEADBEEFu);
            }};
}

StreamFamily counter_echo() {
    return {"counter-echo", 64, [](std::uint64_t, std::uint32_t, std::span<std::uint32_t> out) {
                std::iota(out.begin(), out.end(), 0u);
            }};
}

StreamFamily low_bit_stuck() {
    return {"low-bit-stuck", 64, [](std::uint64_t seed, std::uint32_t counter, std::span<std::uint32_t> out) {
                Philox engine(seed, counter);
                for (auto& w : out) w = engine.next_u32() | 1u;
            }};
}

}  // namespace fixtures

namespace {

double two_sided_normal_p(double z) {
    return std::erfc(std::abs(z) / std::numbers::sqrt2);
}

// Asymptotic Kolmogorov distribution, P(K > lambda).
double kolmogorov_q(double lambda) {
    if (lambda < 0.2) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += sign * term;
        if (term < 1e-16 * sum) break;
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

template <typename Cdf>
TestReport ks_against(std::string name, std::span<const double> samples, Cdf cdf) {
    if (samples.size() < kKsMinSamples) throw std::invalid_argument("ks: need at least 100 samples");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::ranges::sort(sorted);
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf(sorted[i]);
        d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
    }
    const double root_n = std::sqrt(n);
    const double p = kolmogorov_q((root_n + 0.12 + 0.11 / root_n) * d);
    return {std::move(name), d, p, sorted.size(), classify_p(p)};
}

std::vector<std::uint8_t> words_to_bytes(std::span<const std::uint32_t> words) {
    std::vector<std::uint8_t> bytes(words.size() * 4);
    for (std::size_t i = 0; i < words.size(); ++i) {
        const std::uint32_t w = words[i];
        bytes[4 * i] = static_cast<std::uint8_t>(w);
        bytes[4 * i + 1] = static_cast<std::uint8_t>(w >> 8);
        bytes[4 * i + 2] = static_cast<std::uint8_t>(w >> 16);
        bytes[4 * i + 3] = static_cast<std::uint8_t>(w >> 24);
    }
    return bytes;
}

std::vector<double> stream_doubles(const StreamFamily& family, std::uint64_t seed, std::uint32_t counter,
                                   std::size_t n) {
    std::vector<std::uint32_t> words(2 * n);
    family.fill(seed, counter, words);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = to_unit_f64((std::uint64_t{words[2 * i + 1]} << 32) | words[2 * i]);
    }
    return out;
}

}  // namespace

TestReport monobit(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < kMonobitMinBytes) throw std::invalid_argument("monobit: need at least 1000 bytes");
    std::uint64_t ones = 0;
    std::size_t i = 0;
    for (; i + 8 <= bytes.size(); i += 8) {
        std::uint64_t chunk = 0;
        std::memcpy(&chunk, bytes.data() + i, 8);
        ones += static_cast<std::uint64_t>(std::popcount(chunk));
    }
    for (; i < bytes.size(); ++i) ones += static_cast<std::uint64_t>(std::popcount(bytes[i]));

    const double n_bits = 8.0 * static_cast<double>(bytes.size());
    const double z = (static_cast<double>(ones) - n_bits / 2.0) / std::sqrt(n_bits / 4.0);
    const double p = two_sided_normal_p(z);
    return {"monobit", z, p, bytes.size() * 8, classify_p(p, false)};
}

TestReport chi_square_bytes(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < kChiSquareMinBytes) throw std::invalid_argument("chi_square_bytes: need at least 12800 bytes");
    std::array<std::uint64_t, 256> counts{};
    for (auto b : bytes) ++counts[b];
    const double expected = static_cast<double>(bytes.size()) / 256.0;
    double chi2 = 0.0;
    for (auto c : counts) {
        const double diff = static_cast<double>(c) - expected;
        chi2 += diff * diff / expected;
    }
    const double p = boost::math::gamma_q(255.0 / 2.0, chi2 / 2.0);
    return {"chi_square_bytes", chi2, p, bytes.size(), classify_p(p)};
}

TestReport ks_uniform(std::span<const double> samples) {
    for (double s : samples) {
        if (!(s >= 0.0 && s < 1.0)) throw std::domain_error("ks_uniform: sample outside [0, 1)");
    }
    return ks_against("ks_uniform", samples, [](double x) { return x; });
}

TestReport ks_normal(std::span<const double> samples) {
    return ks_against("ks_normal", samples, [](double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); });
}

AvalancheStats measure_avalanche(const StreamFamily& family, std::size_t trials, std::uint64_t rng_seed) {
    if (trials == 0) return {};
    const unsigned bits = std::clamp(family.seed_bits, 1u, 64u);
    const std::uint64_t seed_mask = bits == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;

    std::mt19937_64 picker(rng_seed);
    std::array<std::uint64_t, 32> flips{};
    std::uint64_t total = 0;
    std::array<std::uint32_t, 1> a{};
    std::array<std::uint32_t, 1> b{};
    for (std::size_t t = 0; t < trials; ++t) {
        const std::uint64_t seed = picker() & seed_mask;
        const auto counter = static_cast<std::uint32_t>(picker());
        const auto bit = static_cast<unsigned>(picker() % bits);
        family.fill(seed, counter, a);
        family.fill(seed ^ (std::uint64_t{1} << bit), counter, b);
        const std::uint32_t diff = a[0] ^ b[0];
        total += static_cast<std::uint64_t>(std::popcount(diff));
        for (unsigned k = 0; k < 32; ++k) flips[k] += (diff >> k) & 1u;
    }
    const double n = static_cast<double>(trials);
    const auto [lo, hi] = std::ranges::minmax(flips);
    return {static_cast<double>(total) / n, static_cast<double>(lo) / n, static_cast<double>(hi) / n, trials};
}

TestReport avalanche(const StreamFamily& family, std::size_t trials, std::uint64_t rng_seed) {
    if (trials < kAvalancheMinTrials) throw std::invalid_argument("avalanche: need at least 10^4 trials");
    const AvalancheStats s = measure_avalanche(family, trials, rng_seed);
    // Hamming distance of two independent words is Binomial(32, 1/2), variance 8.
    const double z = (s.mean_hamming - 16.0) / std::sqrt(8.0 / static_cast<double>(trials));
    const bool ok = std::abs(s.mean_hamming - 16.0) <= 0.5 && s.min_bit_rate >= 0.45 && s.max_bit_rate <= 0.55;
    return {"avalanche", s.mean_hamming, z, trials, ok ? Verdict::pass : Verdict::fail};
}

TestReport avalanche(Algorithm a, std::size_t trials, std::uint64_t rng_seed) {
    return avalanche(family_for(a), trials, rng_seed);
}

double pearson(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.empty()) throw std::invalid_argument("pearson: size mismatch or empty input");
    auto constant = [](std::span<const double> v) {
        return std::ranges::all_of(v, [first = v.front()](double x) { return x == first; });
    };
    if (constant(a) || constant(b)) return 1.0;
    const double n = static_cast<double>(a.size());
    const double mean_a = std::accumulate(a.begin(), a.end(), 0.0) / n;
    const double mean_b = std::accumulate(b.begin(), b.end(), 0.0) / n;
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = a[i] - mean_a;
        const double db = b[i] - mean_b;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    if (saa == 0.0 || sbb == 0.0) return 1.0;
    return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

double correlation_threshold(std::size_t draws) noexcept {
    return 0.01 * std::sqrt(1e5 / static_cast<double>(draws));
}

TestReport interstream_correlation(const StreamFamily& family, std::size_t seed_pairs, std::size_t draws,
                                   std::uint64_t base_seed) {
    if (draws < kCorrelationMinDraws) throw std::invalid_argument("interstream_correlation: need at least 10^4 draws");
    if (seed_pairs == 0) throw std::invalid_argument("interstream_correlation: need at least one pair");
    double worst = 0.0;
    for (std::size_t i = 0; i < seed_pairs; ++i) {
        const std::uint64_t s = base_seed + i;
        const auto c = static_cast<std::uint32_t>(i);
        const auto base = stream_doubles(family, s, 0, draws);
        worst = std::max(worst, std::abs(pearson(base, stream_doubles(family, s + 1, 0, draws))));
        const auto here = stream_doubles(family, s, c, draws);
        worst = std::max(worst, std::abs(pearson(here, stream_doubles(family, s, c + 1, draws))));
    }
    const double comparisons = 2.0 * static_cast<double>(seed_pairs);
    const double p = std::min(1.0, comparisons * two_sided_normal_p(worst * std::sqrt(static_cast<double>(draws))));
    const Verdict v = worst < correlation_threshold(draws) ? Verdict::pass : Verdict::fail;
    return {"interstream_correlation", worst, p, static_cast<std::uint64_t>(comparisons) * draws, v};
}

TestReport interstream_correlation(Algorithm a, std::size_t seed_pairs, std::size_t draws, std::uint64_t base_seed) {
    return interstream_correlation(family_for(a), seed_pairs, draws, base_seed);
}

void InterleaveSpec::validate() const {
    if (n_streams == 0 || draws_per_stream_per_iteration == 0 || iterations == 0) {
        throw std::invalid_argument("interleave spec: all fields must be >= 1");
    }
}

void interleave_stream(const InterleaveSpec& spec, const StreamFamily& family, std::uint64_t base_seed,
                       const std::function<void(std::span<const std::uint8_t>)>& sink) {
    spec.validate();
    const std::size_t per_stream = spec.draws_per_stream_per_iteration;
    std::vector<std::uint32_t> words(spec.n_streams * per_stream);
    for (std::size_t t = 0; t < spec.iterations; ++t) {
        for (std::size_t p = 0; p < spec.n_streams; ++p) {
            family.fill(base_seed + p, static_cast<std::uint32_t>(t),
                        std::span<std::uint32_t>(words).subspan(p * per_stream, per_stream));
        }
        const auto bytes = words_to_bytes(words);
        sink(bytes);
    }
}

std::vector<std::uint8_t> interleave_stream(const InterleaveSpec& spec, const StreamFamily& family,
                                            std::uint64_t base_seed) {
    spec.validate();
    std::vector<std::uint8_t> out;
    out.reserve(spec.total_bytes());
    interleave_stream(spec, family, base_seed,
                      [&out](std::span<const std::uint8_t> chunk) { out.insert(out.end(), chunk.begin(), chunk.end()); });
    return out;
}

std::vector<std::uint8_t> interleave_stream(const InterleaveSpec& spec, Algorithm a, std::uint64_t base_seed) {
    return interleave_stream(spec, family_for(a), base_seed);
}

std::vector<double> bytes_to_unit_f64(std::span<const std::uint8_t> bytes) {
    std::vector<double> out(bytes.size() / 8);
    for (std::size_t i = 0; i < out.size(); ++i) {
        std::uint64_t w = 0;
        for (int k = 7; k >= 0; --k) w = (w << 8) | bytes[8 * i + static_cast<std::size_t>(k)];
        out[i] = to_unit_f64(w);
    }
    return out;
}

bool battery_passed(std::span<const TestReport> reports) noexcept {
    const auto fails = std::ranges::count(reports, Verdict::fail, &TestReport::verdict);
    const auto suspicious = std::ranges::count(reports, Verdict::suspicious, &TestReport::verdict);
    return fails == 0 && suspicious <= 1;
}

std::vector<TestReport> run_battery(const StreamFamily& family, std::size_t bytes_budget, std::uint64_t seed) {
    if (bytes_budget < kBatteryMinBytes) throw std::invalid_argument("run_battery: budget below 16 MiB");
    std::vector<TestReport> reports;

    {
        std::vector<std::uint32_t> words(bytes_budget / 4);
        family.fill(seed, 0, words);
        const auto bytes = words_to_bytes(words);
        reports.push_back(monobit(bytes));
        reports.push_back(chi_square_bytes(bytes));
    }

    reports.push_back(ks_uniform(stream_doubles(family, seed, 1, bytes_budget / 64)));
    reports.push_back(avalanche(family, 100'000, seed));
    reports.push_back(interstream_correlation(family, 4, 100'000, seed));

    InterleaveSpec spec;
    spec.iterations = std::max<std::size_t>(1, bytes_budget / (4 * spec.n_streams * spec.draws_per_stream_per_iteration));
    const auto interleaved = interleave_stream(spec, family, seed);
    auto mono = monobit(interleaved);
    mono.test_name = "interleaved_monobit";
    reports.push_back(std::move(mono));
    auto chi = chi_square_bytes(interleaved);
    chi.test_name = "interleaved_chi_square";
    reports.push_back(std::move(chi));

    return reports;
}

std::vector<TestReport> run_battery(Algorithm a, std::size_t bytes_budget, std::uint64_t seed) {
    return run_battery(family_for(a), bytes_budget, seed);
}

}  // namespace cbrng::stat
