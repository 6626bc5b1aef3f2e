#include "cbrng/micro_benchmark.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "cbrng/generator.hpp"

namespace cbrng::bench {

namespace {

// Short streams are timed in batches so one sample covers at least this
// many words and clock overhead stays negligible.
constexpr std::uint64_t kWordsPerSample = 1u << 16;

volatile std::uint32_t g_sink = 0;

template <typename Engine>
double time_stream_ns(std::uint64_t length, std::uint64_t batch, std::uint32_t first_counter) {
    std::uint32_t acc = 0;
    const auto start = std::chrono::steady_clock::now();
    for (std::uint64_t b = 0; b < batch; ++b) {
        Engine rng(0x5EEDull + b, first_counter);
        for (std::uint64_t i = 0; i < length; ++i) acc ^= rng.next_u32();
    }
    const auto stop = std::chrono::steady_clock::now();
    g_sink = g_sink ^ acc;
    return std::chrono::duration<double, std::nano>(stop - start).count() / static_cast<double>(batch);
}

}  // namespace

std::vector<std::uint64_t> default_lengths() {
    std::vector<std::uint64_t> out;
    for (std::uint64_t l = 1; l <= 10'000'000; l *= 10) out.push_back(l);
    return out;
}

std::vector<TimingRow> micro_benchmark(Algorithm a, std::span<const std::uint64_t> lengths, unsigned repetitions) {
    if (repetitions == 0) throw std::invalid_argument("micro_benchmark: repetitions must be >= 1");
    if (std::ranges::any_of(lengths, [](std::uint64_t l) { return l == 0; })) {
        throw std::invalid_argument("micro_benchmark: stream lengths must be >= 1");
    }
    return with_engine(a, [&]<typename E>(std::type_identity<E>) {
        std::vector<TimingRow> rows;
        for (const std::uint64_t length : lengths) {
            const std::uint64_t batch = std::max<std::uint64_t>(1, kWordsPerSample / length);
            std::vector<double> samples;
            std::uint32_t counter = 0;
            for (unsigned r = 0; r < repetitions; ++r) {
                samples.push_back(time_stream_ns<E>(length, batch, counter));
                ++counter;
            }
            std::ranges::nth_element(samples, samples.begin() + samples.size() / 2);
            const double median = samples[samples.size() / 2];
            const double per_word = median / static_cast<double>(length);
            rows.push_back({length, median, per_word, per_word > 0.0 ? 1e9 / per_word : 0.0});
        }
        return rows;
    });
}

}  // namespace cbrng::bench
