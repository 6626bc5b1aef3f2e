#pragma once

// Word -> variate transforms. Every operation consumes a fixed number of raw
// 32-bit words so that streams stay aligned across threads and iterations:
//
//   uniform_f32    1 word
//   uniform_f64    2 words
//   range_u32      1 word
//   draw_double2   4 words
//   normal2        4 words
//   fill_bytes     ceil(n / 4) words

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cbrng/engines.hpp"

namespace cbrng {

struct Double2 {
    double x = 0.0;
    double y = 0.0;
};

/// Top 53 bits scaled by 2^-53.
constexpr double to_unit_f64(std::uint64_t word) noexcept {
    return static_cast<double>(word >> 11) * 0x1.0p-53;
}

/// Top 24 bits scaled by 2^-24.
constexpr float to_unit_f32(std::uint32_t word) noexcept {
    return static_cast<float>(word >> 8) * 0x1.0p-24f;
}

/// Multiply-high reduction into [0, bound). Biased by at most bound / 2^32;
/// no rejection, so exactly one word per call.
constexpr std::uint32_t bounded_from_word(std::uint32_t word, std::uint32_t bound) noexcept {
    return static_cast<std::uint32_t>((std::uint64_t{word} * bound) >> 32);
}

/// Box-Muller on two uniforms in [0, 1). u1 is reflected to (0, 1] so the
/// logarithm is always finite.
inline std::pair<double, double> box_muller(double u1, double u2) noexcept {
    const double radius = std::sqrt(-2.0 * std::log(1.0 - u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    return {radius * std::cos(theta), radius * std::sin(theta)};
}

template <WordEngine G>
double uniform_f64(G& g) noexcept {
    return to_unit_f64(g.next_u64());
}

template <WordEngine G>
float uniform_f32(G& g) noexcept {
    return to_unit_f32(g.next_u32());
}

template <WordEngine G>
Double2 draw_double2(G& g) noexcept {
    const double x = uniform_f64(g);
    const double y = uniform_f64(g);
    return {x, y};
}

template <WordEngine G>
std::uint32_t range_u32(G& g, std::uint32_t bound) {
    if (bound == 0) throw std::invalid_argument("range_u32: empty range (bound == 0)");
    return bounded_from_word(g.next_u32(), bound);
}

template <WordEngine G>
std::pair<double, double> normal2(G& g) noexcept {
    const double u1 = uniform_f64(g);
    const double u2 = uniform_f64(g);
    return box_muller(u1, u2);
}

/// Little-endian bytes of consecutive words. The unused tail of a final
/// partial word is dropped.
template <WordEngine G>
void fill_bytes(G& g, std::span<std::uint8_t> out) noexcept {
    std::size_t i = 0;
    for (; i + 4 <= out.size(); i += 4) {
        const std::uint32_t w = g.next_u32();
        out[i] = static_cast<std::uint8_t>(w);
        out[i + 1] = static_cast<std::uint8_t>(w >> 8);
        out[i + 2] = static_cast<std::uint8_t>(w >> 16);
        out[i + 3] = static_cast<std::uint8_t>(w >> 24);
    }
    if (i < out.size()) {
        std::uint32_t w = g.next_u32();
        for (; i < out.size(); ++i, w >>= 8) out[i] = static_cast<std::uint8_t>(w);
    }
}

template <WordEngine G>
std::vector<std::uint8_t> fill_bytes(G& g, std::size_t n) {
    std::vector<std::uint8_t> out(n);
    fill_bytes(g, std::span<std::uint8_t>(out));
    return out;
}

}  // namespace cbrng
