#pragma once

// Keyed mixing functions underlying the four generators. All of these are
// pure and constexpr; the engines in engines.hpp only add stream bookkeeping.

#include <array>
#include <bit>
#include <cstdint>
#include <utility>

namespace cbrng {

/// Output of one keyed counter-mix invocation.
struct Block {
    std::array<std::uint32_t, 4> words{};

    friend constexpr bool operator==(const Block&, const Block&) = default;
};

using PhiloxKey = std::array<std::uint32_t, 2>;
using ThreefryKey = std::array<std::uint32_t, 4>;

namespace detail {

inline constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
inline constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
inline constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;  // golden ratio
inline constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;  // sqrt(3) - 1

inline constexpr std::uint32_t kThreefryParity = 0x1BD11BDAu;
inline constexpr std::array<std::array<int, 2>, 8> kThreefryRotations{{
    {10, 26}, {11, 21}, {13, 27}, {23, 5}, {6, 20}, {17, 11}, {25, 10}, {18, 20},
}};

constexpr void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) noexcept {
    const std::uint64_t product = std::uint64_t{a} * b;
    hi = static_cast<std::uint32_t>(product >> 32);
    lo = static_cast<std::uint32_t>(product);
}

constexpr std::array<std::uint32_t, 4> philox_round(const std::array<std::uint32_t, 4>& x,
                                                    const PhiloxKey& key) noexcept {
    std::uint32_t hi0 = 0, lo0 = 0, hi1 = 0, lo1 = 0;
    mulhilo(kPhiloxM0, x[0], hi0, lo0);
    mulhilo(kPhiloxM1, x[2], hi1, lo1);
    return {hi1 ^ x[1] ^ key[0], lo1, hi0 ^ x[3] ^ key[1], lo0};
}

constexpr void threefry_mix(std::uint32_t& a, std::uint32_t& b, int rotation) noexcept {
    a += b;
    b = std::rotl(b, rotation) ^ a;
}

constexpr void tyche_mix(std::array<std::uint32_t, 4>& s) noexcept {
    auto& [a, b, c, d] = s;
    a += b; d = std::rotl(d ^ a, 16);
    c += d; b = std::rotl(b ^ c, 12);
    a += b; d = std::rotl(d ^ a, 8);
    c += d; b = std::rotl(b ^ c, 7);
}

// murmur3 fmix32; a bijection on 32-bit words.
constexpr std::uint32_t fmix32(std::uint32_t h) noexcept {
    h ^= h >> 16;
    h *= 0x85EBCA6Bu;
    h ^= h >> 13;
    h *= 0xC2B2AE35u;
    h ^= h >> 16;
    return h;
}

}  // namespace detail

/// Philox4x32-10: ten rounds of the multiply/xor S-P network, with the key
/// bumped by the Weyl constants between rounds.
constexpr Block philox_block(PhiloxKey key, const Block& ctr) noexcept {
    auto x = ctr.words;
    for (int round = 0; round < 10; ++round) {
        x = detail::philox_round(x, key);
        key[0] += detail::kPhiloxW0;
        key[1] += detail::kPhiloxW1;
    }
    return Block{x};
}

/// Threefry4x32-20: add/rotate/xor rounds with a key injection after every
/// fourth round. The fifth schedule word is the parity of the key.
constexpr Block threefry_block(const ThreefryKey& key, const Block& ctr) noexcept {
    std::array<std::uint32_t, 5> schedule{key[0], key[1], key[2], key[3],
                                          detail::kThreefryParity ^ key[0] ^ key[1] ^ key[2] ^ key[3]};
    auto x = ctr.words;
    for (int i = 0; i < 4; ++i) x[i] += schedule[i];

    for (std::uint32_t injection = 1; injection <= 5; ++injection) {
        for (int r = 0; r < 4; ++r) {
            const auto& rot = detail::kThreefryRotations[((injection - 1) * 4 + r) % 8];
            if (r % 2 == 0) {
                detail::threefry_mix(x[0], x[1], rot[0]);
                detail::threefry_mix(x[2], x[3], rot[1]);
            } else {
                detail::threefry_mix(x[0], x[3], rot[0]);
                detail::threefry_mix(x[2], x[1], rot[1]);
            }
        }
        for (std::uint32_t i = 0; i < 4; ++i) x[i] += schedule[(injection + i) % 5];
        x[3] += injection;
    }
    return Block{x};
}

/// Expands a 32-bit seed into a Squares key. The high half is a bijection of
/// the seed, so distinct seeds always give distinct keys; the low half is
/// forced odd.
constexpr std::uint64_t squares_key(std::uint32_t seed) noexcept {
    const std::uint64_t hi = detail::fmix32(seed ^ 0x9E3779B9u);
    const std::uint64_t lo = detail::fmix32(seed ^ 0x7F4A7C15u) | 1u;
    return (hi << 32) | lo;
}

/// squares32: four square-and-swap rounds on counter * key, returning the
/// upper 32 bits of the last square.
constexpr std::uint32_t squares_round(std::uint64_t key, std::uint64_t counter) noexcept {
    const std::uint64_t y = counter * key;
    const std::uint64_t z = y + key;
    std::uint64_t x = y;
    x = std::rotr(x * x + y, 32);
    x = std::rotr(x * x + z, 32);
    x = std::rotr(x * x + y, 32);
    return static_cast<std::uint32_t>((x * x + z) >> 32);
}

/// Tyche mixing state (a, b, c, d).
struct TycheState {
    std::array<std::uint32_t, 4> words{};

    friend constexpr bool operator==(const TycheState&, const TycheState&) = default;
};

inline constexpr int kTycheWarmupRounds = 20;
inline constexpr std::uint32_t kTycheConstant = 0x9E3779B9u;

constexpr TycheState tyche_init(std::uint64_t seed, std::uint32_t stream_counter) noexcept {
    TycheState s{{static_cast<std::uint32_t>(seed >> 32), static_cast<std::uint32_t>(seed), kTycheConstant,
                  stream_counter}};
    for (int i = 0; i < kTycheWarmupRounds; ++i) detail::tyche_mix(s.words);
    return s;
}

/// One quarter-round application; the output word is b.
constexpr std::pair<std::uint32_t, TycheState> tyche_next(TycheState s) noexcept {
    detail::tyche_mix(s.words);
    return {s.words[1], s};
}

}  // namespace cbrng
