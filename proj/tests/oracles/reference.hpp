#pragma once

// Straight-line transcriptions of the four algorithms, written independently
// of the library code path. Tests compare the optimized generators against
// these, and these against published known-answer vectors.

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

namespace ref {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

inline u32 rotl(u32 x, int n) { return (x << n) | (x >> (32 - n)); }

// Philox4x32-10: ten multiply-xor rounds, Weyl key schedule.
inline std::array<u32, 4> philox4x32_10(std::array<u32, 4> ctr, std::array<u32, 2> key) {
    u32 x0 = ctr[0], x1 = ctr[1], x2 = ctr[2], x3 = ctr[3];
    u32 k0 = key[0], k1 = key[1];
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            k0 += 0x9E3779B9u;
            k1 += 0xBB67AE85u;
        }
        u64 p0 = u64{0xD2511F53u} * x0;
        u64 p1 = u64{0xCD9E8D57u} * x2;
        u32 hi0 = u32(p0 >> 32), lo0 = u32(p0);
        u32 hi1 = u32(p1 >> 32), lo1 = u32(p1);
        u32 n0 = hi1 ^ x1 ^ k0;
        u32 n1 = lo1;
        u32 n2 = hi0 ^ x3 ^ k1;
        u32 n3 = lo0;
        x0 = n0; x1 = n1; x2 = n2; x3 = n3;
    }
    return {x0, x1, x2, x3};
}

// Threefry4x32-20, rotation table and parity from Random123.
inline std::array<u32, 4> threefry4x32_20(std::array<u32, 4> ctr, std::array<u32, 4> key) {
    static const int R[8][2] = {{10, 26}, {11, 21}, {13, 27}, {23, 5},
                                {6, 20},  {17, 11}, {25, 10}, {18, 20}};
    u32 ks[5];
    ks[4] = 0x1BD11BDAu;
    for (int i = 0; i < 4; ++i) {
        ks[i] = key[i];
        ks[4] ^= key[i];
    }
    u32 X[4];
    for (int i = 0; i < 4; ++i) X[i] = ctr[i] + ks[i];
    int injection = 0;
    for (int round = 0; round < 20; ++round) {
        if (round % 2 == 0) {
            X[0] += X[1]; X[1] = rotl(X[1], R[round % 8][0]); X[1] ^= X[0];
            X[2] += X[3]; X[3] = rotl(X[3], R[round % 8][1]); X[3] ^= X[2];
        } else {
            X[0] += X[3]; X[3] = rotl(X[3], R[round % 8][0]); X[3] ^= X[0];
            X[2] += X[1]; X[1] = rotl(X[1], R[round % 8][1]); X[1] ^= X[2];
        }
        if (round % 4 == 3) {
            ++injection;
            for (int i = 0; i < 4; ++i) X[i] += ks[(injection + i) % 5];
            X[3] += u32(injection);
        }
    }
    return {X[0], X[1], X[2], X[3]};
}

// squares32: four square-and-swap rounds on ctr * key.
inline u32 squares32(u64 ctr, u64 key) {
    u64 x, y, z;
    y = x = ctr * key;
    z = y + key;
    x = x * x + y; x = (x >> 32) | (x << 32);
    x = x * x + z; x = (x >> 32) | (x << 32);
    x = x * x + y; x = (x >> 32) | (x << 32);
    return u32((x * x + z) >> 32);
}

// Tyche: ChaCha-style quarter round, output word b.
struct Tyche {
    u32 a, b, c, d;

    void mix() {
        a += b; d = rotl(d ^ a, 16);
        c += d; b = rotl(b ^ c, 12);
        a += b; d = rotl(d ^ a, 8);
        c += d; b = rotl(b ^ c, 7);
    }

    Tyche(u64 seed, u32 idx) {
        a = u32(seed >> 32);
        b = u32(seed & 0xFFFFFFFFu);
        c = 2654435769u;
        d = idx;
        for (int i = 0; i < 20; ++i) mix();
    }

    u32 next() {
        mix();
        return b;
    }
};

// The 32->64 bit key expansion used by the library's Squares generator:
// murmur3 finalizer on both halves, low half forced odd.
inline u32 fmix32(u32 h) {
    h ^= h >> 16;
    h *= 0x85EBCA6Bu;
    h ^= h >> 13;
    h *= 0xC2B2AE35u;
    h ^= h >> 16;
    return h;
}

inline u64 squares_key(u64 seed) {
    u32 s = u32(seed);
    u64 hi = fmix32(s ^ 0x9E3779B9u);
    u64 lo = fmix32(s ^ 0x7F4A7C15u) | 1u;
    return (hi << 32) | lo;
}

// Whole-stream oracles following the documented (seed, counter) mapping.
inline std::vector<u32> philox_stream(u64 seed, u32 counter, std::size_t n) {
    std::vector<u32> out;
    for (u32 block = 0; out.size() < n; ++block) {
        auto w = philox4x32_10({counter, block, 0, 0}, {u32(seed), u32(seed >> 32)});
        for (int i = 0; i < 4 && out.size() < n; ++i) out.push_back(w[i]);
    }
    return out;
}

inline std::vector<u32> threefry_stream(u64 seed, u32 counter, std::size_t n) {
    std::vector<u32> out;
    for (u32 block = 0; out.size() < n; ++block) {
        auto w = threefry4x32_20({block, 0, 0, 0}, {u32(seed), u32(seed >> 32), counter, 0});
        for (int i = 0; i < 4 && out.size() < n; ++i) out.push_back(w[i]);
    }
    return out;
}

inline std::vector<u32> squares_stream(u64 seed, u32 counter, std::size_t n) {
    std::vector<u32> out;
    u64 key = squares_key(seed);
    for (u32 i = 0; i < n; ++i) out.push_back(squares32((u64(counter) << 32) | i, key));
    return out;
}

inline std::vector<u32> tyche_stream(u64 seed, u32 counter, std::size_t n) {
    std::vector<u32> out;
    Tyche t(seed, counter);
    for (std::size_t i = 0; i < n; ++i) out.push_back(t.next());
    return out;
}

inline double u01_53(u32 lo, u32 hi) {
    u64 v = (u64(hi) << 32) | lo;
    return double(v >> 11) * (1.0 / 9007199254740992.0);
}

}  // namespace ref
