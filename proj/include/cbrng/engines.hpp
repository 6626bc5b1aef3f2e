#pragma once

// The four counter-based engines. Each one is constructed from a 64-bit seed
// and a 32-bit stream counter and satisfies std::uniform_random_bit_generator,
// so it plugs straight into <random> distributions.
//
// (seed, stream counter, internal counter) -> cipher input:
//   Philox    key = (seed lo, seed hi)           ctr = (stream, block, 0, 0)
//   Threefry  key = (seed lo, seed hi, stream, 0) ctr = (block, 0, 0, 0)
//   Squares   key = squares_key(seed lo)          ctr = stream << 32 | word
//   Tyche     state = (seed hi, seed lo, const, stream), 20 warm-up mixes
//
// The internal counter wraps silently after 2^32 blocks (Philox, Threefry) or
// words (Squares); each stream therefore has a period of 2^32 counter values.

#include <concepts>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <stdexcept>

#include "cbrng/rounds.hpp"

namespace cbrng {

enum class Algorithm : std::uint8_t { philox = 0, threefry = 1, squares = 2, tyche = 3 };

inline constexpr std::array<Algorithm, 4> kAllAlgorithms{Algorithm::philox, Algorithm::threefry,
                                                         Algorithm::squares, Algorithm::tyche};

/// Names one logical stream. Squares only reads the low 32 bits of the seed.
struct StreamId {
    std::uint64_t seed = 0;
    std::uint32_t stream_counter = 0;

    friend constexpr bool operator==(const StreamId&, const StreamId&) = default;
};

/// Everything needed to resume a generator mid-stream.
///
/// internal_counter is the number of blocks produced so far (Philox,
/// Threefry), words produced (Squares) or mixes applied after warm-up
/// (Tyche). cache_pos is the read position in the current 4-word block;
/// 4 means the cache is exhausted. Squares and Tyche have no cache and
/// always report 0.
struct EngineState {
    Algorithm algorithm = Algorithm::philox;
    StreamId stream;
    std::uint32_t internal_counter = 0;
    std::uint8_t cache_pos = 0;

    friend constexpr bool operator==(const EngineState&, const EngineState&) = default;
};

template <typename E>
concept WordEngine = std::uniform_random_bit_generator<E> && requires(E& e) {
    { e.next_u32() } -> std::same_as<std::uint32_t>;
    { e.next_u64() } -> std::same_as<std::uint64_t>;
};

namespace detail {

template <typename Derived>
class EngineBase {
public:
    using result_type = std::uint32_t;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    constexpr result_type operator()() noexcept { return self().next_u32(); }

    /// Low word is drawn first.
    constexpr std::uint64_t next_u64() noexcept {
        const std::uint64_t lo = self().next_u32();
        const std::uint64_t hi = self().next_u32();
        return (hi << 32) | lo;
    }

    constexpr void fill(std::span<std::uint32_t> out) noexcept {
        for (auto& w : out) w = self().next_u32();
    }

    constexpr void discard(unsigned long long n) noexcept {
        while (n-- > 0) self().next_u32();
    }

private:
    constexpr Derived& self() noexcept { return static_cast<Derived&>(*this); }
};

// Serves words one at a time out of 4-word blocks from Derived::block_at().
template <typename Derived>
class BlockEngine : public EngineBase<Derived> {
public:
    static constexpr std::uint8_t kBlockWords = 4;

    constexpr std::uint32_t next_u32() noexcept {
        if (pos_ == kBlockWords) {
            cache_ = static_cast<const Derived&>(*this).block_at(block_index_++);
            pos_ = 0;
        }
        return cache_.words[pos_++];
    }

    constexpr StreamId stream_id() const noexcept { return stream_; }

    constexpr EngineState state() const noexcept {
        return {Derived::algorithm, stream_, block_index_, pos_};
    }

    friend constexpr bool operator==(const BlockEngine& a, const BlockEngine& b) noexcept {
        return a.stream_ == b.stream_ && a.block_index_ == b.block_index_ && a.pos_ == b.pos_;
    }

protected:
    constexpr explicit BlockEngine(StreamId stream) noexcept : stream_(stream) {}

    void resume(const EngineState& st) {
        if (st.algorithm != Derived::algorithm) throw std::invalid_argument("engine state: algorithm mismatch");
        if (st.cache_pos > kBlockWords) throw std::invalid_argument("engine state: cache_pos out of range");
        block_index_ = st.internal_counter;
        pos_ = st.cache_pos;
        if (pos_ < kBlockWords) cache_ = static_cast<const Derived&>(*this).block_at(block_index_ - 1);
    }

    StreamId stream_;

private:
    std::uint32_t block_index_ = 0;
    std::uint8_t pos_ = kBlockWords;
    Block cache_{};
};

}  // namespace detail

class Philox : public detail::BlockEngine<Philox> {
public:
    static constexpr Algorithm algorithm = Algorithm::philox;

    constexpr Philox(std::uint64_t seed, std::uint32_t counter) noexcept : BlockEngine({seed, counter}) {}

    static Philox restore(const EngineState& st) {
        Philox e(st.stream.seed, st.stream.stream_counter);
        e.resume(st);
        return e;
    }

    constexpr Block block_at(std::uint32_t index) const noexcept {
        const PhiloxKey key{static_cast<std::uint32_t>(stream_.seed), static_cast<std::uint32_t>(stream_.seed >> 32)};
        return philox_block(key, Block{{stream_.stream_counter, index, 0, 0}});
    }
};

class Threefry : public detail::BlockEngine<Threefry> {
public:
    static constexpr Algorithm algorithm = Algorithm::threefry;

    constexpr Threefry(std::uint64_t seed, std::uint32_t counter) noexcept : BlockEngine({seed, counter}) {}

    static Threefry restore(const EngineState& st) {
        Threefry e(st.stream.seed, st.stream.stream_counter);
        e.resume(st);
        return e;
    }

    constexpr Block block_at(std::uint32_t index) const noexcept {
        const ThreefryKey key{static_cast<std::uint32_t>(stream_.seed),
                              static_cast<std::uint32_t>(stream_.seed >> 32), stream_.stream_counter, 0};
        return threefry_block(key, Block{{index, 0, 0, 0}});
    }
};

class Squares : public detail::EngineBase<Squares> {
public:
    static constexpr Algorithm algorithm = Algorithm::squares;

    /// Only the low 32 bits of seed are used.
    constexpr Squares(std::uint64_t seed, std::uint32_t counter) noexcept
        : key_(squares_key(static_cast<std::uint32_t>(seed))),
          seed_(static_cast<std::uint32_t>(seed)),
          counter_(counter) {}

    static Squares restore(const EngineState& st) {
        if (st.algorithm != algorithm) throw std::invalid_argument("engine state: algorithm mismatch");
        Squares e(st.stream.seed, st.stream.stream_counter);
        e.index_ = st.internal_counter;
        return e;
    }

    constexpr std::uint32_t next_u32() noexcept {
        return squares_round(key_, (std::uint64_t{counter_} << 32) | index_++);
    }

    constexpr StreamId stream_id() const noexcept { return {seed_, counter_}; }
    constexpr EngineState state() const noexcept { return {algorithm, stream_id(), index_, 0}; }

    friend constexpr bool operator==(const Squares&, const Squares&) = default;

private:
    std::uint64_t key_;
    std::uint32_t seed_;
    std::uint32_t counter_;
    std::uint32_t index_ = 0;
};

class Tyche : public detail::EngineBase<Tyche> {
public:
    static constexpr Algorithm algorithm = Algorithm::tyche;

    constexpr Tyche(std::uint64_t seed, std::uint32_t counter) noexcept
        : state_(tyche_init(seed, counter)), stream_{seed, counter} {}

    /// Replays internal_counter mixes from the stream start.
    static Tyche restore(const EngineState& st) {
        if (st.algorithm != algorithm) throw std::invalid_argument("engine state: algorithm mismatch");
        Tyche e(st.stream.seed, st.stream.stream_counter);
        for (std::uint32_t i = 0; i < st.internal_counter; ++i) e.next_u32();
        return e;
    }

    constexpr std::uint32_t next_u32() noexcept {
        ++draws_;
        detail::tyche_mix(state_.words);
        return state_.words[1];
    }

    constexpr StreamId stream_id() const noexcept { return stream_; }
    constexpr EngineState state() const noexcept { return {algorithm, stream_, draws_, 0}; }

    friend constexpr bool operator==(const Tyche&, const Tyche&) = default;

private:
    TycheState state_;
    StreamId stream_;
    std::uint32_t draws_ = 0;
};

static_assert(WordEngine<Philox>);
static_assert(WordEngine<Threefry>);
static_assert(WordEngine<Squares>);
static_assert(WordEngine<Tyche>);

}  // namespace cbrng
