#pragma once

// Runtime-selected generator. Use the concrete engines directly in hot loops;
// Generator is for code that picks the algorithm from configuration.

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>

#include "cbrng/engines.hpp"

namespace cbrng {

std::string_view to_string(Algorithm a) noexcept;
std::optional<Algorithm> parse_algorithm(std::string_view name) noexcept;

class Generator {
public:
    using result_type = std::uint32_t;

    Generator(Algorithm algorithm, std::uint64_t seed, std::uint32_t counter);

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept { return next_u32(); }

    std::uint32_t next_u32() noexcept {
        return std::visit([](auto& e) { return e.next_u32(); }, engine_);
    }

    std::uint64_t next_u64() noexcept {
        return std::visit([](auto& e) { return e.next_u64(); }, engine_);
    }

    void fill(std::span<std::uint32_t> out) noexcept {
        std::visit([out](auto& e) { e.fill(out); }, engine_);
    }

    Algorithm algorithm() const noexcept;
    StreamId stream_id() const noexcept;
    EngineState state() const noexcept;

    /// Throws std::invalid_argument if the state is malformed.
    static Generator restore(const EngineState& st);

    template <typename F>
    decltype(auto) visit(F&& f) {
        return std::visit(std::forward<F>(f), engine_);
    }

private:
    using Variant = std::variant<Philox, Threefry, Squares, Tyche>;
    explicit Generator(Variant v) : engine_(std::move(v)) {}

    Variant engine_;
};

static_assert(WordEngine<Generator>);

inline Generator make_generator(Algorithm algorithm, std::uint64_t seed, std::uint32_t counter) {
    return Generator(algorithm, seed, counter);
}

/// Calls f with a default-constructed tag of the concrete engine type, e.g.
///   with_engine(a, [&]<typename E>(std::type_identity<E>) { ... });
template <typename F>
decltype(auto) with_engine(Algorithm a, F&& f) {
    switch (a) {
        case Algorithm::philox: return f(std::type_identity<Philox>{});
        case Algorithm::threefry: return f(std::type_identity<Threefry>{});
        case Algorithm::squares: return f(std::type_identity<Squares>{});
        case Algorithm::tyche: break;
    }
    return f(std::type_identity<Tyche>{});
}

// Wire format: tag (1) | seed (8) | stream_counter (4) | internal_counter (4)
// | cache_pos (1), all little-endian.
inline constexpr std::size_t kSerializedStateSize = 18;

std::array<std::uint8_t, kSerializedStateSize> serialize(const EngineState& st) noexcept;

/// Throws std::invalid_argument on a short buffer or unknown algorithm tag.
EngineState deserialize(std::span<const std::uint8_t> bytes);

}  // namespace cbrng
