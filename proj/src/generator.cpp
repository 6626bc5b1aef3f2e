#include "cbrng/generator.hpp"

#include <stdexcept>

namespace cbrng {

std::string_view to_string(Algorithm a) noexcept {
    switch (a) {
        case Algorithm::philox: return "philox";
        case Algorithm::threefry: return "threefry";
        case Algorithm::squares: return "squares";
        case Algorithm::tyche: return "tyche";
    }
    return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) noexcept {
    for (auto a : kAllAlgorithms) {
        if (to_string(a) == name) return a;
    }
    return std::nullopt;
}

namespace {

template <typename E>
E build(const StreamId& id) {
    return E(id.seed, id.stream_counter);
}

}  // namespace

Generator::Generator(Algorithm algorithm, std::uint64_t seed, std::uint32_t counter)
    : engine_(with_engine(algorithm, [&]<typename E>(std::type_identity<E>) -> Variant {
          return build<E>({seed, counter});
      })) {}

Algorithm Generator::algorithm() const noexcept {
    return std::visit([](const auto& e) { return std::decay_t<decltype(e)>::algorithm; }, engine_);
}

StreamId Generator::stream_id() const noexcept {
    return std::visit([](const auto& e) { return e.stream_id(); }, engine_);
}

EngineState Generator::state() const noexcept {
    return std::visit([](const auto& e) { return e.state(); }, engine_);
}

Generator Generator::restore(const EngineState& st) {
    return Generator(with_engine(st.algorithm, [&]<typename E>(std::type_identity<E>) -> Variant {
        return E::restore(st);
    }));
}

std::array<std::uint8_t, kSerializedStateSize> serialize(const EngineState& st) noexcept {
    std::array<std::uint8_t, kSerializedStateSize> out{};
    out[0] = static_cast<std::uint8_t>(st.algorithm);
    for (int i = 0; i < 8; ++i) out[1 + i] = static_cast<std::uint8_t>(st.stream.seed >> (8 * i));
    for (int i = 0; i < 4; ++i) out[9 + i] = static_cast<std::uint8_t>(st.stream.stream_counter >> (8 * i));
    for (int i = 0; i < 4; ++i) out[13 + i] = static_cast<std::uint8_t>(st.internal_counter >> (8 * i));
    out[17] = st.cache_pos;
    return out;
}

EngineState deserialize(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < kSerializedStateSize) throw std::invalid_argument("engine state: buffer too short");
    if (bytes[0] > static_cast<std::uint8_t>(Algorithm::tyche)) {
        throw std::invalid_argument("engine state: unknown algorithm tag");
    }
    EngineState st;
    st.algorithm = static_cast<Algorithm>(bytes[0]);
    for (int i = 0; i < 8; ++i) st.stream.seed |= std::uint64_t{bytes[1 + i]} << (8 * i);
    for (int i = 0; i < 4; ++i) st.stream.stream_counter |= std::uint32_t{bytes[9 + i]} << (8 * i);
    for (int i = 0; i < 4; ++i) st.internal_counter |= std::uint32_t{bytes[13 + i]} << (8 * i);
    st.cache_pos = bytes[17];
    return st;
}

}  // namespace cbrng
