#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace doorsim {

/// Simulated time in whole milliseconds. Exact integer arithmetic only.
struct SimTime {
    std::int64_t millis = 0;

    constexpr SimTime() = default;
    constexpr explicit SimTime(std::int64_t ms) : millis(ms) {}

    constexpr auto operator<=>(const SimTime&) const = default;

    constexpr SimTime operator+(SimTime other) const { return SimTime{millis + other.millis}; }
    constexpr SimTime operator-(SimTime other) const { return SimTime{millis - other.millis}; }
};

constexpr SimTime ms(std::int64_t v) { return SimTime{v}; }
constexpr SimTime seconds(std::int64_t v) { return SimTime{v * 1000}; }

enum class LogicLevel : std::uint8_t { Low = 0, High = 1 };

constexpr LogicLevel level_of(bool b) { return b ? LogicLevel::High : LogicLevel::Low; }
constexpr bool is_high(LogicLevel l) { return l == LogicLevel::High; }
constexpr LogicLevel operator!(LogicLevel l) { return is_high(l) ? LogicLevel::Low : LogicLevel::High; }

enum class Edge : std::uint8_t { None, Rising, Falling };

constexpr Edge edge_between(LogicLevel previous, LogicLevel next) {
    if (previous == next) return Edge::None;
    return is_high(next) ? Edge::Rising : Edge::Falling;
}

/// Index of a net inside one circuit. The name lives in the circuit's net table.
struct NetId {
    std::uint32_t index = 0;
    constexpr auto operator<=>(const NetId&) const = default;
};

/// A net-value change that was processed, as reported in traces.
struct Event {
    SimTime time;
    std::uint64_t seq = 0;
    NetId net;
    LogicLevel level = LogicLevel::Low;

    bool operator==(const Event&) const = default;
};

}  // namespace doorsim
