#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "doorsim/logic.hpp"

namespace doorsim {

/// Door position of a fully open door; 0 is closed.
inline constexpr int kDoorOpenPosition = 1000;

enum class Motion : std::uint8_t { Stopped, Opening, Closing, Fault };

const char* to_string(Motion m);

enum class HazardKind : std::uint8_t { RelayContention, CountUnderflow };

const char* to_string(HazardKind k);

struct NetRecord {
    SimTime time;
    std::string net;
    LogicLevel level = LogicLevel::Low;
    bool operator==(const NetRecord&) const = default;
};

struct StateRecord {
    SimTime time;
    int count = 0;
    bool light = false;
    int door = 0;
    Motion motion = Motion::Stopped;
    bool operator==(const StateRecord&) const = default;
};

struct HazardRecord {
    SimTime time;
    HazardKind kind = HazardKind::RelayContention;
    std::string detail;
    bool operator==(const HazardRecord&) const = default;
};

using TraceRecord = std::variant<NetRecord, StateRecord, HazardRecord>;

inline SimTime record_time(const TraceRecord& r) {
    return std::visit([](const auto& x) { return x.time; }, r);
}

// Detail strings used on RELAY_CONTENTION records.
inline constexpr const char* kContentionBegin = "begin";
inline constexpr const char* kContentionEnd = "end";

}  // namespace doorsim
