#pragma once

// Scenario files: line-oriented stimulus scripts.
//
//   # comment
//   duration 60000
//   person in at=1000 dwell=400
//   person out at=15000
//   set exit_cmp 0 at=30000
//   config door_travel_ms 4000

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "doorsim/door_system.hpp"
#include "doorsim/trace.hpp"

namespace doorsim {

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

inline constexpr std::int64_t kDefaultDwellMs = 400;

struct PersonEvent {
    Direction direction = Direction::In;
    SimTime at;
    std::int64_t dwell_ms = kDefaultDwellMs;
    bool operator==(const PersonEvent&) const = default;
};

struct RawEvent {
    std::string net;
    LogicLevel level = LogicLevel::Low;
    SimTime at;
    bool operator==(const RawEvent&) const = default;
};

using ScenarioEvent = std::variant<PersonEvent, RawEvent>;

SimTime event_time(const ScenarioEvent& e);

struct ConfigOverride {
    std::string key;
    std::int64_t value = 0;
    bool operator==(const ConfigOverride&) const = default;
};

struct Scenario {
    SimTime duration;
    std::vector<ScenarioEvent> events;  // sorted by time, file order kept on ties
    std::vector<ConfigOverride> overrides;

    /// Defaults with the overrides applied in order.
    SystemConfig config() const;
    bool operator==(const Scenario&) const = default;
};

/// Throws ParseError with the offending line number.
Scenario parse_scenario(std::string_view text);

std::string write_scenario(const Scenario& scenario);

struct RunOptions {
    std::optional<SimTime> until;
    std::optional<std::int64_t> sample_ms;
};

/// Builds the system, injects the scenario's stimulus and runs it to
/// max(duration, until).
std::vector<TraceRecord> run_scenario(const Scenario& scenario, const RunOptions& options = {});

}  // namespace doorsim
