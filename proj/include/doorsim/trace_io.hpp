#pragma once

// Trace text format, one record per line:
//
//   NET <time> <net> <0|1>
//   STATE <time> count=<NN> light=<ON|OFF> door=<0..1000> motion=<STOPPED|OPENING|CLOSING|FAULT>
//   HAZARD <time> <RELAY_CONTENTION|COUNT_UNDERFLOW> <detail>

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "doorsim/trace.hpp"

namespace doorsim {

class TraceFormatError : public std::runtime_error {
public:
    TraceFormatError(int line, const std::string& message)
        : std::runtime_error("trace line " + std::to_string(line) + ": " + message), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

std::string format_record(const TraceRecord& record);

std::string write_trace(std::span<const TraceRecord> records);

/// Inverse of write_trace. Throws TraceFormatError on any malformed line.
std::vector<TraceRecord> read_trace(std::string_view text);

struct Violation {
    SimTime time;
    std::string rule;
    std::string message;
};

struct Report {
    std::vector<Violation> violations;
    bool clean() const { return violations.empty(); }
};

/// Checks the light law, value ranges, time ordering, FAULT/hazard pairing
/// and flags counter underflow. RELAY_CONTENTION hazards matched by FAULT
/// states are findings, not violations.
Report check_invariants(std::span<const TraceRecord> records);

std::string format_report(const Report& report);

}  // namespace doorsim
