#include "doorsim/trace_io.hpp"

#include <charconv>
#include <cstdio>
#include <optional>
#include <sstream>

namespace doorsim {

const char* to_string(Motion m) {
    switch (m) {
        case Motion::Stopped: return "STOPPED";
        case Motion::Opening: return "OPENING";
        case Motion::Closing: return "CLOSING";
        case Motion::Fault: return "FAULT";
    }
    return "?";
}

const char* to_string(HazardKind k) {
    switch (k) {
        case HazardKind::RelayContention: return "RELAY_CONTENTION";
        case HazardKind::CountUnderflow: return "COUNT_UNDERFLOW";
    }
    return "?";
}

namespace {

struct Formatter {
    std::string operator()(const NetRecord& r) const {
        return "NET " + std::to_string(r.time.millis) + " " + r.net + " " + (is_high(r.level) ? "1" : "0");
    }
    std::string operator()(const StateRecord& r) const {
        char count[16];
        std::snprintf(count, sizeof count, "%02d", r.count);
        return "STATE " + std::to_string(r.time.millis) + " count=" + count + " light=" + (r.light ? "ON" : "OFF") +
               " door=" + std::to_string(r.door) + " motion=" + to_string(r.motion);
    }
    std::string operator()(const HazardRecord& r) const {
        return "HAZARD " + std::to_string(r.time.millis) + " " + to_string(r.kind) + " " + r.detail;
    }
};

std::vector<std::string_view> split_spaces(std::string_view line, std::size_t max_fields) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (out.size() + 1 < max_fields) {
        const std::size_t sp = line.find(' ', pos);
        if (sp == std::string_view::npos) break;
        out.push_back(line.substr(pos, sp - pos));
        pos = sp + 1;
    }
    out.push_back(line.substr(pos));
    return out;
}

template <typename Int>
std::optional<Int> to_int(std::string_view s) {
    Int v{};
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (s.empty() || ec != std::errc{} || ptr != end) return std::nullopt;
    return v;
}

std::string_view keyed(std::string_view field, std::string_view key, int line) {
    if (!field.starts_with(key) || field.size() <= key.size() || field[key.size()] != '=') {
        throw TraceFormatError(line, "expected " + std::string(key) + "=..., got '" + std::string(field) + "'");
    }
    return field.substr(key.size() + 1);
}

SimTime parse_time(std::string_view s, int line) {
    auto v = to_int<std::int64_t>(s);
    if (!v || *v < 0) throw TraceFormatError(line, "bad time '" + std::string(s) + "'");
    return SimTime{*v};
}

TraceRecord parse_line(std::string_view line, int line_no) {
    if (line.starts_with("NET ")) {
        const auto f = split_spaces(line, 4);
        if (f.size() != 4 || f[2].empty() || f[3].find(' ') != std::string_view::npos) {
            throw TraceFormatError(line_no, "NET record needs <time> <net> <0|1>");
        }
        if (f[3] != "0" && f[3] != "1") throw TraceFormatError(line_no, "NET level must be 0 or 1");
        return NetRecord{parse_time(f[1], line_no), std::string(f[2]), f[3] == "1" ? LogicLevel::High : LogicLevel::Low};
    }
    if (line.starts_with("STATE ")) {
        const auto f = split_spaces(line, 6);
        if (f.size() != 6 || f[5].find(' ') != std::string_view::npos) {
            throw TraceFormatError(line_no, "STATE record needs <time> count= light= door= motion=");
        }
        StateRecord s;
        s.time = parse_time(f[1], line_no);
        const auto count_text = keyed(f[2], "count", line_no);
        auto count = to_int<int>(count_text);
        if (!count || count_text.size() < 2) throw TraceFormatError(line_no, "bad count '" + std::string(count_text) + "'");
        s.count = *count;
        const auto light = keyed(f[3], "light", line_no);
        if (light == "ON") s.light = true;
        else if (light == "OFF") s.light = false;
        else throw TraceFormatError(line_no, "light must be ON or OFF");
        auto door = to_int<int>(keyed(f[4], "door", line_no));
        if (!door) throw TraceFormatError(line_no, "bad door position");
        s.door = *door;
        const auto motion = keyed(f[5], "motion", line_no);
        if (motion == "STOPPED") s.motion = Motion::Stopped;
        else if (motion == "OPENING") s.motion = Motion::Opening;
        else if (motion == "CLOSING") s.motion = Motion::Closing;
        else if (motion == "FAULT") s.motion = Motion::Fault;
        else throw TraceFormatError(line_no, "unknown motion '" + std::string(motion) + "'");
        return s;
    }
    if (line.starts_with("HAZARD ")) {
        const auto f = split_spaces(line, 4);
        if (f.size() != 4 || f[3].empty()) throw TraceFormatError(line_no, "HAZARD record needs <time> <kind> <detail>");
        HazardRecord h;
        h.time = parse_time(f[1], line_no);
        if (f[2] == "RELAY_CONTENTION") h.kind = HazardKind::RelayContention;
        else if (f[2] == "COUNT_UNDERFLOW") h.kind = HazardKind::CountUnderflow;
        else throw TraceFormatError(line_no, "unknown hazard kind '" + std::string(f[2]) + "'");
        h.detail = std::string(f[3]);
        return h;
    }
    throw TraceFormatError(line_no, "unrecognized record '" + std::string(line) + "'");
}

}  // namespace

std::string format_record(const TraceRecord& record) { return std::visit(Formatter{}, record); }

std::string write_trace(std::span<const TraceRecord> records) {
    std::string out;
    for (const auto& r : records) {
        out += format_record(r);
        out += '\n';
    }
    return out;
}

std::vector<TraceRecord> read_trace(std::string_view text) {
    std::vector<TraceRecord> records;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        ++line_no;
        if (nl == std::string_view::npos) {
            throw TraceFormatError(line_no, "truncated record (missing newline)");
        }
        std::string_view line = text.substr(pos, nl - pos);
        pos = nl + 1;
        records.push_back(parse_line(line, line_no));
    }
    return records;
}

Report check_invariants(std::span<const TraceRecord> records) {
    Report report;
    auto flag = [&report](SimTime t, std::string rule, std::string message) {
        report.violations.push_back(Violation{t, std::move(rule), std::move(message)});
    };

    Motion motion = Motion::Stopped;
    std::optional<SimTime> previous_time;
    std::size_t i = 0;
    while (i < records.size()) {
        const SimTime t = record_time(records[i]);
        if (previous_time && t < *previous_time) {
            flag(t, "time-order",
                 "time goes backwards (" + std::to_string(previous_time->millis) + " -> " + std::to_string(t.millis) + ")");
        }
        previous_time = t;

        // Everything at this timestamp is checked as one group so hazard
        // records can be paired with the STATE that enters or leaves FAULT.
        int fault_entries = 0, fault_exits = 0, begins = 0, ends = 0;
        for (; i < records.size() && record_time(records[i]) == t; ++i) {
            const TraceRecord& r = records[i];
            if (const auto* s = std::get_if<StateRecord>(&r)) {
                if (s->count < 0 || s->count > 99) flag(t, "count-range", "count " + std::to_string(s->count) + " outside 0..99");
                if (s->door < 0 || s->door > kDoorOpenPosition) flag(t, "door-range", "door " + std::to_string(s->door) + " outside 0..1000");
                if (s->light != (s->count != 0)) {
                    flag(t, "light-law", std::string("light ") + (s->light ? "ON" : "OFF") + " with count " +
                                             std::to_string(s->count) + " (light must be ON iff count != 0)");
                }
                if (s->motion == Motion::Fault && motion != Motion::Fault) ++fault_entries;
                if (s->motion != Motion::Fault && motion == Motion::Fault) ++fault_exits;
                motion = s->motion;
            } else if (const auto* h = std::get_if<HazardRecord>(&r)) {
                if (h->kind == HazardKind::CountUnderflow) {
                    flag(t, "count-underflow", "COUNT_UNDERFLOW: counter wrapped below zero (" + h->detail + ")");
                } else if (h->detail == kContentionBegin) {
                    ++begins;
                } else if (h->detail == kContentionEnd) {
                    ++ends;
                } else {
                    flag(t, "hazard-detail", "RELAY_CONTENTION detail must be 'begin' or 'end', got '" + h->detail + "'");
                }
            }
        }
        if (fault_entries > begins) flag(t, "fault-without-hazard", "FAULT entered without RELAY_CONTENTION begin");
        if (begins > fault_entries) flag(t, "hazard-without-fault", "RELAY_CONTENTION begin without FAULT state");
        if (fault_exits > ends) flag(t, "fault-without-hazard", "FAULT left without RELAY_CONTENTION end");
        if (ends > fault_exits) flag(t, "hazard-without-fault", "RELAY_CONTENTION end without leaving FAULT");
    }
    return report;
}

std::string format_report(const Report& report) {
    std::ostringstream out;
    for (const auto& v : report.violations) {
        out << v.time.millis << " " << v.rule << ": " << v.message << '\n';
    }
    out << report.violations.size() << (report.violations.size() == 1 ? " violation" : " violations") << '\n';
    return out.str();
}

}  // namespace doorsim
