#include "doorsim/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace doorsim {

namespace {

std::vector<std::string_view> split_words(std::string_view line) {
    std::vector<std::string_view> words;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        if (i > start) words.push_back(line.substr(start, i - start));
    }
    return words;
}

std::int64_t parse_ms(std::string_view text, int line, std::string_view what) {
    std::int64_t value = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (text.empty() || ec != std::errc{} || ptr != end || value < 0) {
        throw ParseError(line, "malformed " + std::string(what) + " '" + std::string(text) +
                                   "' (expected a non-negative integer)");
    }
    return value;
}

/// Reads `key=<integer>`.
std::int64_t keyed_ms(std::string_view word, std::string_view key, int line) {
    if (!word.starts_with(key) || word.size() <= key.size() || word[key.size()] != '=') {
        throw ParseError(line, "expected " + std::string(key) + "=<ms>, got '" + std::string(word) + "'");
    }
    return parse_ms(word.substr(key.size() + 1), line, key);
}

void apply_override(SystemConfig& cfg, const ConfigOverride& o) {
    if (o.key == "entry_lockout_ms") cfg.entry_lockout_ms = o.value;
    else if (o.key == "exit_lockout_ms") cfg.exit_lockout_ms = o.value;
    else if (o.key == "door_open_mono_ms") cfg.door_open_mono_ms = o.value;
    else if (o.key == "door_close_mono_ms") cfg.door_close_mono_ms = o.value;
    else if (o.key == "door_travel_ms") cfg.door_travel_ms = o.value;
    else if (o.key == "initial_count") cfg.initial_count = static_cast<int>(std::min<std::int64_t>(o.value, 1000));
    else throw ConfigError("unknown config key '" + o.key + "'");
}

bool known_config_key(std::string_view key) {
    return key == "entry_lockout_ms" || key == "exit_lockout_ms" || key == "door_open_mono_ms" ||
           key == "door_close_mono_ms" || key == "door_travel_ms" || key == "initial_count";
}

}  // namespace

SimTime event_time(const ScenarioEvent& e) {
    return std::visit([](const auto& x) { return x.at; }, e);
}

SystemConfig Scenario::config() const {
    SystemConfig cfg;
    for (const auto& o : overrides) apply_override(cfg, o);
    return cfg;
}

Scenario parse_scenario(std::string_view text) {
    Scenario scenario;
    std::optional<int> duration_line;
    std::vector<int> event_lines;
    int last_config_line = 0;
    int line_no = 0;

    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view line = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++line_no;

        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        const auto w = split_words(line);
        if (w.empty()) continue;

        const std::string_view directive = w[0];
        if (directive == "duration") {
            if (duration_line) {
                throw ParseError(line_no, "duplicate 'duration' (first given on line " +
                                              std::to_string(*duration_line) + ")");
            }
            if (w.size() != 2) throw ParseError(line_no, "usage: duration <ms>");
            scenario.duration = SimTime{parse_ms(w[1], line_no, "duration")};
            duration_line = line_no;
        } else if (directive == "person") {
            if (w.size() < 3 || w.size() > 4) throw ParseError(line_no, "usage: person <in|out> at=<ms> [dwell=<ms>]");
            PersonEvent p;
            if (w[1] == "in") p.direction = Direction::In;
            else if (w[1] == "out") p.direction = Direction::Out;
            else throw ParseError(line_no, "person direction must be 'in' or 'out', got '" + std::string(w[1]) + "'");
            p.at = SimTime{keyed_ms(w[2], "at", line_no)};
            if (w.size() == 4) p.dwell_ms = keyed_ms(w[3], "dwell", line_no);
            if (p.dwell_ms < 1) throw ParseError(line_no, "dwell must be at least 1 ms");
            scenario.events.emplace_back(p);
            event_lines.push_back(line_no);
        } else if (directive == "set") {
            if (w.size() != 4) throw ParseError(line_no, "usage: set <net> <0|1> at=<ms>");
            const auto nets = public_nets();
            if (std::find(nets.begin(), nets.end(), w[1]) == nets.end()) {
                throw ParseError(line_no, "unknown net '" + std::string(w[1]) + "'");
            }
            const auto stim = stimulus_nets();
            if (std::find(stim.begin(), stim.end(), w[1]) == stim.end()) {
                throw ParseError(line_no, "net '" + std::string(w[1]) +
                                              "' is driven internally; only entry_cmp and exit_cmp accept stimulus");
            }
            RawEvent r;
            r.net = std::string(w[1]);
            if (w[2] == "0") r.level = LogicLevel::Low;
            else if (w[2] == "1") r.level = LogicLevel::High;
            else throw ParseError(line_no, "level must be 0 or 1, got '" + std::string(w[2]) + "'");
            r.at = SimTime{keyed_ms(w[3], "at", line_no)};
            scenario.events.emplace_back(r);
            event_lines.push_back(line_no);
        } else if (directive == "config") {
            if (w.size() != 3) throw ParseError(line_no, "usage: config <key> <value>");
            if (!known_config_key(w[1])) throw ParseError(line_no, "unknown config key '" + std::string(w[1]) + "'");
            scenario.overrides.push_back(ConfigOverride{std::string(w[1]), parse_ms(w[2], line_no, "config value")});
            last_config_line = line_no;
        } else {
            throw ParseError(line_no, "unknown directive '" + std::string(directive) + "'");
        }
    }

    if (!duration_line) throw ParseError(std::max(line_no, 1), "missing required 'duration' directive");

    for (std::size_t i = 0; i < scenario.events.size(); ++i) {
        const SimTime at = event_time(scenario.events[i]);
        if (at > scenario.duration) {
            throw ParseError(event_lines[i], "event at " + std::to_string(at.millis) + " ms is after duration " +
                                                 std::to_string(scenario.duration.millis) + " ms");
        }
    }

    if (!scenario.overrides.empty()) {
        try {
            scenario.config().validate();
        } catch (const ConfigError& e) {
            throw ParseError(last_config_line, e.what());
        }
    }

    std::stable_sort(scenario.events.begin(), scenario.events.end(),
                     [](const ScenarioEvent& a, const ScenarioEvent& b) { return event_time(a) < event_time(b); });
    return scenario;
}

std::string write_scenario(const Scenario& scenario) {
    std::ostringstream out;
    out << "duration " << scenario.duration.millis << '\n';
    for (const auto& o : scenario.overrides) out << "config " << o.key << ' ' << o.value << '\n';
    for (const auto& e : scenario.events) {
        if (const auto* p = std::get_if<PersonEvent>(&e)) {
            out << "person " << (p->direction == Direction::In ? "in" : "out") << " at=" << p->at.millis
                << " dwell=" << p->dwell_ms << '\n';
        } else {
            const auto& r = std::get<RawEvent>(e);
            out << "set " << r.net << ' ' << (is_high(r.level) ? 1 : 0) << " at=" << r.at.millis << '\n';
        }
    }
    return out.str();
}

std::vector<TraceRecord> run_scenario(const Scenario& scenario, const RunOptions& options) {
    DoorSystem sys = DoorSystem::build(scenario.config());
    for (const auto& e : scenario.events) {
        if (const auto* p = std::get_if<PersonEvent>(&e)) {
            sys.inject_person(p->direction, p->at, p->dwell_ms);
        } else {
            const auto& r = std::get<RawEvent>(e);
            sys.set_net(r.net, r.level, r.at);
        }
    }

    const SimTime end = std::max(scenario.duration, options.until.value_or(SimTime{0}));
    std::vector<TraceRecord> records;
    auto append = [&records](std::vector<TraceRecord> more) {
        records.insert(records.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
    };

    if (options.sample_ms) {
        if (*options.sample_ms <= 0) throw SimulationError("sample interval must be positive");
        for (SimTime t{0}; t <= end; t = t + SimTime{*options.sample_ms}) {
            append(sys.advance_until(t));
            append(sys.sample_state());
        }
    }
    append(sys.advance_until(end));
    return records;
}

}  // namespace doorsim
