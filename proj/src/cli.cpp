#include "doorsim/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "doorsim/design_calc.hpp"
#include "doorsim/scenario.hpp"
#include "doorsim/trace_io.hpp"

namespace doorsim::cli {

namespace {

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct RunArgs {
    std::string scenario;
    std::string trace_path;
    std::optional<std::int64_t> until;
    std::optional<std::int64_t> sample;
    bool strict = false;
    bool strict_hazards = false;
};

int cmd_run(const RunArgs& a, std::ostream& out, std::ostream& err) {
    auto text = read_file(a.scenario);
    if (!text) {
        err << "error: cannot read scenario '" << a.scenario << "'\n";
        return kExitUsage;
    }

    std::vector<TraceRecord> records;
    try {
        const Scenario scenario = parse_scenario(*text);
        RunOptions opts;
        if (a.until) opts.until = SimTime{*a.until};
        opts.sample_ms = a.sample;
        records = run_scenario(scenario, opts);
    } catch (const ParseError& e) {
        err << a.scenario << ": " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    const std::string trace = write_trace(records);
    if (a.trace_path.empty()) {
        out << trace;
    } else {
        std::ofstream file(a.trace_path, std::ios::binary);
        if (!(file << trace)) {
            err << "error: cannot write trace '" << a.trace_path << "'\n";
            return kExitUsage;
        }
    }

    const Report report = check_invariants(records);
    err << format_report(report);
    const auto hazards = std::count_if(records.begin(), records.end(), [](const TraceRecord& r) {
        return std::holds_alternative<HazardRecord>(r);
    });
    if (hazards > 0) err << hazards << (hazards == 1 ? " hazard" : " hazards") << " recorded\n";

    if (a.strict && !report.clean()) return kExitViolation;
    if (a.strict_hazards && hazards > 0) return kExitViolation;
    return kExitOk;
}

int cmd_check(const std::string& path, std::ostream& out, std::ostream& err) {
    auto text = read_file(path);
    if (!text) {
        err << "error: cannot read trace '" << path << "'\n";
        return kExitUsage;
    }
    try {
        const auto records = read_trace(*text);
        const Report report = check_invariants(records);
        out << format_report(report);
        return report.clean() ? kExitOk : kExitViolation;
    } catch (const TraceFormatError& e) {
        err << path << ": " << e.what() << '\n';
        return kExitUsage;
    }
}

/// One `calc` subcommand: its options and how to compute the result.
struct CalcCommand {
    std::string name;
    std::string help;
    std::vector<std::pair<std::string, std::string>> options;  // flag, description
    std::function<design::DesignQuantity(const std::vector<double>&)> compute;
    bool show_e12 = false;
};

std::vector<CalcCommand> calc_commands() {
    using namespace design;
    return {
        {"peak", "rectified peak voltage: Vreg + headroom + n*Vd",
         {{"--vreg", "regulated output (V)"}, {"--headroom", "regulator headroom (V)"},
          {"--n", "number of rectifier diodes"}, {"--vd", "diode drop (V)"}},
         [](const auto& v) { return rectified_peak(v[0], v[1], static_cast<int>(v[2]), v[3]); }},
        {"rms", "transformer secondary rms for a peak voltage",
         {{"--vpeak", "peak voltage (V)"}},
         [](const auto& v) { return transformer_rms(v[0]); }},
        {"ripple", "ripple amplitude as a fraction of peak",
         {{"--vpeak", "peak voltage (V)"}, {"--fraction", "ripple fraction (0..1)"}},
         [](const auto& v) { return ripple_amplitude(v[0], v[1]); }},
        {"cap", "smoothing capacitor C = I/(2f)/dV",
         {{"--i", "load current (A)"}, {"--f", "line frequency (Hz)"}, {"--dv", "ripple voltage (V)"}},
         [](const auto& v) { return smoothing_capacitor(v[0], v[1], v[2]); }, true},
        {"led-r", "IR emitter series resistor",
         {{"--v", "supply (V)"}, {"--vf", "forward voltage (V)"}, {"--if", "forward current (A)"}},
         [](const auto& v) { return led_series_resistor(v[0], v[1], v[2]); }},
        {"divider", "voltage divider output across the bottom resistor",
         {{"--rtop", "top resistor (ohm)"}, {"--rbottom", "bottom resistor (ohm)"}, {"--v", "supply (V)"}},
         [](const auto& v) { return divider_output(v[0], v[1], v[2]); }},
        {"ref-r", "comparator reference resistor below a fixed resistor",
         {{"--vref", "reference voltage (V)"}, {"--v", "supply (V)"}, {"--rfixed", "fixed resistor (ohm)"}},
         [](const auto& v) { return reference_divider_resistor(v[0], v[1], v[2]); }, true},
        {"mono-t", "555 one-shot period T = 1.1RC",
         {{"--r", "timing resistor (ohm)"}, {"--c", "timing capacitor (F)"}},
         [](const auto& v) { return monostable_period(v[0], v[1]); }},
        {"mono-r", "555 timing resistor for a period",
         {{"--t", "period (s)"}, {"--c", "timing capacitor (F)"}},
         [](const auto& v) { return monostable_resistor(v[0], v[1]); }, true},
        {"base-r", "switch base resistor for a relay coil load",
         {{"--v", "supply (V)"}, {"--rc", "coil resistance (ohm)"}, {"--hfe", "current gain"},
          {"--vin", "drive voltage (V)"}, {"--vbe", "base-emitter drop (V)"}},
         [](const auto& v) { return switch_base_resistor(v[0], v[1], v[2], v[3], v[4]); }, true},
    };
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Automatic sliding door and room-light controller simulator"};
    app.require_subcommand(1);

    RunArgs run_args;
    auto* run_cmd = app.add_subcommand("run", "simulate a scenario file and write its trace");
    run_cmd->add_option("scenario", run_args.scenario, "scenario file")->required();
    run_cmd->add_option("--trace", run_args.trace_path, "write the trace here instead of standard output");
    run_cmd->add_option("--until", run_args.until, "run at least until this time (ms)");
    run_cmd->add_option("--sample", run_args.sample, "emit a STATE record every N ms")
        ->check(CLI::PositiveNumber);
    run_cmd->add_flag("--strict", run_args.strict, "exit 1 on invariant violations");
    run_cmd->add_flag("--strict-hazards", run_args.strict_hazards, "exit 1 if any hazard is recorded");

    std::string check_path;
    auto* check_cmd = app.add_subcommand("check", "check a trace file against the system invariants");
    check_cmd->add_option("trace", check_path, "trace file")->required();

    auto* calc_cmd = app.add_subcommand("calc", "component design calculator");
    calc_cmd->require_subcommand(1);

    const auto commands = calc_commands();
    std::vector<std::vector<double>> values(commands.size());
    std::vector<CLI::App*> calc_subs;
    for (std::size_t i = 0; i < commands.size(); ++i) {
        const auto& c = commands[i];
        auto* sub = calc_cmd->add_subcommand(c.name, c.help);
        values[i].resize(c.options.size());
        for (std::size_t k = 0; k < c.options.size(); ++k) {
            sub->add_option(c.options[k].first, values[i][k], c.options[k].second)->required();
        }
        calc_subs.push_back(sub);
    }

    double preferred_value = 0;
    std::string preferred_series = "E12";
    std::string preferred_unit = "ohm";
    auto* pref_cmd = calc_cmd->add_subcommand("preferred", "nearest E-series preferred value");
    pref_cmd->add_option("--value", preferred_value, "value to snap")->required();
    pref_cmd->add_option("--series", preferred_series, "E12 or E24")->check(CLI::IsMember({"E12", "E24"}));
    pref_cmd->add_option("--unit", preferred_unit, "ohm or farad")->check(CLI::IsMember({"ohm", "farad"}));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        const CLI::App* context = &app;
        for (auto* sub : app.get_subcommands()) {
            context = sub;
            for (auto* inner : sub->get_subcommands()) context = inner;
        }
        err << context->help();
        return kExitUsage;
    }

    if (run_cmd->parsed()) return cmd_run(run_args, out, err);
    if (check_cmd->parsed()) return cmd_check(check_path, out, err);

    try {
        if (pref_cmd->parsed()) {
            const design::Unit unit = preferred_unit == "farad" ? design::Unit::Farad : design::Unit::Ohm;
            const auto series = preferred_series == "E24" ? design::Series::E24 : design::Series::E12;
            out << design::format_si(design::nearest_preferred({preferred_value, unit}, series)) << '\n';
            return kExitOk;
        }
        for (std::size_t i = 0; i < commands.size(); ++i) {
            if (!calc_subs[i]->parsed()) continue;
            const auto q = commands[i].compute(values[i]);
            out << design::format_quantity(q);
            if (commands[i].show_e12 && q.value > 0) {
                out << " (E12: " << design::format_si(design::nearest_preferred(q, design::Series::E12)) << ")";
            }
            out << '\n';
            return kExitOk;
        }
    } catch (const design::DesignError& e) {
        err << "error: " << e.what() << '\n';
        for (auto* sub : calc_subs) {
            if (sub->parsed()) err << sub->help();
        }
        return kExitUsage;
    }
    err << app.help();
    return kExitUsage;
}

}  // namespace doorsim::cli
