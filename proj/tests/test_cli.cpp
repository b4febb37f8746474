#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doorsim/cli.hpp"

namespace fs = std::filesystem;
using doorsim::cli::run;

namespace {

struct Result {
    int status;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int status = run(args, out, err);
    return {status, out.str(), err.str()};
}

std::string src(const std::string& rel) { return std::string(DOORSIM_SOURCE_DIR) + "/tests/" + rel; }

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path temp_path(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "doorsim_cli_test";
    fs::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_CASE("run writes the trace and a clean report") {
    const Result r = invoke({"run", src("scenarios/single_entry.txt")});
    CHECK(r.status == 0);
    CHECK(r.out == slurp(src("golden/single_entry.trace")));
    CHECK(r.err == "0 violations\n");
}

TEST_CASE("run --trace writes to a file and reruns are byte identical") {
    const fs::path a = temp_path("a.trace"), b = temp_path("b.trace");
    REQUIRE(invoke({"run", src("scenarios/busy_room.txt"), "--trace", a.string()}).status == 0);
    REQUIRE(invoke({"run", src("scenarios/busy_room.txt"), "--trace", b.string()}).status == 0);
    CHECK(!slurp(a).empty());
    CHECK(slurp(a) == slurp(b));
}

TEST_CASE("strict runs fail on violations and hazards") {
    const Result underflow = invoke({"run", src("scenarios/underflow.txt"), "--strict"});
    CHECK(underflow.status == 1);
    CHECK(underflow.err.find("COUNT_UNDERFLOW") != std::string::npos);
    CHECK(invoke({"run", src("scenarios/underflow.txt")}).status == 0);

    CHECK(invoke({"run", src("scenarios/door_retrigger.txt"), "--strict"}).status == 0);
    const Result hazards = invoke({"run", src("scenarios/door_retrigger.txt"), "--strict-hazards"});
    CHECK(hazards.status == 1);
    CHECK(hazards.err.find("2 hazards recorded") != std::string::npos);
}

TEST_CASE("run errors are usage errors") {
    CHECK(invoke({"run", src("scenarios/missing.txt")}).status == 2);
    const Result bad = invoke({"run", src("scenarios/bad_directive.txt")});
    CHECK(bad.status == 2);
    CHECK(bad.err.find("line 2") != std::string::npos);
    CHECK(invoke({"run"}).status == 2);
    CHECK(invoke({"run", src("scenarios/single_entry.txt"), "--sample", "0"}).status == 2);
    CHECK(invoke({}).status == 2);
    CHECK(invoke({"fly"}).status == 2);
}

TEST_CASE("run --until and --sample") {
    const Result until = invoke({"run", src("scenarios/single_entry.txt"), "--until", "30000"});
    CHECK(until.status == 0);
    CHECK(until.out == slurp(src("golden/single_entry.trace")));

    const Result sampled = invoke({"run", src("scenarios/single_entry.txt"), "--sample", "5000"});
    CHECK(sampled.status == 0);
    CHECK(sampled.out.find("STATE 5000 count=01 light=ON door=800 motion=OPENING\n") != std::string::npos);
    CHECK(sampled.out.find("STATE 20000 count=01 light=ON door=0 motion=STOPPED\n") != std::string::npos);
}

TEST_CASE("check exit codes") {
    const Result clean = invoke({"check", src("golden/single_entry.trace")});
    CHECK(clean.status == 0);
    CHECK(clean.out == "0 violations\n");

    const Result bad = invoke({"check", src("golden/light_law_violation.trace")});
    CHECK(bad.status == 1);
    CHECK(bad.out.find("light-law") != std::string::npos);

    const Result truncated = invoke({"check", src("golden/truncated.trace")});
    CHECK(truncated.status == 2);
    CHECK(truncated.err.find("line 2") != std::string::npos);

    CHECK(invoke({"check", src("golden/nope.trace")}).status == 2);
}

TEST_CASE("calc subcommands") {
    CHECK(invoke({"calc", "mono-r", "--t", "10", "--c", "100e-6"}).out == "90910 Ω (E12: 82 kΩ)\n");
    CHECK(invoke({"calc", "led-r", "--v", "9", "--vf", "1.7", "--if", "0.150"}).out == "48.67 Ω\n");
    CHECK(invoke({"calc", "peak", "--vreg", "12", "--headroom", "4", "--n", "4", "--vd", "0.6"}).out == "18.40 V\n");
    CHECK(invoke({"calc", "rms", "--vpeak", "18.4"}).out == "13.01 V\n");
    CHECK(invoke({"calc", "ripple", "--vpeak", "18.4", "--fraction", "0.15"}).out == "2.760 V\n");
    CHECK(invoke({"calc", "cap", "--i", "1", "--f", "50", "--dv", "2.76"}).out == "0.003623 F (E12: 3.9 mF)\n");
    CHECK(invoke({"calc", "divider", "--rtop", "1e6", "--rbottom", "1e6", "--v", "12"}).out == "6.000 V\n");
    CHECK(invoke({"calc", "ref-r", "--vref", "4", "--v", "12", "--rfixed", "1000"}).out == "500.0 Ω (E12: 470 Ω)\n");
    CHECK(invoke({"calc", "mono-t", "--r", "91e3", "--c", "100e-6"}).out == "10.01 s\n");
    CHECK(invoke({"calc", "base-r", "--v", "12", "--rc", "400", "--hfe", "200", "--vin", "10", "--vbe", "0.6"}).out ==
          "62670 Ω (E12: 68 kΩ)\n");
    CHECK(invoke({"calc", "preferred", "--value", "45454"}).out == "47 kΩ\n");
    CHECK(invoke({"calc", "preferred", "--value", "90909", "--series", "E24"}).out == "91 kΩ\n");

    const Result zero_dv = invoke({"calc", "cap", "--i", "1", "--f", "50", "--dv", "0"});
    CHECK(zero_dv.status == 2);
    CHECK(zero_dv.err.find("--dv") != std::string::npos);
    CHECK(invoke({"calc", "led-r", "--v", "1.7", "--vf", "1.7", "--if", "0.1"}).status == 2);
    CHECK(invoke({"calc", "mono-r", "--t", "10"}).status == 2);
    CHECK(invoke({"calc", "preferred", "--value", "10", "--series", "E96"}).status == 2);
}
