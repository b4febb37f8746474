#include <doctest.h>

#include <random>
#include <set>

#include "doorsim/components.hpp"

using namespace doorsim;

namespace {
constexpr LogicLevel O = LogicLevel::Low;
constexpr LogicLevel I = LogicLevel::High;
}  // namespace

TEST_CASE("gate truth tables") {
    struct Row {
        LogicLevel a, b, or_, and_, xor_;
    };
    // XOR column is the Ex-OR truth table: 00->0, 01->1, 10->1, 11->0.
    const Row rows[] = {
        {O, O, O, O, O},
        {O, I, I, O, I},
        {I, O, I, O, I},
        {I, I, I, I, O},
    };
    for (const auto& r : rows) {
        CHECK(gate_eval(GateKind::Or, r.a, r.b) == r.or_);
        CHECK(gate_eval(GateKind::And, r.a, r.b) == r.and_);
        CHECK(gate_eval(GateKind::Xor, r.a, r.b) == r.xor_);
    }
}

TEST_CASE("edge classification") {
    CHECK(edge_between(O, I) == Edge::Rising);
    CHECK(edge_between(I, O) == Edge::Falling);
    CHECK(edge_between(O, O) == Edge::None);
    CHECK(edge_between(I, I) == Edge::None);
}

TEST_CASE("monostable trigger and timeout") {
    const MonostableState idle = make_monostable(ms(10000));

    const MonostableState t1 = monostable_trigger(idle, Edge::Falling, ms(1000));
    CHECK(t1.phase == MonostablePhase::Timing);
    CHECK(t1.expires_at == ms(11000));
    CHECK(t1.output() == I);

    SUBCASE("non-retriggerable") {
        const MonostableState t2 = monostable_trigger(t1, Edge::Falling, ms(7000));
        CHECK(t2 == t1);
        CHECK(t2.expires_at == ms(11000));
    }
    SUBCASE("wrong edges are ignored") {
        CHECK(monostable_trigger(idle, Edge::Rising, ms(5)) == idle);
        CHECK(monostable_trigger(idle, Edge::None, ms(5)) == idle);
    }
    SUBCASE("timeout at expiry") {
        const MonostableState done = monostable_timeout(t1, ms(11000));
        CHECK(done.phase == MonostablePhase::Idle);
        CHECK(done.output() == O);
    }
    SUBCASE("timeout at the wrong time is an internal error") {
        CHECK_THROWS_AS(monostable_timeout(t1, ms(10999)), SimulationError);
        CHECK_THROWS_AS(monostable_timeout(idle, ms(0)), SimulationError);
    }
    CHECK_THROWS_AS(make_monostable(ms(0)), std::invalid_argument);
}

TEST_CASE("property: pulse width equals the period for every accepted trigger") {
    std::mt19937_64 rng(3);
    for (int round = 0; round < 500; ++round) {
        const std::int64_t period = 1 + static_cast<std::int64_t>(rng() % 20000);
        MonostableState s = make_monostable(SimTime{period});
        std::int64_t now = 0;
        for (int k = 0; k < 20; ++k) {
            now += static_cast<std::int64_t>(rng() % 8000);
            if (s.phase == MonostablePhase::Timing && now >= s.expires_at.millis) {
                s = monostable_timeout(s, s.expires_at);
            }
            const MonostableState before = s;
            s = monostable_trigger(s, Edge::Falling, SimTime{now});
            if (before.phase == MonostablePhase::Idle) {
                REQUIRE(s.expires_at.millis - now == period);
            } else {
                REQUIRE(s.expires_at == before.expires_at);
            }
        }
    }
}

TEST_CASE("5 s and 10 s one-shots agree for 5 s then differ") {
    Circuit c;
    const NetId trig = c.add_net("trig");
    const NetId m1 = c.add_net("m1");
    const NetId m2 = c.add_net("m2");
    c.emplace<MonostableElement>(ms(5000), trig, m1);
    c.emplace<MonostableElement>(ms(10000), trig, m2);
    c.schedule(ms(0), trig, I);
    c.advance_until(ms(0));
    c.schedule(ms(1), trig, O);
    c.advance_until(ms(1));

    // Probe every 50 ms relative to the trigger at t = 1 ms.
    for (std::int64_t dt = 0; dt < 12000; dt += 50) {
        c.advance_until(SimTime{1 + dt});
        if (dt < 5000) {
            REQUIRE(c.level(m1) == I);
            REQUIRE(c.level(m2) == I);
        } else if (dt < 10000) {
            REQUIRE(c.level(m1) == O);
            REQUIRE(c.level(m2) == I);
        } else {
            REQUIRE(c.level(m1) == O);
            REQUIRE(c.level(m2) == O);
        }
    }
}

namespace {

// Independent oracle: a two-digit decade automaton defined by its transition
// on the integer value, wrapping modulo 100.
OccupancyCounter oracle_step(OccupancyCounter c, bool down) {
    const int v = (c.tens * 10 + c.ones + (down ? 99 : 1)) % 100;
    return OccupancyCounter{static_cast<std::uint8_t>(v % 10), static_cast<std::uint8_t>(v / 10)};
}

}  // namespace

TEST_CASE("counter clock edge examples") {
    CHECK(counter_clock_edge(OccupancyCounter{0, 0}, false) == OccupancyCounter{1, 0});
    CHECK(counter_clock_edge(OccupancyCounter{9, 0}, false) == OccupancyCounter{0, 1});
    CHECK(counter_clock_edge(OccupancyCounter{0, 0}, true) == OccupancyCounter{9, 9});
    CHECK(counter_clock_edge(OccupancyCounter{9, 9}, false) == OccupancyCounter{0, 0});
    CHECK(counter_clock_edge(OccupancyCounter{0, 1}, true) == OccupancyCounter{9, 0});
}

TEST_CASE("counter matches the decade automaton on all 100 states in both directions") {
    for (int v = 0; v < 100; ++v) {
        const OccupancyCounter c = OccupancyCounter::from_value(v);
        for (bool down : {false, true}) {
            const OccupancyCounter got = counter_clock_edge(c, down);
            REQUIRE(got == oracle_step(c, down));
            REQUIRE(got.ones <= 9);
            REQUIRE(got.tens <= 9);
        }
    }
    CHECK_THROWS_AS(OccupancyCounter::from_value(100), std::out_of_range);
    CHECK_THROWS_AS(OccupancyCounter::from_value(-1), std::out_of_range);
}

TEST_CASE("property: random edge sequences equal initial plus net steps mod 100") {
    std::mt19937_64 rng(99);
    for (int round = 0; round < 1000; ++round) {
        const int initial = static_cast<int>(rng() % 100);
        OccupancyCounter c = OccupancyCounter::from_value(initial);
        int net = 0;
        const int n = static_cast<int>(rng() % 300);
        for (int i = 0; i < n; ++i) {
            const bool down = rng() & 1;
            c = counter_clock_edge(c, down);
            net += down ? -1 : 1;
        }
        REQUIRE(c.value() == ((initial + net) % 100 + 100) % 100);
    }
}

TEST_CASE("7447 decode") {
    const SegmentPattern eight = decode_7447(8);
    for (auto s : eight.segments) CHECK(s == LogicLevel::Low);

    const SegmentPattern zero = decode_7447(0);
    for (int s = 0; s < 6; ++s) CHECK(zero.lit(s));
    CHECK_FALSE(zero.lit(6));

    const SegmentPattern one = decode_7447(1);
    for (int s = 0; s < 7; ++s) CHECK(one.lit(s) == (s == 1 || s == 2));

    std::set<std::array<LogicLevel, 7>> seen;
    for (int d = 0; d <= 9; ++d) seen.insert(decode_7447(d).segments);
    CHECK(seen.size() == 10);

    CHECK_THROWS_AS(decode_7447(10), std::out_of_range);
    CHECK_THROWS_AS(decode_7447(-1), std::out_of_range);
}

TEST_CASE("transistor saturation design points") {
    // 9.4 V / 64 kOhm = 146.9 uA against 150 uA needed: inside the 5 % margin.
    CHECK(transistor_saturated(10, 0.6, 64e3, 200, 12, 400));
    CHECK(transistor_saturated(12, 0.6, 130e3, 350, 12, 400));
    CHECK_FALSE(transistor_saturated(0, 0.6, 64e3, 200, 12, 400));
    CHECK_FALSE(transistor_saturated(0.6, 0.6, 64e3, 200, 12, 400));
    // The 100 kOhm part fitted in the driver stage only delivers 94 uA.
    CHECK_FALSE(transistor_saturated(10, 0.6, 100e3, 200, 12, 400));
}

TEST_CASE("property: saturation is monotone in drive, gain and base resistor") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> vin(0, 15), rb(1e3, 500e3), hfe(20, 500), grow(1.0, 3.0);
    for (int i = 0; i < 5000; ++i) {
        const double v = vin(rng), r = rb(rng), h = hfe(rng);
        if (!transistor_saturated(v, 0.6, r, h, 12, 400)) continue;
        REQUIRE(transistor_saturated(v * grow(rng), 0.6, r, h, 12, 400));
        REQUIRE(transistor_saturated(v, 0.6, r, h * grow(rng), 12, 400));
        REQUIRE(transistor_saturated(v, 0.6, r / grow(rng), h, 12, 400));
    }
}

TEST_CASE("relay follows its switch") {
    const SwitchStage stage{10, 0.6, 64e3, 200, 12, 400};
    CHECK(relay_response(stage, I).energized);
    CHECK_FALSE(relay_response(stage, O).energized);
    CHECK(relay_response(stage, I).coil_resistance == 400);
}

TEST_CASE("beam comparator is active low") {
    CHECK(BeamSensor{true}.comparator_out() == O);
    CHECK(BeamSensor{false}.comparator_out() == I);
}
