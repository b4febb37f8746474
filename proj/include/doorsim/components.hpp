#pragma once

// Behavioral models of the circuit parts: gates, the 555 one-shot, the
// cascaded 74190 decade counters, the 7447 decoder, the transistor relay
// driver and the beam comparator. Each model is a pure transition function on
// a small value type; the *Element classes wire them into a Circuit.

#include <array>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

#include "doorsim/circuit.hpp"
#include "doorsim/logic.hpp"

namespace doorsim {

// ---------------------------------------------------------------- gates

enum class GateKind : std::uint8_t { Or, And, Xor };

constexpr LogicLevel gate_eval(GateKind kind, LogicLevel a, LogicLevel b) {
    const bool x = is_high(a);
    const bool y = is_high(b);
    switch (kind) {
        case GateKind::Or: return level_of(x || y);
        case GateKind::And: return level_of(x && y);
        case GateKind::Xor: return level_of(x != y);
    }
    return LogicLevel::Low;
}

// ---------------------------------------------------------------- 555 one-shot

enum class MonostablePhase : std::uint8_t { Idle, Timing };

struct MonostableState {
    MonostablePhase phase = MonostablePhase::Idle;
    SimTime expires_at{0};  // meaningful only while Timing
    SimTime period{1};

    LogicLevel output() const { return level_of(phase == MonostablePhase::Timing); }
    bool operator==(const MonostableState&) const = default;
};

/// Builds an idle one-shot. Throws std::invalid_argument unless period > 0.
MonostableState make_monostable(SimTime period);

/// Non-retriggerable: a falling trigger edge starts a pulse only from Idle.
MonostableState monostable_trigger(const MonostableState& state, Edge trigger_edge, SimTime now);

/// Ends the pulse. Throws SimulationError if the one-shot is not timing or
/// `now` is not its expiry time.
MonostableState monostable_timeout(const MonostableState& state, SimTime now);

// ---------------------------------------------------------------- 74190 x2

/// Two cascaded BCD decade counters; the ones digit's ripple clocks the tens.
struct OccupancyCounter {
    std::uint8_t ones = 0;
    std::uint8_t tens = 0;

    int value() const { return tens * 10 + ones; }
    static OccupancyCounter from_value(int value);
    bool operator==(const OccupancyCounter&) const = default;
};

/// One rising clock edge. `down` is the settled D/U level (HIGH = count down).
/// Wraps 99 -> 00 counting up and 00 -> 99 counting down.
OccupancyCounter counter_clock_edge(const OccupancyCounter& counter, bool down);

// ---------------------------------------------------------------- 7447

/// Segments a..g, active low: LogicLevel::Low means the segment is lit.
struct SegmentPattern {
    std::array<LogicLevel, 7> segments{};

    bool lit(int index) const { return segments.at(index) == LogicLevel::Low; }
    bool operator==(const SegmentPattern&) const = default;
};

/// Throws std::out_of_range for digits outside 0..9.
SegmentPattern decode_7447(int digit);

// ---------------------------------------------------------------- relay driver

/// Delivered base current must reach this fraction of the current needed to
/// saturate the switch.
inline constexpr double kSaturationMargin = 0.95;

/// A common-emitter switch with a relay coil as its collector load.
struct SwitchStage {
    double v_in = 0;      // base drive voltage when the input is high
    double v_be = 0.6;
    double r_b = 0;       // base resistor
    double h_fe = 0;
    double v_supply = 12;
    double r_c = 400;     // relay coil resistance
};

bool transistor_saturated(double v_in, double v_be, double r_b, double h_fe, double v_supply,
                          double r_c);

inline bool transistor_saturated(const SwitchStage& s) {
    return transistor_saturated(s.v_in, s.v_be, s.r_b, s.h_fe, s.v_supply, s.r_c);
}

struct RelayState {
    bool energized = false;
    double coil_resistance = 400;
};

/// Relay state for a given logic drive on the switch input.
RelayState relay_response(const SwitchStage& stage, LogicLevel drive);

// ---------------------------------------------------------------- beam sensor

struct BeamSensor {
    bool blocked = false;
    LogicLevel comparator_out() const { return level_of(!blocked); }
};

// ---------------------------------------------------------------- circuit elements

class GateElement final : public Element {
public:
    GateElement(GateKind kind, NetId a, NetId b, NetId out) : kind_(kind), a_(a), b_(b), out_(out) {}

    std::unique_ptr<Element> clone() const override { return std::make_unique<GateElement>(*this); }
    std::vector<NetId> outputs() const override { return {out_}; }
    bool combinational() const override { return true; }
    void evaluate(ElementContext& ctx) const override;

private:
    GateKind kind_;
    NetId a_, b_, out_;
};

/// Many-input OR, used for the light drive over all counter bits.
class WideOrElement final : public Element {
public:
    WideOrElement(std::vector<NetId> inputs, NetId out) : inputs_(std::move(inputs)), out_(out) {}

    std::unique_ptr<Element> clone() const override { return std::make_unique<WideOrElement>(*this); }
    std::vector<NetId> outputs() const override { return {out_}; }
    bool combinational() const override { return true; }
    void evaluate(ElementContext& ctx) const override;

private:
    std::vector<NetId> inputs_;
    NetId out_;
};

/// Transistor switch plus relay: the output net is HIGH while the coil is energized.
class RelayElement final : public Element {
public:
    RelayElement(SwitchStage stage, NetId drive, NetId energized)
        : stage_(stage), drive_(drive), energized_(energized) {}

    std::unique_ptr<Element> clone() const override { return std::make_unique<RelayElement>(*this); }
    std::vector<NetId> outputs() const override { return {energized_}; }
    bool combinational() const override { return true; }
    void evaluate(ElementContext& ctx) const override;

    const SwitchStage& stage() const { return stage_; }

private:
    SwitchStage stage_;
    NetId drive_, energized_;
};

/// 555 one-shot triggered by a falling edge on an active-low trigger net.
class MonostableElement final : public Element {
public:
    MonostableElement(SimTime period, NetId trigger, NetId out)
        : state_(make_monostable(period)), trigger_(trigger), out_(out) {}

    std::unique_ptr<Element> clone() const override { return std::make_unique<MonostableElement>(*this); }
    std::vector<NetId> outputs() const override { return {out_}; }
    bool combinational() const override { return false; }
    void sample(ElementContext& ctx) override;
    void expire(ElementContext& ctx, std::uint64_t token) override;

    const MonostableState& state() const { return state_; }

private:
    MonostableState state_;
    NetId trigger_, out_;
    LogicLevel last_trigger_ = LogicLevel::Low;
};

/// Cascaded up/down decade counters clocked on the rising edge of `clock`.
/// Drives eight BCD bit nets: ones Q0..Q3 followed by tens Q0..Q3.
class CounterElement final : public Element {
public:
    CounterElement(OccupancyCounter initial, NetId clock, NetId down, std::array<NetId, 8> bits)
        : counter_(initial), clock_(clock), down_(down), bits_(bits) {}

    std::unique_ptr<Element> clone() const override { return std::make_unique<CounterElement>(*this); }
    std::vector<NetId> outputs() const override { return {bits_.begin(), bits_.end()}; }
    bool combinational() const override { return false; }
    void sample(ElementContext& ctx) override;

    const OccupancyCounter& counter() const { return counter_; }
    std::uint64_t underflows() const { return underflows_; }
    std::uint64_t overflows() const { return overflows_; }

private:
    OccupancyCounter counter_;
    NetId clock_, down_;
    std::array<NetId, 8> bits_;
    LogicLevel last_clock_ = LogicLevel::Low;
    std::uint64_t underflows_ = 0;
    std::uint64_t overflows_ = 0;
};

}  // namespace doorsim
