#include "doorsim/components.hpp"

#include <string>

namespace doorsim {

MonostableState make_monostable(SimTime period) {
    if (period.millis <= 0) {
        throw std::invalid_argument("monostable period must be positive, got " +
                                    std::to_string(period.millis) + " ms");
    }
    return MonostableState{MonostablePhase::Idle, SimTime{0}, period};
}

MonostableState monostable_trigger(const MonostableState& state, Edge trigger_edge, SimTime now) {
    if (trigger_edge != Edge::Falling || state.phase == MonostablePhase::Timing) return state;
    MonostableState next = state;
    next.phase = MonostablePhase::Timing;
    next.expires_at = now + state.period;
    return next;
}

MonostableState monostable_timeout(const MonostableState& state, SimTime now) {
    if (state.phase != MonostablePhase::Timing) {
        throw SimulationError("monostable timeout at " + std::to_string(now.millis) +
                              " ms while idle");
    }
    if (now != state.expires_at) {
        throw SimulationError("monostable timeout at " + std::to_string(now.millis) +
                              " ms, expected " + std::to_string(state.expires_at.millis) + " ms");
    }
    MonostableState next = state;
    next.phase = MonostablePhase::Idle;
    return next;
}

OccupancyCounter OccupancyCounter::from_value(int value) {
    if (value < 0 || value > 99) {
        throw std::out_of_range("counter value " + std::to_string(value) + " outside 0..99");
    }
    return OccupancyCounter{static_cast<std::uint8_t>(value % 10), static_cast<std::uint8_t>(value / 10)};
}

OccupancyCounter counter_clock_edge(const OccupancyCounter& counter, bool down) {
    OccupancyCounter next = counter;
    bool ripple = false;
    if (down) {
        ripple = next.ones == 0;
        next.ones = ripple ? 9 : next.ones - 1;
        if (ripple) next.tens = next.tens == 0 ? 9 : next.tens - 1;
    } else {
        ripple = next.ones == 9;
        next.ones = ripple ? 0 : next.ones + 1;
        if (ripple) next.tens = next.tens == 9 ? 0 : next.tens + 1;
    }
    return next;
}

SegmentPattern decode_7447(int digit) {
    // Lit segments per digit, bit 0 = a ... bit 6 = g. 6 and 9 use the 7447's
    // tail-less glyphs.
    static constexpr std::array<std::uint8_t, 10> kLit = {
        0b0111111,  // 0: a b c d e f
        0b0000110,  // 1: b c
        0b1011011,  // 2: a b d e g
        0b1001111,  // 3: a b c d g
        0b1100110,  // 4: b c f g
        0b1101101,  // 5: a c d f g
        0b1111100,  // 6: c d e f g
        0b0000111,  // 7: a b c
        0b1111111,  // 8: all
        0b1100111,  // 9: a b c f g
    };
    if (digit < 0 || digit > 9) {
        throw std::out_of_range("7447 input " + std::to_string(digit) + " is not a BCD digit");
    }
    SegmentPattern p;
    for (int s = 0; s < 7; ++s) {
        p.segments[s] = (kLit[digit] >> s) & 1 ? LogicLevel::Low : LogicLevel::High;
    }
    return p;
}

bool transistor_saturated(double v_in, double v_be, double r_b, double h_fe, double v_supply,
                          double r_c) {
    if (v_in <= v_be) return false;
    const double base_current = (v_in - v_be) / r_b;
    const double required = (v_supply / r_c) / h_fe;
    return base_current >= kSaturationMargin * required;
}

RelayState relay_response(const SwitchStage& stage, LogicLevel drive) {
    SwitchStage driven = stage;
    if (!is_high(drive)) driven.v_in = 0;
    return RelayState{transistor_saturated(driven), stage.r_c};
}

void GateElement::evaluate(ElementContext& ctx) const {
    ctx.drive(out_, gate_eval(kind_, ctx.level(a_), ctx.level(b_)));
}

void WideOrElement::evaluate(ElementContext& ctx) const {
    LogicLevel acc = LogicLevel::Low;
    for (NetId in : inputs_) acc = gate_eval(GateKind::Or, acc, ctx.level(in));
    ctx.drive(out_, acc);
}

void RelayElement::evaluate(ElementContext& ctx) const {
    ctx.drive(energized_, level_of(relay_response(stage_, ctx.level(drive_)).energized));
}

void MonostableElement::sample(ElementContext& ctx) {
    const LogicLevel trig = ctx.level(trigger_);
    const Edge edge = edge_between(last_trigger_, trig);
    last_trigger_ = trig;

    const MonostableState next = monostable_trigger(state_, edge, ctx.now());
    if (next.phase != state_.phase) ctx.schedule_timer(next.expires_at, 0);
    state_ = next;
    ctx.drive(out_, state_.output());
}

void MonostableElement::expire(ElementContext& ctx, std::uint64_t) {
    state_ = monostable_timeout(state_, ctx.now());
    ctx.drive(out_, state_.output());
}

void CounterElement::sample(ElementContext& ctx) {
    const LogicLevel clk = ctx.level(clock_);
    if (edge_between(last_clock_, clk) == Edge::Rising) {
        const bool down = is_high(ctx.level(down_));
        const OccupancyCounter next = counter_clock_edge(counter_, down);
        if (down && counter_.value() == 0) ++underflows_;
        if (!down && counter_.value() == 99) ++overflows_;
        counter_ = next;
    }
    last_clock_ = clk;

    for (int bit = 0; bit < 4; ++bit) {
        ctx.drive(bits_[bit], level_of((counter_.ones >> bit) & 1));
        ctx.drive(bits_[4 + bit], level_of((counter_.tens >> bit) & 1));
    }
}

}  // namespace doorsim
