#include "doorsim/door_system.hpp"

#include <algorithm>
#include <string>

namespace doorsim {

namespace {

constexpr std::array<std::string_view, 23> kPublicNets = {
    "entry_cmp",   "exit_cmp",    "entry_trig",  "exit_trig",  "entry_mono",
    "exit_mono",   "count_clk",   "ones_q0",     "ones_q1",    "ones_q2",
    "ones_q3",     "tens_q0",     "tens_q1",     "tens_q2",    "tens_q3",
    "light_drive", "light_relay", "door_trig",   "door_m1",    "door_m2",
    "close_drive", "open_relay",  "close_relay",
};

constexpr std::array<std::string_view, 2> kStimulusNets = {"entry_cmp", "exit_cmp"};

}  // namespace

std::span<const std::string_view> public_nets() { return kPublicNets; }

std::span<const std::string_view> stimulus_nets() { return kStimulusNets; }

void SystemConfig::validate() const {
    auto positive = [](std::int64_t v, const char* name) {
        if (v <= 0) throw ConfigError(std::string(name) + " must be positive, got " + std::to_string(v));
    };
    positive(entry_lockout_ms, "entry_lockout_ms");
    positive(exit_lockout_ms, "exit_lockout_ms");
    positive(door_open_mono_ms, "door_open_mono_ms");
    positive(door_close_mono_ms, "door_close_mono_ms");
    positive(door_travel_ms, "door_travel_ms");
    if (door_close_mono_ms <= door_open_mono_ms) {
        throw ConfigError("door_close_mono_ms (" + std::to_string(door_close_mono_ms) +
                          ") must exceed door_open_mono_ms (" + std::to_string(door_open_mono_ms) + ")");
    }
    if (initial_count < 0 || initial_count > 99) {
        throw ConfigError("initial_count must be within 0..99, got " + std::to_string(initial_count));
    }
}

// ---------------------------------------------------------------- door plant

DoorPlant advance_plant(const DoorPlant& plant, SimTime now) {
    DoorPlant next = plant;
    const std::int64_t elapsed = (now - plant.last_update).millis;
    if (plant.motion == Motion::Opening) {
        next.progress_ms = std::min(plant.travel_ms, plant.progress_ms + elapsed);
    } else if (plant.motion == Motion::Closing) {
        next.progress_ms = std::max<std::int64_t>(0, plant.progress_ms - elapsed);
    }
    next.last_update = now;
    return next;
}

DoorPlant motor_update(const DoorPlant& plant, bool open_coil, bool close_coil, SimTime now) {
    DoorPlant next = advance_plant(plant, now);
    if (open_coil && close_coil) {
        next.motion = Motion::Fault;
    } else if (open_coil) {
        next.motion = Motion::Opening;
    } else if (close_coil) {
        next.motion = Motion::Closing;
    } else {
        next.motion = Motion::Stopped;
    }
    return next;
}

DoorMotorElement::DoorMotorElement(std::int64_t travel_ms, NetId open_relay, NetId close_relay)
    : open_(open_relay), close_(close_relay) {
    plant_.travel_ms = travel_ms;
}

void DoorMotorElement::sample(ElementContext& ctx) {
    const LogicLevel open = ctx.level(open_);
    const LogicLevel close = ctx.level(close_);
    if (open == last_open_ && close == last_close_) return;
    last_open_ = open;
    last_close_ = close;

    plant_ = motor_update(plant_, is_high(open), is_high(close), ctx.now());

    // Any pending travel-limit timer is now stale.
    ++generation_;
    if (plant_.motion == Motion::Opening && plant_.progress_ms < plant_.travel_ms) {
        ctx.schedule_timer(ctx.now() + SimTime{plant_.travel_ms - plant_.progress_ms}, generation_);
    } else if (plant_.motion == Motion::Closing && plant_.progress_ms > 0) {
        ctx.schedule_timer(ctx.now() + SimTime{plant_.progress_ms}, generation_);
    }
}

void DoorMotorElement::expire(ElementContext& ctx, std::uint64_t token) {
    if (token != generation_) return;
    plant_ = advance_plant(plant_, ctx.now());
}

// ---------------------------------------------------------------- system

DoorSystem DoorSystem::build(const SystemConfig& config) {
    config.validate();

    DoorSystem sys;
    sys.config_ = config;
    Circuit& c = sys.circuit_;
    for (std::string_view name : public_nets()) c.add_net(std::string(name));
    auto n = [&c](std::string_view name) { return c.net(name); };

    c.emplace<GateElement>(GateKind::Or, n("entry_cmp"), n("exit_mono"), n("entry_trig"));
    c.emplace<GateElement>(GateKind::Or, n("exit_cmp"), n("entry_mono"), n("exit_trig"));
    sys.monostables_.emplace_back(
        n("entry_mono"),
        c.emplace<MonostableElement>(SimTime{config.entry_lockout_ms}, n("entry_trig"), n("entry_mono")));
    sys.monostables_.emplace_back(
        n("exit_mono"),
        c.emplace<MonostableElement>(SimTime{config.exit_lockout_ms}, n("exit_trig"), n("exit_mono")));
    c.emplace<GateElement>(GateKind::Or, n("entry_mono"), n("exit_mono"), n("count_clk"));

    std::array<NetId, 8> bits{n("ones_q0"), n("ones_q1"), n("ones_q2"), n("ones_q3"),
                              n("tens_q0"), n("tens_q1"), n("tens_q2"), n("tens_q3")};
    sys.counter_ = c.emplace<CounterElement>(OccupancyCounter::from_value(config.initial_count),
                                             n("count_clk"), n("exit_mono"), bits);
    c.emplace<WideOrElement>(std::vector<NetId>(bits.begin(), bits.end()), n("light_drive"));
    c.emplace<RelayElement>(kLightRelayStage, n("light_drive"), n("light_relay"));

    c.emplace<GateElement>(GateKind::And, n("entry_cmp"), n("exit_cmp"), n("door_trig"));
    sys.monostables_.emplace_back(
        n("door_m1"), c.emplace<MonostableElement>(SimTime{config.door_open_mono_ms}, n("door_trig"), n("door_m1")));
    sys.monostables_.emplace_back(
        n("door_m2"), c.emplace<MonostableElement>(SimTime{config.door_close_mono_ms}, n("door_trig"), n("door_m2")));
    c.emplace<GateElement>(GateKind::Xor, n("door_m1"), n("door_m2"), n("close_drive"));
    c.emplace<RelayElement>(kDoorRelayStage, n("door_m1"), n("open_relay"));
    c.emplace<RelayElement>(kDoorRelayStage, n("close_drive"), n("close_relay"));
    sys.motor_ = c.emplace<DoorMotorElement>(config.door_travel_ms, n("open_relay"), n("close_relay"));

    // Powered-up steady state: intact beams hold both comparators high.
    const LogicLevel intact = BeamSensor{false}.comparator_out();
    c.schedule(SimTime{0}, n("entry_cmp"), intact);
    c.schedule(SimTime{0}, n("exit_cmp"), intact);
    if (auto changes = c.step(SimTime{0})) sys.record_step(*changes);
    return sys;
}

void DoorSystem::inject_person(Direction direction, SimTime at, std::int64_t dwell_ms) {
    if (dwell_ms < 1) throw SimulationError("dwell must be at least 1 ms, got " + std::to_string(dwell_ms));
    const NetId cmp = circuit_.net(direction == Direction::In ? "entry_cmp" : "exit_cmp");
    circuit_.schedule(at, cmp, BeamSensor{true}.comparator_out());
    circuit_.schedule(at + SimTime{dwell_ms}, cmp, BeamSensor{false}.comparator_out());
}

void DoorSystem::set_net(std::string_view net, LogicLevel level, SimTime at) {
    if (std::find(kStimulusNets.begin(), kStimulusNets.end(), net) == kStimulusNets.end()) {
        throw SimulationError("net '" + std::string(net) + "' does not accept external stimulus");
    }
    circuit_.schedule(at, circuit_.net(net), level);
}

std::vector<TraceRecord> DoorSystem::advance_until(SimTime deadline) {
    if (deadline < circuit_.now()) {
        throw ScheduleError("cannot advance to " + std::to_string(deadline.millis) +
                            " ms: simulation time is already " + std::to_string(circuit_.now().millis) + " ms");
    }
    while (auto changes = circuit_.step(deadline)) record_step(*changes);
    circuit_.advance_until(deadline);
    return take_pending();
}

std::vector<TraceRecord> DoorSystem::sample_state() {
    StateRecord s = state_now();
    if (!last_state_ || !(*last_state_ == s)) {
        pending_.push_back(s);
        last_state_ = s;
    }
    return take_pending();
}

void DoorSystem::record_step(const std::vector<Event>& changes) {
    for (const Event& e : changes) {
        pending_.push_back(NetRecord{e.time, circuit_.net_name(e.net), e.level});
    }

    const SimTime t = circuit_.now();
    const auto& counter = circuit_.element<CounterElement>(counter_);
    for (; seen_underflows_ < counter.underflows(); ++seen_underflows_) {
        pending_.push_back(HazardRecord{t, HazardKind::CountUnderflow, "count 00->99"});
    }

    const bool fault = door().motion == Motion::Fault;
    if (fault != in_fault_) {
        pending_.push_back(HazardRecord{t, HazardKind::RelayContention, fault ? kContentionBegin : kContentionEnd});
        in_fault_ = fault;
    }

    StateRecord s = state_now();
    auto same_fields = [&s](const StateRecord& prev) {
        return prev.count == s.count && prev.light == s.light && prev.door == s.door && prev.motion == s.motion;
    };
    if (!last_state_ || !same_fields(*last_state_)) {
        pending_.push_back(s);
        last_state_ = s;
    }
}

StateRecord DoorSystem::state_now() const {
    const SystemSnapshot snap = snapshot();
    return StateRecord{snap.time, snap.count, snap.light_on, snap.door_position, snap.motion};
}

std::vector<TraceRecord> DoorSystem::take_pending() {
    std::vector<TraceRecord> out;
    out.swap(pending_);
    return out;
}

SystemSnapshot DoorSystem::snapshot() const {
    const OccupancyCounter& cnt = counter();
    const DoorPlant plant = advance_plant(door(), circuit_.now());
    SystemSnapshot s;
    s.time = circuit_.now();
    s.count = cnt.value();
    s.light_on = is_high(circuit_.level(circuit_.net("light_relay")));
    s.door_position = plant.position();
    s.motion = plant.motion;
    s.tens = decode_7447(cnt.tens);
    s.ones = decode_7447(cnt.ones);
    return s;
}

const OccupancyCounter& DoorSystem::counter() const {
    return circuit_.element<CounterElement>(counter_).counter();
}

const DoorPlant& DoorSystem::door() const { return circuit_.element<DoorMotorElement>(motor_).plant(); }

const MonostableState& DoorSystem::monostable(std::string_view output_net) const {
    const NetId id = circuit_.net(output_net);
    for (const auto& [net, element] : monostables_) {
        if (net == id) return circuit_.element<MonostableElement>(element).state();
    }
    throw SimulationError("net '" + std::string(output_net) + "' is not a monostable output");
}

}  // namespace doorsim
