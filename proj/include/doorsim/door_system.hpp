#pragma once

// The complete door and room-light controller:
//
//   entry_cmp, exit_cmp      beam comparators (LOW while the beam is broken)
//   entry_trig = entry_cmp OR exit_mono    lockout: each sensor is masked
//   exit_trig  = exit_cmp  OR entry_mono   while the other one-shot runs
//   entry_mono, exit_mono    one-shots on falling entry_trig / exit_trig
//   count_clk = entry_mono OR exit_mono    counter clock (rising edge)
//   D/U = exit_mono                        HIGH counts down
//   ones_q0..3, tens_q0..3   counter BCD outputs
//   light_drive = OR of all counter bits -> light_relay
//   door_trig = entry_cmp AND exit_cmp     falls when either beam breaks
//   door_m1 (open timer), door_m2 (close timer) on falling door_trig
//   open_relay  <- door_m1
//   close_drive = door_m1 XOR door_m2 -> close_relay
//   motor: open_relay / close_relay with polarity reversal

#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "doorsim/circuit.hpp"
#include "doorsim/components.hpp"
#include "doorsim/trace.hpp"

namespace doorsim {

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct SystemConfig {
    std::int64_t entry_lockout_ms = 10000;
    std::int64_t exit_lockout_ms = 10000;
    std::int64_t door_open_mono_ms = 5000;
    std::int64_t door_close_mono_ms = 10000;
    std::int64_t door_travel_ms = 5000;
    int initial_count = 0;

    /// Throws ConfigError describing the first violated constraint.
    void validate() const;
    bool operator==(const SystemConfig&) const = default;
};

/// Base-drive design points of the two switch stages.
inline constexpr SwitchStage kDoorRelayStage{10.0, 0.6, 64e3, 200, 12.0, 400};
inline constexpr SwitchStage kLightRelayStage{12.0, 0.6, 130e3, 350, 12.0, 400};

// ---------------------------------------------------------------- door plant

/// Door position tracked exactly as milliseconds of travel from closed.
struct DoorPlant {
    std::int64_t travel_ms = 5000;
    std::int64_t progress_ms = 0;
    Motion motion = Motion::Stopped;
    SimTime last_update{0};

    /// 0 = closed, 1000 = fully open.
    int position() const { return static_cast<int>(progress_ms * kDoorOpenPosition / travel_ms); }
    bool operator==(const DoorPlant&) const = default;
};

/// Plant state at `now` assuming the current motion continued since last_update.
DoorPlant advance_plant(const DoorPlant& plant, SimTime now);

/// Advances to `now` under the previous motion, then applies the new coil
/// drives. Both coils energized is a FAULT and freezes the door.
DoorPlant motor_update(const DoorPlant& plant, bool open_coil, bool close_coil, SimTime now);

class DoorMotorElement final : public Element {
public:
    DoorMotorElement(std::int64_t travel_ms, NetId open_relay, NetId close_relay);

    std::unique_ptr<Element> clone() const override { return std::make_unique<DoorMotorElement>(*this); }
    std::vector<NetId> outputs() const override { return {}; }
    bool combinational() const override { return false; }
    void sample(ElementContext& ctx) override;
    void expire(ElementContext& ctx, std::uint64_t token) override;

    const DoorPlant& plant() const { return plant_; }

private:
    DoorPlant plant_;
    NetId open_, close_;
    LogicLevel last_open_ = LogicLevel::Low;
    LogicLevel last_close_ = LogicLevel::Low;
    std::uint64_t generation_ = 0;
};

// ---------------------------------------------------------------- system

enum class Direction : std::uint8_t { In, Out };

struct SystemSnapshot {
    SimTime time;
    int count = 0;
    bool light_on = false;
    int door_position = 0;
    Motion motion = Motion::Stopped;
    SegmentPattern tens;
    SegmentPattern ones;
};

/// Every net name the system exposes, in creation order.
std::span<const std::string_view> public_nets();

/// Nets that accept external stimulus (the beam comparators).
std::span<const std::string_view> stimulus_nets();

class DoorSystem {
public:
    /// Wires the circuit and settles it at t=0. Throws ConfigError.
    static DoorSystem build(const SystemConfig& config);

    const SystemConfig& config() const { return config_; }
    const Circuit& circuit() const { return circuit_; }
    SimTime now() const { return circuit_.now(); }

    /// Breaks the entry (In) or exit (Out) beam at `at` for `dwell_ms`.
    void inject_person(Direction direction, SimTime at, std::int64_t dwell_ms);

    /// Raw stimulus on a comparator net.
    void set_net(std::string_view net, LogicLevel level, SimTime at);

    /// Processes everything up to `deadline` and returns the trace records
    /// produced since the previous call (the first call includes the t=0
    /// initialization).
    std::vector<TraceRecord> advance_until(SimTime deadline);

    /// Appends a STATE record for the current instant unless the last STATE
    /// emitted is identical (same time included). Returns records not yet
    /// handed out.
    std::vector<TraceRecord> sample_state();

    SystemSnapshot snapshot() const;

    const OccupancyCounter& counter() const;
    const DoorPlant& door() const;
    const MonostableState& monostable(std::string_view output_net) const;

private:
    DoorSystem() = default;

    void record_step(const std::vector<Event>& changes);
    StateRecord state_now() const;
    std::vector<TraceRecord> take_pending();

    SystemConfig config_;
    Circuit circuit_;
    ElementId counter_;
    ElementId motor_;
    std::vector<std::pair<NetId, ElementId>> monostables_;

    std::vector<TraceRecord> pending_;
    std::optional<StateRecord> last_state_;
    std::uint64_t seen_underflows_ = 0;
    bool in_fault_ = false;
};

}  // namespace doorsim
