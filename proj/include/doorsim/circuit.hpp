#pragma once

// Deterministic discrete-event kernel.
//
// A Circuit owns a table of two-valued nets, a list of elements that read and
// drive them, and a queue of pending net assignments and timer expiries. Time
// advances one timestamp at a time. At each timestamp every queued item is
// applied in (time, seq) order, then the circuit is settled:
//
//   1. combinational elements are re-evaluated against a frozen view of the
//      nets and all their outputs applied together (one delta iteration),
//      repeated until nothing changes;
//   2. sequential elements then sample the settled nets (edge detection
//      happens here, so companion inputs are already settled) and may drive
//      outputs; if any net changed, go back to 1.
//
// Gates have zero delay. Only sequential elements consume time, through
// timers they schedule on the circuit.

#include <cstdint>
#include <memory>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "doorsim/logic.hpp"

namespace doorsim {

class SimulationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Scheduling before the current simulation time.
class ScheduleError : public SimulationError {
public:
    using SimulationError::SimulationError;
};

/// Settlement did not converge within the delta-iteration bound.
class OscillationError : public SimulationError {
public:
    using SimulationError::SimulationError;
};

inline constexpr int kMaxDeltaIterations = 1000;

struct ElementId {
    std::uint32_t index = 0;
    auto operator<=>(const ElementId&) const = default;
};

/// What an element sees while it is being evaluated: the settled net levels
/// and a way to drive outputs and request timers.
class ElementContext {
public:
    virtual ~ElementContext() = default;
    virtual SimTime now() const = 0;
    virtual LogicLevel level(NetId net) const = 0;
    virtual void drive(NetId net, LogicLevel level) = 0;
    virtual void schedule_timer(SimTime at, std::uint64_t token) = 0;
};

class Element {
public:
    virtual ~Element() = default;

    virtual std::unique_ptr<Element> clone() const = 0;
    virtual std::vector<NetId> outputs() const = 0;

    /// Combinational elements are evaluated in delta iterations and may not
    /// keep state or schedule timers.
    virtual bool combinational() const = 0;

    virtual void evaluate(ElementContext&) const {}

    /// Sequential elements: called once the combinational logic is stable.
    virtual void sample(ElementContext&) {}

    /// Sequential elements: a timer requested through schedule_timer fired.
    virtual void expire(ElementContext&, std::uint64_t /*token*/) {}
};

struct NetAssign {
    NetId net;
    LogicLevel level = LogicLevel::Low;
};

struct TimerFire {
    ElementId element;
    std::uint64_t token = 0;
};

struct PendingEvent {
    SimTime time;
    std::uint64_t seq = 0;
    std::variant<NetAssign, TimerFire> action;
};

/// Min-queue over (time, seq). Sequence numbers are assigned on push and
/// strictly increase, so equal-time items leave in insertion order.
class EventQueue {
public:
    const PendingEvent& push(SimTime time, std::variant<NetAssign, TimerFire> action);
    PendingEvent pop();
    const PendingEvent& top() const { return heap_.top(); }
    bool empty() const { return heap_.empty(); }
    std::size_t size() const { return heap_.size(); }
    std::optional<SimTime> next_time() const;

private:
    struct Later {
        bool operator()(const PendingEvent& a, const PendingEvent& b) const {
            if (a.time != b.time) return a.time > b.time;
            return a.seq > b.seq;
        }
    };
    std::priority_queue<PendingEvent, std::vector<PendingEvent>, Later> heap_;
    std::uint64_t next_seq_ = 0;
};

class Circuit {
public:
    Circuit() = default;
    Circuit(const Circuit& other);
    Circuit& operator=(const Circuit& other);
    Circuit(Circuit&&) noexcept = default;
    Circuit& operator=(Circuit&&) noexcept = default;
    ~Circuit() = default;

    NetId add_net(std::string name);
    ElementId add_element(std::unique_ptr<Element> element);

    template <typename T, typename... Args>
    ElementId emplace(Args&&... args) {
        return add_element(std::make_unique<T>(std::forward<Args>(args)...));
    }

    std::optional<NetId> find_net(std::string_view name) const;
    NetId net(std::string_view name) const;
    const std::string& net_name(NetId id) const { return names_.at(id.index); }
    std::size_t net_count() const { return levels_.size(); }
    LogicLevel level(NetId id) const { return levels_.at(id.index); }

    template <typename T>
    const T& element(ElementId id) const {
        return dynamic_cast<const T&>(*elements_.at(id.index));
    }

    SimTime now() const { return now_; }
    const EventQueue& queue() const { return queue_; }

    void schedule(SimTime time, NetId net, LogicLevel level);
    void schedule(SimTime time, std::string_view net, LogicLevel level) {
        schedule(time, this->net(net), level);
    }

    /// Settle at the current time. Returns the net changes it produced.
    std::vector<Event> settle();

    /// Process every pending item at the earliest queued time (if it is no
    /// later than `deadline`), settle, and return the changes in processing
    /// order. Returns nullopt when nothing is due.
    std::optional<std::vector<Event>> step(SimTime deadline);

    /// Process everything up to and including `deadline`, then move the
    /// clock to `deadline`.
    std::vector<Event> advance_until(SimTime deadline);

    /// Largest number of delta iterations any single settlement needed.
    int max_delta_iterations() const { return max_deltas_; }
    int last_delta_iterations() const { return last_deltas_; }

private:
    class Context;

    void apply(NetId net, LogicLevel level, std::vector<Event>& trace);
    void settle_into(std::vector<Event>& trace);

    std::vector<std::string> names_;
    std::unordered_map<std::string, NetId> by_name_;
    std::vector<LogicLevel> levels_;
    std::vector<int> driver_;  // element index driving each net, -1 if none
    std::vector<std::unique_ptr<Element>> elements_;
    EventQueue queue_;
    SimTime now_{0};
    std::uint64_t trace_seq_ = 0;
    int max_deltas_ = 0;
    int last_deltas_ = 0;
};

}  // namespace doorsim
