#include "doorsim/circuit.hpp"

#include <algorithm>
#include <sstream>

namespace doorsim {

const PendingEvent& EventQueue::push(SimTime time, std::variant<NetAssign, TimerFire> action) {
    heap_.push(PendingEvent{time, next_seq_++, action});
    return heap_.top();
}

PendingEvent EventQueue::pop() {
    PendingEvent e = heap_.top();
    heap_.pop();
    return e;
}

std::optional<SimTime> EventQueue::next_time() const {
    if (heap_.empty()) return std::nullopt;
    return heap_.top().time;
}

class Circuit::Context final : public ElementContext {
public:
    Context(Circuit& c, int element, bool allow_timers)
        : circuit_(c), element_(element), allow_timers_(allow_timers) {}

    SimTime now() const override { return circuit_.now_; }
    LogicLevel level(NetId net) const override { return circuit_.levels_.at(net.index); }

    void drive(NetId net, LogicLevel level) override {
        if (circuit_.driver_.at(net.index) != element_) {
            throw SimulationError("element drives net '" + circuit_.net_name(net) +
                                  "' it does not own");
        }
        pending.push_back(NetAssign{net, level});
    }

    void schedule_timer(SimTime at, std::uint64_t token) override {
        if (!allow_timers_) throw SimulationError("combinational element requested a timer");
        if (at < circuit_.now_) {
            throw ScheduleError("timer for element " + std::to_string(element_) + " at " +
                                std::to_string(at.millis) + " ms is before now (" +
                                std::to_string(circuit_.now_.millis) + " ms)");
        }
        circuit_.queue_.push(at, TimerFire{ElementId{static_cast<std::uint32_t>(element_)}, token});
    }

    void retarget(int element) { element_ = element; }

    std::vector<NetAssign> pending;

private:
    Circuit& circuit_;
    int element_;
    bool allow_timers_;
};

Circuit::Circuit(const Circuit& other)
    : names_(other.names_),
      by_name_(other.by_name_),
      levels_(other.levels_),
      driver_(other.driver_),
      queue_(other.queue_),
      now_(other.now_),
      trace_seq_(other.trace_seq_),
      max_deltas_(other.max_deltas_),
      last_deltas_(other.last_deltas_) {
    elements_.reserve(other.elements_.size());
    for (const auto& e : other.elements_) elements_.push_back(e->clone());
}

Circuit& Circuit::operator=(const Circuit& other) {
    if (this != &other) {
        Circuit copy(other);
        *this = std::move(copy);
    }
    return *this;
}

NetId Circuit::add_net(std::string name) {
    if (name.empty()) throw SimulationError("net name must not be empty");
    if (by_name_.contains(name)) throw SimulationError("duplicate net name '" + name + "'");
    NetId id{static_cast<std::uint32_t>(names_.size())};
    by_name_.emplace(name, id);
    names_.push_back(std::move(name));
    levels_.push_back(LogicLevel::Low);
    driver_.push_back(-1);
    return id;
}

ElementId Circuit::add_element(std::unique_ptr<Element> element) {
    const int index = static_cast<int>(elements_.size());
    for (NetId out : element->outputs()) {
        if (out.index >= levels_.size()) throw SimulationError("element output refers to unknown net");
        if (driver_[out.index] != -1) {
            throw SimulationError("net '" + names_[out.index] + "' already has a driver");
        }
    }
    for (NetId out : element->outputs()) driver_[out.index] = index;
    elements_.push_back(std::move(element));
    return ElementId{static_cast<std::uint32_t>(index)};
}

std::optional<NetId> Circuit::find_net(std::string_view name) const {
    auto it = by_name_.find(std::string(name));
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
}

NetId Circuit::net(std::string_view name) const {
    if (auto id = find_net(name)) return *id;
    throw SimulationError("unknown net '" + std::string(name) + "'");
}

void Circuit::schedule(SimTime time, NetId net, LogicLevel level) {
    if (net.index >= levels_.size()) throw SimulationError("schedule on unknown net");
    if (time < now_) {
        throw ScheduleError("cannot schedule net '" + names_[net.index] + "' at " +
                            std::to_string(time.millis) + " ms: simulation time is already " +
                            std::to_string(now_.millis) + " ms");
    }
    queue_.push(time, NetAssign{net, level});
}

void Circuit::apply(NetId net, LogicLevel level, std::vector<Event>& trace) {
    LogicLevel& current = levels_[net.index];
    if (current == level) return;
    current = level;
    trace.push_back(Event{now_, trace_seq_++, net, level});
}

std::vector<Event> Circuit::settle() {
    std::vector<Event> trace;
    settle_into(trace);
    return trace;
}

void Circuit::settle_into(std::vector<Event>& trace) {
    int deltas = 0;

    // Applies one batch of drives; returns true if any net changed.
    auto commit = [&](const std::vector<NetAssign>& pending) {
        const std::size_t before = trace.size();
        for (const auto& a : pending) apply(a.net, a.level, trace);
        if (trace.size() == before) return false;
        if (++deltas > kMaxDeltaIterations) {
            std::vector<std::string> unstable;
            for (std::size_t i = before; i < trace.size(); ++i) {
                const auto& n = names_[trace[i].net.index];
                if (std::find(unstable.begin(), unstable.end(), n) == unstable.end()) unstable.push_back(n);
            }
            std::ostringstream msg;
            msg << "logic did not settle at " << now_.millis << " ms after " << kMaxDeltaIterations
                << " delta iterations; unstable nets:";
            for (const auto& n : unstable) msg << ' ' << n;
            throw OscillationError(msg.str());
        }
        return true;
    };

    for (;;) {
        Context comb(*this, -1, false);
        for (std::size_t i = 0; i < elements_.size(); ++i) {
            if (!elements_[i]->combinational()) continue;
            comb.retarget(static_cast<int>(i));
            elements_[i]->evaluate(comb);
        }
        if (commit(comb.pending)) continue;

        Context seq(*this, -1, true);
        for (std::size_t i = 0; i < elements_.size(); ++i) {
            if (elements_[i]->combinational()) continue;
            seq.retarget(static_cast<int>(i));
            elements_[i]->sample(seq);
        }
        if (commit(seq.pending)) continue;
        break;
    }

    last_deltas_ = deltas;
    max_deltas_ = std::max(max_deltas_, deltas);
}

std::optional<std::vector<Event>> Circuit::step(SimTime deadline) {
    auto next = queue_.next_time();
    if (!next || *next > deadline) return std::nullopt;

    now_ = *next;
    std::vector<Event> trace;
    while (!queue_.empty() && queue_.top().time == now_) {
        PendingEvent e = queue_.pop();
        if (auto* assign = std::get_if<NetAssign>(&e.action)) {
            apply(assign->net, assign->level, trace);
        } else {
            const auto& fire = std::get<TimerFire>(e.action);
            Context ctx(*this, static_cast<int>(fire.element.index), true);
            elements_.at(fire.element.index)->expire(ctx, fire.token);
            for (const auto& a : ctx.pending) apply(a.net, a.level, trace);
        }
    }
    settle_into(trace);
    return trace;
}

std::vector<Event> Circuit::advance_until(SimTime deadline) {
    if (deadline < now_) {
        throw ScheduleError("cannot advance to " + std::to_string(deadline.millis) +
                            " ms: simulation time is already " + std::to_string(now_.millis) + " ms");
    }
    std::vector<Event> trace;
    while (auto part = step(deadline)) {
        trace.insert(trace.end(), part->begin(), part->end());
    }
    now_ = deadline;
    return trace;
}

}  // namespace doorsim
