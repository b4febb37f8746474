#pragma once

// Random scenario generators shared by the property and acceptance tests.

#include <random>

#include "doorsim/scenario.hpp"

namespace doorsim::testing {

struct OccupancyScenario {
    Scenario scenario;
    int ins = 0;
    int outs = 0;
};

/// People events separated by more than `min_gap_ms`, never letting the
/// running occupancy go negative or above 99.
inline OccupancyScenario random_occupancy_scenario(std::mt19937_64& rng, std::int64_t min_gap_ms = 10001,
                                                   int max_events = 30) {
    std::uniform_int_distribution<int> count_dist(1, max_events);
    std::uniform_int_distribution<std::int64_t> start_dist(0, 5000);
    std::uniform_int_distribution<std::int64_t> gap_dist(min_gap_ms, min_gap_ms + 10000);
    std::uniform_int_distribution<std::int64_t> dwell_dist(1, 3000);
    std::bernoulli_distribution go_in(0.6);

    OccupancyScenario out;
    int occupancy = 0;
    std::int64_t t = start_dist(rng);
    const int n = count_dist(rng);
    for (int i = 0; i < n; ++i) {
        bool in = go_in(rng);
        if (occupancy == 0) in = true;
        if (occupancy == 99) in = false;
        PersonEvent p{in ? Direction::In : Direction::Out, SimTime{t}, dwell_dist(rng)};
        out.scenario.events.emplace_back(p);
        if (in) {
            ++occupancy;
            ++out.ins;
        } else {
            --occupancy;
            ++out.outs;
        }
        t += gap_dist(rng);
    }
    out.scenario.duration = SimTime{t + 15000};
    return out;
}

/// Arbitrary person traffic with no spacing guarantees (may underflow, may
/// collide with lockouts and door timers).
inline Scenario random_chaotic_scenario(std::mt19937_64& rng, int max_events = 25) {
    std::uniform_int_distribution<int> count_dist(1, max_events);
    std::uniform_int_distribution<std::int64_t> gap_dist(0, 12000);
    std::uniform_int_distribution<std::int64_t> dwell_dist(1, 4000);
    std::bernoulli_distribution go_in(0.55);

    Scenario s;
    std::int64_t t = 0;
    const int n = count_dist(rng);
    for (int i = 0; i < n; ++i) {
        t += gap_dist(rng);
        s.events.emplace_back(PersonEvent{go_in(rng) ? Direction::In : Direction::Out, SimTime{t}, dwell_dist(rng)});
    }
    s.duration = SimTime{t + 20000};
    return s;
}

}  // namespace doorsim::testing
