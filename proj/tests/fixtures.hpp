#ifndef UAVPLAN_TESTS_FIXTURES_HPP
#define UAVPLAN_TESTS_FIXTURES_HPP

#include "uavplan/core.hpp"

namespace uavplan::fixtures {

// Two-phase trap for the greedy planner. After the first cluster parks one
// UAV on each flank, greedy spends the west UAV on the near third target and
// leaves the fourth reachable by nobody; the transportation formulation
// assigns the flanks crosswise and completes.
inline ProblemInstance ga_trap() {
    ProblemInstance inst;
    inst.largest_coordinate = 20;
    inst.depot = {10, 10};
    inst.loiter_fuel = 1.0;
    inst.require_depot_return = true;
    inst.targets = {
        {1, {5, 10}, {5, 7}, 1},
        {2, {15, 10}, {5, 7}, 1},
        {3, {9, 10}, {13, 23}, 1},
        {4, {3, 10}, {14, 24}, 1},
    };
    inst.uavs = {{1, 160.0}, {2, 160.0}};
    return inst;
}

// Same layout but the last window opens late enough that greedy can still
// finish, just expensively: its myopic pick for the third target forces a
// 12-cell haul to the fourth, where the crosswise plan pays 6 + 2.
inline ProblemInstance bfa_beats_ga() {
    ProblemInstance inst = ga_trap();
    inst.targets[3].window = {19, 29};
    return inst;
}

}  // namespace uavplan::fixtures

#endif  // UAVPLAN_TESTS_FIXTURES_HPP
