#ifndef UAVPLAN_CORE_HPP
#define UAVPLAN_CORE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace uavplan {

// Thrown when a search-based solver exceeds its configured node/pivot cap.
class ResourceLimitError : public std::runtime_error {
public:
    explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

struct Position {
    int x = 0;
    int y = 0;
    friend bool operator==(const Position&, const Position&) = default;
    friend auto operator<=>(const Position&, const Position&) = default;
};

inline long long manhattan_distance(Position a, Position b) {
    return std::abs(static_cast<long long>(a.x) - b.x) +
           std::abs(static_cast<long long>(a.y) - b.y);
}

// Half-open in spirit but stored inclusive-of-endpoints: service occupies
// [start, end] and a UAV is free to depart again at `end`.
struct TimeWindow {
    long long start = 0;
    long long end = 0;
    long long length() const { return end - start; }
    friend bool operator==(const TimeWindow&, const TimeWindow&) = default;
};

// Length of the intersection of two windows, zero when disjoint.
inline long long window_intersection(TimeWindow a, TimeWindow b) {
    long long lo = std::max(a.start, b.start);
    long long hi = std::min(a.end, b.end);
    return std::max(0LL, hi - lo);
}

struct Target {
    int id = 0;
    Position position;
    TimeWindow window;
    int demand = 1;  // UAVs required simultaneously for the whole window
    friend bool operator==(const Target&, const Target&) = default;
};

struct Uav {
    int id = 0;
    double fuel_capacity = 0.0;
    friend bool operator==(const Uav&, const Uav&) = default;
};

// Mutable fleet state tracked during a planner run.
struct UavState {
    int uav_id = 0;
    Position position;
    long long available_at = 0;
    double fuel_remaining = 0.0;
};

struct ProblemInstance {
    Position depot;
    std::vector<Target> targets;
    std::vector<Uav> uavs;
    int largest_coordinate = 0;
    double loiter_fuel = 1.0;          // constant charge per serviced window
    bool require_depot_return = true;  // reserve the return leg in fuel checks

    const Target* find_target(int id) const {
        for (const auto& t : targets)
            if (t.id == id) return &t;
        return nullptr;
    }
    const Uav* find_uav(int id) const {
        for (const auto& u : uavs)
            if (u.id == id) return &u;
        return nullptr;
    }
    bool in_bounds(Position p) const {
        return p.x >= 0 && p.y >= 0 && p.x <= largest_coordinate &&
               p.y <= largest_coordinate;
    }
    friend bool operator==(const ProblemInstance&, const ProblemInstance&) = default;
};

// Default capacity used by the generator and the handcrafted suite when the
// caller does not override it: four full grid crossings.
inline double default_fuel_capacity(int largest_coordinate) {
    return 4.0 * (2.0 * largest_coordinate);
}

struct Assignment {
    int uav_id = 0;
    int target_id = 0;
    long long depart_time = 0;
    long long arrive_time = 0;  // = depart_time + travel distance
    TimeWindow service_window;  // equals the target's window
    double travel_fuel = 0.0;
    double loiter_fuel = 0.0;
    friend bool operator==(const Assignment&, const Assignment&) = default;
};

struct Schedule {
    std::vector<Assignment> assignments;
    // Fuel of the final leg back to the depot, per UAV that flew at least one
    // assignment; populated only when the instance requires depot return.
    std::map<int, double> return_fuel;
    double total_fuel = 0.0;
    bool complete = true;
    std::vector<std::pair<int, int>> unmet;  // (target_id, shortfall)

    // Assignments grouped per UAV, each route ordered by departure time.
    std::map<int, std::vector<Assignment>> per_uav_routes() const {
        std::map<int, std::vector<Assignment>> routes;
        for (const auto& a : assignments) routes[a.uav_id].push_back(a);
        for (auto& [id, route] : routes)
            std::stable_sort(route.begin(), route.end(),
                             [](const Assignment& a, const Assignment& b) {
                                 return a.depart_time < b.depart_time;
                             });
        return routes;
    }
    friend bool operator==(const Schedule&, const Schedule&) = default;
};

inline double total_fuel(const Schedule& s) {
    double sum = 0.0;
    for (const auto& a : s.assignments) sum += a.travel_fuel + a.loiter_fuel;
    for (const auto& [uav, fuel] : s.return_fuel) sum += fuel;
    return sum;
}

enum class Violation {
    LATE_ARRIVAL,
    DOUBLE_BOOKED,
    FUEL_EXCEEDED,
    DEMAND_UNMET,
    OUT_OF_BOUNDS,
    BAD_ACCOUNTING,
};

inline const char* to_string(Violation v) {
    switch (v) {
        case Violation::LATE_ARRIVAL: return "LATE_ARRIVAL";
        case Violation::DOUBLE_BOOKED: return "DOUBLE_BOOKED";
        case Violation::FUEL_EXCEEDED: return "FUEL_EXCEEDED";
        case Violation::DEMAND_UNMET: return "DEMAND_UNMET";
        case Violation::OUT_OF_BOUNDS: return "OUT_OF_BOUNDS";
        case Violation::BAD_ACCOUNTING: return "BAD_ACCOUNTING";
    }
    return "?";
}

struct FeasibilityReport {
    bool ok = true;
    std::vector<std::pair<Violation, std::string>> violations;

    void add(Violation v, std::string msg) {
        ok = false;
        violations.emplace_back(v, std::move(msg));
    }
    bool has(Violation v) const {
        for (const auto& [code, msg] : violations)
            if (code == v) return true;
        return false;
    }
};

inline constexpr double kFuelTolerance = 1e-9;

// Checks a schedule against every feasibility rule of the problem: punctual
// arrivals, chainable non-overlapping routes, per-UAV fuel budgets, demand
// coverage, and internal fuel accounting. Unknown ids are reported as
// violations rather than aborting the check.
inline FeasibilityReport validate_schedule(const ProblemInstance& instance,
                                           const Schedule& schedule) {
    FeasibilityReport report;

    for (const auto& a : schedule.assignments) {
        const Target* t = instance.find_target(a.target_id);
        if (!t) {
            report.add(Violation::OUT_OF_BOUNDS,
                       "assignment references unknown target id " +
                           std::to_string(a.target_id));
            continue;
        }
        if (!instance.find_uav(a.uav_id)) {
            report.add(Violation::OUT_OF_BOUNDS,
                       "assignment references unknown uav id " +
                           std::to_string(a.uav_id));
            continue;
        }
        if (!instance.in_bounds(t->position))
            report.add(Violation::OUT_OF_BOUNDS,
                       "target " + std::to_string(t->id) + " is outside the grid");
        if (a.arrive_time > t->window.start)
            report.add(Violation::LATE_ARRIVAL,
                       "uav " + std::to_string(a.uav_id) + " arrives at " +
                           std::to_string(a.arrive_time) + " after window start " +
                           std::to_string(t->window.start) + " of target " +
                           std::to_string(t->id));
        if (a.service_window != t->window)
            report.add(Violation::BAD_ACCOUNTING,
                       "assignment service window differs from target " +
                           std::to_string(t->id) + "'s window");
    }

    // Per-UAV route checks: interval ordering, leg chaining, fuel budget.
    for (const auto& [uav_id, route] : schedule.per_uav_routes()) {
        const Uav* uav = instance.find_uav(uav_id);
        if (!uav) continue;  // already reported above
        Position origin = instance.depot;
        long long free_at = 0;
        double fuel_used = 0.0;
        bool chain_ok = true;
        for (const auto& a : route) {
            const Target* t = instance.find_target(a.target_id);
            if (!t) { chain_ok = false; break; }
            if (a.depart_time < free_at)
                report.add(Violation::DOUBLE_BOOKED,
                           "uav " + std::to_string(uav_id) + " departs at " +
                               std::to_string(a.depart_time) +
                               " before finishing its previous window at " +
                               std::to_string(free_at));
            long long leg = manhattan_distance(origin, t->position);
            if (a.arrive_time != a.depart_time + leg)
                report.add(Violation::DOUBLE_BOOKED,
                           "uav " + std::to_string(uav_id) +
                               " leg to target " + std::to_string(t->id) +
                               " does not chain from its previous position");
            if (std::abs(a.travel_fuel - static_cast<double>(leg)) > kFuelTolerance)
                report.add(Violation::BAD_ACCOUNTING,
                           "travel fuel of uav " + std::to_string(uav_id) +
                               " leg to target " + std::to_string(t->id) +
                               " does not match the leg distance");
            if (std::abs(a.loiter_fuel - instance.loiter_fuel) > kFuelTolerance)
                report.add(Violation::BAD_ACCOUNTING,
                           "loiter fuel of uav " + std::to_string(uav_id) +
                               " at target " + std::to_string(t->id) +
                               " does not match the instance constant");
            fuel_used += static_cast<double>(leg) + instance.loiter_fuel;
            origin = t->position;
            free_at = t->window.end;
        }
        if (!chain_ok) continue;
        if (instance.require_depot_return && !route.empty()) {
            double ret = static_cast<double>(manhattan_distance(origin, instance.depot));
            fuel_used += ret;
            auto it = schedule.return_fuel.find(uav_id);
            if (it == schedule.return_fuel.end() ||
                std::abs(it->second - ret) > kFuelTolerance)
                report.add(Violation::BAD_ACCOUNTING,
                           "return leg of uav " + std::to_string(uav_id) +
                               " is missing or does not match the depot distance");
        }
        if (fuel_used > uav->fuel_capacity + kFuelTolerance)
            report.add(Violation::FUEL_EXCEEDED,
                       "uav " + std::to_string(uav_id) + " uses " +
                           std::to_string(fuel_used) + " fuel, capacity " +
                           std::to_string(uav->fuel_capacity));
    }

    // Demand coverage versus the declared shortfalls.
    std::map<int, int> served;
    for (const auto& a : schedule.assignments)
        if (instance.find_target(a.target_id)) served[a.target_id]++;
    std::map<int, int> declared(schedule.unmet.begin(), schedule.unmet.end());
    for (const auto& t : instance.targets) {
        int got = served.count(t.id) ? served[t.id] : 0;
        int shortfall = t.demand - got;
        int stated = declared.count(t.id) ? declared[t.id] : 0;
        if (shortfall < 0)
            report.add(Violation::DEMAND_UNMET,
                       "target " + std::to_string(t.id) + " is over-served");
        else if (shortfall != stated)
            report.add(Violation::DEMAND_UNMET,
                       "target " + std::to_string(t.id) + " shortfall is " +
                           std::to_string(shortfall) + ", schedule declares " +
                           std::to_string(stated));
    }
    if (schedule.complete != schedule.unmet.empty())
        report.add(Violation::BAD_ACCOUNTING,
                   "complete flag disagrees with the unmet list");

    double recomputed = total_fuel(schedule);
    if (std::abs(recomputed - schedule.total_fuel) > kFuelTolerance)
        report.add(Violation::BAD_ACCOUNTING,
                   "schedule total_fuel " + std::to_string(schedule.total_fuel) +
                       " differs from recomputed " + std::to_string(recomputed));

    return report;
}

}  // namespace uavplan

#endif  // UAVPLAN_CORE_HPP
