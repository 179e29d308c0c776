#ifndef UAVPLAN_PLANNERS_HPP
#define UAVPLAN_PLANNERS_HPP

#include <algorithm>
#include <chrono>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "uavplan/clustering.hpp"
#include "uavplan/core.hpp"
#include "uavplan/lp.hpp"
#include "uavplan/transport.hpp"

namespace uavplan {

enum class Algorithm { SVA, GA, HGA, IH, BFA };

inline const char* to_string(Algorithm a) {
    switch (a) {
        case Algorithm::SVA: return "sva";
        case Algorithm::GA: return "ga";
        case Algorithm::HGA: return "hga";
        case Algorithm::IH: return "ih";
        case Algorithm::BFA: return "bfa";
    }
    return "?";
}

struct PlannerConfig {
    double cluster_threshold = 0.7;
    long long bfa_node_cap = 5000000;
    long long hga_node_cap = 20000000;
    long long max_pivots = 100000;
    bool bfa_pruning = true;
};

struct PlannerResult {
    Schedule schedule;
    std::chrono::nanoseconds elapsed{0};
    Algorithm algorithm = Algorithm::SVA;
    int clusters_solved = 0;
    long long nodes_explored = 0;
};

namespace detail {

inline std::vector<UavState> initial_fleet(const ProblemInstance& instance) {
    std::vector<UavState> fleet;
    fleet.reserve(instance.uavs.size());
    for (const auto& u : instance.uavs)
        fleet.push_back({u.id, instance.depot, 0, u.fuel_capacity});
    return fleet;
}

// Fuel needed for one trip, including the reserved return leg when required.
inline double trip_fuel_need(const ProblemInstance& instance, Position from,
                             const Target& t) {
    double need = static_cast<double>(manhattan_distance(from, t.position)) +
                  instance.loiter_fuel;
    if (instance.require_depot_return)
        need += static_cast<double>(manhattan_distance(t.position, instance.depot));
    return need;
}

inline bool can_serve(const ProblemInstance& instance, const UavState& u,
                      const Target& t) {
    long long trip = manhattan_distance(u.position, t.position);
    if (u.available_at + trip > t.window.start) return false;
    return u.fuel_remaining + kFuelTolerance >= trip_fuel_need(instance, u.position, t);
}

// Dispatch one UAV to a target: the latest departure that still arrives at
// the window start, so the previous window has always ended by then.
inline Assignment dispatch(const ProblemInstance& instance, UavState& u,
                           const Target& t) {
    long long trip = manhattan_distance(u.position, t.position);
    Assignment a;
    a.uav_id = u.uav_id;
    a.target_id = t.id;
    a.depart_time = t.window.start - trip;
    a.arrive_time = t.window.start;
    a.service_window = t.window;
    a.travel_fuel = static_cast<double>(trip);
    a.loiter_fuel = instance.loiter_fuel;
    u.position = t.position;
    u.available_at = t.window.end;
    u.fuel_remaining -= a.travel_fuel + a.loiter_fuel;
    return a;
}

inline void finalize_schedule(const ProblemInstance& instance,
                              const std::vector<UavState>& fleet,
                              std::map<int, int>& shortfall, Schedule& s) {
    if (instance.require_depot_return) {
        std::map<int, bool> flew;
        for (const auto& a : s.assignments) flew[a.uav_id] = true;
        for (const auto& u : fleet)
            if (flew.count(u.uav_id))
                s.return_fuel[u.uav_id] = static_cast<double>(
                    manhattan_distance(u.position, instance.depot));
    }
    for (const auto& [tid, miss] : shortfall)
        if (miss > 0) s.unmet.emplace_back(tid, miss);
    std::sort(s.unmet.begin(), s.unmet.end());
    s.complete = s.unmet.empty();
    s.total_fuel = total_fuel(s);
}

using TransportSolver = std::function<Flow(const TransportationProblem&)>;

// The cluster -> convert -> solve -> update pipeline shared by SVA, HGA and
// IH; only the transportation solver differs.
inline PlannerResult run_cluster_pipeline(const ProblemInstance& instance,
                                          const PlannerConfig& config,
                                          Algorithm tag,
                                          const TransportSolver& solver) {
    PlannerResult result;
    result.algorithm = tag;
    Schedule& s = result.schedule;

    auto clusters = cluster_targets(instance.targets, config.cluster_threshold);
    auto fleet = initial_fleet(instance);
    std::map<int, int> shortfall;

    for (const auto& cluster : clusters) {
        auto ready = ready_uavs(fleet, cluster, instance);
        if (ready.empty()) {
            for (int tid : cluster.target_ids) {
                const Target* t = instance.find_target(tid);
                if (t) shortfall[tid] += t->demand;
            }
            continue;
        }
        auto tp = build_transportation(ready, cluster, instance);
        Flow flow = solver(tp);
        ++result.clusters_solved;

        // Expand flow units into concrete assignments: real sources only,
        // sinks in order, lowest uav_id first within a group. BIG-cost flow
        // (forced infeasible edges, or the dummy source) is shortfall.
        for (std::size_t i = 0; i < tp.sources.size(); ++i) {
            const auto& src = tp.sources[i];
            std::size_t cursor = 0;  // next undispatched member of the group
            for (std::size_t j = 0; j < tp.sinks.size(); ++j) {
                const auto& snk = tp.sinks[j];
                long long units = flow.units[i][j];
                if (units == 0 || snk.dummy) continue;
                if (src.dummy || tp.is_big(tp.cost[i][j])) {
                    shortfall[snk.target_id] += static_cast<int>(units);
                    continue;
                }
                const Target* t = instance.find_target(snk.target_id);
                for (long long k = 0; k < units; ++k) {
                    int uav_id = src.uav_ids[cursor++];
                    for (auto& u : fleet)
                        if (u.uav_id == uav_id) {
                            s.assignments.push_back(dispatch(instance, u, *t));
                            break;
                        }
                }
            }
        }
    }
    finalize_schedule(instance, fleet, shortfall, s);
    return result;
}

}  // namespace detail

inline PlannerResult plan_sva(const ProblemInstance& instance,
                              const PlannerConfig& config = {}) {
    auto start = std::chrono::steady_clock::now();
    auto result = detail::run_cluster_pipeline(
        instance, config, Algorithm::SVA, [&](const TransportationProblem& tp) {
            return solve_transportation_simplex(tp, config.max_pivots);
        });
    result.elapsed = std::chrono::steady_clock::now() - start;
    return result;
}

inline PlannerResult plan_hga(const ProblemInstance& instance,
                              const PlannerConfig& config = {}) {
    auto start = std::chrono::steady_clock::now();
    long long nodes = 0;
    auto result = detail::run_cluster_pipeline(
        instance, config, Algorithm::HGA, [&](const TransportationProblem& tp) {
            // Enumerate against the same perturbed costs the simplex uses, so
            // among alternate optima the brute force lands on the identical
            // flow and leaves the fleet in the identical state.
            TransportationProblem p = tp;
            p.cost = detail::perturbed_costs(tp.cost);
            long long n = 0;
            Flow f = solve_transportation_bruteforce(p, config.hga_node_cap, &n);
            nodes += n;
            f.objective = 0.0;
            for (std::size_t i = 0; i < tp.sources.size(); ++i)
                for (std::size_t j = 0; j < tp.sinks.size(); ++j)
                    f.objective +=
                        static_cast<double>(f.units[i][j]) * tp.cost[i][j];
            return f;
        });
    result.nodes_explored = nodes;
    result.elapsed = std::chrono::steady_clock::now() - start;
    return result;
}

inline PlannerResult plan_ih(const ProblemInstance& instance,
                             const PlannerConfig& config = {}) {
    auto start = std::chrono::steady_clock::now();
    auto result = detail::run_cluster_pipeline(
        instance, config, Algorithm::IH, [](const TransportationProblem& tp) {
            return solve_lp_simplex(build_lp_model(tp));
        });
    result.elapsed = std::chrono::steady_clock::now() - start;
    return result;
}

// Greedy: targets in window-start order; each demand unit goes to the
// cheapest feasible UAV (ties: lowest id). Unmeetable demand is recorded and
// planning continues.
inline PlannerResult plan_greedy(const ProblemInstance& instance,
                                 const PlannerConfig& = {}) {
    auto start = std::chrono::steady_clock::now();
    PlannerResult result;
    result.algorithm = Algorithm::GA;
    Schedule& s = result.schedule;

    std::vector<const Target*> order;
    for (const auto& t : instance.targets) order.push_back(&t);
    std::sort(order.begin(), order.end(), [](const Target* a, const Target* b) {
        if (a->window.start != b->window.start) return a->window.start < b->window.start;
        if (a->window.end != b->window.end) return a->window.end < b->window.end;
        return a->id < b->id;
    });

    auto fleet = detail::initial_fleet(instance);
    std::map<int, int> shortfall;
    for (const Target* t : order) {
        for (int unit = 0; unit < t->demand; ++unit) {
            UavState* pick = nullptr;
            long long pick_cost = 0;
            for (auto& u : fleet) {
                if (!detail::can_serve(instance, u, *t)) continue;
                long long cost = manhattan_distance(u.position, t->position);
                if (!pick || cost < pick_cost ||
                    (cost == pick_cost && u.uav_id < pick->uav_id)) {
                    pick = &u;
                    pick_cost = cost;
                }
            }
            if (!pick) {
                shortfall[t->id] += t->demand - unit;
                break;
            }
            s.assignments.push_back(detail::dispatch(instance, *pick, *t));
        }
    }
    detail::finalize_schedule(instance, fleet, shortfall, s);
    result.elapsed = std::chrono::steady_clock::now() - start;
    return result;
}

namespace detail {

// Exhaustive branch-and-bound over targets in window-start order. At each
// target it branches over every size-demand combination of feasible UAVs
// (or, when fewer are feasible, dispatches all of them and records the
// shortfall). The incumbent is lexicographic: served demand first, fuel
// second, so a best partial schedule is always defined. An admissible bound
// (remaining demand times nearest-possible-position distance plus loiter)
// prunes fuel-dominated branches.
class BruteForcePlanner {
public:
    BruteForcePlanner(const ProblemInstance& instance, const PlannerConfig& config)
        : inst_(instance), cfg_(config) {
        for (const auto& t : inst_.targets) order_.push_back(&t);
        std::sort(order_.begin(), order_.end(),
                  [](const Target* a, const Target* b) {
                      if (a->window.start != b->window.start)
                          return a->window.start < b->window.start;
                      if (a->window.end != b->window.end)
                          return a->window.end < b->window.end;
                      return a->id < b->id;
                  });
        // Any UAV is always located at the depot or at some target, so the
        // nearest such position gives an admissible travel bound per target.
        for (const Target* t : order_) {
            long long best = manhattan_distance(inst_.depot, t->position);
            for (const auto& other : inst_.targets)
                if (other.id != t->id)
                    best = std::min(best,
                                    manhattan_distance(other.position, t->position));
            static_bound_[t->id] =
                static_cast<double>(t->demand) *
                (static_cast<double>(best) + inst_.loiter_fuel);
        }
        double tail = 0.0;
        tail_bound_.assign(order_.size() + 1, 0.0);
        for (std::size_t k = order_.size(); k-- > 0;) {
            tail += static_bound_[order_[k]->id];
            tail_bound_[k] = tail;
        }
        tail_demand_.assign(order_.size() + 1, 0);
        long long td = 0;
        for (std::size_t k = order_.size(); k-- > 0;) {
            td += order_[k]->demand;
            tail_demand_[k] = td;
        }
    }

    PlannerResult run() {
        PlannerResult result;
        result.algorithm = Algorithm::BFA;
        fleet_ = initial_fleet(inst_);
        best_served_ = -1;
        best_fuel_ = std::numeric_limits<double>::infinity();
        descend(0, 0, 0.0);
        result.nodes_explored = nodes_;

        Schedule& s = result.schedule;
        s.assignments = best_assignments_;
        std::map<int, int> shortfall;
        for (const Target* t : order_) {
            int got = 0;
            for (const auto& a : best_assignments_)
                if (a.target_id == t->id) ++got;
            if (got < t->demand) shortfall[t->id] = t->demand - got;
        }
        // Rebuild final fleet positions to price the return legs.
        auto fleet = initial_fleet(inst_);
        for (const auto& a : best_assignments_)
            for (auto& u : fleet)
                if (u.uav_id == a.uav_id) {
                    const Target* t = inst_.find_target(a.target_id);
                    u.position = t->position;
                    u.available_at = t->window.end;
                    u.fuel_remaining -= a.travel_fuel + a.loiter_fuel;
                }
        finalize_schedule(inst_, fleet, shortfall, s);
        return result;
    }

private:
    void descend(std::size_t depth, long long served, double fuel) {
        if (++nodes_ > cfg_.bfa_node_cap)
            throw ResourceLimitError("brute force planner exceeded " +
                                     std::to_string(cfg_.bfa_node_cap) + " nodes");
        if (depth == order_.size()) {
            double fuel_with_returns = fuel + return_fuel();
            if (served > best_served_ ||
                (served == best_served_ && fuel_with_returns < best_fuel_ - 1e-12)) {
                best_served_ = served;
                best_fuel_ = fuel_with_returns;
                best_assignments_ = current_;
            }
            return;
        }
        if (cfg_.bfa_pruning) {
            long long max_served = served + tail_demand_[depth];
            if (max_served < best_served_) return;
            if (max_served == best_served_ &&
                fuel + tail_bound_[depth] >= best_fuel_ - 1e-12)
                return;
        }

        const Target& t = *order_[depth];
        std::vector<std::size_t> feasible;
        for (std::size_t i = 0; i < fleet_.size(); ++i)
            if (can_serve(inst_, fleet_[i], t)) feasible.push_back(i);

        const int take = std::min<int>(t.demand, static_cast<int>(feasible.size()));
        if (take == 0) {
            descend(depth + 1, served, fuel);
            return;
        }
        std::vector<std::size_t> combo(take);
        enumerate(feasible, 0, 0, combo, t, depth, served, fuel);
    }

    void enumerate(const std::vector<std::size_t>& feasible, std::size_t from,
                   int chosen, std::vector<std::size_t>& combo, const Target& t,
                   std::size_t depth, long long served, double fuel) {
        const int take = static_cast<int>(combo.size());
        if (chosen == take) {
            std::vector<UavState> saved;
            saved.reserve(take);
            double added = 0.0;
            for (std::size_t idx : combo) {
                saved.push_back(fleet_[idx]);
                Assignment a = dispatch(inst_, fleet_[idx], t);
                added += a.travel_fuel + a.loiter_fuel;
                current_.push_back(a);
            }
            descend(depth + 1, served + take, fuel + added);
            for (int k = take; k-- > 0;) {
                current_.pop_back();
                fleet_[combo[k]] = saved[k];
            }
            return;
        }
        for (std::size_t p = from; p + (take - chosen) <= feasible.size(); ++p) {
            combo[chosen] = feasible[p];
            enumerate(feasible, p + 1, chosen + 1, combo, t, depth, served, fuel);
        }
    }

    double return_fuel() const {
        if (!inst_.require_depot_return) return 0.0;
        double sum = 0.0;
        std::map<int, bool> flew;
        for (const auto& a : current_) flew[a.uav_id] = true;
        for (const auto& u : fleet_)
            if (flew.count(u.uav_id))
                sum += static_cast<double>(manhattan_distance(u.position, inst_.depot));
        return sum;
    }

    const ProblemInstance& inst_;
    const PlannerConfig& cfg_;
    std::vector<const Target*> order_;
    std::map<int, double> static_bound_;
    std::vector<double> tail_bound_;
    std::vector<long long> tail_demand_;
    std::vector<UavState> fleet_;
    std::vector<Assignment> current_;
    std::vector<Assignment> best_assignments_;
    long long best_served_ = -1;
    double best_fuel_ = 0.0;
    long long nodes_ = 0;
};

}  // namespace detail

inline PlannerResult plan_bfa(const ProblemInstance& instance,
                              const PlannerConfig& config = {}) {
    auto start = std::chrono::steady_clock::now();
    detail::BruteForcePlanner planner(instance, config);
    auto result = planner.run();
    result.elapsed = std::chrono::steady_clock::now() - start;
    return result;
}

inline PlannerResult plan(Algorithm algorithm, const ProblemInstance& instance,
                          const PlannerConfig& config = {}) {
    switch (algorithm) {
        case Algorithm::SVA: return plan_sva(instance, config);
        case Algorithm::GA: return plan_greedy(instance, config);
        case Algorithm::HGA: return plan_hga(instance, config);
        case Algorithm::IH: return plan_ih(instance, config);
        case Algorithm::BFA: return plan_bfa(instance, config);
    }
    throw std::invalid_argument("unknown algorithm");
}

}  // namespace uavplan

#endif  // UAVPLAN_PLANNERS_HPP
