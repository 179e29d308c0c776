#ifndef UAVPLAN_TRANSPORT_HPP
#define UAVPLAN_TRANSPORT_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "uavplan/clustering.hpp"
#include "uavplan/core.hpp"

namespace uavplan {

struct TransportSource {
    Position position;
    int supply = 0;
    std::vector<int> uav_ids;  // sorted ascending; empty for the dummy source
    bool dummy = false;
    friend bool operator==(const TransportSource&, const TransportSource&) = default;
};

struct TransportSink {
    int target_id = 0;  // -1 for the dummy sink
    int demand = 0;
    bool dummy = false;
    friend bool operator==(const TransportSink&, const TransportSink&) = default;
};

// A balanced min-cost shipment problem: UAV position groups as sources,
// cluster targets as sinks. Infeasible edges carry the BIG sentinel cost.
struct TransportationProblem {
    std::vector<TransportSource> sources;
    std::vector<TransportSink> sinks;
    std::vector<std::vector<double>> cost;  // sources x sinks
    std::optional<int> dummy_source;
    std::optional<int> dummy_sink;
    double big_cost = 0.0;

    bool balanced() const {
        long long s = 0, d = 0;
        for (const auto& src : sources) s += src.supply;
        for (const auto& snk : sinks) d += snk.demand;
        return s == d;
    }
    bool is_big(double c) const { return c >= big_cost - 0.5; }
};

struct Flow {
    std::vector<std::vector<long long>> units;  // sources x sinks
    double objective = 0.0;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Canonical tie-breaking shared by the transportation simplex and the LP
// simplex: a fixed, cell-dependent micro-perturbation of the costs makes the
// optimum of the perturbed problem unique, so every exact solver lands on the
// same flow among alternate optima. Objectives are always reported against
// the unperturbed costs. The magnitude is far below the unit granularity of
// integer travel costs.
inline constexpr double kTieBreakEpsilon = 1e-7;

inline double tie_break_noise(std::size_t row, std::size_t col) {
    std::uint64_t h = splitmix64((static_cast<std::uint64_t>(row) << 32) ^ col ^
                                 0x5A17ULL);
    return kTieBreakEpsilon * (static_cast<double>(h >> 11) * 0x1.0p-53);
}

inline std::vector<std::vector<double>> perturbed_costs(
    const std::vector<std::vector<double>>& cost) {
    auto out = cost;
    for (std::size_t i = 0; i < out.size(); ++i)
        for (std::size_t j = 0; j < out[i].size(); ++j)
            out[i][j] += tie_break_noise(i, j);
    return out;
}

}  // namespace detail

// UAVs able to serve at least one target of the cluster: reach it no later
// than its window start and carry enough fuel for the cheapest such trip plus
// the loiter charge (plus the depot-return leg when the instance requires it).
// UAVs still busy past every window start in the cluster fall out naturally.
inline std::vector<UavState> ready_uavs(const std::vector<UavState>& fleet,
                                        const Cluster& cluster,
                                        const ProblemInstance& instance) {
    std::vector<UavState> ready;
    for (const auto& u : fleet) {
        bool ok = false;
        for (int tid : cluster.target_ids) {
            const Target* t = instance.find_target(tid);
            if (!t) continue;
            long long trip = manhattan_distance(u.position, t->position);
            if (u.available_at + trip > t->window.start) continue;
            double need = static_cast<double>(trip) + instance.loiter_fuel;
            if (instance.require_depot_return)
                need += static_cast<double>(
                    manhattan_distance(t->position, instance.depot));
            if (u.fuel_remaining + kFuelTolerance >= need) {
                ok = true;
                break;
            }
        }
        if (ok) ready.push_back(u);
    }
    return ready;
}

// Builds the balanced transportation problem for one cluster. Ready UAVs are
// grouped into sources by position; a group splits when its members disagree
// on per-sink feasibility (availability or remaining fuel), so every member
// of a source can serve exactly the sinks its cost row marks feasible.
// Balancing adds a zero-cost dummy sink (idle UAVs) or a BIG-cost dummy
// source (shortfall).
inline TransportationProblem build_transportation(
    const std::vector<UavState>& ready, const Cluster& cluster,
    const ProblemInstance& instance) {
    TransportationProblem tp;

    for (int tid : cluster.target_ids) {
        const Target* t = instance.find_target(tid);
        tp.sinks.push_back({tid, t ? t->demand : 0, false});
    }
    const std::size_t n_sinks = tp.sinks.size();

    // Per-UAV feasibility vector over the cluster sinks.
    auto feasibility = [&](const UavState& u) {
        std::vector<bool> feas(n_sinks, false);
        for (std::size_t j = 0; j < n_sinks; ++j) {
            const Target* t = instance.find_target(tp.sinks[j].target_id);
            if (!t) continue;
            long long trip = manhattan_distance(u.position, t->position);
            if (u.available_at + trip > t->window.start) continue;
            double need = static_cast<double>(trip) + instance.loiter_fuel;
            if (instance.require_depot_return)
                need += static_cast<double>(
                    manhattan_distance(t->position, instance.depot));
            feas[j] = u.fuel_remaining + kFuelTolerance >= need;
        }
        return feas;
    };

    struct Group {
        Position pos;
        std::vector<bool> feas;
        std::vector<int> uav_ids;
    };
    std::vector<Group> groups;
    for (const auto& u : ready) {
        auto feas = feasibility(u);
        bool merged = false;
        for (auto& g : groups)
            if (g.pos == u.position && g.feas == feas) {
                g.uav_ids.push_back(u.uav_id);
                merged = true;
                break;
            }
        if (!merged) groups.push_back({u.position, feas, {u.uav_id}});
    }
    std::sort(groups.begin(), groups.end(), [](const Group& a, const Group& b) {
        if (a.pos != b.pos) return a.pos < b.pos;
        return a.feas < b.feas;
    });

    double finite_sum = 0.0;
    long long total_supply = 0, total_demand = 0;
    for (const auto& s : tp.sinks) total_demand += s.demand;
    for (auto& g : groups) {
        std::sort(g.uav_ids.begin(), g.uav_ids.end());
        tp.sources.push_back(
            {g.pos, static_cast<int>(g.uav_ids.size()), g.uav_ids, false});
        total_supply += static_cast<long long>(g.uav_ids.size());
        for (std::size_t j = 0; j < n_sinks; ++j)
            if (g.feas[j]) {
                const Target* t = instance.find_target(tp.sinks[j].target_id);
                finite_sum +=
                    static_cast<double>(manhattan_distance(g.pos, t->position));
            }
    }
    tp.big_cost = 1.0 + finite_sum * static_cast<double>(std::max(1LL, total_demand));

    tp.cost.assign(tp.sources.size(), std::vector<double>(n_sinks, tp.big_cost));
    for (std::size_t i = 0; i < groups.size(); ++i)
        for (std::size_t j = 0; j < n_sinks; ++j)
            if (groups[i].feas[j]) {
                const Target* t = instance.find_target(tp.sinks[j].target_id);
                tp.cost[i][j] = static_cast<double>(
                    manhattan_distance(groups[i].pos, t->position));
            }

    if (total_supply > total_demand) {
        tp.dummy_sink = static_cast<int>(tp.sinks.size());
        tp.sinks.push_back({-1, static_cast<int>(total_supply - total_demand), true});
        for (auto& row : tp.cost) row.push_back(0.0);
    } else if (total_demand > total_supply) {
        tp.dummy_source = static_cast<int>(tp.sources.size());
        tp.sources.push_back(
            {instance.depot, static_cast<int>(total_demand - total_supply), {}, true});
        tp.cost.emplace_back(tp.sinks.size(), tp.big_cost);
    }
    return tp;
}

// --- transportation simplex (northwest corner + MODI) -----------------------

namespace detail {

struct Basis {
    // flow and basis membership per cell; basic cells may hold zero flow
    // (epsilon placement) so the basis always has rows + cols - 1 cells.
    std::vector<std::vector<long long>> flow;
    std::vector<std::vector<char>> basic;
};

inline Basis northwest_corner(const std::vector<long long>& supply,
                              const std::vector<long long>& demand) {
    const std::size_t R = supply.size(), C = demand.size();
    Basis b{std::vector<std::vector<long long>>(R, std::vector<long long>(C, 0)),
            std::vector<std::vector<char>>(R, std::vector<char>(C, 0))};
    auto s = supply;
    auto d = demand;
    std::size_t i = 0, j = 0;
    while (i < R && j < C) {
        long long q = std::min(s[i], d[j]);
        b.flow[i][j] = q;
        b.basic[i][j] = 1;
        s[i] -= q;
        d[j] -= q;
        if (s[i] == 0 && d[j] == 0) {
            // Degenerate corner: keep a zero-flow basic cell so the basis
            // stays a spanning tree of size R + C - 1.
            if (j + 1 < C) {
                b.basic[i][j + 1] = 1;
                ++i;
                ++j;
            } else if (i + 1 < R) {
                b.basic[i + 1][j] = 1;
                ++i;
                ++j;
            } else {
                ++i;
                ++j;
            }
        } else if (s[i] == 0) {
            ++i;
        } else {
            ++j;
        }
    }
    return b;
}

}  // namespace detail

// Exact solver: northwest-corner start, then MODI (u/v dual) optimality test
// with stepping-stone pivots until no reduced cost is negative. Throws
// ResourceLimitError when the pivot cap is exceeded (never on sane inputs,
// the cap is an anti-cycling tripwire).
inline Flow solve_transportation_simplex(const TransportationProblem& tp,
                                         long long max_pivots = 100000) {
    if (!tp.balanced())
        throw std::invalid_argument(
            "solve_transportation_simplex: unbalanced problem");
    const std::size_t R = tp.sources.size(), C = tp.sinks.size();
    std::vector<long long> supply(R), demand(C);
    for (std::size_t i = 0; i < R; ++i) supply[i] = tp.sources[i].supply;
    for (std::size_t j = 0; j < C; ++j) demand[j] = tp.sinks[j].demand;

    const auto cost = detail::perturbed_costs(tp.cost);
    detail::Basis b = detail::northwest_corner(supply, demand);

    const double kTol = 1e-9;
    std::vector<double> u(R), v(C);
    std::vector<char> u_set(R), v_set(C);

    for (long long pivot = 0;; ++pivot) {
        if (pivot > max_pivots)
            throw ResourceLimitError("transportation simplex exceeded " +
                                     std::to_string(max_pivots) + " pivots");

        // Duals from the basis tree, u[0] = 0.
        std::fill(u_set.begin(), u_set.end(), 0);
        std::fill(v_set.begin(), v_set.end(), 0);
        u[0] = 0.0;
        u_set[0] = 1;
        bool progress = true;
        while (progress) {
            progress = false;
            for (std::size_t i = 0; i < R; ++i)
                for (std::size_t j = 0; j < C; ++j) {
                    if (!b.basic[i][j]) continue;
                    if (u_set[i] && !v_set[j]) {
                        v[j] = cost[i][j] - u[i];
                        v_set[j] = 1;
                        progress = true;
                    } else if (!u_set[i] && v_set[j]) {
                        u[i] = cost[i][j] - v[j];
                        u_set[i] = 1;
                        progress = true;
                    }
                }
        }

        // Entering cell: most negative reduced cost, ties by lowest (row, col).
        double best = -kTol;
        std::size_t er = R, ec = C;
        for (std::size_t i = 0; i < R; ++i)
            for (std::size_t j = 0; j < C; ++j) {
                if (b.basic[i][j]) continue;
                double rc = cost[i][j] - u[i] - v[j];
                if (rc < best) {
                    best = rc;
                    er = i;
                    ec = j;
                }
            }
        if (er == R) break;  // optimal

        // Stepping-stone cycle: the basis cells form a spanning tree on the
        // bipartite node set rows + cols, so adding the entering cell closes
        // exactly one cycle. BFS the tree path from row er to col ec; the
        // cells along that path plus the entering cell form the cycle.
        struct Step {
            std::size_t i, j;
        };
        std::vector<Step> cycle;
        {
            // Node ids: 0..R-1 rows, R..R+C-1 cols.
            const std::size_t N = R + C;
            std::vector<std::size_t> parent(N, N);
            std::vector<char> seen(N, 0);
            std::vector<std::size_t> queue{er};
            seen[er] = 1;
            for (std::size_t qi = 0; qi < queue.size(); ++qi) {
                std::size_t node = queue[qi];
                if (node < R) {
                    for (std::size_t j = 0; j < C; ++j)
                        if (b.basic[node][j] && !seen[R + j]) {
                            seen[R + j] = 1;
                            parent[R + j] = node;
                            queue.push_back(R + j);
                        }
                } else {
                    std::size_t j = node - R;
                    for (std::size_t i = 0; i < R; ++i)
                        if (b.basic[i][j] && !seen[i]) {
                            seen[i] = 1;
                            parent[i] = node;
                            queue.push_back(i);
                        }
                }
            }
            if (!seen[R + ec])
                throw std::logic_error("transportation simplex: no pivot cycle");
            // Walk back from col ec to row er, emitting the basic cell of each
            // tree edge; prepended entering cell keeps +/- alternation.
            cycle.push_back({er, ec});
            std::size_t node = R + ec;
            while (node != er) {
                std::size_t p = parent[node];
                if (node < R)
                    cycle.push_back({node, p - R});
                else
                    cycle.push_back({p, node - R});
                node = p;
            }
        }

        // Odd positions lose flow; theta = min over them, leaving cell is the
        // lexicographically lowest among the minima.
        long long theta = std::numeric_limits<long long>::max();
        std::size_t lr = 0, lc = 0;
        for (std::size_t k = 1; k < cycle.size(); k += 2) {
            long long f = b.flow[cycle[k].i][cycle[k].j];
            if (f < theta ||
                (f == theta && (cycle[k].i < lr || (cycle[k].i == lr && cycle[k].j < lc)))) {
                theta = f;
                lr = cycle[k].i;
                lc = cycle[k].j;
            }
        }
        for (std::size_t k = 0; k < cycle.size(); ++k) {
            auto [i, j] = cycle[k];
            b.flow[i][j] += (k % 2 == 0) ? theta : -theta;
        }
        b.basic[er][ec] = 1;
        b.basic[lr][lc] = 0;
        b.flow[lr][lc] = 0;
    }

    Flow out;
    out.units = b.flow;
    for (std::size_t i = 0; i < R; ++i)
        for (std::size_t j = 0; j < C; ++j)
            out.objective += static_cast<double>(b.flow[i][j]) * tp.cost[i][j];
    return out;
}

// Exhaustive enumeration of integer flows with the required marginals.
// Returns the minimum-objective flow, tie-broken to the lexicographically
// smallest flattened matrix. Throws ResourceLimitError past node_cap.
inline Flow solve_transportation_bruteforce(const TransportationProblem& tp,
                                            long long node_cap = 20000000,
                                            long long* nodes_out = nullptr) {
    if (!tp.balanced())
        throw std::invalid_argument(
            "solve_transportation_bruteforce: unbalanced problem");
    const std::size_t R = tp.sources.size(), C = tp.sinks.size();
    std::vector<long long> row_rem(R), col_rem(C);
    for (std::size_t i = 0; i < R; ++i) row_rem[i] = tp.sources[i].supply;
    for (std::size_t j = 0; j < C; ++j) col_rem[j] = tp.sinks[j].demand;

    std::vector<std::vector<long long>> x(R, std::vector<long long>(C, 0));
    std::vector<std::vector<long long>> best;
    double best_cost = std::numeric_limits<double>::infinity();
    long long nodes = 0;

    auto rec = [&](auto&& self, std::size_t cell, double cost_so_far) -> void {
        if (++nodes > node_cap)
            throw ResourceLimitError("transportation brute force exceeded " +
                                     std::to_string(node_cap) + " nodes");
        if (cost_so_far >= best_cost) return;  // ties keep the earlier (lex-smaller) flow
        if (cell == R * C) {
            best = x;
            best_cost = cost_so_far;
            return;
        }
        const std::size_t i = cell / C, j = cell % C;
        if (j == C - 1) {
            // Last column of the row is forced by the row's remaining supply.
            long long q = row_rem[i];
            if (q > col_rem[j]) return;
            if (i == R - 1 && q != col_rem[j]) return;
            x[i][j] = q;
            row_rem[i] -= q;
            col_rem[j] -= q;
            self(self, cell + 1, cost_so_far + static_cast<double>(q) * tp.cost[i][j]);
            x[i][j] = 0;
            row_rem[i] += q;
            col_rem[j] += q;
            return;
        }
        long long hi = std::min(row_rem[i], col_rem[j]);
        long long forced = (i == R - 1) ? col_rem[j] : 0;  // last row must drain columns
        if (forced > hi) return;
        for (long long q = forced; q <= ((i == R - 1) ? forced : hi); ++q) {
            x[i][j] = q;
            row_rem[i] -= q;
            col_rem[j] -= q;
            self(self, cell + 1, cost_so_far + static_cast<double>(q) * tp.cost[i][j]);
            x[i][j] = 0;
            row_rem[i] += q;
            col_rem[j] += q;
        }
    };
    rec(rec, 0, 0.0);
    if (nodes_out) *nodes_out = nodes;

    if (best.empty())
        throw std::logic_error("transportation brute force: no feasible flow");
    Flow out;
    out.units = best;
    out.objective = best_cost;
    return out;
}

// --- debug dumps ------------------------------------------------------------

inline std::string dump_transportation(const TransportationProblem& tp) {
    std::ostringstream os;
    os << "supply\\demand";
    for (const auto& s : tp.sinks)
        os << '\t' << (s.dummy ? std::string("dummy") : "t" + std::to_string(s.target_id))
           << "(" << s.demand << ")";
    os << '\n';
    for (std::size_t i = 0; i < tp.sources.size(); ++i) {
        const auto& src = tp.sources[i];
        if (src.dummy)
            os << "dummy(" << src.supply << ")";
        else
            os << "(" << src.position.x << "," << src.position.y << ")x" << src.supply;
        for (std::size_t j = 0; j < tp.sinks.size(); ++j)
            os << '\t' << (tp.is_big(tp.cost[i][j]) ? std::string("BIG")
                                                    : std::to_string(static_cast<long long>(
                                                          tp.cost[i][j])));
        os << '\n';
    }
    return os.str();
}

inline std::string dump_flow(const Flow& flow) {
    std::ostringstream os;
    for (const auto& row : flow.units) {
        for (std::size_t j = 0; j < row.size(); ++j)
            os << (j ? "\t" : "") << row[j];
        os << '\n';
    }
    os << "objective\t" << flow.objective << '\n';
    return os.str();
}

}  // namespace uavplan

#endif  // UAVPLAN_TRANSPORT_HPP
