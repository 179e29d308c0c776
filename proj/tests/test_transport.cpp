#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "uavplan/lp.hpp"
#include "uavplan/transport.hpp"

using namespace uavplan;

namespace {

TransportationProblem raw_problem(const std::vector<int>& supplies,
                                  const std::vector<int>& demands,
                                  const std::vector<std::vector<double>>& cost) {
    TransportationProblem tp;
    for (std::size_t i = 0; i < supplies.size(); ++i)
        tp.sources.push_back({{0, 0}, supplies[i], {}, false});
    for (std::size_t j = 0; j < demands.size(); ++j)
        tp.sinks.push_back({static_cast<int>(j) + 1, demands[j], false});
    tp.cost = cost;
    double sum = 0;
    long long total_demand = 0;
    for (const auto& row : cost)
        for (double c : row) sum += c;
    for (int d : demands) total_demand += d;
    tp.big_cost = 1.0 + sum * static_cast<double>(std::max(1LL, total_demand));
    return tp;
}

TransportationProblem random_balanced(std::mt19937& rng, int max_dim = 4,
                                      int max_supply = 3, int max_cost = 50) {
    std::uniform_int_distribution<int> dim(1, max_dim);
    std::uniform_int_distribution<int> cost(0, max_cost);
    for (;;) {
        // Re-draw the shape too: a 1-row/4-column draw can never balance
        // with supplies capped at 3.
        int rows = dim(rng), cols = dim(rng);
        std::vector<int> supplies(rows), demands(cols);
        int total = 0;
        for (auto& s : supplies) total += s = 1 + static_cast<int>(rng() % max_supply);
        if (total < cols || total > cols * max_supply) continue;
        // Spread the total over the demands within [1, max_supply] each.
        int rest = total;
        bool ok = true;
        for (int j = 0; j < cols; ++j) {
            int remaining_cols = cols - j - 1;
            int lo = std::max(1, rest - remaining_cols * max_supply);
            int hi = std::min(max_supply, rest - remaining_cols);
            if (lo > hi) { ok = false; break; }
            demands[j] = lo + static_cast<int>(rng() % (hi - lo + 1));
            rest -= demands[j];
        }
        if (!ok || rest != 0) continue;
        std::vector<std::vector<double>> c(rows, std::vector<double>(cols));
        for (auto& row : c)
            for (auto& v : row) v = cost(rng);
        return raw_problem(supplies, demands, c);
    }
}

void check_marginals(const TransportationProblem& tp, const Flow& flow) {
    for (std::size_t i = 0; i < tp.sources.size(); ++i) {
        long long row = 0;
        for (long long v : flow.units[i]) {
            CHECK(v >= 0);
            row += v;
        }
        CHECK(row == tp.sources[i].supply);
    }
    for (std::size_t j = 0; j < tp.sinks.size(); ++j) {
        long long col = 0;
        for (std::size_t i = 0; i < tp.sources.size(); ++i) col += flow.units[i][j];
        CHECK(col == tp.sinks[j].demand);
    }
}

ProblemInstance cluster_instance() {
    ProblemInstance inst;
    inst.largest_coordinate = 20;
    inst.depot = {10, 10};
    inst.loiter_fuel = 1.0;
    inst.require_depot_return = true;
    return inst;
}

}  // namespace

TEST_CASE("ready uavs by reach time and fuel") {
    auto inst = cluster_instance();
    inst.require_depot_return = false;
    inst.targets.push_back({1, {12, 12}, {10, 20}, 1});
    Cluster cluster{{1}, {10, 20}, 10, 0};

    SECTION("reaches in time") {
        std::vector<UavState> fleet{{1, {10, 10}, 0, 100.0}};
        CHECK(ready_uavs(fleet, cluster, inst).size() == 1);
    }
    SECTION("too late") {
        inst.targets[0].window = {3, 20};
        Cluster late{{1}, {3, 20}, 3, 0};
        std::vector<UavState> fleet{{1, {10, 10}, 0, 100.0}};
        CHECK(ready_uavs(fleet, late, inst).empty());
    }
    SECTION("insufficient fuel") {
        std::vector<UavState> fleet{{1, {10, 10}, 0, 3.0}};  // trip 4 > 3
        CHECK(ready_uavs(fleet, cluster, inst).empty());
    }
    SECTION("return leg is reserved when required") {
        inst.require_depot_return = true;
        // trip 4 + loiter 1 + return 4 = 9
        std::vector<UavState> fleet{{1, {10, 10}, 0, 8.5}, {2, {10, 10}, 0, 9.0}};
        auto ready = ready_uavs(fleet, cluster, inst);
        REQUIRE(ready.size() == 1);
        CHECK(ready[0].uav_id == 2);
    }
}

TEST_CASE("build transportation balances with dummies") {
    auto inst = cluster_instance();
    inst.require_depot_return = false;

    SECTION("surplus supply adds a zero-cost dummy sink") {
        inst.targets.push_back({1, {12, 12}, {10, 20}, 2});
        Cluster cluster{{1}, {10, 20}, 10, 0};
        std::vector<UavState> fleet{{1, {10, 10}, 0, 100.0},
                                    {2, {10, 10}, 0, 100.0},
                                    {3, {10, 10}, 0, 100.0}};
        auto tp = build_transportation(ready_uavs(fleet, cluster, inst), cluster, inst);
        REQUIRE(tp.sources.size() == 1);
        REQUIRE(tp.sinks.size() == 2);
        CHECK(tp.sources[0].supply == 3);
        CHECK(tp.sinks[0].demand == 2);
        REQUIRE(tp.dummy_sink.has_value());
        CHECK(tp.sinks[*tp.dummy_sink].demand == 1);
        CHECK(tp.cost[0][*tp.dummy_sink] == 0.0);
        CHECK(tp.balanced());
    }
    SECTION("distinct positions stay distinct sources") {
        inst.targets.push_back({1, {12, 12}, {30, 40}, 1});
        inst.targets.push_back({2, {8, 8}, {30, 40}, 1});
        Cluster cluster{{1, 2}, {30, 40}, 30, 0};
        std::vector<UavState> fleet{{1, {0, 0}, 0, 100.0}, {2, {20, 20}, 0, 100.0}};
        auto tp = build_transportation(ready_uavs(fleet, cluster, inst), cluster, inst);
        CHECK(tp.sources.size() == 2);
        CHECK(tp.sinks.size() == 2);
        CHECK_FALSE(tp.dummy_source.has_value());
        CHECK_FALSE(tp.dummy_sink.has_value());
    }
    SECTION("shortfall adds a BIG-cost dummy source") {
        inst.targets.push_back({1, {12, 12}, {10, 20}, 3});
        Cluster cluster{{1}, {10, 20}, 10, 0};
        std::vector<UavState> fleet{{1, {10, 10}, 0, 100.0}};
        auto tp = build_transportation(ready_uavs(fleet, cluster, inst), cluster, inst);
        REQUIRE(tp.dummy_source.has_value());
        CHECK(tp.sources[*tp.dummy_source].supply == 2);
        CHECK(tp.is_big(tp.cost[*tp.dummy_source][0]));
        auto flow = solve_transportation_simplex(tp);
        CHECK(flow.units[*tp.dummy_source][0] == 2);
    }
    SECTION("groups split when fuel feasibility differs per sink") {
        inst.require_depot_return = false;
        inst.targets.push_back({1, {12, 10}, {30, 40}, 1});
        inst.targets.push_back({2, {18, 10}, {30, 40}, 1});
        // Same position, one UAV cannot afford the far target.
        std::vector<UavState> fleet{{1, {10, 10}, 0, 100.0}, {2, {10, 10}, 0, 4.0}};
        Cluster cluster{{1, 2}, {30, 40}, 30, 0};
        auto tp = build_transportation(ready_uavs(fleet, cluster, inst), cluster, inst);
        REQUIRE(tp.sources.size() == 2);
        CHECK(tp.sources[0].supply == 1);
        CHECK(tp.sources[1].supply == 1);
    }
}

TEST_CASE("trivial 1x1 problem") {
    auto tp = raw_problem({5}, {5}, {{3.0}});
    for (auto* solve : {+[](const TransportationProblem& p) {
                            return solve_transportation_simplex(p);
                        },
                        +[](const TransportationProblem& p) {
                            return solve_transportation_bruteforce(p);
                        }}) {
        auto flow = solve(tp);
        CHECK(flow.units[0][0] == 5);
        CHECK(flow.objective == 15.0);
    }
}

TEST_CASE("2x2 worked example") {
    // Enumerating flows with marginals (2,1)/(1,2) gives exactly two
    // candidates; minimum objective is 5 at x11=1, x12=1, x22=1.
    auto tp = raw_problem({2, 1}, {1, 2}, {{1, 3}, {2, 1}});
    auto simplex = solve_transportation_simplex(tp);
    auto brute = solve_transportation_bruteforce(tp);
    CHECK(simplex.objective == 5.0);
    CHECK(brute.objective == 5.0);
    CHECK(brute.units == std::vector<std::vector<long long>>{{1, 1}, {0, 1}});
    check_marginals(tp, simplex);
}

TEST_CASE("unbalanced input is rejected") {
    auto tp = raw_problem({2}, {1}, {{1.0}});
    CHECK_THROWS_AS(solve_transportation_simplex(tp), std::invalid_argument);
    CHECK_THROWS_AS(solve_transportation_bruteforce(tp), std::invalid_argument);
}

TEST_CASE("brute force node cap raises a resource error") {
    auto tp = raw_problem({3, 3, 3}, {3, 3, 3},
                          {{1, 2, 3}, {4, 5, 6}, {7, 8, 9}});
    CHECK_THROWS_AS(solve_transportation_bruteforce(tp, 2), ResourceLimitError);
}

TEST_CASE("simplex agrees with brute force on 1000 random problems") {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 1000; ++trial) {
        auto tp = random_balanced(rng);
        auto simplex = solve_transportation_simplex(tp);
        auto brute = solve_transportation_bruteforce(tp);
        INFO("trial " << trial);
        CHECK(std::llround(simplex.objective) == std::llround(brute.objective));
        CHECK(std::abs(simplex.objective - brute.objective) < 1e-6);
        check_marginals(tp, simplex);
        check_marginals(tp, brute);
    }
}

TEST_CASE("cost scaling scales objectives and keeps the canonical flow") {
    std::mt19937 rng(77);
    for (int trial = 0; trial < 50; ++trial) {
        auto tp = random_balanced(rng);
        auto base = solve_transportation_simplex(tp);
        for (double lambda : {2.0, 0.5, 10.0}) {
            auto scaled_tp = tp;
            for (auto& row : scaled_tp.cost)
                for (auto& c : row) c *= lambda;
            scaled_tp.big_cost *= lambda;
            auto scaled = solve_transportation_simplex(scaled_tp);
            CHECK(scaled.units == base.units);
            CHECK(scaled.objective == Catch::Approx(base.objective * lambda));
        }
    }
}

TEST_CASE("degenerate supplies terminate within the pivot cap") {
    // Equal supplies and demands force degenerate bases at every corner.
    auto tp = raw_problem({1, 1, 1, 1}, {1, 1, 1, 1},
                          {{5, 5, 5, 5}, {5, 5, 5, 5}, {5, 5, 5, 5}, {5, 5, 5, 5}});
    auto flow = solve_transportation_simplex(tp, 1000);
    CHECK(flow.objective == 20.0);
}

TEST_CASE("debug dumps are stable") {
    auto inst = cluster_instance();
    inst.require_depot_return = false;
    inst.targets.push_back({1, {12, 12}, {10, 20}, 2});
    Cluster cluster{{1}, {10, 20}, 10, 0};
    std::vector<UavState> fleet{{1, {10, 10}, 0, 100.0},
                                {2, {10, 10}, 0, 100.0},
                                {3, {10, 10}, 0, 100.0}};
    auto tp = build_transportation(ready_uavs(fleet, cluster, inst), cluster, inst);
    CHECK(dump_transportation(tp) ==
          "supply\\demand\tt1(2)\tdummy(1)\n"
          "(10,10)x3\t4\t0\n");
    auto flow = solve_transportation_simplex(tp);
    CHECK(dump_flow(flow) == "2\t1\nobjective\t8\n");
}
