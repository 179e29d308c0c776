#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "uavplan/instance_gen.hpp"
#include "uavplan/planners.hpp"

using namespace uavplan;

namespace {

ProblemInstance single_target_instance() {
    ProblemInstance inst;
    inst.largest_coordinate = 10;
    inst.depot = {0, 0};
    inst.loiter_fuel = 1.0;
    inst.require_depot_return = true;
    inst.targets = {{1, {2, 2}, {5, 8}, 1}};
    inst.uavs = {{1, 100.0}};
    return inst;
}

void check_result(const ProblemInstance& inst, const PlannerResult& result) {
    auto report = validate_schedule(inst, result.schedule);
    if (result.schedule.complete) {
        INFO(to_string(result.algorithm));
        for (const auto& [code, msg] : report.violations) INFO(msg);
        CHECK(report.ok);
    } else {
        for (const auto& [code, msg] : report.violations)
            CHECK(code == Violation::DEMAND_UNMET);
    }
}

}  // namespace

TEST_CASE("one target, one UAV: every planner finds the only plan") {
    auto inst = single_target_instance();
    for (Algorithm algo : {Algorithm::SVA, Algorithm::GA, Algorithm::HGA,
                           Algorithm::IH, Algorithm::BFA}) {
        auto result = plan(algo, inst);
        INFO(to_string(algo));
        REQUIRE(result.schedule.assignments.size() == 1);
        CHECK(result.schedule.complete);
        // travel 4 + loiter 1 + return 4
        CHECK(result.schedule.total_fuel == 9.0);
        check_result(inst, result);
    }
}

TEST_CASE("greedy picks the cheapest UAV, ties by id") {
    ProblemInstance inst;
    inst.largest_coordinate = 10;
    inst.depot = {0, 0};
    inst.require_depot_return = false;
    inst.targets = {{1, {3, 0}, {10, 15}, 1}};
    inst.uavs = {{1, 100.0}, {2, 100.0}};
    auto result = plan_greedy(inst);
    REQUIRE(result.schedule.assignments.size() == 1);
    CHECK(result.schedule.assignments[0].uav_id == 1);  // equidistant tie
}

TEST_CASE("greedy trap: SVA completes where greedy strands the last target") {
    auto inst = fixtures::ga_trap();
    auto sva = plan_sva(inst);
    auto ga = plan_greedy(inst);
    CHECK(sva.schedule.complete);
    CHECK_FALSE(ga.schedule.complete);
    CHECK(ga.schedule.unmet == std::vector<std::pair<int, int>>{{4, 1}});
    check_result(inst, sva);
    check_result(inst, ga);
}

TEST_CASE("brute force beats greedy strictly on the crafted case") {
    auto inst = fixtures::bfa_beats_ga();
    auto bfa = plan_bfa(inst);
    auto ga = plan_greedy(inst);
    REQUIRE(bfa.schedule.complete);
    REQUIRE(ga.schedule.complete);
    CHECK(bfa.schedule.total_fuel == 30.0);
    CHECK(ga.schedule.total_fuel == 38.0);
    check_result(inst, bfa);
    check_result(inst, ga);
}

TEST_CASE("sva and ih agree schedule-for-schedule on random instances") {
    GeneratorParams p;
    p.n_targets = 7;
    p.n_uavs = 5;
    p.ratio_low = 0.2;
    p.ratio_high = 0.9;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        auto inst = generate_random(p, {seed});
        auto sva = plan_sva(inst);
        auto ih = plan_ih(inst);
        INFO("seed " << seed);
        CHECK(sva.schedule == ih.schedule);
        check_result(inst, sva);
    }
}

TEST_CASE("hga matches sva fuel cluster by cluster") {
    GeneratorParams p;
    p.n_targets = 6;
    p.n_uavs = 4;
    p.ratio_low = 0.0;
    p.ratio_high = 1.0;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        auto inst = generate_random(p, {seed});
        auto sva = plan_sva(inst);
        auto hga = plan_hga(inst);
        INFO("seed " << seed);
        CHECK(hga.schedule.total_fuel == Catch::Approx(sva.schedule.total_fuel));
        CHECK(hga.schedule.complete == sva.schedule.complete);
        check_result(inst, hga);
    }
}

TEST_CASE("bfa is a lower bound for every completing planner") {
    GeneratorParams p;
    p.n_targets = 3;
    p.n_uavs = 3;
    p.ratio_low = 0.0;
    p.ratio_high = 1.0;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        auto inst = generate_random(p, {seed});
        auto bfa = plan_bfa(inst);
        if (!bfa.schedule.complete) continue;
        for (Algorithm algo :
             {Algorithm::SVA, Algorithm::GA, Algorithm::HGA, Algorithm::IH}) {
            auto other = plan(algo, inst);
            if (!other.schedule.complete) continue;
            INFO("seed " << seed << " vs " << to_string(algo));
            CHECK(bfa.schedule.total_fuel <= other.schedule.total_fuel + 1e-9);
        }
    }
}

TEST_CASE("disabling pruning leaves the bfa objective unchanged") {
    GeneratorParams p;
    p.n_targets = 3;
    p.n_uavs = 3;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto inst = generate_random(p, {seed});
        PlannerConfig pruned, unpruned;
        unpruned.bfa_pruning = false;
        auto a = plan_bfa(inst, pruned);
        auto b = plan_bfa(inst, unpruned);
        INFO("seed " << seed);
        CHECK(a.schedule.total_fuel == b.schedule.total_fuel);
        CHECK(a.schedule.unmet == b.schedule.unmet);
        CHECK(a.nodes_explored <= b.nodes_explored);
    }
}

TEST_CASE("bfa node cap raises a resource error") {
    GeneratorParams p;
    p.n_targets = 6;
    p.n_uavs = 5;
    p.ratio_low = 0.7;  // one big cluster, wide branching
    auto inst = generate_random(p, {3});
    PlannerConfig config;
    config.bfa_node_cap = 10;
    CHECK_THROWS_AS(plan_bfa(inst, config), ResourceLimitError);
}

TEST_CASE("planners are deterministic") {
    GeneratorParams p;
    p.n_targets = 8;
    p.n_uavs = 5;
    auto inst = generate_random(p, {11});
    for (Algorithm algo :
         {Algorithm::SVA, Algorithm::GA, Algorithm::HGA, Algorithm::IH}) {
        auto a = plan(algo, inst);
        auto b = plan(algo, inst);
        INFO(to_string(algo));
        CHECK(a.schedule == b.schedule);
    }
}

TEST_CASE("empty ready set records the whole cluster as unmet") {
    ProblemInstance inst;
    inst.largest_coordinate = 20;
    inst.depot = {0, 0};
    inst.require_depot_return = false;
    // Window opens before any UAV can arrive.
    inst.targets = {{1, {20, 20}, {5, 15}, 2}};
    inst.uavs = {{1, 100.0}, {2, 100.0}};
    auto sva = plan_sva(inst);
    CHECK_FALSE(sva.schedule.complete);
    CHECK(sva.schedule.unmet == std::vector<std::pair<int, int>>{{1, 2}});
    CHECK(sva.schedule.assignments.empty());
    CHECK(sva.clusters_solved == 0);
}
