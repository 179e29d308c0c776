// Command-line front end: generate instances, run planners, validate
// schedules, materialize the handcrafted suite, and run the experiment matrix.
//
// Exit codes: 0 success, 1 infeasible/validation failure, 2 usage error,
// 3 resource-cap error.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "uavplan/bench.hpp"
#include "uavplan/core.hpp"
#include "uavplan/instance_gen.hpp"
#include "uavplan/io.hpp"
#include "uavplan/planners.hpp"

namespace {

struct RatioRange {
    double low = 0.0, high = 1.0;
};

RatioRange parse_ratio(const std::string& s) {
    auto sep = s.find(':');
    if (sep == std::string::npos)
        throw CLI::ValidationError("--ratio", "expected LO:HI, e.g. 0.7:1.0");
    return {std::stod(s.substr(0, sep)), std::stod(s.substr(sep + 1))};
}

int run(int argc, char** argv) {
    CLI::App app{"UAV area-coverage VRPTW planner and benchmark"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "generate a random instance");
    uavplan::GeneratorParams params;
    std::string ratio_str = "0.0:1.0";
    std::uint64_t seed = 0;
    std::string out_path;
    gen->add_option("--targets", params.n_targets, "number of targets")->required();
    gen->add_option("--uavs", params.n_uavs, "number of UAVs")->required();
    gen->add_option("--width", params.window_width, "time window width")->required();
    gen->add_option("--ratio", ratio_str, "intersection ratio range LO:HI")->required();
    gen->add_option("--coord", params.largest_coordinate, "largest coordinate")
        ->required();
    gen->add_option("--demand", params.demand_per_target, "demand per target")
        ->required();
    gen->add_option("--seed", seed, "generator seed");
    gen->add_option("--out", out_path, "output instance file")->required();

    // solve
    auto* solve = app.add_subcommand("solve", "run a planner on an instance");
    std::string algo_str, instance_path, schedule_out;
    double threshold = 0.7;
    bool no_return = false;
    solve->add_option("--algorithm", algo_str, "sva|ga|hga|ih|bfa")->required();
    solve->add_option("--instance", instance_path, "instance file")->required();
    solve->add_option("--out", schedule_out, "output schedule file")->required();
    solve->add_option("--threshold", threshold, "cluster overlap threshold");
    solve->add_flag("--no-depot-return", no_return,
                    "do not require or charge the final depot leg");

    // validate
    auto* validate = app.add_subcommand("validate", "check a schedule file");
    std::string v_instance, v_schedule;
    validate->add_option("--instance", v_instance, "instance file")->required();
    validate->add_option("--schedule", v_schedule, "schedule file")->required();

    // bench
    auto* bench = app.add_subcommand("bench", "run the experiment matrix");
    std::string bench_config, bench_out;
    bench->add_option("--config", bench_config, "experiment config file")->required();
    bench->add_option("--out", bench_out, "output directory")->required();

    // suite
    auto* suite = app.add_subcommand("suite", "write the handcrafted suite");
    std::string suite_out;
    suite->add_option("--out", suite_out, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (gen->parsed()) {
        auto r = parse_ratio(ratio_str);
        params.ratio_low = r.low;
        params.ratio_high = r.high;
        auto inst = uavplan::generate_random(params, {seed});
        uavplan::write_file(out_path, uavplan::save_instance(inst));
        std::cout << "wrote " << out_path << " (" << inst.targets.size()
                  << " targets, " << inst.uavs.size() << " uavs)\n";
        return 0;
    }

    if (solve->parsed()) {
        auto inst = uavplan::load_instance(uavplan::read_file(instance_path));
        if (no_return) inst.require_depot_return = false;
        uavplan::PlannerConfig config;
        config.cluster_threshold = threshold;
        auto algo = uavplan::algorithm_from_string(algo_str);
        auto result = uavplan::plan(algo, inst, config);
        uavplan::write_file(schedule_out,
                            uavplan::save_schedule(result.schedule, algo));
        std::printf("%s: fuel=%.2f complete=%s elapsed=%.3fms\n",
                    uavplan::to_string(algo), result.schedule.total_fuel,
                    result.schedule.complete ? "yes" : "no",
                    std::chrono::duration<double, std::milli>(result.elapsed).count());
        return 0;
    }

    if (validate->parsed()) {
        auto inst = uavplan::load_instance(uavplan::read_file(v_instance));
        auto sched = uavplan::load_schedule(uavplan::read_file(v_schedule));
        auto report = uavplan::validate_schedule(inst, sched);
        for (const auto& [code, msg] : report.violations)
            std::cerr << uavplan::to_string(code) << ": " << msg << '\n';
        return report.ok ? 0 : 1;
    }

    if (bench->parsed()) {
        auto cfg = uavplan::load_experiment_config(uavplan::read_file(bench_config));
        std::filesystem::create_directories(bench_out);
        auto report = uavplan::run_experiment(cfg);
        uavplan::write_experiment_csvs(report, bench_out);
        std::cout << "wrote " << bench_out << "/results.csv (" << report.runs.size()
                  << " runs)\n";
        return 0;
    }

    if (suite->parsed()) {
        std::filesystem::create_directories(suite_out);
        for (const auto& entry : uavplan::handcrafted_suite()) {
            std::string path = suite_out + "/" + entry.name + ".json";
            uavplan::write_file(path, uavplan::save_instance(entry.instance));
        }
        std::cout << "wrote handcrafted suite to " << suite_out << '\n';
        return 0;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const uavplan::ResourceLimitError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const uavplan::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
