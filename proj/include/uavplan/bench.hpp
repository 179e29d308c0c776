#ifndef UAVPLAN_BENCH_HPP
#define UAVPLAN_BENCH_HPP

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "uavplan/core.hpp"
#include "uavplan/instance_gen.hpp"
#include "uavplan/io.hpp"
#include "uavplan/planners.hpp"

namespace uavplan {

struct ExperimentConfig {
    std::vector<std::pair<int, int>> sizes;  // (n_targets, n_uavs)
    std::vector<std::pair<double, double>> regimes;
    int seeds_per_cell = 100;
    std::vector<Algorithm> algorithms;
    PlannerConfig planner;
    std::uint64_t master_seed = 1;
    long long window_width = 20;
    int largest_coordinate = 20;
    int demand_per_target = 1;
    double handcrafted_fraction = 0.0;

    void validate() const {
        if (sizes.empty()) throw std::invalid_argument("bench: sizes must be nonempty");
        if (regimes.empty())
            throw std::invalid_argument("bench: regimes must be nonempty");
        if (algorithms.empty())
            throw std::invalid_argument("bench: algorithms must be nonempty");
        if (seeds_per_cell < 1)
            throw std::invalid_argument("bench: seeds_per_cell must be >= 1");
        if (handcrafted_fraction < 0.0 || handcrafted_fraction > 1.0)
            throw std::invalid_argument("bench: handcrafted_fraction must be in [0,1]");
    }
};

// One planner invocation on one generated instance.
struct RunRecord {
    int n_targets = 0;
    int n_uavs = 0;
    double regime_low = 0.0, regime_high = 0.0;
    int seed_index = 0;
    Algorithm algorithm = Algorithm::SVA;
    bool ran = false;  // false when the planner hit a resource cap
    std::string failure;
    bool complete = false;
    double fuel = 0.0;
    int unmet_demand = 0;
    double elapsed_ms = 0.0;  // wall clock; excluded from results.csv
};

struct ExperimentRow {
    int n_targets = 0, n_uavs = 0;
    double regime_low = 0.0, regime_high = 0.0;
    Algorithm algorithm = Algorithm::SVA;
    int runs = 0;
    int complete_runs = 0;
    double mean_elapsed_ms = 0.0;
    double mean_fuel_complete = 0.0;  // mean over complete runs only
    double completion_ratio = 0.0;
    std::map<std::string, int> failures;
};

struct ExperimentReport {
    std::vector<RunRecord> runs;
    std::vector<ExperimentRow> rows;
};

namespace detail {

inline std::uint64_t cell_seed(std::uint64_t master, std::size_t size_idx,
                               std::size_t regime_idx, int seed_idx) {
    std::uint64_t h = master;
    h = splitmix64(h ^ (0xA001ULL + size_idx));
    h = splitmix64(h ^ (0xB002ULL + regime_idx));
    h = splitmix64(h ^ (0xC003ULL + static_cast<std::uint64_t>(seed_idx)));
    return h;
}

inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

}  // namespace detail

inline ExperimentReport run_experiment(const ExperimentConfig& config) {
    config.validate();
    ExperimentReport report;
    auto suite = config.handcrafted_fraction > 0.0
                     ? handcrafted_suite()
                     : std::vector<SuiteEntry>{};

    for (std::size_t si = 0; si < config.sizes.size(); ++si) {
        const auto [n_targets, n_uavs] = config.sizes[si];
        for (std::size_t ri = 0; ri < config.regimes.size(); ++ri) {
            const auto [lo, hi] = config.regimes[ri];
            int handcrafted =
                static_cast<int>(config.handcrafted_fraction * config.seeds_per_cell);
            for (int seed_idx = 0; seed_idx < config.seeds_per_cell; ++seed_idx) {
                ProblemInstance inst;
                if (seed_idx < handcrafted && !suite.empty()) {
                    // Cycle through suite entries matching this target count.
                    std::vector<const SuiteEntry*> matching;
                    for (const auto& e : suite)
                        if (static_cast<int>(e.instance.targets.size()) == n_targets)
                            matching.push_back(&e);
                    if (!matching.empty()) {
                        inst = matching[seed_idx % matching.size()]->instance;
                    }
                }
                if (inst.targets.empty()) {
                    GeneratorParams params;
                    params.n_targets = n_targets;
                    params.n_uavs = n_uavs;
                    params.window_width = config.window_width;
                    params.ratio_low = lo;
                    params.ratio_high = hi;
                    params.largest_coordinate = config.largest_coordinate;
                    params.demand_per_target = config.demand_per_target;
                    inst = generate_random(
                        params,
                        {detail::cell_seed(config.master_seed, si, ri, seed_idx)});
                }

                for (Algorithm algo : config.algorithms) {
                    RunRecord rec;
                    rec.n_targets = n_targets;
                    rec.n_uavs = n_uavs;
                    rec.regime_low = lo;
                    rec.regime_high = hi;
                    rec.seed_index = seed_idx;
                    rec.algorithm = algo;
                    try {
                        PlannerResult pr = plan(algo, inst, config.planner);
                        rec.ran = true;
                        rec.complete = pr.schedule.complete;
                        rec.fuel = pr.schedule.total_fuel;
                        for (const auto& [tid, miss] : pr.schedule.unmet)
                            rec.unmet_demand += miss;
                        rec.elapsed_ms =
                            std::chrono::duration<double, std::milli>(pr.elapsed)
                                .count();
                        auto check = validate_schedule(inst, pr.schedule);
                        for (const auto& [code, msg] : check.violations)
                            if (code != Violation::DEMAND_UNMET || pr.schedule.complete)
                                rec.failure = "validation:" + std::string(to_string(code));
                    } catch (const ResourceLimitError&) {
                        rec.failure = "resource_cap";
                    }
                    report.runs.push_back(std::move(rec));
                }
            }
        }
    }

    // Aggregate one row per (size, regime, algorithm), in run order.
    std::map<std::tuple<int, int, double, double, int>, ExperimentRow> rows;
    for (const auto& rec : report.runs) {
        auto key = std::make_tuple(rec.n_targets, rec.n_uavs, rec.regime_low,
                                   rec.regime_high, static_cast<int>(rec.algorithm));
        ExperimentRow& row = rows[key];
        row.n_targets = rec.n_targets;
        row.n_uavs = rec.n_uavs;
        row.regime_low = rec.regime_low;
        row.regime_high = rec.regime_high;
        row.algorithm = rec.algorithm;
        row.runs++;
        if (!rec.failure.empty()) row.failures[rec.failure]++;
        if (rec.ran) {
            row.mean_elapsed_ms += rec.elapsed_ms;
            if (rec.complete) {
                row.complete_runs++;
                row.mean_fuel_complete += rec.fuel;
            }
        }
    }
    for (auto& [key, row] : rows) {
        int ran = row.runs - (row.failures.count("resource_cap")
                                  ? row.failures.at("resource_cap")
                                  : 0);
        if (ran > 0) row.mean_elapsed_ms /= ran;
        if (row.complete_runs > 0) row.mean_fuel_complete /= row.complete_runs;
        row.completion_ratio =
            static_cast<double>(row.complete_runs) / static_cast<double>(row.runs);
        report.rows.push_back(row);
    }
    return report;
}

// Deterministic per-run table. Timing is deliberately excluded so the file is
// byte-identical across reruns with the same master seed; fuel is blank for
// incomplete or failed runs.
inline std::string results_csv(const ExperimentReport& report) {
    std::ostringstream os;
    os << "targets,uavs,regime_low,regime_high,seed_index,algorithm,complete,"
          "fuel,unmet_demand,failure\n";
    for (const auto& r : report.runs) {
        os << r.n_targets << ',' << r.n_uavs << ','
           << detail::format_double(r.regime_low) << ','
           << detail::format_double(r.regime_high) << ',' << r.seed_index << ','
           << to_string(r.algorithm) << ',' << (r.ran && r.complete ? 1 : 0) << ','
           << (r.ran && r.complete ? detail::format_double(r.fuel) : "") << ','
           << (r.ran ? std::to_string(r.unmet_demand) : "") << ',' << r.failure
           << '\n';
    }
    return os.str();
}

namespace detail {

enum class Metric { runtime, fuel, completion };

inline std::string figure_csv(const ExperimentReport& report, Metric metric,
                              bool by_size) {
    std::ostringstream os;
    if (by_size)
        os << "targets,uavs,algorithm,";
    else
        os << "regime_low,regime_high,algorithm,";
    switch (metric) {
        case Metric::runtime: os << "mean_elapsed_ms\n"; break;
        case Metric::fuel: os << "mean_fuel_complete\n"; break;
        case Metric::completion: os << "completion_ratio\n"; break;
    }

    // Re-aggregate over the collapsed dimension directly from the run rows so
    // the figure files are pure recomputations of results.csv (plus timing).
    struct Acc {
        double sum = 0.0;
        int n = 0;
        int complete = 0;
        int total = 0;
    };
    std::map<std::tuple<int, int, double, double, int>, Acc> acc;
    for (const auto& r : report.runs) {
        auto key = by_size ? std::make_tuple(r.n_targets, r.n_uavs, 0.0, 0.0,
                                             static_cast<int>(r.algorithm))
                           : std::make_tuple(0, 0, r.regime_low, r.regime_high,
                                             static_cast<int>(r.algorithm));
        Acc& a = acc[key];
        a.total++;
        if (!r.ran) continue;
        switch (metric) {
            case Metric::runtime:
                a.sum += r.elapsed_ms;
                a.n++;
                break;
            case Metric::fuel:
                if (r.complete) {
                    a.sum += r.fuel;
                    a.n++;
                }
                break;
            case Metric::completion:
                if (r.complete) a.complete++;
                break;
        }
    }
    for (const auto& [key, a] : acc) {
        const auto& [t, u, lo, hi, algo] = key;
        if (by_size)
            os << t << ',' << u << ',';
        else
            os << format_double(lo) << ',' << format_double(hi) << ',';
        os << to_string(static_cast<Algorithm>(algo)) << ',';
        if (metric == Metric::completion)
            os << format_double(static_cast<double>(a.complete) / a.total);
        else
            os << (a.n > 0 ? format_double(a.sum / a.n) : "");
        os << '\n';
    }
    return os.str();
}

}  // namespace detail

// Writes results.csv plus the six per-figure aggregate files into dir.
inline void write_experiment_csvs(const ExperimentReport& report,
                                  const std::string& dir) {
    using detail::Metric;
    write_file(dir + "/results.csv", results_csv(report));
    write_file(dir + "/runtime_by_size.csv",
               detail::figure_csv(report, Metric::runtime, true));
    write_file(dir + "/fuel_by_size.csv",
               detail::figure_csv(report, Metric::fuel, true));
    write_file(dir + "/completion_by_size.csv",
               detail::figure_csv(report, Metric::completion, true));
    write_file(dir + "/runtime_by_regime.csv",
               detail::figure_csv(report, Metric::runtime, false));
    write_file(dir + "/fuel_by_regime.csv",
               detail::figure_csv(report, Metric::fuel, false));
    write_file(dir + "/completion_by_regime.csv",
               detail::figure_csv(report, Metric::completion, false));
}

inline Algorithm algorithm_from_string(const std::string& s) {
    for (Algorithm a : {Algorithm::SVA, Algorithm::GA, Algorithm::HGA,
                        Algorithm::IH, Algorithm::BFA})
        if (s == to_string(a)) return a;
    throw std::invalid_argument("unknown algorithm \"" + s + "\"");
}

inline ExperimentConfig load_experiment_config(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("bench config: ") + e.what());
    }
    using detail::require_field;
    ExperimentConfig cfg;
    for (const auto& s : require_field(j, "sizes", "bench config"))
        cfg.sizes.emplace_back(s[0].get<int>(), s[1].get<int>());
    for (const auto& r : require_field(j, "regimes", "bench config"))
        cfg.regimes.emplace_back(r[0].get<double>(), r[1].get<double>());
    for (const auto& a : require_field(j, "algorithms", "bench config"))
        cfg.algorithms.push_back(algorithm_from_string(a.get<std::string>()));
    cfg.seeds_per_cell = j.value("seeds_per_cell", 100);
    cfg.master_seed = j.value("master_seed", std::uint64_t{1});
    cfg.window_width = j.value("window_width", 20LL);
    cfg.largest_coordinate = j.value("largest_coordinate", 20);
    cfg.demand_per_target = j.value("demand_per_target", 1);
    cfg.handcrafted_fraction = j.value("handcrafted_fraction", 0.0);
    cfg.planner.cluster_threshold = j.value("threshold", 0.7);
    cfg.validate();
    return cfg;
}

}  // namespace uavplan

#endif  // UAVPLAN_BENCH_HPP
