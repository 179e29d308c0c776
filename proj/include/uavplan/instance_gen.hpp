#ifndef UAVPLAN_INSTANCE_GEN_HPP
#define UAVPLAN_INSTANCE_GEN_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "uavplan/core.hpp"
#include "uavplan/transport.hpp"  // detail::splitmix64

namespace uavplan {

// The six generator knobs: targets, UAVs, window width, intersection-ratio
// range, grid size, per-target demand.
struct GeneratorParams {
    int n_targets = 1;
    int n_uavs = 1;
    long long window_width = 20;
    double ratio_low = 0.0;
    double ratio_high = 1.0;
    int largest_coordinate = 20;
    int demand_per_target = 1;

    void validate() const {
        if (n_targets < 1 || n_uavs < 1 || demand_per_target < 1 ||
            largest_coordinate < 1)
            throw std::invalid_argument("generator: all counts must be >= 1");
        if (window_width < 1)
            throw std::invalid_argument("generator: window width must be >= 1");
        if (ratio_low < 0.0 || ratio_high > 1.0 || ratio_low > ratio_high)
            throw std::invalid_argument(
                "generator: intersection ratio range must satisfy 0 <= low <= high <= 1");
    }
};

struct Seed {
    std::uint64_t value = 0;
};

namespace detail {

// Tiny deterministic generator so instances are reproducible bit-for-bit
// across standard libraries (std distributions are implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next() { return splitmix64(state_++); }
    // inclusive bounds
    long long uniform_int(long long lo, long long hi) {
        return lo + static_cast<long long>(next() %
                                           static_cast<std::uint64_t>(hi - lo + 1));
    }
    double uniform_real(double lo, double hi) {
        double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
        return lo + u * (hi - lo);
    }

private:
    std::uint64_t state_;
};

}  // namespace detail

// Random instance per the six-parameter scheme: uniform target coordinates
// (shared locations allowed), identical UAVs at a central depot, constant
// demand, fixed-width windows chained left to right so each consecutive pair
// overlaps by a fraction drawn from the ratio range. The first window starts
// at largest_coordinate, the worst-case travel time from the central depot.
inline ProblemInstance generate_random(const GeneratorParams& params, Seed seed) {
    params.validate();
    detail::Rng rng(seed.value);

    ProblemInstance inst;
    inst.largest_coordinate = params.largest_coordinate;
    inst.depot = {params.largest_coordinate / 2, params.largest_coordinate / 2};
    inst.loiter_fuel = 1.0;
    inst.require_depot_return = true;

    long long start = params.largest_coordinate;
    if (start < 0)
        throw std::invalid_argument("generator: windows cannot fit nonnegative starts");
    for (int i = 0; i < params.n_targets; ++i) {
        Target t;
        t.id = i + 1;
        t.position.x = static_cast<int>(rng.uniform_int(0, params.largest_coordinate));
        t.position.y = static_cast<int>(rng.uniform_int(0, params.largest_coordinate));
        if (i > 0) {
            double r = rng.uniform_real(params.ratio_low, params.ratio_high);
            start += std::llround((1.0 - r) * static_cast<double>(params.window_width));
        }
        t.window = {start, start + params.window_width};
        t.demand = params.demand_per_target;
        inst.targets.push_back(t);
    }
    for (int i = 0; i < params.n_uavs; ++i)
        inst.uavs.push_back({i + 1, default_fuel_capacity(params.largest_coordinate)});
    return inst;
}

struct SuiteEntry {
    std::string name;
    ProblemInstance instance;
};

// Fixed extreme-case suite: for each size (3 and 5 targets with 3 UAVs; 7, 10
// and 25 targets with 5 UAVs) three window variants over the same target
// coordinates: all windows identical, all disjoint, and mixed overlap.
inline std::vector<SuiteEntry> handcrafted_suite() {
    const int kCoord = 20;
    const long long kWidth = 20;
    struct Size {
        int targets, uavs;
    };
    const Size sizes[] = {{3, 3}, {5, 3}, {7, 5}, {10, 5}, {25, 5}};

    std::vector<SuiteEntry> suite;
    for (const auto& size : sizes) {
        // Coordinates fixed per size, shared by all three variants.
        detail::Rng rng(0xC0FFEEULL + static_cast<std::uint64_t>(size.targets));
        std::vector<Position> coords;
        for (int i = 0; i < size.targets; ++i)
            coords.push_back({static_cast<int>(rng.uniform_int(0, kCoord)),
                              static_cast<int>(rng.uniform_int(0, kCoord))});

        auto base = [&]() {
            ProblemInstance inst;
            inst.largest_coordinate = kCoord;
            inst.depot = {kCoord / 2, kCoord / 2};
            for (int i = 0; i < size.targets; ++i)
                inst.targets.push_back({i + 1, coords[i], {0, kWidth}, 1});
            for (int i = 0; i < size.uavs; ++i)
                inst.uavs.push_back({i + 1, default_fuel_capacity(kCoord)});
            return inst;
        };
        auto name = [&](const char* variant) {
            return std::to_string(size.targets) + "_" + std::to_string(size.uavs) +
                   "_" + variant;
        };

        ProblemInstance identical = base();
        for (auto& t : identical.targets) t.window = {kCoord, kCoord + kWidth};
        suite.push_back({name("identical"), std::move(identical)});

        ProblemInstance disjoint = base();
        for (int i = 0; i < size.targets; ++i) {
            long long s = kCoord + static_cast<long long>(i) * (kWidth + 2);
            disjoint.targets[i].window = {s, s + kWidth};
        }
        suite.push_back({name("disjoint"), std::move(disjoint)});

        // Mixed: cycle through identical, half-overlap and disjoint offsets.
        ProblemInstance mixed = base();
        long long s = kCoord;
        for (int i = 0; i < size.targets; ++i) {
            if (i > 0) {
                const long long offsets[] = {0, kWidth / 2, kWidth + 3};
                s += offsets[i % 3];
            }
            mixed.targets[i].window = {s, s + kWidth};
        }
        suite.push_back({name("mixed"), std::move(mixed)});
    }
    return suite;
}

}  // namespace uavplan

#endif  // UAVPLAN_INSTANCE_GEN_HPP
