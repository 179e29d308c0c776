#ifndef UAVPLAN_IO_HPP
#define UAVPLAN_IO_HPP

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "uavplan/core.hpp"
#include "uavplan/planners.hpp"

namespace uavplan {

class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr int kInstanceFormatVersion = 1;
inline constexpr int kScheduleFormatVersion = 1;

namespace detail {

inline const nlohmann::json& require_field(const nlohmann::json& j,
                                           const char* field,
                                           const char* context) {
    auto it = j.find(field);
    if (it == j.end())
        throw ParseError(std::string(context) + ": missing field \"" + field + "\"");
    return *it;
}

}  // namespace detail

inline std::string save_instance(const ProblemInstance& inst) {
    nlohmann::json j;
    j["format_version"] = kInstanceFormatVersion;
    j["depot"] = {{"x", inst.depot.x}, {"y", inst.depot.y}};
    j["largest_coordinate"] = inst.largest_coordinate;
    j["loiter_fuel"] = inst.loiter_fuel;
    j["require_depot_return"] = inst.require_depot_return;
    j["targets"] = nlohmann::json::array();
    for (const auto& t : inst.targets)
        j["targets"].push_back({{"id", t.id},
                                {"x", t.position.x},
                                {"y", t.position.y},
                                {"window", {t.window.start, t.window.end}},
                                {"demand", t.demand}});
    j["uavs"] = nlohmann::json::array();
    for (const auto& u : inst.uavs)
        j["uavs"].push_back({{"id", u.id}, {"fuel_capacity", u.fuel_capacity}});
    return j.dump(2) + "\n";
}

inline ProblemInstance load_instance(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("instance: ") + e.what());
    }
    using detail::require_field;
    int version = require_field(j, "format_version", "instance").get<int>();
    if (version != kInstanceFormatVersion)
        throw ParseError("instance: unsupported format_version " +
                         std::to_string(version));

    ProblemInstance inst;
    const auto& depot = require_field(j, "depot", "instance");
    inst.depot = {require_field(depot, "x", "depot").get<int>(),
                  require_field(depot, "y", "depot").get<int>()};
    inst.largest_coordinate =
        require_field(j, "largest_coordinate", "instance").get<int>();
    inst.loiter_fuel = require_field(j, "loiter_fuel", "instance").get<double>();
    inst.require_depot_return =
        require_field(j, "require_depot_return", "instance").get<bool>();

    for (const auto& tj : require_field(j, "targets", "instance")) {
        Target t;
        t.id = require_field(tj, "id", "target").get<int>();
        t.position = {require_field(tj, "x", "target").get<int>(),
                      require_field(tj, "y", "target").get<int>()};
        const auto& w = require_field(tj, "window", "target");
        if (!w.is_array() || w.size() != 2)
            throw ParseError("target " + std::to_string(t.id) +
                             ": window must be [start, end]");
        t.window = {w[0].get<long long>(), w[1].get<long long>()};
        if (t.window.end <= t.window.start)
            throw ParseError("target " + std::to_string(t.id) +
                             ": window end must be greater than start");
        t.demand = require_field(tj, "demand", "target").get<int>();
        if (t.demand < 1)
            throw ParseError("target " + std::to_string(t.id) +
                             ": demand must be >= 1");
        if (!inst.in_bounds(t.position))
            throw ParseError("target " + std::to_string(t.id) +
                             ": position is outside the grid");
        inst.targets.push_back(t);
    }
    for (const auto& uj : require_field(j, "uavs", "instance")) {
        Uav u;
        u.id = require_field(uj, "id", "uav").get<int>();
        u.fuel_capacity = require_field(uj, "fuel_capacity", "uav").get<double>();
        if (u.fuel_capacity < 0)
            throw ParseError("uav " + std::to_string(u.id) +
                             ": fuel_capacity must be >= 0");
        inst.uavs.push_back(u);
    }
    if (inst.targets.empty()) throw ParseError("instance: targets must be nonempty");
    if (inst.uavs.empty()) throw ParseError("instance: uavs must be nonempty");
    if (!inst.in_bounds(inst.depot))
        throw ParseError("instance: depot is outside the grid");
    return inst;
}

inline std::string save_schedule(const Schedule& s, Algorithm algorithm) {
    nlohmann::json j;
    j["format_version"] = kScheduleFormatVersion;
    j["algorithm"] = to_string(algorithm);
    j["total_fuel"] = s.total_fuel;
    j["complete"] = s.complete;
    j["unmet"] = nlohmann::json::array();
    for (const auto& [tid, miss] : s.unmet) j["unmet"].push_back({tid, miss});
    j["assignments"] = nlohmann::json::array();
    for (const auto& a : s.assignments)
        j["assignments"].push_back(
            {{"uav_id", a.uav_id},
             {"target_id", a.target_id},
             {"depart", a.depart_time},
             {"arrive", a.arrive_time},
             {"window", {a.service_window.start, a.service_window.end}},
             {"travel_fuel", a.travel_fuel},
             {"loiter_fuel", a.loiter_fuel}});
    j["return_legs"] = nlohmann::json::array();
    for (const auto& [uav, fuel] : s.return_fuel)
        j["return_legs"].push_back({{"uav_id", uav}, {"fuel", fuel}});
    return j.dump(2) + "\n";
}

inline Schedule load_schedule(const std::string& text, Algorithm* algorithm = nullptr) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("schedule: ") + e.what());
    }
    using detail::require_field;
    int version = require_field(j, "format_version", "schedule").get<int>();
    if (version != kScheduleFormatVersion)
        throw ParseError("schedule: unsupported format_version " +
                         std::to_string(version));
    if (algorithm) {
        std::string tag = require_field(j, "algorithm", "schedule").get<std::string>();
        for (Algorithm a : {Algorithm::SVA, Algorithm::GA, Algorithm::HGA,
                            Algorithm::IH, Algorithm::BFA})
            if (tag == to_string(a)) *algorithm = a;
    }

    Schedule s;
    s.total_fuel = require_field(j, "total_fuel", "schedule").get<double>();
    s.complete = require_field(j, "complete", "schedule").get<bool>();
    for (const auto& uj : require_field(j, "unmet", "schedule"))
        s.unmet.emplace_back(uj[0].get<int>(), uj[1].get<int>());
    for (const auto& aj : require_field(j, "assignments", "schedule")) {
        Assignment a;
        a.uav_id = require_field(aj, "uav_id", "assignment").get<int>();
        a.target_id = require_field(aj, "target_id", "assignment").get<int>();
        a.depart_time = require_field(aj, "depart", "assignment").get<long long>();
        a.arrive_time = require_field(aj, "arrive", "assignment").get<long long>();
        const auto& w = require_field(aj, "window", "assignment");
        a.service_window = {w[0].get<long long>(), w[1].get<long long>()};
        a.travel_fuel = require_field(aj, "travel_fuel", "assignment").get<double>();
        a.loiter_fuel = require_field(aj, "loiter_fuel", "assignment").get<double>();
        s.assignments.push_back(a);
    }
    for (const auto& rj : require_field(j, "return_legs", "schedule"))
        s.return_fuel[require_field(rj, "uav_id", "return leg").get<int>()] =
            require_field(rj, "fuel", "return leg").get<double>();
    return s;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

}  // namespace uavplan

#endif  // UAVPLAN_IO_HPP
