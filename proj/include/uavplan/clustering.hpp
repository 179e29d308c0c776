#ifndef UAVPLAN_CLUSTERING_HPP
#define UAVPLAN_CLUSTERING_HPP

#include <algorithm>
#include <vector>

#include "uavplan/core.hpp"

namespace uavplan {

// A group of targets whose time windows chain together: each member overlapped
// the previously added member by at least the threshold when it was inserted.
struct Cluster {
    std::vector<int> target_ids;  // ordered by window start
    TimeWindow anchor_window;     // window of the last-added member
    long long service_start = 0;  // max window.start over members
    int cluster_index = 0;
    friend bool operator==(const Cluster&, const Cluster&) = default;
};

// |intersection| / min(|a|, |b|). 0 when disjoint, 1 when one window contains
// the other. The shorter window is the denominator so the ratio is symmetric
// and well defined for unequal widths.
inline double overlap_ratio(TimeWindow a, TimeWindow b) {
    long long shorter = std::min(a.length(), b.length());
    if (shorter <= 0) return 0.0;
    return static_cast<double>(window_intersection(a, b)) /
           static_cast<double>(shorter);
}

// Sorts targets by window start (ties: end, then id) and sweeps left to right.
// A target joins the current cluster iff its overlap with the cluster's
// last-added member meets the threshold; otherwise it seeds a new cluster.
// Every target ends up in exactly one cluster.
inline std::vector<Cluster> cluster_targets(const std::vector<Target>& targets,
                                            double threshold = 0.7) {
    std::vector<const Target*> order;
    order.reserve(targets.size());
    for (const auto& t : targets) order.push_back(&t);
    std::sort(order.begin(), order.end(), [](const Target* a, const Target* b) {
        if (a->window.start != b->window.start) return a->window.start < b->window.start;
        if (a->window.end != b->window.end) return a->window.end < b->window.end;
        return a->id < b->id;
    });

    std::vector<Cluster> clusters;
    for (const Target* t : order) {
        if (!clusters.empty() &&
            overlap_ratio(t->window, clusters.back().anchor_window) >= threshold) {
            Cluster& c = clusters.back();
            c.target_ids.push_back(t->id);
            c.anchor_window = t->window;  // the new member becomes the anchor
            c.service_start = std::max(c.service_start, t->window.start);
        } else {
            Cluster c;
            c.target_ids.push_back(t->id);
            c.anchor_window = t->window;
            c.service_start = t->window.start;
            c.cluster_index = static_cast<int>(clusters.size());
            clusters.push_back(std::move(c));
        }
    }
    return clusters;
}

}  // namespace uavplan

#endif  // UAVPLAN_CLUSTERING_HPP
