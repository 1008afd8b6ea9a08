#pragma once
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "linkspace/linkage.hpp"

namespace linkspace {

struct PLPath {
    std::vector<Placement> waypoints;
};

double path_length(const PLPath& path);

PLPath reversed(const PLPath& path);

// Samples each hop at samples_per_hop evenly spaced points including both ends.
bool is_valid_path(const Linkage& l, const PLPath& path, int samples_per_hop = 64,
                   bool allow_immersed_endpoint = false, double tol = kDefaultTol);

struct PlannerOptions {
    int samples_per_hop = 64;
    double tol = kDefaultTol;
    double goal_bias = 0.2;
};

struct PathMetricResult {
    double lower_bound = 0.0;  // min(Euclidean distance, 1)
    double upper_bound = 1.0;  // min(best valid path length, 1)
    bool capped = true;        // no valid path shorter than 1 was found
    bool straight = false;     // the straight segment was valid
    std::optional<PLPath> best_path;
    long expansions = 0;
};

PathMetricResult path_metric(const Linkage& l, const Placement& from, const Placement& to, long budget,
                             std::uint64_t seed, const PlannerOptions& opt = {});

double path_metric_upper_bound(const Linkage& l, const Placement& from, const Placement& to, long budget,
                               std::uint64_t seed, const PlannerOptions& opt = {});

struct VirtualConfiguration {
    Placement limit;
    std::set<LabelVector> labels;
    std::optional<PLPath> witness;

    // Value per pair shared by every member label vector, 0 where they disagree.
    LabelVector completed_labels() const;
};

// The last waypoint is the singular target; every earlier sample must be an
// embedding of the underlying type and the target an immersed configuration.
VirtualConfiguration virtual_config_from_path(const Linkage& l, const PLPath& path, int tail_samples = 8,
                                              int samples_per_hop = 64, double tol = kDefaultTol);

bool labels_identified(const Linkage& l, const VirtualConfiguration& v1, const VirtualConfiguration& v2,
                       double tol = kDefaultTol);

} // namespace linkspace
