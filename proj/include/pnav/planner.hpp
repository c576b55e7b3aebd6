#pragma once
// Skeleton-based planning: attach the robot and target to regions, A*
// over the region graph, then expand the region path into waypoints.

#include <optional>
#include <string>
#include <vector>

#include "pnav/skeleton.hpp"

namespace pnav {

enum class WaypointStatus { Pending, Visited, Skipped };

struct Plan {
    std::vector<Vec2> waypoints;
    std::vector<WaypointStatus> status;  // parallel to waypoints
    std::vector<int> region_path;
    Vec2 target;
    bool unreachable = false;   // attach or search failed; fall back to heuristics
    double plan_seconds = 0.0;  // wall-clock planning time, excluded from reports

    bool empty() const { return waypoints.empty(); }
    bool exhausted() const {
        for (const WaypointStatus s : status)
            if (s == WaypointStatus::Pending) return false;
        return true;
    }
};

/// Region hosting the point: containing region first, then the nearest
/// region that has seen the point, then the best score
/// (-5 * center distance + degree, ties to the lower id).
/// Throws UnknownRegionError-free; empty skeleton yields nullopt.
std::optional<int> attach_point(const Skeleton& skeleton, const Vec2& p);

/// Minimum-cost region path. Edge cost is the transition label plus both
/// radii, so the straight-line center heuristic stays admissible.
/// Empty when disconnected.
std::vector<int> plan_regions(const Skeleton& skeleton, int from, int to);

/// Interleave region centers with edge crossings and midpoints:
/// center, exit, midpoint, entry, center, ... The robot start and the
/// target are not waypoints.
Plan expand_waypoints(const Skeleton& skeleton, const std::vector<int>& region_path,
                      const Vec2& target);

Plan make_plan(const Skeleton& skeleton, const Vec2& robot, const Vec2& target);

std::string serialize_plan(const Plan& p);

}  // namespace pnav
