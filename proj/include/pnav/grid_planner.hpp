#pragma once
// Reference planner: A* over a fine occupancy grid. Benchmark baseline
// for the skeleton planner, not part of the navigation loop.

#include <optional>

#include "pnav/world.hpp"

namespace pnav {

struct GridPlanResult {
    double length = 0.0;        // meters
    double plan_seconds = 0.0;  // wall clock
    bool reachable = false;
};

/// 8-connected A* on a clearance-inflated occupancy grid (cells blocked
/// when their center is within robot_radius of a wall).
GridPlanResult grid_reference_plan(const World& world, const Vec2& start, const Vec2& goal,
                                   double cell = 0.25, double robot_radius = 0.4);

/// Free-cell count of the same discretization (for size comparisons).
int grid_free_cell_count(const World& world, double cell = 0.25, double robot_radius = 0.4);

}  // namespace pnav
