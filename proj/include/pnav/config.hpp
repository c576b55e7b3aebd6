#pragma once
// Shared tuning knobs. Defaults model a 0.8m-wide differential-drive base
// with a 220-degree, 660-ray range finder capped at 25m.

#include <cstdint>
#include <vector>

namespace pnav {

struct SensorConfig {
    int ray_count = 660;
    double arc_deg = 220.0;
    double max_range = 25.0;
};

struct MotionConfig {
    double robot_radius = 0.4;
    std::vector<double> forward_moves{0.1, 0.2, 0.4, 0.8, 1.6, 3.2};   // meters
    std::vector<double> rotations{0.25, 0.5, 1.0, 1.57};               // radians, used as +/-
    double linear_speed = 1.0;   // m/s, simulated clock
    double angular_speed = 1.0;  // rad/s
};

struct PerceptionConfig {
    double front_half_angle_deg = 15.0;  // front sector: |bearing| <= this
    double side_min_deg = 45.0;          // lateral sectors: [45, 110] each side
    double side_max_deg = 110.0;
    double stretch_min_run_deg = 4.0;      // minimum angular extent of a stretch run
    double stretch_length_cone_deg = 2.5;  // half-angle of the central cone length is read from
    std::uint64_t kmeans_seed = 17;
    int kmeans_max_iters = 100;
};

struct ExplorationConfig {
    double d = 7.0;                   // minimum stretch length
    double veer_clearance = 0.15;     // body clearance that triggers a veer
    int decision_cap = 750;           // per candidate
    double time_budget = 1200.0;      // simulated seconds
    int orientation_window = 40;
    double hard_turn_deg = 45.0;
    double end_distance = 0.5;
    double front_blocked_clearance = 0.1;
    double widen_factor = 1.5;
    int stuck_limit = 5;              // consecutive zero-progress forward moves
};

struct ModelConfig {
    double grid_cell = 1.0;           // passage grid resolution
    double adjacency_range = 2.0;     // lateral labeling reach
    double obstructed_range = 4.0;
    double region_radius_cap = 2.0;
    double region_radius_min = 0.2;
    double region_gap = 0.01;
    double visibility_tol = 0.3;
    int region_view_cap = 4;          // recorded views kept per region
};

struct ControllerConfig {
    int action_cap = 750;             // per target
    double success_radius = 0.5;
    double waypoint_visit_radius = 0.5;
    double waypoint_skip_range = 3.0; // occluded waypoints skipped if a later one is this close
    double align_tol_deg = 10.0;
    double min_plan_advance = 0.1;
    double dead_end_front = 2.0;      // front_max below this smells like a dead end
    double exit_dead_end_penalty = 4.0;
    double oscillation_penalty = 0.5;
    double greedy_lookahead = 0.8;    // nominal step used to score rotations
};

struct Config {
    SensorConfig sensor;
    MotionConfig motion;
    PerceptionConfig perception;
    ExplorationConfig exploration;
    ModelConfig model;
    ControllerConfig controller;
};

}  // namespace pnav
