#pragma once
// The ablation experiment: paired runs with and without the deliberate
// exploration phase, aggregated into deterministic reports.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pnav/config.hpp"
#include "pnav/passage_map.hpp"
#include "pnav/skeleton.hpp"
#include "pnav/worlds.hpp"

namespace pnav {

struct WorldTooClutteredError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    std::string world = "office-block";  // builtin name or file path
    std::uint64_t seed = 1;
    int num_tasks = 40;   // targets per run
    int reps = 5;         // repetitions per task list
    int task_lists = 5;
    double exploration_budget = 1200.0;
    int decision_cap = 750;
    int action_cap = 750;
    double d = 7.0;
    double veer_clearance = 0.15;
    bool ablate_only = false;  // run only the no-exploration system
    int jobs = 1;
    std::optional<Pose> start;  // defaults to the world's recommended start

    Config to_config() const;
};

/// Flat `key = value` text, '#' comments.
ExperimentConfig load_experiment_config(const std::string& text);

/// Uniform free-space samples with robot-radius clearance, fixed seed.
std::vector<Vec2> generate_targets(const World& world, int n, std::uint64_t seed,
                                   double clearance = 0.4);

/// Fraction of free 1m cells captured by the model: passage-labeled or
/// inside some region. Free means the cell center has robot clearance.
double coverage(const PassageGrid& grid, const Skeleton& skeleton, const World& world,
                double robot_radius = 0.4);

struct RunMetrics {
    std::string system;  // "explore" or "ablated"
    int task_list = 0;
    int rep = 0;
    int targets = 0;
    int reached = 0;
    double time_tasks = 0, time_total = 0;
    double dist_tasks = 0, dist_total = 0;
    double initial_coverage = 0, final_coverage = 0;
    double heuristic_fraction = 0;
    double plan_seconds_per_task = 0;  // wall clock; volatile, kept out of reports
    int skeleton_regions = 0, skeleton_edges = 0;
    bool failed = false;

    double success_rate() const {
        return targets == 0 ? 0.0 : static_cast<double>(reached) / targets;
    }
};

struct MetricsReport {
    std::string system;
    int runs = 0;
    int failed_runs = 0;
    double success_rate = 0;
    double travel_time_tasks = 0, travel_time_total = 0;
    double distance_tasks = 0, distance_total = 0;
    double initial_coverage = 0, final_coverage = 0;
    double heuristic_decision_fraction = 0;
    double mean_planning_time = 0;  // volatile, reported only in the timing sidecar
    double skeleton_regions = 0, skeleton_edges = 0;
};

struct ExperimentResult {
    std::vector<RunMetrics> runs;        // fixed order: system, list, rep
    std::vector<MetricsReport> reports;  // one per system
};

ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Deterministic per-run table plus summary block (no wall-clock values).
std::string report_text(const ExperimentResult& result);
/// Wall-clock planning times; varies between invocations by nature.
std::string timing_text(const ExperimentResult& result);

}  // namespace pnav
