#pragma once
// Reactive plan execution: two plan rules plus advisor voting for the
// legs the plan cannot cover.

#include <functional>
#include <iosfwd>
#include <optional>

#include "pnav/config.hpp"
#include "pnav/planner.hpp"
#include "pnav/skeleton.hpp"
#include "pnav/world.hpp"

namespace pnav {

enum class DecisionSource { PlanRule, Heuristic };

struct DecisionContext {
    const World* world = nullptr;
    const Config* cfg = nullptr;
    Pose pose;
    const View* view = nullptr;
    Plan* plan = nullptr;  // may be null (no plan at all)
    Vec2 target;
    std::optional<Action> prev_action;
    int actions_used = 0;
};

/// Advance waypoint statuses and pick the next goal waypoint: the first
/// pending one with line of sight. Occluded pending waypoints ahead of a
/// visible one within skip range are marked Skipped.
std::optional<Vec2> active_waypoint(DecisionContext& ctx);

/// True when a sensor-arc ray toward the point reaches at least its distance.
bool point_visible(const World& world, const Pose& pose, const Vec2& p,
                   const SensorConfig& sensor);

/// Weighted advisor vote over the action set. Never returns an action that
/// would truncate; if everything is vetoed, escapes with the smallest
/// rotation. `extra_veto` exists for tests and defaults to nothing.
Action heuristic_vote(const DecisionContext& ctx, const Vec2& goal,
                      const std::function<bool(const Action&)>& extra_veto = {});

std::pair<Action, DecisionSource> decide(DecisionContext& ctx);

struct TaskResult {
    bool reached = false;
    int actions = 0;
    double sim_time = 0.0;   // seconds at configured speeds
    double distance = 0.0;   // meters traveled
    int plan_rule_decisions = 0;
    int heuristic_decisions = 0;
    int plans_made = 0;
    double plan_seconds = 0.0;  // wall clock spent planning
    Pose final_pose;

    double heuristic_fraction() const {
        const int n = plan_rule_decisions + heuristic_decisions;
        return n == 0 ? 0.0 : static_cast<double>(heuristic_decisions) / n;
    }
};

/// Drive from start toward the target: plan in the skeleton, keep learning
/// from every decision, and stop on success or at the action cap.
TaskResult run_task(const World& world, const Pose& start, const Vec2& target,
                    Skeleton& skeleton, const Config& cfg, std::ostream* trace = nullptr);

}  // namespace pnav
