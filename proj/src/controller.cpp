#include "pnav/controller.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "pnav/perception.hpp"

namespace pnav {

bool point_visible(const World& world, const Pose& pose, const Vec2& p,
                   const SensorConfig& sensor) {
    const double d = distance(pose.pos, p);
    if (d <= 1e-9) return true;
    const double rel = angle_diff(bearing(pose.pos, p), pose.theta);
    if (std::abs(rel) > deg_to_rad(sensor.arc_deg / 2.0)) return false;
    return world.cast_ray(pose.pos, bearing(pose.pos, p), sensor.max_range) >= d - 1e-6;
}

std::optional<Vec2> active_waypoint(DecisionContext& ctx) {
    if (!ctx.plan || ctx.plan->empty()) return std::nullopt;
    Plan& plan = *ctx.plan;
    const double visit = ctx.cfg->controller.waypoint_visit_radius;

    for (size_t i = 0; i < plan.waypoints.size(); ++i) {
        if (plan.status[i] == WaypointStatus::Pending &&
            distance(ctx.pose.pos, plan.waypoints[i]) <= visit)
            plan.status[i] = WaypointStatus::Visited;
    }

    std::vector<size_t> occluded;
    for (size_t i = 0; i < plan.waypoints.size(); ++i) {
        if (plan.status[i] != WaypointStatus::Pending) continue;
        if (point_visible(*ctx.world, ctx.pose, plan.waypoints[i], ctx.cfg->sensor)) {
            if (distance(ctx.pose.pos, plan.waypoints[i]) <= ctx.cfg->controller.waypoint_skip_range) {
                for (size_t k : occluded) plan.status[k] = WaypointStatus::Skipped;
            }
            return plan.waypoints[i];
        }
        occluded.push_back(i);
    }
    return std::nullopt;
}

namespace {

std::vector<Action> action_set(const MotionConfig& motion) {
    std::vector<Action> out;
    for (double m : motion.forward_moves) out.push_back({ActionKind::Forward, m});
    for (double r : motion.rotations) {
        out.push_back({ActionKind::Rotate, r});
        out.push_back({ActionKind::Rotate, -r});
    }
    return out;
}

Action best_rotation_toward(const MotionConfig& motion, double err) {
    Action best{ActionKind::Rotate, motion.rotations.front()};
    double best_residual = std::numeric_limits<double>::infinity();
    for (double r : motion.rotations) {
        for (double s : {r, -r}) {
            const double residual = std::abs(normalize_angle(err - s));
            if (residual < best_residual) {
                best_residual = residual;
                best = {ActionKind::Rotate, s};
            }
        }
    }
    return best;
}

double front_max_of(const View& view, const PerceptionConfig& cfg) {
    const double half = deg_to_rad(cfg.front_half_angle_deg);
    double mx = 0;
    for (int i = 0; i < view.ray_count(); ++i)
        if (std::abs(view.rel_angle(i)) <= half) mx = std::max(mx, view.ranges[i]);
    return mx;
}

}  // namespace

Action heuristic_vote(const DecisionContext& ctx, const Vec2& goal,
                      const std::function<bool(const Action&)>& extra_veto) {
    const Config& cfg = *ctx.cfg;
    const double radius = cfg.motion.robot_radius;
    const Pose& pose = ctx.pose;

    const double max_move =
        *std::max_element(cfg.motion.forward_moves.begin(), cfg.motion.forward_moves.end());
    const double ffd = ctx.world->free_forward(pose.pos, pose.theta, radius, max_move + 1.0);

    const double front_max = ctx.view ? front_max_of(*ctx.view, cfg.perception) : 1e9;
    const bool dead_end = front_max < cfg.controller.dead_end_front &&
                          distance(pose.pos, goal) > front_max;

    std::optional<Action> best;
    double best_score = -std::numeric_limits<double>::infinity();
    for (const Action& a : action_set(cfg.motion)) {
        if (extra_veto && extra_veto(a)) continue;

        Vec2 virtual_pos;
        if (a.kind == ActionKind::Forward) {
            if (a.magnitude > ffd) continue;  // AvoidObstruction: would truncate
            virtual_pos = pose.pos + unit_from_angle(pose.theta) * a.magnitude;
        } else {
            // Score a rotation by where a nominal step along the new heading
            // would land.
            const double heading = normalize_angle(pose.theta + a.magnitude);
            const double look = ctx.world->free_forward(pose.pos, heading, radius,
                                                        cfg.controller.greedy_lookahead);
            virtual_pos = pose.pos + unit_from_angle(heading) * look;
        }

        double score = -distance(virtual_pos, goal);  // Greedy
        if (dead_end && a.kind == ActionKind::Forward)
            score -= cfg.controller.exit_dead_end_penalty;  // ExitDeadEnd
        if (ctx.prev_action && ctx.prev_action->kind == ActionKind::Rotate &&
            a.kind == ActionKind::Rotate &&
            a.magnitude * ctx.prev_action->magnitude < 0)
            score -= cfg.controller.oscillation_penalty;  // NoOscillation

        if (score > best_score + 1e-12) {
            best_score = score;
            best = a;
        }
    }
    if (!best) return {ActionKind::Rotate, cfg.motion.rotations.front()};  // escape move
    return *best;
}

std::pair<Action, DecisionSource> decide(DecisionContext& ctx) {
    const Config& cfg = *ctx.cfg;
    const std::optional<Vec2> goal_wp = active_waypoint(ctx);
    if (goal_wp) {
        const Vec2 w = *goal_wp;
        const double err = angle_diff(bearing(ctx.pose.pos, w), ctx.pose.theta);
        if (std::abs(err) > deg_to_rad(cfg.controller.align_tol_deg)) {
            return {best_rotation_toward(cfg.motion, err), DecisionSource::PlanRule};
        }
        const double d = distance(ctx.pose.pos, w);
        const double ffd = ctx.world->free_forward(ctx.pose.pos, ctx.pose.theta,
                                                   cfg.motion.robot_radius, 1e9);
        std::vector<double> moves = cfg.motion.forward_moves;
        std::sort(moves.rbegin(), moves.rend());
        for (double m : moves) {
            if (m > ffd) continue;
            const Vec2 after = ctx.pose.pos + unit_from_angle(ctx.pose.theta) * m;
            if (d - distance(after, w) >= cfg.controller.min_plan_advance)
                return {{ActionKind::Forward, m}, DecisionSource::PlanRule};
        }
        return {heuristic_vote(ctx, w), DecisionSource::Heuristic};
    }
    return {heuristic_vote(ctx, ctx.target), DecisionSource::Heuristic};
}

TaskResult run_task(const World& world, const Pose& start, const Vec2& target,
                    Skeleton& skeleton, const Config& cfg, std::ostream* trace) {
    TaskResult result;
    Pose pose = start;
    Plan plan = make_plan(skeleton, pose.pos, target);
    result.plans_made = 1;
    result.plan_seconds = plan.plan_seconds;

    std::optional<Action> prev;
    while (result.actions < cfg.controller.action_cap) {
        if (distance(pose.pos, target) <= cfg.controller.success_radius) {
            result.reached = true;
            break;
        }
        const View view = scan(world, pose, cfg.sensor);
        skeleton.observe_decision(pose, view, std::nullopt);

        if (!plan.empty() && plan.exhausted()) {
            plan = make_plan(skeleton, pose.pos, target);
            ++result.plans_made;
            result.plan_seconds += plan.plan_seconds;
        }

        DecisionContext ctx;
        ctx.world = &world;
        ctx.cfg = &cfg;
        ctx.pose = pose;
        ctx.view = &view;
        ctx.plan = &plan;
        ctx.target = target;
        ctx.prev_action = prev;
        ctx.actions_used = result.actions;

        const auto [action, source] = decide(ctx);
        const StepOutcome out = apply_action(world, pose, action, cfg.motion.robot_radius);

        ++result.actions;
        (source == DecisionSource::PlanRule ? result.plan_rule_decisions
                                            : result.heuristic_decisions)++;
        if (action.kind == ActionKind::Forward) {
            result.distance += out.distance_traveled;
            result.sim_time += out.distance_traveled / cfg.motion.linear_speed;
        } else {
            result.sim_time += std::abs(action.magnitude) / cfg.motion.angular_speed;
        }
        if (trace) {
            char buf[192];
            std::snprintf(buf, sizeof(buf), "step %d %.4f %.4f %.4f %s %c%.3f %.3f %.3f\n",
                          result.actions, pose.pos.x, pose.pos.y, pose.theta,
                          source == DecisionSource::PlanRule ? "plan" : "heur",
                          action.kind == ActionKind::Forward ? 'F' : 'R', action.magnitude,
                          ctx.target.x, ctx.target.y);
            *trace << buf;
        }
        pose = out.new_pose;
        prev = action;
    }
    if (distance(pose.pos, target) <= cfg.controller.success_radius) result.reached = true;
    result.final_pose = pose;
    return result;
}

}  // namespace pnav
