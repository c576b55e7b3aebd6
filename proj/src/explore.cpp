#include "pnav/explore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pnav/controller.hpp"
#include "pnav/planner.hpp"

namespace pnav {

bool similar_stretches(const Stretch& a, const Stretch& b) {
    if (segment_segment_distance(a.axis(), b.axis()) > 1.0) return false;

    // Project both onto the longer stretch's axis; equal lengths break the
    // tie by position so the test stays symmetric.
    const Stretch* longer = &a;
    if (b.length > a.length ||
        (b.length == a.length &&
         std::tie(b.origin.x, b.origin.y, b.direction) <
             std::tie(a.origin.x, a.origin.y, a.direction)))
        longer = &b;
    const Vec2 u = unit_from_angle(longer->direction);
    const Vec2 o = longer->origin;
    auto interval = [&](const Stretch& s) {
        const double t0 = dot(s.origin - o, u);
        const double t1 = dot(s.end() - o, u);
        return std::pair{std::min(t0, t1), std::max(t0, t1)};
    };
    const auto [alo, ahi] = interval(a);
    const auto [blo, bhi] = interval(b);
    const double overlap = std::min(ahi, bhi) - std::max(alo, blo);
    const double need = (a.length + b.length) / 2.0 / 3.0;
    return overlap >= need - 1e-9;
}

bool CandidateList::similar_to_any(const Stretch& s) const {
    for (const Candidate& c : history_)
        if (similar_stretches(s, c.stretch)) return true;
    return false;
}

size_t CandidateList::enqueue(Candidate c, double d) {
    const size_t idx = history_.size();
    const bool front = c.stretch.avg_length > 2.0 * d;
    history_.push_back(std::move(c));
    if (front)
        pending_.push_front(idx);
    else
        pending_.push_back(idx);
    return idx;
}

std::optional<size_t> CandidateList::pop_front() {
    if (pending_.empty()) return std::nullopt;
    const size_t idx = pending_.front();
    pending_.pop_front();
    return idx;
}

namespace {

// Start, midpoint and end of the stretch against the grid: obstructed
// ground disqualifies outright; more than one already-claimed point means
// nothing new would be learned.
bool covers_new_ground(const Stretch& s, const PassageGrid& grid) {
    int claimed = 0;
    for (const Vec2& p : {s.origin, s.midpoint(), s.end()}) {
        const CellIndex c = cell_of(p, grid.cell_size());
        const CellLabel l = grid.label(c);
        if (l == CellLabel::Obstructed) return false;
        if (l == CellLabel::Passage) ++claimed;
    }
    return claimed <= 1;
}

}  // namespace

bool qualify_candidate(const Stretch& stretch, const PassageGrid& grid,
                       const CandidateList& list, const RoomPassageClassifier& classifier,
                       const FeatureVector& features) {
    if (!(stretch.length > stretch.width)) return false;
    if (list.similar_to_any(stretch)) return false;
    if (!covers_new_ground(stretch, grid)) return false;
    if (classify(classifier, features) != ViewLabel::Passage) return false;
    return true;
}

void TraversalState::push_heading(double theta, int cap) {
    orientation_window.push_back(theta);
    while (static_cast<int>(orientation_window.size()) > cap) orientation_window.pop_front();
}

std::optional<TraverseReason> should_terminate(const TraversalState& state, const View& view,
                                               const Stretch& stretch, const Config& cfg) {
    double front_min = std::numeric_limits<double>::infinity();
    double front_max = 0.0;
    const double half = deg_to_rad(cfg.perception.front_half_angle_deg);
    for (int i = 0; i < view.ray_count(); ++i) {
        if (std::abs(view.rel_angle(i)) <= half) {
            front_min = std::min(front_min, view.ranges[i]);
            front_max = std::max(front_max, view.ranges[i]);
        }
    }

    const double to_end = distance(view.pose.pos, stretch.end());
    const double front_clear = front_min - cfg.motion.robot_radius;
    if (to_end <= cfg.exploration.end_distance ||
        front_clear <= cfg.exploration.front_blocked_clearance)
        return TraverseReason::EndReached;

    if (!state.orientation_window.empty()) {
        double sx = 0, sy = 0;
        for (double h : state.orientation_window) {
            sx += std::cos(h);
            sy += std::sin(h);
        }
        if (std::hypot(sx, sy) > 1e-9) {
            const double mean = std::atan2(sy, sx);
            if (std::abs(angle_diff(view.pose.theta, mean)) >
                deg_to_rad(cfg.exploration.hard_turn_deg))
                return TraverseReason::HardTurn;
        }
    }

    if (!state.width_history.empty()) {
        double sum = 0;
        for (double w : state.width_history) sum += w;
        const double avg_width = sum / state.width_history.size();
        if (state.passage_length + front_max < cfg.exploration.widen_factor * avg_width)
            return TraverseReason::RoomDetected;
    }
    return std::nullopt;
}

std::optional<size_t> next_candidate(CandidateList& list, const PassageGrid& grid) {
    while (auto idx = list.pop_front()) {
        Candidate& c = list.at(*idx);
        bool ok = covers_new_ground(c.stretch, grid);
        if (ok) {
            for (const Candidate& other : list.history()) {
                if (other.state == CandidateState::Explored &&
                    similar_stretches(c.stretch, other.stretch)) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) return idx;
        c.state = CandidateState::Rejected;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------

ExplorationSession::ExplorationSession(const World& world, const Pose& start, const Config& cfg,
                                       RoomPassageClassifier classifier)
    : world_(world),
      cfg_(cfg),
      classifier_(std::move(classifier)),
      pose_(start),
      grid_(world.width(), world.height(), cfg.model.grid_cell),
      skeleton_(cfg.model) {}

View ExplorationSession::observe(std::optional<int> passage_id) {
    View v = scan(world_, pose_, cfg_.sensor);
    skeleton_.observe_decision(pose_, v, passage_id);
    decisions_.push_back(pose_.pos);
    return v;
}

void ExplorationSession::charge(const Action& a, double traveled) {
    if (a.kind == ActionKind::Forward) {
        elapsed_ += traveled / cfg_.motion.linear_speed;
        distance_ += traveled;
    } else {
        elapsed_ += std::abs(a.magnitude) / cfg_.motion.angular_speed;
    }
}

StepOutcome ExplorationSession::step(const Action& a) {
    const StepOutcome out = apply_action(world_, pose_, a, cfg_.motion.robot_radius);
    log_.push_back({pose_, a, out.distance_traveled, out.truncated});
    charge(a, out.distance_traveled);
    pose_ = out.new_pose;
    return out;
}

void ExplorationSession::travel_chain_edges(const Vec2& from, const Vec2& to) {
    std::optional<CellIndex> prev;
    for (const CellIndex& c : cells_entered(from, to, grid_.cell_size())) {
        if (grid_.label(c) == CellLabel::Passage) {
            if (prev) network_.add_edge(*prev, c);
            prev = c;
        } else {
            prev.reset();
        }
    }
}

void ExplorationSession::collect_candidates(const View& view) {
    const FeatureVector features = compute_features(view, cfg_.perception);
    for (const Stretch& s : detect_stretches(view, cfg_.exploration.d, cfg_.perception)) {
        if (qualify_candidate(s, grid_, candidates_, classifier_, features)) {
            Candidate c;
            c.stretch = s;
            c.start = s.detected_at;
            candidates_.enqueue(std::move(c), cfg_.exploration.d);
        }
    }
}

void ExplorationSession::initial_rotation() {
    const double rot = cfg_.motion.rotations.front();
    const int steps = static_cast<int>(std::ceil(2.0 * kPi / rot));
    for (int i = 0; i < steps && !budget_exhausted(); ++i) {
        const View v = observe(std::nullopt);
        collect_candidates(v);
        step({ActionKind::Rotate, rot});
    }
}

bool ExplorationSession::face(double direction) {
    for (int i = 0; i < 12; ++i) {
        const double err = angle_diff(direction, pose_.theta);
        if (std::abs(err) <= 0.13) return true;
        if (budget_exhausted()) return false;
        double best = cfg_.motion.rotations.front();
        double best_res = std::numeric_limits<double>::infinity();
        for (double r : cfg_.motion.rotations) {
            for (double s : {r, -r}) {
                const double res = std::abs(normalize_angle(err - s));
                if (res < best_res) {
                    best_res = res;
                    best = s;
                }
            }
        }
        step({ActionKind::Rotate, best});
    }
    return std::abs(angle_diff(direction, pose_.theta)) <= 0.13 + 1e-9;
}

bool ExplorationSession::approach(const Vec2& target, double stop_within) {
    int stuck = 0;
    for (int i = 0; i < 80; ++i) {
        const double d = distance(pose_.pos, target);
        if (d <= stop_within) return true;
        if (budget_exhausted()) return false;
        const double err = angle_diff(bearing(pose_.pos, target), pose_.theta);
        if (std::abs(err) > deg_to_rad(cfg_.controller.align_tol_deg)) {
            if (!face(bearing(pose_.pos, target))) return false;
            continue;
        }
        const double ffd =
            world_.free_forward(pose_.pos, pose_.theta, cfg_.motion.robot_radius, 1e9);
        double move = 0.0;
        for (double m : cfg_.motion.forward_moves)
            if (m <= ffd && m <= d && m > move) move = m;
        if (move == 0.0) move = cfg_.motion.forward_moves.front();
        const Vec2 before = pose_.pos;
        decisions_.push_back(pose_.pos);
        const StepOutcome out = step({ActionKind::Forward, move});
        travel_chain_edges(before, pose_.pos);
        if (out.distance_traveled <= 1e-9) {
            if (++stuck >= cfg_.exploration.stuck_limit) return false;
        } else {
            stuck = 0;
        }
    }
    return distance(pose_.pos, target) <= stop_within;
}

bool ExplorationSession::follow_waypoints(const std::vector<Vec2>& waypoints, const Vec2& goal,
                                          double stop_within) {
    Plan plan;
    plan.waypoints = waypoints;
    plan.status.assign(waypoints.size(), WaypointStatus::Pending);
    plan.target = goal;

    std::optional<Action> prev;
    int stuck = 0;
    for (int i = 0; i < cfg_.exploration.decision_cap; ++i) {
        if (distance(pose_.pos, goal) <= stop_within) return true;
        if (budget_exhausted()) return false;
        const View view = observe(std::nullopt);

        DecisionContext ctx;
        ctx.world = &world_;
        ctx.cfg = &cfg_;
        ctx.pose = pose_;
        ctx.view = &view;
        ctx.plan = &plan;
        ctx.target = goal;
        ctx.prev_action = prev;
        const auto [action, source] = decide(ctx);
        (void)source;

        const Vec2 before = pose_.pos;
        const StepOutcome out = step(action);
        travel_chain_edges(before, pose_.pos);
        prev = action;
        if (action.kind == ActionKind::Forward) {
            if (out.distance_traveled <= 1e-9) {
                if (++stuck >= cfg_.exploration.stuck_limit) return false;
            } else {
                stuck = 0;
            }
        }
    }
    return distance(pose_.pos, goal) <= stop_within;
}

bool ExplorationSession::goto_candidate_start(size_t idx) {
    const Candidate& cand = candidates_.at(idx);
    const Vec2 start = cand.start.pos;

    if (distance(pose_.pos, start) > 1.0) {
        const CellIndex here = cell_of(pose_.pos, grid_.cell_size());
        const auto from = network_.has_vertex(here)
                              ? std::optional<CellIndex>(here)
                              : network_.nearest_vertex(pose_.pos, grid_.cell_size());
        const auto to = network_.nearest_vertex(start, grid_.cell_size());
        if (!from || !to) return false;
        const std::vector<CellIndex> path = bfs_cell_path(network_, *from, *to);
        if (path.empty()) return false;
        const std::vector<Vec2> waypoints =
            cells_to_waypoints(path, decisions_, grid_.cell_size());
        if (!follow_waypoints(waypoints, start, 1.0)) return false;
    }
    if (!approach(start, 0.5)) return false;
    return face(cand.stretch.direction);
}

TraverseReason ExplorationSession::traverse_passage(size_t idx, int passage_id) {
    Candidate& cand = candidates_.at(idx);
    const Stretch& stretch = cand.stretch;
    cand.passage_id = passage_id;
    passage_counter_ = std::max(passage_counter_, passage_id);

    TraversalState state;
    state.passage_id = passage_id;
    bool pending_step = false;  // the small forward move that follows a veer
    int stuck = 0;

    const double side_min = deg_to_rad(cfg_.perception.side_min_deg);
    const double side_max = deg_to_rad(cfg_.perception.side_max_deg);

    while (true) {
        if (budget_exhausted() || state.decisions >= cfg_.exploration.decision_cap)
            return TraverseReason::BudgetExhausted;
        const View view = observe(passage_id);
        update_occupancy(grid_, network_, view, passage_id, cfg_);
        collect_candidates(view);

        if (auto reason = should_terminate(state, view, stretch, cfg_)) return *reason;

        state.push_heading(pose_.theta, cfg_.exploration.orientation_window);
        double left_min = view.max_range, right_min = view.max_range;
        double left_max = 0, right_max = 0;
        for (int i = 0; i < view.ray_count(); ++i) {
            const double rel = view.rel_angle(i);
            if (rel >= side_min && rel <= side_max) {
                left_min = std::min(left_min, view.ranges[i]);
                left_max = std::max(left_max, view.ranges[i]);
            } else if (rel <= -side_min && rel >= -side_max) {
                right_min = std::min(right_min, view.ranges[i]);
                right_max = std::max(right_max, view.ranges[i]);
            }
        }
        state.width_history.push_back(left_max + right_max);

        Action action;
        if (pending_step) {
            action = {ActionKind::Forward, cfg_.motion.forward_moves.front()};
            pending_step = false;
        } else {
            const double body = cfg_.motion.robot_radius;
            const double veer = cfg_.exploration.veer_clearance;
            if (left_min - body < veer || right_min - body < veer) {
                // Too close to a side wall: turn slightly away, then step.
                const double away = left_min < right_min ? -cfg_.motion.rotations.front()
                                                         : cfg_.motion.rotations.front();
                action = {ActionKind::Rotate, away};
                pending_step = true;
            } else {
                const double ffd =
                    world_.free_forward(pose_.pos, pose_.theta, cfg_.motion.robot_radius, 1e9);
                double move = 0.0;
                for (double m : cfg_.motion.forward_moves)
                    if (m <= ffd && m > move) move = m;
                if (move == 0.0) move = cfg_.motion.forward_moves.front();
                action = {ActionKind::Forward, move};
            }
        }

        const Vec2 before = pose_.pos;
        const StepOutcome out = step(action);
        ++state.decisions;
        if (action.kind == ActionKind::Forward) {
            state.passage_length += out.distance_traveled;
            record_travel_edge(grid_, network_, before, pose_.pos, passage_id);
            if (out.distance_traveled <= 1e-9) {
                if (++stuck >= cfg_.exploration.stuck_limit) return TraverseReason::Stuck;
            } else {
                stuck = 0;
            }
        }
    }
}

bool ExplorationSession::final_reposition() {
    const CellIndex here = cell_of(pose_.pos, grid_.cell_size());
    const auto from = network_.has_vertex(here)
                          ? std::optional<CellIndex>(here)
                          : network_.nearest_vertex(pose_.pos, grid_.cell_size());
    if (!from) return false;

    std::optional<CellIndex> farthest;
    double best = -1.0;
    for (const auto& [v, ns] : network_.adjacency()) {
        const double d = distance(pose_.pos, cell_center(v, grid_.cell_size()));
        if (d > best) {
            best = d;
            farthest = v;
        }
    }
    if (!farthest) return false;
    const std::vector<CellIndex> path = bfs_cell_path(network_, *from, *farthest);
    if (path.empty()) return false;
    const Vec2 goal = cell_center(*farthest, grid_.cell_size());
    if (!follow_waypoints(cells_to_waypoints(path, decisions_, grid_.cell_size()), goal, 1.0))
        return false;
    initial_rotation();  // rescan in place for fresh candidates
    return true;
}

ExplorationResult ExplorationSession::take_result() {
    ExplorationResult r;
    r.grid = std::move(grid_);
    r.network = std::move(network_);
    r.skeleton = std::move(skeleton_);
    r.decisions = std::move(decisions_);
    r.log = std::move(log_);
    r.elapsed = elapsed_;
    r.distance = distance_;
    r.passages = passage_counter_;
    r.final_pose = pose_;
    return r;
}

ExplorationResult explore(const World& world, const Pose& start, const Config& cfg,
                          const RoomPassageClassifier& classifier) {
    ExplorationSession s(world, start, cfg, classifier);
    s.initial_rotation();
    if (s.candidates().pending_empty())
        throw NoInitialStretchError("no stretch found in the initial rotation");

    bool repositioned = false;
    while (!s.budget_exhausted()) {
        const auto idx = next_candidate(s.candidates(), s.grid());
        if (!idx) {
            if (repositioned || s.network().vertex_count() == 0) break;
            repositioned = true;
            if (!s.final_reposition()) break;
            continue;
        }
        if (!s.goto_candidate_start(*idx)) {
            s.candidates().at(*idx).state = CandidateState::Rejected;
            continue;
        }
        const int pid = s.passage_count() + 1;
        s.traverse_passage(*idx, pid);
        s.candidates().at(*idx).state = CandidateState::Explored;
    }
    return s.take_result();
}

}  // namespace pnav
