#pragma once
// Ground-truth vector world, exact ray casting and disc-swept kinematics.
// Worlds are immutable after construction; scans and casts are pure.

#include <stdexcept>
#include <string>
#include <vector>

#include "pnav/config.hpp"
#include "pnav/geometry.hpp"

namespace pnav {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateOriginError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Pose {
    Vec2 pos;
    double theta = 0.0;  // radians, (-pi, pi]
};

struct View {
    Pose pose;
    std::vector<double> ranges;  // index 0 at -arc/2 relative to heading
    double arc_deg = 220.0;
    double max_range = 25.0;

    int ray_count() const { return static_cast<int>(ranges.size()); }
    /// Bearing of ray i relative to the heading, radians.
    double rel_angle(int i) const {
        return deg_to_rad(-arc_deg / 2.0 + i * arc_deg / (ray_count() - 1));
    }
    double abs_angle(int i) const { return normalize_angle(pose.theta + rel_angle(i)); }
    /// Index of the ray closest to the relative bearing, or -1 outside the arc.
    int ray_at(double rel_rad) const;
};

enum class ActionKind { Forward, Rotate };

struct Action {
    ActionKind kind = ActionKind::Forward;
    double magnitude = 0.0;  // meters forward, or signed radians
};

struct StepOutcome {
    Pose new_pose;
    bool truncated = false;
    double distance_traveled = 0.0;
};

class World {
public:
    World(std::string name, double width, double height, std::vector<Segment> walls);

    const std::string& name() const { return name_; }
    double width() const { return width_; }
    double height() const { return height_; }
    const std::vector<Segment>& walls() const { return walls_; }

    bool in_bounds(const Vec2& p) const {
        return p.x >= 0.0 && p.x <= width_ && p.y >= 0.0 && p.y <= height_;
    }

    /// Distance to the nearest wall, capped at `cap` for early exit.
    double clearance(const Vec2& p, double cap = 1e9) const;
    bool collision_free(const Vec2& p, double radius) const {
        return in_bounds(p) && clearance(p, radius + 1.0) >= radius;
    }

    /// Distance to the nearest wall along the ray, clamped to max_range.
    double cast_ray(const Vec2& origin, double angle, double max_range) const;

    /// Free travel distance for a disc of `radius` sliding along `angle`,
    /// capped at `limit`.
    double free_forward(const Vec2& origin, double angle, double radius, double limit) const;

private:
    friend World load_world(const std::string&);

    std::string name_;
    double width_ = 0.0;
    double height_ = 0.0;
    std::vector<Segment> walls_;

    // Uniform buckets over the walls; candidate lists per bucket.
    double bucket_size_ = 2.0;
    int nbx_ = 0, nby_ = 0;
    std::vector<std::vector<int>> buckets_;

    void build_index();
    const std::vector<int>& bucket_at(int bi, int bj) const;
    template <typename Fn>
    void for_walls_near(const Vec2& lo, const Vec2& hi, Fn&& fn) const;
};

World load_world(const std::string& text);
std::string serialize_world(const World& w);

View scan(const World& world, const Pose& pose, const SensorConfig& sensor);
StepOutcome apply_action(const World& world, const Pose& pose, const Action& action,
                         double robot_radius);

}  // namespace pnav
