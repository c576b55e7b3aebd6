#include "pnav/world.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace pnav {

namespace {
// Tangential motion at exactly the robot radius must not read as a hit,
// so the swept test uses a hair less than the true radius.
constexpr double kContactSlack = 1e-9;
}  // namespace

int View::ray_at(double rel_rad) const {
    const double half = deg_to_rad(arc_deg / 2.0);
    if (rel_rad < -half || rel_rad > half) return -1;
    const double step = deg_to_rad(arc_deg) / (ray_count() - 1);
    const int i = static_cast<int>(std::lround((rel_rad + half) / step));
    return std::clamp(i, 0, ray_count() - 1);
}

World::World(std::string name, double width, double height, std::vector<Segment> walls)
    : name_(std::move(name)), width_(width), height_(height), walls_(std::move(walls)) {
    if (width_ <= 0.0 || height_ <= 0.0)
        throw ValidationError("world bounds must be positive");
    if (walls_.empty()) throw ValidationError("world has no walls");
    for (const Segment& w : walls_) {
        if (!in_bounds(w.a) || !in_bounds(w.b))
            throw ValidationError("wall endpoint outside bounds");
    }
    build_index();
}

void World::build_index() {
    nbx_ = std::max(1, static_cast<int>(std::ceil(width_ / bucket_size_)));
    nby_ = std::max(1, static_cast<int>(std::ceil(height_ / bucket_size_)));
    buckets_.assign(static_cast<size_t>(nbx_) * nby_, {});
    for (int w = 0; w < static_cast<int>(walls_.size()); ++w) {
        const Segment& s = walls_[w];
        const double lx = std::min(s.a.x, s.b.x), hx = std::max(s.a.x, s.b.x);
        const double ly = std::min(s.a.y, s.b.y), hy = std::max(s.a.y, s.b.y);
        const int i0 = std::clamp(static_cast<int>(lx / bucket_size_), 0, nbx_ - 1);
        const int i1 = std::clamp(static_cast<int>(hx / bucket_size_), 0, nbx_ - 1);
        const int j0 = std::clamp(static_cast<int>(ly / bucket_size_), 0, nby_ - 1);
        const int j1 = std::clamp(static_cast<int>(hy / bucket_size_), 0, nby_ - 1);
        for (int i = i0; i <= i1; ++i)
            for (int j = j0; j <= j1; ++j)
                buckets_[static_cast<size_t>(j) * nbx_ + i].push_back(w);
    }
}

const std::vector<int>& World::bucket_at(int bi, int bj) const {
    static const std::vector<int> empty;
    if (bi < 0 || bj < 0 || bi >= nbx_ || bj >= nby_) return empty;
    return buckets_[static_cast<size_t>(bj) * nbx_ + bi];
}

template <typename Fn>
void World::for_walls_near(const Vec2& lo, const Vec2& hi, Fn&& fn) const {
    const int i0 = std::clamp(static_cast<int>(std::floor(lo.x / bucket_size_)), 0, nbx_ - 1);
    const int i1 = std::clamp(static_cast<int>(std::floor(hi.x / bucket_size_)), 0, nbx_ - 1);
    const int j0 = std::clamp(static_cast<int>(std::floor(lo.y / bucket_size_)), 0, nby_ - 1);
    const int j1 = std::clamp(static_cast<int>(std::floor(hi.y / bucket_size_)), 0, nby_ - 1);
    std::vector<char> seen(walls_.size(), 0);
    for (int j = j0; j <= j1; ++j) {
        for (int i = i0; i <= i1; ++i) {
            for (const int w : bucket_at(i, j)) {
                if (!seen[w]) {
                    seen[w] = 1;
                    fn(walls_[w]);
                }
            }
        }
    }
}

double World::clearance(const Vec2& p, double cap) const {
    double best = cap;
    const Vec2 lo{p.x - cap, p.y - cap};
    const Vec2 hi{p.x + cap, p.y + cap};
    for_walls_near(lo, hi, [&](const Segment& s) {
        best = std::min(best, point_segment_distance(p, s));
    });
    return best;
}

double World::cast_ray(const Vec2& origin, double angle, double max_range) const {
    if (!in_bounds(origin) || clearance(origin, 1.0) <= 1e-9)
        throw DegenerateOriginError("ray origin on or inside a wall");
    const Vec2 dir = unit_from_angle(angle);

    // March the bucket grid along the ray, testing each bucket's walls and
    // stopping once the best hit precedes the next bucket boundary.
    double best = max_range;
    int bi = std::clamp(static_cast<int>(origin.x / bucket_size_), 0, nbx_ - 1);
    int bj = std::clamp(static_cast<int>(origin.y / bucket_size_), 0, nby_ - 1);
    const int step_i = dir.x > 0.0 ? 1 : (dir.x < 0.0 ? -1 : 0);
    const int step_j = dir.y > 0.0 ? 1 : (dir.y < 0.0 ? -1 : 0);
    double t_max_x = step_i != 0
        ? ((step_i > 0 ? bi + 1 : bi) * bucket_size_ - origin.x) / dir.x
        : std::numeric_limits<double>::infinity();
    double t_max_y = step_j != 0
        ? ((step_j > 0 ? bj + 1 : bj) * bucket_size_ - origin.y) / dir.y
        : std::numeric_limits<double>::infinity();
    const double t_dx = step_i != 0 ? bucket_size_ / std::abs(dir.x)
                                    : std::numeric_limits<double>::infinity();
    const double t_dy = step_j != 0 ? bucket_size_ / std::abs(dir.y)
                                    : std::numeric_limits<double>::infinity();

    double entered = 0.0;
    while (true) {
        if (entered > best) break;
        for (const int w : bucket_at(bi, bj)) {
            if (auto t = ray_segment_hit(origin, dir, walls_[w])) {
                best = std::min(best, *t);
            }
        }
        const double next = std::min(t_max_x, t_max_y);
        if (best <= next || next > max_range) break;
        if (t_max_x <= t_max_y) {
            bi += step_i;
            t_max_x += t_dx;
        } else {
            bj += step_j;
            t_max_y += t_dy;
        }
        if (bi < 0 || bj < 0 || bi >= nbx_ || bj >= nby_) break;
        entered = next;
    }
    return std::min(best, max_range);
}

double World::free_forward(const Vec2& origin, double angle, double radius, double limit) const {
    const Vec2 dir = unit_from_angle(angle);
    const Vec2 end = origin + dir * limit;
    const double pad = radius + 1e-6;
    const Vec2 lo{std::min(origin.x, end.x) - pad, std::min(origin.y, end.y) - pad};
    const Vec2 hi{std::max(origin.x, end.x) + pad, std::max(origin.y, end.y) + pad};
    double best = limit;
    for_walls_near(lo, hi, [&](const Segment& s) {
        if (auto t = swept_disc_hit(origin, dir, radius - kContactSlack, s)) {
            best = std::min(best, *t);
        }
    });
    return std::max(0.0, best);
}

View scan(const World& world, const Pose& pose, const SensorConfig& sensor) {
    View v;
    v.pose = pose;
    v.arc_deg = sensor.arc_deg;
    v.max_range = sensor.max_range;
    v.ranges.resize(sensor.ray_count);
    if (!world.in_bounds(pose.pos) || world.clearance(pose.pos, 1.0) <= 1e-9)
        throw DegenerateOriginError("scan pose on or inside a wall");
    const double half = deg_to_rad(sensor.arc_deg / 2.0);
    const double step = deg_to_rad(sensor.arc_deg) / (sensor.ray_count - 1);
    for (int i = 0; i < sensor.ray_count; ++i) {
        const double angle = pose.theta - half + i * step;
        v.ranges[i] = world.cast_ray(pose.pos, angle, sensor.max_range);
    }
    return v;
}

StepOutcome apply_action(const World& world, const Pose& pose, const Action& action,
                         double robot_radius) {
    StepOutcome out;
    out.new_pose = pose;
    if (action.kind == ActionKind::Rotate) {
        out.new_pose.theta = normalize_angle(pose.theta + action.magnitude);
        return out;
    }
    const double free = world.free_forward(pose.pos, pose.theta, robot_radius,
                                           action.magnitude + 1.0);
    out.distance_traveled = std::min(action.magnitude, free);
    out.truncated = free < action.magnitude;
    out.new_pose.pos = pose.pos + unit_from_angle(pose.theta) * out.distance_traveled;
    return out;
}

World load_world(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    bool have_bounds = false;
    double width = 0.0, height = 0.0;
    std::vector<Segment> walls;
    std::string name = "world";

    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        if (tag == "bounds") {
            if (!(ls >> width >> height))
                throw ParseError("line " + std::to_string(line_no) + ": bad bounds record");
            have_bounds = true;
        } else if (tag == "wall") {
            Segment s;
            if (!(ls >> s.a.x >> s.a.y >> s.b.x >> s.b.y))
                throw ParseError("line " + std::to_string(line_no) + ": bad wall record");
            walls.push_back(s);
        } else if (tag == "name") {
            ls >> name;
        } else {
            throw ParseError("line " + std::to_string(line_no) + ": unknown record '" + tag + "'");
        }
    }
    if (!have_bounds) throw ParseError("missing bounds record");
    return World(name, width, height, std::move(walls));
}

std::string serialize_world(const World& w) {
    std::ostringstream out;
    char buf[160];
    out << "name " << w.name() << "\n";
    std::snprintf(buf, sizeof(buf), "bounds %.6f %.6f\n", w.width(), w.height());
    out << buf;
    for (const Segment& s : w.walls()) {
        std::snprintf(buf, sizeof(buf), "wall %.6f %.6f %.6f %.6f\n", s.a.x, s.a.y, s.b.x, s.b.y);
        out << buf;
    }
    return out.str();
}

}  // namespace pnav
