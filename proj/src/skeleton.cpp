#include "pnav/skeleton.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace pnav {

std::optional<int> Skeleton::region_at(const Vec2& p) const {
    for (const Region& r : regions_)
        if (r.contains(p)) return r.id;
    return std::nullopt;
}

const Region& Skeleton::region(int region_id) const {
    if (region_id < 0 || region_id >= static_cast<int>(regions_.size()))
        throw UnknownRegionError("no region " + std::to_string(region_id));
    return regions_[region_id];
}

int Skeleton::degree(int region_id) const {
    region(region_id);  // bounds check
    int n = 0;
    for (const auto& [key, e] : edges_)
        if (key.first == region_id || key.second == region_id) ++n;
    return n;
}

void Skeleton::reset_transit() {
    last_region_.reset();
    last_pos_.reset();
    transit_.clear();
}

std::optional<int> Skeleton::try_create_region(const Pose& pose, const View& view,
                                               std::optional<int> passage_id) {
    double radius = cfg_.region_radius_cap;
    for (double r : view.ranges) radius = std::min(radius, r);
    for (const Region& other : regions_)
        radius = std::min(radius, distance(pose.pos, other.center) - other.radius - cfg_.region_gap);
    if (radius < cfg_.region_radius_min) return std::nullopt;

    Region r;
    r.id = static_cast<int>(regions_.size());
    r.center = pose.pos;
    r.radius = radius;
    r.passage_id = passage_id;
    regions_.push_back(std::move(r));
    return regions_.back().id;
}

namespace {

// Crossing point where the segment p0->p1 leaves the circle (p0 inside).
Vec2 exit_crossing(const Vec2& p0, const Vec2& p1, const Vec2& center, double radius) {
    const auto ts = segment_circle_hits(p0, p1, center, radius);
    if (ts.empty()) return p0;
    return p0 + (p1 - p0) * ts.back();
}

// Crossing point where the segment p0->p1 enters the circle (p1 inside).
Vec2 entry_crossing(const Vec2& p0, const Vec2& p1, const Vec2& center, double radius) {
    const auto ts = segment_circle_hits(p0, p1, center, radius);
    if (ts.empty()) return p1;
    return p0 + (p1 - p0) * ts.front();
}

}  // namespace

void Skeleton::note_transition(int from, int to, const std::vector<Vec2>& path) {
    if (from == to || path.size() < 2) return;
    const Region& dst = regions_[to];

    // Walk back to the last point outside the destination disc; everything
    // before it is transit between the two regions.
    size_t k = path.size() - 1;
    while (k > 1 && dst.contains(path[k - 1])) --k;
    const size_t seg_start = k - 1;  // path[seg_start] outside dst (or pathological)
    const Vec2 entry =
        entry_crossing(path[seg_start], path[seg_start + 1], dst.center, dst.radius);

    double dist = 0.0;
    for (size_t i = 0; i + 1 <= seg_start; ++i) dist += distance(path[i], path[i + 1]);
    dist += distance(path[seg_start], entry);
    if (dist <= 0.0) dist = 1e-6;

    const Vec2 exit = path.front();
    const Vec2 mid_target = (exit + entry) * 0.5;
    Vec2 mid = exit;
    double best = distance(exit, mid_target);
    for (size_t i = 0; i + 1 <= seg_start; ++i) {
        const double d = distance(path[i + 1], mid_target);
        if (d < best) {
            best = d;
            mid = path[i + 1];
        }
    }
    if (distance(entry, mid_target) < best) mid = entry;

    const bool swap = from > to;
    const std::pair<int, int> key{std::min(from, to), std::max(from, to)};
    const auto it = edges_.find(key);
    if (it != edges_.end() && it->second.dist <= dist) return;

    SkeletonEdge e;
    e.a = key.first;
    e.b = key.second;
    e.dist = dist;
    e.point_a = swap ? entry : exit;
    e.point_b = swap ? exit : entry;
    e.midpoint = mid;
    edges_[key] = e;
}

std::optional<int> Skeleton::observe_decision(const Pose& pose, const View& view,
                                              std::optional<int> passage_id) {
    const Vec2 p = pose.pos;
    std::optional<int> cur = region_at(p);
    if (!cur) cur = try_create_region(pose, view, passage_id);

    if (cur) {
        if (last_region_ && *cur != *last_region_) {
            std::vector<Vec2> path;
            if (transit_.empty() && last_pos_) {
                const Region& src = regions_[*last_region_];
                path.push_back(exit_crossing(*last_pos_, p, src.center, src.radius));
            } else {
                path = transit_;
            }
            path.push_back(p);
            if (path.size() >= 2) note_transition(*last_region_, *cur, path);
        }
        last_region_ = cur;
        transit_.clear();

        Region& r = regions_[*cur];
        if (static_cast<int>(r.views.size()) < cfg_.region_view_cap) {
            StoredView sv;
            sv.pose = pose;
            sv.arc_deg = view.arc_deg;
            sv.max_range = view.max_range;
            sv.ranges.assign(view.ranges.begin(), view.ranges.end());
            r.views.push_back(std::move(sv));
        }
    } else if (last_region_) {
        if (transit_.empty() && last_pos_) {
            const Region& src = regions_[*last_region_];
            if (!src.contains(p)) {
                transit_.push_back(exit_crossing(*last_pos_, p, src.center, src.radius));
                transit_.push_back(p);
            }
        } else if (!transit_.empty()) {
            transit_.push_back(p);
        }
    }
    last_pos_ = p;
    return cur;
}

bool Skeleton::region_can_detect(int region_id, const Vec2& target) const {
    const Region& r = region(region_id);
    for (const StoredView& v : r.views) {
        const double dist = distance(v.pose.pos, target);
        if (dist <= cfg_.visibility_tol) return true;
        const double rel = angle_diff(bearing(v.pose.pos, target), v.pose.theta);
        const double half = deg_to_rad(v.arc_deg / 2.0);
        if (rel < -half || rel > half) continue;
        const int n = static_cast<int>(v.ranges.size());
        const double step = deg_to_rad(v.arc_deg) / (n - 1);
        const int idx = std::clamp(static_cast<int>(std::lround((rel + half) / step)), 0, n - 1);
        const double off_axis = dist * std::abs(std::sin(rel - (-half + idx * step)));
        if (off_axis > cfg_.visibility_tol) continue;
        if (v.ranges[idx] + cfg_.visibility_tol >= dist) return true;
    }
    return false;
}

std::string serialize_skeleton(const Skeleton& s) {
    std::ostringstream out;
    char buf[256];
    for (const Region& r : s.regions()) {
        std::snprintf(buf, sizeof(buf), "region %d %.6f %.6f %.6f %s\n", r.id, r.center.x,
                      r.center.y, r.radius,
                      r.passage_id ? std::to_string(*r.passage_id).c_str() : "-");
        out << buf;
    }
    for (const auto& [key, e] : s.edges()) {
        std::snprintf(buf, sizeof(buf), "edge %d %d %.6f %.6f %.6f %.6f %.6f %.6f %.6f\n", e.a,
                      e.b, e.dist, e.point_a.x, e.point_a.y, e.point_b.x, e.point_b.y,
                      e.midpoint.x, e.midpoint.y);
        out << buf;
    }
    return out.str();
}

void Skeleton::restore_region(Region r) {
    if (r.id != static_cast<int>(regions_.size()))
        throw ValidationError("region ids must be dense and ordered");
    regions_.push_back(std::move(r));
}

void Skeleton::restore_edge(const SkeletonEdge& e) {
    region(e.a);
    region(e.b);
    if (e.a >= e.b) throw ValidationError("edge endpoints must satisfy a < b");
    edges_[{e.a, e.b}] = e;
}

Skeleton load_skeleton(const std::string& text, const ModelConfig& cfg) {
    Skeleton s(cfg);
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        if (tag == "region") {
            Region r;
            std::string pid;
            if (!(ls >> r.id >> r.center.x >> r.center.y >> r.radius >> pid))
                throw ParseError("line " + std::to_string(line_no) + ": bad region record");
            if (pid != "-") r.passage_id = std::stoi(pid);
            s.restore_region(std::move(r));
        } else if (tag == "edge") {
            SkeletonEdge e;
            if (!(ls >> e.a >> e.b >> e.dist >> e.point_a.x >> e.point_a.y >> e.point_b.x >>
                  e.point_b.y >> e.midpoint.x >> e.midpoint.y))
                throw ParseError("line " + std::to_string(line_no) + ": bad edge record");
            s.restore_edge(e);
        } else {
            throw ParseError("line " + std::to_string(line_no) + ": unknown record '" + tag + "'");
        }
    }
    return s;
}

}  // namespace pnav
