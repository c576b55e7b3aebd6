#include "pnav/planner.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <queue>
#include <sstream>

namespace pnav {

std::optional<int> attach_point(const Skeleton& skeleton, const Vec2& p) {
    if (skeleton.region_count() == 0) return std::nullopt;
    if (auto inside = skeleton.region_at(p)) return inside;

    std::optional<int> seen;
    double seen_dist = std::numeric_limits<double>::infinity();
    for (const Region& r : skeleton.regions()) {
        if (skeleton.region_can_detect(r.id, p)) {
            const double d = distance(p, r.center);
            if (d < seen_dist) {
                seen_dist = d;
                seen = r.id;
            }
        }
    }
    if (seen) return seen;

    int best = skeleton.regions().front().id;
    double best_score = -std::numeric_limits<double>::infinity();
    for (const Region& r : skeleton.regions()) {
        const double score = -5.0 * distance(p, r.center) + skeleton.degree(r.id);
        if (score > best_score) {
            best_score = score;
            best = r.id;
        }
    }
    return best;
}

std::vector<int> plan_regions(const Skeleton& skeleton, int from, int to) {
    const int n = static_cast<int>(skeleton.region_count());
    skeleton.region(from);
    skeleton.region(to);
    if (from == to) return {from};

    std::vector<std::vector<std::pair<int, double>>> adj(n);
    for (const auto& [key, e] : skeleton.edges()) {
        const double cost =
            e.dist + skeleton.region(e.a).radius + skeleton.region(e.b).radius;
        adj[e.a].push_back({e.b, cost});
        adj[e.b].push_back({e.a, cost});
    }
    for (auto& ns : adj) std::sort(ns.begin(), ns.end());

    auto heuristic = [&](int r) {
        return distance(skeleton.region(r).center, skeleton.region(to).center);
    };

    struct Entry {
        double f;
        int id;
        bool operator>(const Entry& o) const { return f > o.f || (f == o.f && id > o.id); }
    };
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> open;
    std::vector<double> g(n, std::numeric_limits<double>::infinity());
    std::vector<int> parent(n, -1);
    std::vector<char> closed(n, 0);
    g[from] = 0.0;
    open.push({heuristic(from), from});
    while (!open.empty()) {
        const auto [f, cur] = open.top();
        open.pop();
        if (closed[cur]) continue;
        closed[cur] = 1;
        if (cur == to) break;
        for (const auto& [next, cost] : adj[cur]) {
            if (closed[next]) continue;
            const double ng = g[cur] + cost;
            if (ng < g[next]) {
                g[next] = ng;
                parent[next] = cur;
                open.push({ng + heuristic(next), next});
            }
        }
    }
    if (!closed[to]) return {};
    std::vector<int> path{to};
    while (path.back() != from) path.push_back(parent[path.back()]);
    std::reverse(path.begin(), path.end());
    return path;
}

Plan expand_waypoints(const Skeleton& skeleton, const std::vector<int>& region_path,
                      const Vec2& target) {
    Plan plan;
    plan.target = target;
    plan.region_path = region_path;
    for (size_t i = 0; i < region_path.size(); ++i) {
        plan.waypoints.push_back(skeleton.region(region_path[i]).center);
        if (i + 1 < region_path.size()) {
            const int a = region_path[i];
            const int b = region_path[i + 1];
            const auto it = skeleton.edges().find({std::min(a, b), std::max(a, b)});
            if (it == skeleton.edges().end()) continue;
            const SkeletonEdge& e = it->second;
            const Vec2 exit_pt = e.a == a ? e.point_a : e.point_b;
            const Vec2 entry_pt = e.a == a ? e.point_b : e.point_a;
            plan.waypoints.push_back(exit_pt);
            plan.waypoints.push_back(e.midpoint);
            plan.waypoints.push_back(entry_pt);
        }
    }
    plan.status.assign(plan.waypoints.size(), WaypointStatus::Pending);
    return plan;
}

Plan make_plan(const Skeleton& skeleton, const Vec2& robot, const Vec2& target) {
    const auto t0 = std::chrono::steady_clock::now();
    Plan plan;
    plan.target = target;
    const auto from = attach_point(skeleton, robot);
    const auto to = attach_point(skeleton, target);
    if (!from || !to) {
        plan.unreachable = true;
    } else {
        const std::vector<int> path = plan_regions(skeleton, *from, *to);
        if (path.empty()) {
            plan.unreachable = true;
        } else {
            plan = expand_waypoints(skeleton, path, target);
        }
    }
    plan.plan_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return plan;
}

std::string serialize_plan(const Plan& p) {
    std::ostringstream out;
    out << "regions";
    for (int r : p.region_path) out << " " << r;
    out << "\n";
    char buf[128];
    for (size_t i = 0; i < p.waypoints.size(); ++i) {
        const char* status = "pending";
        if (p.status[i] == WaypointStatus::Visited) status = "visited";
        if (p.status[i] == WaypointStatus::Skipped) status = "skipped";
        std::snprintf(buf, sizeof(buf), "waypoint %zu %.6f %.6f %s\n", i, p.waypoints[i].x,
                      p.waypoints[i].y, status);
        out << buf;
    }
    return out.str();
}

}  // namespace pnav
