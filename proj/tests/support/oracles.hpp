#pragma once
// Independent reference implementations used only by tests. These stay
// deliberately naive: straight loops and textbook algorithms, no shared
// code with the library paths they check.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "pnav/geometry.hpp"

namespace oracle {

// Ray vs every wall by direct parametric solve; minimum hit distance.
inline double brute_cast(const std::vector<pnav::Segment>& walls, pnav::Vec2 origin,
                         double angle, double max_range) {
    const double dx = std::cos(angle), dy = std::sin(angle);
    double best = max_range;
    for (const pnav::Segment& s : walls) {
        const double ex = s.b.x - s.a.x, ey = s.b.y - s.a.y;
        const double denom = dx * ey - dy * ex;
        if (std::abs(denom) < 1e-12) continue;
        const double wx = s.a.x - origin.x, wy = s.a.y - origin.y;
        const double t = (wx * ey - wy * ex) / denom;
        const double u = (wx * dy - wy * dx) / denom;
        if (t >= 0.0 && u >= 0.0 && u <= 1.0) best = std::min(best, t);
    }
    return best;
}

inline double brute_point_segment(const pnav::Vec2& p, const pnav::Segment& s) {
    const double vx = s.b.x - s.a.x, vy = s.b.y - s.a.y;
    const double len2 = vx * vx + vy * vy;
    double t = len2 > 0 ? ((p.x - s.a.x) * vx + (p.y - s.a.y) * vy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const double cx = s.a.x + t * vx, cy = s.a.y + t * vy;
    return std::hypot(p.x - cx, p.y - cy);
}

inline double brute_clearance(const std::vector<pnav::Segment>& walls, const pnav::Vec2& p) {
    double best = std::numeric_limits<double>::infinity();
    for (const pnav::Segment& s : walls) best = std::min(best, brute_point_segment(p, s));
    return best;
}

// Plain Dijkstra over an explicit weighted graph.
inline double brute_dijkstra(int n, const std::vector<std::tuple<int, int, double>>& edges,
                             int from, int to) {
    std::vector<std::vector<std::pair<int, double>>> adj(n);
    for (const auto& [a, b, w] : edges) {
        adj[a].push_back({b, w});
        adj[b].push_back({a, w});
    }
    std::vector<double> dist(n, std::numeric_limits<double>::infinity());
    using E = std::pair<double, int>;
    std::priority_queue<E, std::vector<E>, std::greater<E>> pq;
    dist[from] = 0;
    pq.push({0, from});
    while (!pq.empty()) {
        const auto [d, v] = pq.top();
        pq.pop();
        if (d > dist[v]) continue;
        for (const auto& [u, w] : adj[v]) {
            if (d + w < dist[u]) {
                dist[u] = d + w;
                pq.push({dist[u], u});
            }
        }
    }
    return dist[to];
}

// Unweighted shortest hop count; -1 when unreachable.
template <typename V>
inline int brute_bfs_hops(const std::map<V, std::set<V>>& adj, const V& from, const V& to) {
    if (!adj.count(from) || !adj.count(to)) return -1;
    std::map<V, int> dist{{from, 0}};
    std::queue<V> q;
    q.push(from);
    while (!q.empty()) {
        const V v = q.front();
        q.pop();
        if (v == to) return dist[v];
        for (const V& u : adj.at(v)) {
            if (!dist.count(u)) {
                dist[u] = dist[v] + 1;
                q.push(u);
            }
        }
    }
    return -1;
}

// Minimal XML well-formedness scan: matched tags, quoted attributes.
inline bool xml_well_formed(const std::string& text) {
    std::vector<std::string> stack;
    size_t i = 0;
    while (i < text.size()) {
        if (text[i] != '<') {
            ++i;
            continue;
        }
        const size_t end = text.find('>', i);
        if (end == std::string::npos) return false;
        std::string tag = text.substr(i + 1, end - i - 1);
        i = end + 1;
        if (tag.empty()) return false;
        if (tag[0] == '?' || tag[0] == '!') continue;
        const bool closing = tag[0] == '/';
        const bool self_closing = tag.back() == '/';
        if (closing) tag = tag.substr(1);
        if (self_closing) tag.pop_back();
        // unbalanced quotes inside the tag body are malformed
        if (std::count(tag.begin(), tag.end(), '"') % 2 != 0) return false;
        const std::string name = tag.substr(0, tag.find_first_of(" \t\n"));
        if (closing) {
            if (stack.empty() || stack.back() != name) return false;
            stack.pop_back();
        } else if (!self_closing) {
            stack.push_back(name);
        }
    }
    return stack.empty();
}

}  // namespace oracle
